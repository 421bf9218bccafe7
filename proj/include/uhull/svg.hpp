#pragma once

#include <string>

#include "uhull/geometry.hpp"
#include "uhull/model.hpp"
#include "uhull/probability_map.hpp"

namespace uhull::svg {

// Faces of the map clipped to a box around the sites, darker for higher
// probability, with the sites on top.
std::string render_map(const ProbabilityMap& map);

// The region over the sites; nothing is drawn for Empty and the whole box is
// shaded for WholePlane.
std::string render_region(const UncertainPointSet& model, const ConvexPolygon& region);

}  // namespace uhull::svg
