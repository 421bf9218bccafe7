#pragma once

#include <vector>

#include "uhull/geometry.hpp"
#include "uhull/model.hpp"

namespace uhull {

// x-monotone chain in the dual plane: `left` for x <= vertices.front(),
// pieces[i] between vertices[i - 1] and vertices[i], `right` past the last
// vertex. With no vertices the chain is the single line `left`.
struct MonotoneChain {
  std::vector<Point> vertices;
  std::vector<DualLine> pieces;  // vertices.size() + 1 lines, left to right

  const DualLine& left() const { return pieces.front(); }
  const DualLine& right() const { return pieces.back(); }
  Rational at(const Rational& x) const;
};

// Mass of a group whose dual lines pass on or above q (closed), or strictly
// above (open).
Rational level_mass(const std::vector<Site>& group, const Point& q, bool closed);

// Upper boundary of {q : closed mass of the group's lines above q >= beta}.
// Throws NoLevel when beta exceeds the group's total mass or beta <= 0.
MonotoneChain beta_level(const std::vector<Site>& group, const Rational& beta);

MonotoneChain lower_envelope(const std::vector<MonotoneChain>& chains);

struct StabResult {
  std::vector<Point> points;  // where the line meets the envelope, left to right
  bool overlap = false;       // the line coincides with some dual line
};

// Walks the line's crossings with every dual line, keeping per-group masses.
StabResult line_stab_envelope(const DualLine& line, const UncertainPointSet& model, const Rational& beta);

// Closed halfplane whose boundary passes through a site of the group and whose
// open side holds less than beta of the group while its closed side holds at
// least beta.
bool is_beta_tangent(const Halfplane& h, const std::vector<Site>& group, const Rational& beta);

// Intersection of all convex sets holding at least beta of every group:
// Empty for beta = 0, WholePlane when some group has less than beta in total.
ConvexPolygon beta_hull_2d(const UncertainPointSet& model, const Rational& beta);

// Intersection of the closed halfplanes through site pairs that hold at least
// beta of every group. Exact for three or more sites in general position;
// with fewer sites the pair lines cannot close the region.
ConvexPolygon beta_hull_oracle(const UncertainPointSet& model, const Rational& beta);

}  // namespace uhull
