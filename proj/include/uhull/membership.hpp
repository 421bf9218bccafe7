#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uhull/model.hpp"

namespace uhull {

struct SiteId {
  std::size_t group = 0;
  std::size_t index = 0;
  friend bool operator==(const SiteId&, const SiteId&) = default;
  friend auto operator<=>(const SiteId&, const SiteId&) = default;
};

// Probability that q-site is the witness edge of q not in CH(B): the site is
// present and no site strictly right of the ray q -> site is.
struct WitnessTerm {
  SiteId site;
  Rational probability;
};

// Direct O(n) evaluation for one site.
Rational witness_edge_probability(const Point& q, SiteId site, const UncertainPointSet& model);

// Pr(B is empty).
Rational empty_outcome_probability(const UncertainPointSet& model);

// All witness terms via one radial sweep, in flatten() order.
std::vector<WitnessTerm> witness_terms(const Point& q, const UncertainPointSet& model);

// Exact membership probability in the plane, O(n log n).
Rational membership_2d(const Point& q, const UncertainPointSet& model);

// Same sweep with binary64 probabilities. Geometry stays exact.
double membership_2d_fast(const Point& q, const UncertainPointSet& model);

// Model conditioned on the anchor being present and every excluded site
// absent. The anchor's group collapses to the anchor with probability 1;
// surviving sites of other groups are rescaled by 1 / (1 - excluded mass).
UncertainPointSet condition_model(const UncertainPointSet& model, SiteId anchor,
                                  std::span<const SiteId> excluded);

// Membership of q under the conditioned model; inputs are planar.
Rational membership_2d_conditioned(const Point& q, const UncertainPointSet& model, SiteId anchor,
                                   std::span<const SiteId> excluded);

// True iff the projection of simplex(facet sites, q) onto the first d-1
// axes meets the open ray from q' pointing away from anchor'.
bool escaping_facet_test(const Point& q, std::span<const Point> facet, const Point& anchor);

// Pr(anchor is the lowest point of B + q in the last axis and simplex(facet, q)
// is a facet of CH(B + q)). Zero whenever that event is impossible.
Rational facet_probability(const Point& q, std::span<const SiteId> facet, SiteId anchor,
                           const UncertainPointSet& model);

// Pieces of Pr(q is a vertex of CH(B + q)) = 1 - pi(q).
struct LowestPointDecomposition {
  Rational query_lowest;                // Pr(q is the lowest point)
  std::vector<SiteId> anchors;          // sites strictly below q in the last axis
  std::vector<Rational> anchor_terms;   // Pr(anchor lowest and q a vertex)
};

LowestPointDecomposition lowest_point_decomposition(const Point& q, const UncertainPointSet& model,
                                                    bool radial = false);

// Exact membership for d >= 3 by recursion on the lowest point. Throws
// DegenerateProjection when general position fails at any level.
Rational membership_dd(const Point& q, const UncertainPointSet& model);

// Same value, facet terms visited in radial order around each (d-2)-flat.
Rational membership_dd_radial(const Point& q, const UncertainPointSet& model);

// Dispatch on dimension.
Rational membership(const Point& q, const UncertainPointSet& model, bool radial = false);

}  // namespace uhull
