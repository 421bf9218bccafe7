#pragma once

#include <cstddef>
#include <vector>

#include "uhull/model.hpp"

namespace uhull {

struct WeightedPoint {
  Point location;
  Rational weight;
};
using WeightedPointSet = std::vector<WeightedPoint>;

// Minimum weight of a closed halfplane containing q.
Rational tukey_depth_2d(const Point& q, const WeightedPointSet& points);
std::size_t tukey_depth_2d(const Point& q, std::span<const Point> points);

// Greedy vertex-disjoint simplices (d + 1 indices into points) that each
// contain p in their interior.
std::vector<std::vector<std::size_t>> caratheodory_decomposition(const Point& p, std::span<const Point> points);

struct DepthBoundReport {
  std::size_t depth = 0;
  Rational lower;          // (1 - gamma)^depth
  bool lower_holds = false;  // lower <= 1 - pi, exact
  double upper = 0;        // d exp(-gamma depth / (c d^2))
  bool upper_holds = false;  // 1 - pi <= upper, in binary64
};

// Uniform-probability unipoint model only.
DepthBoundReport check_depth_bounds(const Point& q, const UncertainPointSet& model, const Rational& pi,
                                    double c = 8);

struct WeightReport {
  WeightedPointSet points;
  std::vector<std::size_t> saturated;  // sites with probability 1, given the cap weight
};

// w_i = ceil(ln(1 - p_i) / ln(1 - delta / (10 n))).
WeightReport weights_from_probabilities(const UncertainPointSet& model, double delta);

struct TukeyStructure {
  Rational gamma;
  double c = 8;
  double t0 = 0;             // (c / gamma) ln n
  std::size_t min_depth = 0; // ceil(t0): the depth every point of the region reaches
  std::size_t halfplanes = 0;
  ConvexPolygon region;
  bool empty() const { return region.is_empty(); }
};

TukeyStructure build_tukey_structure(const UncertainPointSet& model, double c = 8);

struct TukeyAnswer {
  Rational estimate;
  bool in_region = false;
  std::size_t n_q = 0;          // sites beyond the two tangent lines
  std::vector<Point> contacts;  // tangent points on the region
};

// Throws EmptyRegion when the structure's region is empty.
TukeyAnswer query_tukey(const TukeyStructure& ts, const UncertainPointSet& model, const Point& q);

}  // namespace uhull
