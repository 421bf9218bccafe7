#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uhull/model.hpp"

namespace uhull {

// Outcomes sampled once, with their hulls, so that a query is the fraction of
// sampled hulls containing it.
class MonteCarloIndex {
 public:
  using Sample = std::vector<std::optional<std::size_t>>;  // chosen site per group

  // ceil((d^2 ln n + ln(2 / delta)) / (2 eps^2))
  static std::size_t sample_count(std::size_t n, std::size_t d, double eps, double delta);

  static MonteCarloIndex build(const UncertainPointSet& model, double eps, double delta, std::uint64_t seed);
  // Reuses stored samples instead of drawing them again.
  static MonteCarloIndex restore(const UncertainPointSet& model, double eps, double delta, std::uint64_t seed,
                                 std::vector<Sample> samples);

  // Draws sample j; depends only on (seed, j).
  static Sample draw(const UncertainPointSet& model, std::uint64_t seed, std::uint64_t j);

  std::size_t hits(const Point& q) const;
  Rational query(const Point& q) const;

  std::size_t size() const { return samples_.size(); }
  double epsilon() const { return eps_; }
  double delta() const { return delta_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Sample>& samples() const { return samples_; }
  const UncertainPointSet& model() const { return model_; }

 private:
  struct Plane {
    std::vector<Rational> normal;
    Rational offset;  // inside: normal . x <= offset
  };
  struct Hull {
    ConvexPolygon polygon;           // d = 2
    std::vector<Plane> planes;       // d = 3 with a full-dimensional hull
    std::vector<Point> points;       // everything else
    bool use_planes = false;
  };
  void prepare();

  UncertainPointSet model_;
  double eps_ = 0, delta_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Sample> samples_;
  std::vector<Hull> hulls_;
};

inline MonteCarloIndex build_mc_index(const UncertainPointSet& model, double eps, double delta, std::uint64_t seed) {
  return MonteCarloIndex::build(model, eps, delta, seed);
}
inline Rational query_mc(const MonteCarloIndex& index, const Point& q) { return index.query(q); }

}  // namespace uhull
