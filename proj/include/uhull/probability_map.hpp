#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "uhull/model.hpp"

namespace uhull {

struct MapOptions {
  std::size_t max_sites = 40;
  bool reverse_traversal = false;  // visit neighbours in the opposite order
  // Full slab snapshots are kept while slabs * (lines + 1) stays below this;
  // otherwise every k-th slab is stored and queries replay the events after it.
  std::size_t snapshot_budget = std::size_t{1} << 25;
};

struct MapFace {
  Rational probability;
  Point representative;  // interior point, original coordinates
  bool bounded = false;
};

struct MapStats {
  std::size_t vertices = 0, edges = 0, faces = 0, lines = 0;
};

struct FaceLocation {
  bool on_skeleton = false;
  std::size_t face = 0;
  Rational probability;
};

// Arrangement of every line through two sites, with the membership
// probability of each open face.
class ProbabilityMap {
 public:
  static ProbabilityMap build(const UncertainPointSet& model, const MapOptions& options = {});

  FaceLocation locate(const Point& q) const;
  MapStats stats() const { return stats_; }
  const std::vector<MapFace>& faces() const { return faces_; }
  const UncertainPointSet& model() const { return model_; }
  // Flat site indices (flatten order) of each arrangement line.
  const std::vector<std::pair<std::size_t, std::size_t>>& lines() const { return line_sites_; }
  // Pairs of faces sharing an edge, with the line that separates them.
  struct Adjacency {
    std::size_t a, b, line;
  };
  const std::vector<Adjacency>& adjacency() const { return adjacency_; }
  const MapOptions& options() const { return options_; }

  // Rebuilds the geometry and installs stored probabilities; throws
  // InvalidInput when they do not fit the rebuilt arrangement.
  static ProbabilityMap restore(const UncertainPointSet& model, const std::vector<Rational>& probabilities,
                                const MapOptions& options = {});

 private:
  struct Line {
    Rational slope, intercept;
    Rational at(const Rational& x) const { return slope * x + intercept; }
  };
  struct Event {
    std::uint32_t lo, size, first_face;
  };
  using LineId = std::uint16_t;

  void build_arrangement();
  void propagate();
  Point to_frame(const Point& p) const;
  Point from_frame(const Point& p) const;

  UncertainPointSet model_;
  MapOptions options_;
  Rational shear_;  // frame x = x + shear * y keeps every line non-vertical
  std::vector<Point> sites_;  // in the frame
  std::vector<std::pair<std::size_t, std::size_t>> line_sites_;
  std::vector<Line> lines_;
  std::vector<Rational> slab_x_;            // x of each event column, increasing
  std::vector<std::size_t> column_begin_;   // events of column c: [begin[c], begin[c+1])
  std::vector<Event> events_;
  std::size_t stride_ = 1;                  // slabs between stored snapshots
  std::vector<std::vector<LineId>> order_snap_;
  std::vector<std::vector<std::uint32_t>> face_snap_;
  std::vector<MapFace> faces_;
  std::vector<Adjacency> adjacency_;
  MapStats stats_;
};

inline ProbabilityMap build_probability_map(const UncertainPointSet& model, const MapOptions& options = {}) {
  return ProbabilityMap::build(model, options);
}
inline FaceLocation locate(const ProbabilityMap& pm, const Point& q) { return pm.locate(q); }
inline MapStats map_stats(const ProbabilityMap& pm) { return pm.stats(); }

}  // namespace uhull
