#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

#include "uhull/membership.hpp"
#include "uhull/model.hpp"

namespace uhull {

inline void PrintTo(const Point& p, std::ostream* os) { *os << to_string(p); }

inline void PrintTo(const ConvexPolygon& poly, std::ostream* os) {
  static const char* kinds[] = {"empty", "point", "segment", "polygon", "unbounded", "whole-plane"};
  *os << kinds[static_cast<int>(poly.kind)];
  for (const auto& v : poly.vertices) *os << " " << to_string(v);
}

}  // namespace uhull

namespace uhull::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  Rational coord(std::int64_t range = 100) {
    Rational r(integer(-range, range), integer(1, 4));
    r.canonicalize();
    return r;
  }

  Point point(std::size_t d, std::int64_t range = 100) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < d; ++i) c.push_back(coord(range));
    return Point(std::move(c));
  }

  Rational prob() {
    Rational p(integer(1, 16), 16);
    p.canonicalize();
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Point> all_sites(const UncertainPointSet& m) {
  std::vector<Point> out;
  for (const auto& g : m.groups)
    for (const auto& s : g) out.push_back(s.location);
  return out;
}

using IntPair = std::pair<std::int64_t, std::int64_t>;

// Planar coordinates scaled by 12, exact for denominators up to 4.
inline IntPair scaled(const Point& p) {
  auto v = [](const Rational& r) { return Rational(r * 12).get_num().get_si(); };
  return {v(p.x()), v(p.y())};
}

// Reduced, sign-normalized direction of b - a.
inline IntPair line_key(IntPair a, IntPair b) {
  std::int64_t dx = b.first - a.first, dy = b.second - a.second;
  std::int64_t g = std::gcd(dx, dy);
  if (g == 0) return {0, 0};
  dx /= g;
  dy /= g;
  if (dy < 0 || (dy == 0 && dx < 0)) dx = -dx, dy = -dy;
  return {dx, dy};
}

// True when no direction from `from` repeats and no point coincides with it.
inline bool distinct_directions(IntPair from, const std::vector<IntPair>& pts, std::size_t skip) {
  std::vector<IntPair> keys;
  keys.reserve(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (j != skip) keys.push_back(line_key(from, pts[j]));
  std::sort(keys.begin(), keys.end());
  if (!keys.empty() && keys.front() == IntPair{0, 0}) return false;
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

inline std::vector<IntPair> scaled(const std::vector<Point>& pts) {
  std::vector<IntPair> out;
  for (const auto& p : pts) out.push_back(scaled(p));
  return out;
}

inline bool planar_general_position(const std::vector<Point>& sites, const Point& q) {
  auto s = scaled(sites);
  if (!distinct_directions(scaled(q), s, s.size())) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!distinct_directions(s[i], s, i)) return false;
  return true;
}

// Sites and q in general position, with distinct coordinates on every axis
// past the second.
inline bool well_placed(const std::vector<Point>& sites, const Point& q) {
  if (q.dim() == 2) return planar_general_position(sites, q);
  if (!general_position_check(sites, q).ok) return false;
  for (std::size_t axis = 2; axis < q.dim(); ++axis) {
    std::vector<Rational> v{q[axis]};
    for (const auto& p : sites) v.push_back(p[axis]);
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  }
  return true;
}

inline std::vector<Point> spread_sites(Gen& g, std::size_t n, std::size_t d, std::int64_t range = 100) {
  while (true) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(g.point(d, range));
    Point probe = g.point(d, range);
    if (well_placed(pts, probe)) return pts;
  }
}

inline UncertainPointSet random_unipoint(Gen& g, std::size_t n, std::size_t d = 2, std::int64_t range = 100) {
  auto pts = spread_sites(g, n, d, range);
  std::vector<Rational> probs;
  for (std::size_t i = 0; i < n; ++i) probs.push_back(g.prob());
  return UncertainPointSet::unipoint(std::move(pts), std::move(probs));
}

inline UncertainPointSet random_multipoint(Gen& g, std::size_t groups, std::size_t per_group, std::size_t d = 2,
                                           std::int64_t range = 100) {
  auto pts = spread_sites(g, groups * per_group, d, range);
  std::vector<std::vector<Site>> gs(groups);
  for (std::size_t u = 0; u < groups; ++u) {
    bool full = g.integer(0, 3) == 0;  // some groups carry mass exactly 1
    std::int64_t cap = 16 / static_cast<std::int64_t>(per_group), used = 0;
    for (std::size_t v = 0; v < per_group; ++v) {
      std::int64_t share = v + 1 == per_group && full ? 16 - used : g.integer(1, cap);
      used += share;
      Rational p(share, 16);
      p.canonicalize();
      gs[u].push_back({pts[u * per_group + v], p});
    }
  }
  return UncertainPointSet::multipoint(std::move(gs));
}

inline Point random_query(Gen& g, const UncertainPointSet& m, std::int64_t range = 100) {
  auto sites = all_sites(m);
  auto ints = m.dimension == 2 ? scaled(sites) : std::vector<IntPair>{};
  while (true) {
    Point q = g.point(m.dimension, range);
    if (m.dimension == 2 ? distinct_directions(scaled(q), ints, ints.size()) : well_placed(sites, q)) return q;
  }
}

// Groups of 1..3 sites, at least three sites in all; about half of the
// groups carry mass exactly 1.
inline UncertainPointSet random_groups(Gen& g, std::size_t max_sites = 12) {
  std::size_t m = g.integer(1, 4);
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sizes.push_back(g.integer(1, 3));
    n += sizes.back();
  }
  while (n > max_sites) n -= sizes.back(), sizes.pop_back();
  while (n < 3) {
    sizes.push_back(1);
    ++n;
  }
  auto pts = uhull::testing::spread_sites(g, n, 2, 30);
  std::vector<std::vector<Site>> groups;
  std::size_t k = 0;
  for (auto size : sizes) {
    bool full = g.integer(0, 1) == 0;
    std::vector<std::int64_t> share(size);
    std::int64_t left = 16;
    for (std::size_t v = 0; v < size; ++v) {
      std::int64_t rest = static_cast<std::int64_t>(size - v - 1);
      share[v] = v + 1 == size && full ? left : g.integer(1, left - rest);
      left -= share[v];
    }
    std::vector<Site> grp;
    for (auto s : share) {
      Rational p(s, 16);
      p.canonicalize();
      grp.push_back({pts[k++], p});
    }
    groups.push_back(std::move(grp));
  }
  return UncertainPointSet::multipoint(std::move(groups));
}

}  // namespace uhull::testing
