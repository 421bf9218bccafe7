#include <algorithm>
#include <cmath>
#include <numeric>

#include "kernel.hpp"
#include "uhull/errors.hpp"
#include "uhull/membership.hpp"
#include "uhull/tukey.hpp"

namespace uhull {

namespace {

template <class Vec>
std::vector<std::size_t> angular_order(const std::vector<Vec>& dir) {
  std::vector<std::size_t> order(dir.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return kernel::angle_less(dir[a], dir[b]); });
  return order;
}

// Heaviest set of directions inside a half-open half-turn [theta, theta + pi).
template <class Vec>
Rational heaviest_half_turn(const std::vector<Vec>& dir, const std::vector<Rational>& w) {
  const std::size_t n = dir.size();
  auto order = angular_order(dir);
  auto at = [&](std::size_t u) { return order[u % n]; };
  auto inside = [&](std::size_t i, std::size_t x) {
    int c = kernel::cross_sign(dir[i], dir[x]);
    return c > 0 || (c == 0 && kernel::same_direction(dir[i], dir[x]));
  };
  Rational best = 0, sum = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j <= i) {
      j = i;
      sum = 0;
    }
    while (j < i + n && inside(order[i], at(j))) sum += w[at(j++)];
    if (sum > best) best = sum;
    sum -= w[order[i]];
  }
  return best;
}

template <class Vec>
Rational depth_in_frame(const std::vector<Vec>& all, const std::vector<Rational>& weights) {
  Rational at_q = 0, total = 0;
  std::vector<Vec> dir;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (kernel::is_zero(all[i])) {
      at_q += weights[i];
      continue;
    }
    dir.push_back(all[i]);
    w.push_back(weights[i]);
    total += weights[i];
  }
  if (dir.empty()) return at_q;
  return at_q + total - heaviest_half_turn(dir, w);
}

// Number of points strictly right of each directed line a -> b, for one a.
template <class Vec>
void right_counts(const std::vector<Vec>& dir, const std::vector<std::size_t>& order, std::vector<std::size_t>& count) {
  const std::size_t n = dir.size();
  count.assign(n, 0);
  if (n == 0) return;
  auto at = [&](std::size_t u) { return order[u % n]; };
  auto right = [&](std::size_t i, std::size_t x) { return kernel::cross_sign(dir[i], dir[x]) < 0; };
  std::size_t lo = n, hi = n;
  while (lo - 1 >= 1 && right(order[0], at(lo - 1))) --lo;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = order[i];
    if (i > 0) {
      while (hi < i + n && !kernel::same_direction(dir[c], dir[at(hi)])) ++hi;
      while (lo < hi && !right(c, at(lo))) ++lo;
    }
    count[c] = hi - lo;
  }
}

void require_uniform(const UncertainPointSet& model) {
  validate(model);
  if (!model.is_unipoint()) throw Error(ErrorCode::InvalidInput, "Tukey tools need a unipoint model");
  if (model.dimension != 2) throw Error(ErrorCode::DimensionMismatch, "Tukey tools are planar");
  for (const auto& g : model.groups)
    if (g[0].prob != model.groups[0][0].prob)
      throw Error(ErrorCode::InvalidInput, "Tukey tools need one common probability");
}

std::vector<Point> locations(const UncertainPointSet& model) {
  std::vector<Point> out;
  for (const auto& g : model.groups)
    for (const auto& s : g) out.push_back(s.location);
  return out;
}

Rational power(Rational base, std::size_t e) {
  Rational out = 1;
  while (e) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace

Rational tukey_depth_2d(const Point& q, const WeightedPointSet& points) {
  std::vector<const Point*> pts;
  std::vector<Rational> w;
  for (const auto& p : points) {
    if (p.location.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "Tukey depth is planar");
    if (sgn(p.weight) < 0) throw Error(ErrorCode::InvalidInput, "negative weight");
    pts.push_back(&p.location);
    w.push_back(p.weight);
  }
  if (pts.empty()) return 0;
  if (auto ints = kernel::int_frame(q, pts)) return depth_in_frame(*ints, w);
  return depth_in_frame(kernel::rat_frame(q, pts), w);
}

std::size_t tukey_depth_2d(const Point& q, std::span<const Point> points) {
  WeightedPointSet wps;
  for (const auto& p : points) wps.push_back({p, Rational(1)});
  return tukey_depth_2d(q, wps).get_num().get_ui();
}

std::vector<std::vector<std::size_t>> caratheodory_decomposition(const Point& p, std::span<const Point> points) {
  const std::size_t d = p.dim();
  std::vector<std::size_t> alive(points.size());
  std::iota(alive.begin(), alive.end(), 0);
  std::vector<std::vector<std::size_t>> out;

  auto strictly_inside = [&](const std::vector<std::size_t>& simplex) {
    std::vector<Point> verts;
    for (std::size_t i : simplex) verts.push_back(points[i]);
    int s = orient_d(verts);
    if (s == 0) return false;
    for (std::size_t i = 0; i <= d; ++i) {
      Point keep = verts[i];
      verts[i] = p;
      int o = orient_d(verts);
      verts[i] = keep;
      if (o != s) return false;
    }
    return true;
  };

  while (alive.size() >= d + 1) {
    std::vector<std::size_t> idx(d + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::optional<std::vector<std::size_t>> found;
    const std::size_t m = alive.size();
    while (true) {
      std::vector<std::size_t> simplex;
      for (std::size_t i : idx) simplex.push_back(alive[i]);
      if (strictly_inside(simplex)) {
        found = simplex;
        break;
      }
      std::size_t i = d + 1;
      while (i > 0 && idx[i - 1] == m - (d + 1) + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j <= d; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) break;
    for (std::size_t v : *found) alive.erase(std::find(alive.begin(), alive.end(), v));
    out.push_back(std::move(*found));
  }
  return out;
}

DepthBoundReport check_depth_bounds(const Point& q, const UncertainPointSet& model, const Rational& pi, double c) {
  require_uniform(model);
  const Rational gamma = model.groups[0][0].prob;
  auto pts = locations(model);
  DepthBoundReport r;
  r.depth = tukey_depth_2d(q, pts);
  r.lower = power(1 - gamma, r.depth);
  r.lower_holds = r.lower <= 1 - pi;
  const double d = 2;
  r.upper = d * std::exp(-gamma.get_d() * static_cast<double>(r.depth) / (c * d * d));
  r.upper_holds = Rational(1 - pi).get_d() <= r.upper;
  return r;
}

WeightReport weights_from_probabilities(const UncertainPointSet& model, double delta) {
  validate(model);
  if (!model.is_unipoint()) throw Error(ErrorCode::InvalidInput, "weights need a unipoint model");
  if (!(delta > 0 && delta < 1)) throw Error(ErrorCode::InvalidInput, "delta must lie in (0, 1)");
  const double n = static_cast<double>(model.site_count());
  const double eta = delta / (10 * n);
  const double cap = std::ceil(std::log(10 * n / delta) * 10 * n / delta);
  WeightReport out;
  for (std::size_t i = 0; i < model.group_count(); ++i) {
    const Site& s = model.groups[i][0];
    double w;
    if (s.prob == 1) {
      w = cap;
      out.saturated.push_back(i);
    } else {
      // tolerance keeps an exact ratio of 1 from rounding up to 2
      w = std::ceil(std::log1p(-s.prob.get_d()) / std::log1p(-eta) - 1e-9);
      w = std::max(w, 1.0);
    }
    out.points.push_back({s.location, Rational(static_cast<unsigned long>(w))});
  }
  return out;
}

TukeyStructure build_tukey_structure(const UncertainPointSet& model, double c) {
  require_uniform(model);
  const std::size_t n = model.site_count();
  if (n < 2) throw Error(ErrorCode::InvalidInput, "Tukey structure needs at least two sites");
  if (!(c > 0)) throw Error(ErrorCode::InvalidInput, "c must be positive");
  TukeyStructure ts;
  ts.gamma = model.groups[0][0].prob;
  ts.c = c;
  ts.t0 = c / ts.gamma.get_d() * std::log(static_cast<double>(n));
  ts.min_depth = static_cast<std::size_t>(std::ceil(ts.t0));

  const auto pts = locations(model);
  std::vector<Halfplane> kept;
  auto run = [&](auto frame_of) {
    std::vector<std::size_t> count;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<const Point*> others;
      std::vector<std::size_t> id;
      for (std::size_t b = 0; b < n; ++b)
        if (b != a) {
          others.push_back(&pts[b]);
          id.push_back(b);
        }
      auto dir = frame_of(pts[a], others);
      auto order = angular_order(dir);
      right_counts(dir, order, count);
      std::vector<std::size_t> here;
      for (std::size_t i : order)
        if (count[i] < ts.min_depth) here.push_back(i);
      // Halfplanes through a common point whose directions span less than a
      // half-turn intersect to the cone of the two extreme ones.
      const std::size_t h = here.size();
      std::size_t first = h;
      for (std::size_t j = 0; j < h && h > 2; ++j)
        if (kernel::cross_sign(dir[here[j]], dir[here[(j + h - 1) % h]]) > 0) first = j;
      if (first < h) here = {here[first], here[(first + h - 1) % h]};
      ts.halfplanes += h;
      for (std::size_t i : here) kept.push_back(Halfplane::left_of(pts[a], pts[id[i]]));
    }
  };
  std::vector<const Point*> all;
  for (const auto& p : pts) all.push_back(&p);
  if (auto ints = kernel::int_points(all)) {
    run([&](const Point& o, const std::vector<const Point*>& ps) {
      const auto& base = (*ints)[&o - pts.data()];
      std::vector<kernel::IntVec> dir;
      dir.reserve(ps.size());
      for (const Point* p : ps) {
        const auto& v = (*ints)[p - pts.data()];
        dir.push_back({v.x - base.x, v.y - base.y});
      }
      return dir;
    });
  } else {
    run([](const Point& o, const std::vector<const Point*>& ps) { return kernel::rat_frame(o, ps); });
  }
  ts.region = halfplane_intersection(kept);
  return ts;
}

TukeyAnswer query_tukey(const TukeyStructure& ts, const UncertainPointSet& model, const Point& q) {
  if (ts.empty()) throw Error(ErrorCode::EmptyRegion, "the depth region is empty");
  if (q.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "Tukey queries are planar");
  TukeyAnswer ans;
  if (locate_in_polygon(ts.region, q) != Location::Outside) {
    ans.in_region = true;
    ans.estimate = 1;
    return ans;
  }
  const auto& v = ts.region.vertices;
  Point first = v[0], second = v[0];
  for (const Point& w : v) {
    if (orient2d(q, first, w) < 0) first = w;   // region stays left of q -> first
    if (orient2d(q, second, w) > 0) second = w;  // region stays right of q -> second
  }
  std::vector<Point> sites;
  for (const auto& g : model.groups) {
    const Point& s = g[0].location;
    if (orient2d(q, first, s) < 0 || orient2d(q, second, s) > 0) sites.push_back(s);
  }
  ans.n_q = sites.size();
  std::vector<Rational> probs(sites.size(), ts.gamma);
  ans.contacts.push_back(first);
  if (orient2d(q, first, second) != 0) ans.contacts.push_back(second);
  for (const Point& x : ans.contacts) {
    sites.push_back(x);
    probs.push_back(1);
  }
  ans.estimate = membership_2d(q, UncertainPointSet::unipoint(std::move(sites), std::move(probs)));
  return ans;
}

}  // namespace uhull
