#include "uhull/beta_hull.hpp"

#include <algorithm>
#include <functional>

#include "uhull/errors.hpp"

namespace uhull {

namespace {

Rational crossing_x(const DualLine& a, const DualLine& b) {
  return (b.intercept - a.intercept) / (a.slope - b.slope);
}

void sort_unique(std::vector<Rational>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

void add_crossings(const std::vector<DualLine>& lines, std::vector<Rational>& xs) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i].slope != lines[j].slope) xs.push_back(crossing_x(lines[i], lines[j]));
}

// Interior sample of the j-th open interval cut out by sorted breakpoints.
Rational sample(const std::vector<Rational>& xs, std::size_t j) {
  if (xs.empty()) return 0;
  if (j == 0) return xs.front() - 1;
  if (j == xs.size()) return xs.back() + 1;
  return (xs[j - 1] + xs[j]) / 2;
}

// Piecewise-linear continuous function given by the line on each interval.
MonotoneChain assemble(const std::vector<Rational>& xs, const std::function<DualLine(const Rational&)>& line_at) {
  MonotoneChain chain;
  chain.pieces.push_back(line_at(sample(xs, 0)));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    DualLine next = line_at(sample(xs, j + 1));
    if (next == chain.pieces.back()) continue;
    chain.vertices.push_back(Point{xs[j], chain.pieces.back().at(xs[j])});
    chain.pieces.push_back(next);
  }
  return chain;
}

const DualLine& piece_at(const MonotoneChain& c, const Rational& x) {
  auto it = std::upper_bound(c.vertices.begin(), c.vertices.end(), x,
                             [](const Rational& v, const Point& p) { return v < p.x(); });
  return c.pieces[static_cast<std::size_t>(it - c.vertices.begin())];
}

bool dense(const UncertainPointSet& model, const Halfplane& h, const Rational& beta) {
  for (const auto& g : model.groups) {
    Rational mass = 0;
    for (const auto& s : g)
      if (h.contains(s.location)) mass += s.prob;
    if (mass < beta) return false;
  }
  return true;
}

// Sign of beta against 0 and every group's mass; nullopt when a polygon is
// to be computed.
std::optional<ConvexPolygon> trivial_hull(const UncertainPointSet& model, const Rational& beta) {
  validate(model);
  if (model.dimension != 2) throw Error(ErrorCode::DimensionMismatch, "beta-hulls are planar");
  if (beta < 0 || beta > 1) throw Error(ErrorCode::ProbabilityOutOfRange, "beta must lie in [0, 1]");
  if (sgn(beta) == 0) return ConvexPolygon::empty();
  for (std::size_t g = 0; g < model.group_count(); ++g)
    if (model.group_mass(g) < beta) return ConvexPolygon::whole_plane();
  if (model.groups.empty()) return ConvexPolygon::whole_plane();
  return std::nullopt;
}

// Halfplanes whose intersection is the region below the upper boundary (or,
// with `flip`, above the lower boundary).
void boundary_halfplanes(const UncertainPointSet& model, const Rational& beta, bool flip,
                         std::vector<Halfplane>& out) {
  std::vector<MonotoneChain> levels;
  for (const auto& g : model.groups) {
    std::vector<Site> sites = g;
    if (flip)
      for (auto& s : sites) s.location = Point{s.location.x(), -s.location.y()};
    levels.push_back(beta_level(sites, beta));
  }
  MonotoneChain env = lower_envelope(levels);
  // Unbounded ends of the envelope confine x between the end slopes.
  out.push_back({Rational(-1), Rational(0), -env.right().slope});
  out.push_back({Rational(1), Rational(0), env.left().slope});
  std::vector<Point> pts = env.vertices;
  if (pts.empty()) pts.push_back(Point{Rational(0), env.left().at(0)});
  const Rational yb = flip ? -1 : 1;
  // A dual point (m, t) on the envelope gives y <= m x - t.
  for (const auto& v : pts) out.push_back({-v.x(), yb, -v.y()});
}

}  // namespace

Rational MonotoneChain::at(const Rational& x) const { return piece_at(*this, x).at(x); }

Rational level_mass(const std::vector<Site>& group, const Point& q, bool closed) {
  Rational mass = 0;
  for (const auto& s : group) {
    int c = cmp(dual_of_point(s.location).at(q.x()), q.y());
    if (c > 0 || (closed && c == 0)) mass += s.prob;
  }
  return mass;
}

MonotoneChain beta_level(const std::vector<Site>& group, const Rational& beta) {
  Rational mass = 0;
  for (const auto& s : group) mass += s.prob;
  if (group.empty() || sgn(beta) <= 0 || beta > mass)
    throw Error(ErrorCode::NoLevel, "no beta-level: beta " + to_string(beta) + " against group mass " + to_string(mass));
  std::vector<DualLine> lines;
  for (const auto& s : group) lines.push_back(dual_of_point(s.location));
  std::vector<Rational> xs;
  add_crossings(lines, xs);
  sort_unique(xs);
  std::vector<std::size_t> idx(lines.size());
  return assemble(xs, [&](const Rational& x) {
    std::vector<Rational> val;
    for (const auto& l : lines) val.push_back(l.at(x));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
    Rational acc = 0;
    for (std::size_t i : idx) {
      acc += group[i].prob;
      if (acc >= beta) return lines[i];
    }
    return lines[idx.back()];
  });
}

MonotoneChain lower_envelope(const std::vector<MonotoneChain>& chains) {
  if (chains.empty()) throw Error(ErrorCode::InvalidInput, "lower envelope of no chains");
  if (chains.size() == 1) return chains.front();
  std::vector<DualLine> lines;
  std::vector<Rational> xs;
  for (const auto& c : chains) {
    for (const auto& v : c.vertices) xs.push_back(v.x());
    lines.insert(lines.end(), c.pieces.begin(), c.pieces.end());
  }
  std::sort(lines.begin(), lines.end(), [](const DualLine& a, const DualLine& b) {
    return a.slope != b.slope ? a.slope < b.slope : a.intercept < b.intercept;
  });
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  add_crossings(lines, xs);
  sort_unique(xs);
  return assemble(xs, [&](const Rational& x) {
    const DualLine* best = &piece_at(chains[0], x);
    for (std::size_t i = 1; i < chains.size(); ++i) {
      const DualLine& l = piece_at(chains[i], x);
      if (l.at(x) < best->at(x)) best = &l;
    }
    return *best;
  });
}

StabResult line_stab_envelope(const DualLine& line, const UncertainPointSet& model, const Rational& beta) {
  struct Event {
    Rational x;
    std::size_t group;
    Rational prob;
    bool above_before;
  };
  const std::size_t m = model.group_count();
  std::vector<Rational> open(m), on_line(m);
  std::vector<Event> events;
  StabResult result;
  for (std::size_t g = 0; g < m; ++g)
    for (const auto& s : model.groups[g]) {
      DualLine d = dual_of_point(s.location);
      if (d.slope == line.slope) {
        int c = cmp(d.intercept, line.intercept);
        if (c > 0) open[g] += s.prob;
        if (c == 0) {
          on_line[g] += s.prob;
          result.overlap = true;
        }
        continue;
      }
      bool above = d.slope < line.slope;  // far to the left
      if (above) open[g] += s.prob;
      events.push_back({crossing_x(d, line), g, s.prob, above});
    }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

  auto bad = [&](const Rational& closed) -> std::size_t { return closed < beta; };
  std::size_t bad_count = 0;
  for (std::size_t g = 0; g < m; ++g) bad_count += bad(open[g] + on_line[g]);

  std::vector<Rational> closed_at(m), strict_at(m);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < events.size();) {
    std::size_t j = i;
    touched.clear();
    for (; j < events.size() && events[j].x == events[i].x; ++j) {
      const auto& e = events[j];
      if (std::find(touched.begin(), touched.end(), e.group) == touched.end()) {
        touched.push_back(e.group);
        closed_at[e.group] = open[e.group] + on_line[e.group];
        strict_at[e.group] = open[e.group];
      }
      if (e.above_before) strict_at[e.group] -= e.prob;
      else closed_at[e.group] += e.prob;
    }
    std::size_t bad_here = bad_count;
    bool escapes = false;
    for (auto g : touched) {
      bad_here -= bad(open[g] + on_line[g]);
      bad_here += bad(closed_at[g]);
      escapes = escapes || strict_at[g] < beta;
    }
    if (bad_here == 0 && !escapes && result.overlap) {
      for (std::size_t g = 0; g < m && !escapes; ++g)
        if (std::find(touched.begin(), touched.end(), g) == touched.end()) escapes = open[g] < beta;
    }
    if (bad_here == 0 && escapes) result.points.push_back(Point{events[i].x, line.at(events[i].x)});
    for (auto g : touched) bad_count -= bad(open[g] + on_line[g]);
    for (std::size_t k = i; k < j; ++k) {
      const auto& e = events[k];
      if (e.above_before) open[e.group] -= e.prob;
      else open[e.group] += e.prob;
    }
    for (auto g : touched) bad_count += bad(open[g] + on_line[g]);
    i = j;
  }
  return result;
}

bool is_beta_tangent(const Halfplane& h, const std::vector<Site>& group, const Rational& beta) {
  Rational open = 0, closed = 0;
  bool touches = false;
  for (const auto& s : group) {
    int side = h.side(s.location);
    touches = touches || side == 0;
    if (side > 0) open += s.prob;
    if (side >= 0) closed += s.prob;
  }
  return touches && open < beta && closed >= beta;
}

ConvexPolygon beta_hull_2d(const UncertainPointSet& model, const Rational& beta) {
  if (auto t = trivial_hull(model, beta)) return *t;
  std::vector<Halfplane> hs;
  boundary_halfplanes(model, beta, false, hs);
  boundary_halfplanes(model, beta, true, hs);
  return halfplane_intersection(hs);
}

ConvexPolygon beta_hull_oracle(const UncertainPointSet& model, const Rational& beta) {
  if (auto t = trivial_hull(model, beta)) return *t;
  std::vector<Point> pts;
  for (const auto& g : model.groups)
    for (const auto& s : g) pts.push_back(s.location);
  std::vector<Halfplane> hs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) continue;
      Halfplane h = Halfplane::left_of(pts[i], pts[j]);
      if (dense(model, h, beta)) hs.push_back(h);
    }
  if (hs.empty()) return ConvexPolygon::whole_plane();
  return halfplane_intersection(hs);
}

}  // namespace uhull
