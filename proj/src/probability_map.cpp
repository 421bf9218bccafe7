#include <algorithm>
#include <tuple>

#include "factor_product.hpp"
#include "uhull/errors.hpp"
#include "uhull/probability_map.hpp"

namespace uhull {

Point ProbabilityMap::to_frame(const Point& p) const { return {p.x() + shear_ * p.y(), p.y()}; }
Point ProbabilityMap::from_frame(const Point& p) const { return {p.x() - shear_ * p.y(), p.y()}; }

namespace {

struct Birth {
  std::size_t slab;
  std::optional<std::size_t> below, above;  // bounding lines of the first trapezoid
};

}  // namespace

ProbabilityMap ProbabilityMap::build(const UncertainPointSet& model, const MapOptions& options) {
  ProbabilityMap pm = restore(model, {}, options);
  pm.propagate();
  return pm;
}

ProbabilityMap ProbabilityMap::restore(const UncertainPointSet& model, const std::vector<Rational>& probabilities,
                                       const MapOptions& options) {
  validate(model);
  if (model.dimension != 2) throw Error(ErrorCode::DimensionMismatch, "probability maps are planar");
  const std::size_t n = model.site_count();
  if (n > options.max_sites)
    throw Error(ErrorCode::CapExceeded,
                std::to_string(n) + " sites exceed the map cap of " + std::to_string(options.max_sites));

  ProbabilityMap pm;
  pm.model_ = model;
  pm.options_ = options;
  std::vector<Point> raw;
  for (const auto& r : flatten(model)) raw.push_back(*r.location);
  if (n >= 2) {
    auto report = general_position_check(std::span<const Point>(raw).subspan(1), raw[0]);
    if (!report.ok) throw Error(ErrorCode::Degenerate, report.message);
  }

  // smallest non-negative integer shear leaving no line vertical
  for (long t = 0;; ++t) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        ok = raw[j].x() - raw[i].x() + t * (raw[j].y() - raw[i].y()) != 0;
    if (ok) {
      pm.shear_ = t;
      break;
    }
  }
  for (const Point& p : raw) pm.sites_.push_back(pm.to_frame(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point &a = pm.sites_[i], &b = pm.sites_[j];
      Rational slope = (b.y() - a.y()) / (b.x() - a.x());
      pm.lines_.push_back({slope, a.y() - slope * a.x()});
      pm.line_sites_.emplace_back(i, j);
    }
  if (pm.lines_.size() > 0xFFFF) throw Error(ErrorCode::CapExceeded, "too many arrangement lines");
  pm.build_arrangement();

  if (!probabilities.empty()) {
    if (probabilities.size() != pm.faces_.size())
      throw Error(ErrorCode::InvalidInput, "stored map has " + std::to_string(probabilities.size()) +
                                               " faces but the arrangement has " + std::to_string(pm.faces_.size()));
    for (std::size_t f = 0; f < pm.faces_.size(); ++f) pm.faces_[f].probability = probabilities[f];
  }
  return pm;
}

void ProbabilityMap::build_arrangement() {
  const std::size_t L = lines_.size();

  struct Crossing {
    Rational x, y;
    LineId a, b;
  };
  std::vector<Crossing> crossings;
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j) {
      if (lines_[i].slope == lines_[j].slope) continue;
      Rational x = (lines_[j].intercept - lines_[i].intercept) / (lines_[i].slope - lines_[j].slope);
      Rational y = lines_[i].at(x);
      crossings.push_back({std::move(x), std::move(y), static_cast<LineId>(i), static_cast<LineId>(j)});
    }
  std::sort(crossings.begin(), crossings.end(), [](const Crossing& p, const Crossing& q) {
    int c = cmp(p.x, q.x);
    return c != 0 ? c < 0 : p.y < q.y;
  });

  // Vertices as (column, sorted line set).
  std::vector<std::vector<LineId>> vertex_lines;
  std::vector<std::size_t> vertex_column;
  for (std::size_t k = 0; k < crossings.size();) {
    std::size_t e = k;
    std::vector<LineId> ls;
    while (e < crossings.size() && crossings[e].x == crossings[k].x && crossings[e].y == crossings[k].y) {
      ls.push_back(crossings[e].a);
      ls.push_back(crossings[e].b);
      ++e;
    }
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    if (slab_x_.empty() || slab_x_.back() != crossings[k].x) slab_x_.push_back(crossings[k].x);
    vertex_column.push_back(slab_x_.size() - 1);
    vertex_lines.push_back(std::move(ls));
    k = e;
  }
  crossings.clear();
  crossings.shrink_to_fit();

  const std::size_t columns = slab_x_.size(), slabs = columns + 1;
  stride_ = std::max<std::size_t>(1, (slabs * (L + 1) + options_.snapshot_budget - 1) / options_.snapshot_budget);

  std::vector<LineId> order(L);
  for (std::size_t i = 0; i < L; ++i) order[i] = static_cast<LineId>(i);
  // bottom to top as x -> -infinity
  std::sort(order.begin(), order.end(), [&](LineId a, LineId b) {
    int c = cmp(lines_[a].slope, lines_[b].slope);
    return c != 0 ? c > 0 : lines_[a].intercept < lines_[b].intercept;
  });
  std::vector<std::size_t> pos(L);
  for (std::size_t p = 0; p < L; ++p) pos[order[p]] = p;

  std::vector<Birth> births;
  std::vector<bool> closed;
  std::vector<std::uint32_t> gap(L + 1);
  for (std::size_t g = 0; g <= L; ++g) {
    gap[g] = static_cast<std::uint32_t>(g);
    births.push_back({0, g > 0 ? std::optional<std::size_t>(order[g - 1]) : std::nullopt,
                      g < L ? std::optional<std::size_t>(order[g]) : std::nullopt});
    closed.push_back(false);
  }
  for (std::size_t p = 0; p < L; ++p) adjacency_.push_back({gap[p], gap[p + 1], order[p]});
  stats_.edges = L;

  order_snap_.push_back(order);
  face_snap_.push_back(gap);
  column_begin_.push_back(0);
  std::size_t v = 0;
  for (std::size_t c = 0; c < columns; ++c) {
    for (; v < vertex_lines.size() && vertex_column[v] == c; ++v) {
      const auto& ls = vertex_lines[v];
      std::size_t lo = L, hi = 0;
      for (LineId l : ls) {
        lo = std::min(lo, pos[l]);
        hi = std::max(hi, pos[l]);
      }
      const std::size_t b = ls.size();
      if (hi - lo + 1 != b) throw Error(ErrorCode::Degenerate, "lines through a vertex are not consecutive");
      std::reverse(order.begin() + lo, order.begin() + hi + 1);
      for (std::size_t p = lo; p <= hi; ++p) pos[order[p]] = p;
      const auto first = static_cast<std::uint32_t>(births.size());
      for (std::size_t t = 1; t < b; ++t) {
        closed[gap[lo + t]] = true;
        gap[lo + t] = static_cast<std::uint32_t>(births.size());
        births.push_back({c + 1, order[lo + t - 1], order[lo + t]});
        closed.push_back(false);
      }
      for (std::size_t t = 0; t < b; ++t) adjacency_.push_back({gap[lo + t], gap[lo + t + 1], order[lo + t]});
      events_.push_back({static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(b), first});
      stats_.edges += b;
    }
    column_begin_.push_back(events_.size());
    if ((c + 1) % stride_ == 0) {
      order_snap_.push_back(order);
      face_snap_.push_back(gap);
    }
  }
  stats_.vertices = vertex_lines.size();
  stats_.lines = L;

  faces_.resize(births.size());
  stats_.faces = births.size();
  for (std::size_t f = 0; f < births.size(); ++f) {
    const Birth& b = births[f];
    Rational x;
    if (columns == 0) x = 0;
    else if (b.slab == 0) x = slab_x_.front() - 1;
    else if (b.slab == columns) x = slab_x_.back() + 1;
    else x = (slab_x_[b.slab - 1] + slab_x_[b.slab]) / 2;
    Rational y;
    if (b.below && b.above) y = (lines_[*b.below].at(x) + lines_[*b.above].at(x)) / 2;
    else if (b.below) y = lines_[*b.below].at(x) + 1;
    else if (b.above) y = lines_[*b.above].at(x) - 1;
    faces_[f].representative = from_frame({x, y});
    faces_[f].bounded = b.slab > 0 && closed[f];
  }
}

void ProbabilityMap::propagate() {
  const auto refs = flatten(model_);
  const std::size_t n = refs.size(), groups = model_.group_count();
  std::vector<Rational> prob(n);
  std::vector<std::size_t> group(n);
  for (std::size_t i = 0; i < n; ++i) {
    prob[i] = *refs[i].prob;
    group[i] = refs[i].group;
  }
  Rational empty = 1;
  for (std::size_t u = 0; u < groups; ++u) empty *= 1 - model_.group_mass(u);

  // Per site i: which sites lie strictly right of q -> s_i, their mass per
  // group, and the witness term.
  std::vector<std::vector<char>> right(n, std::vector<char>(n, 0));
  std::vector<std::vector<Rational>> mass(n, std::vector<Rational>(groups, 0));
  std::vector<detail::FactorProduct<Rational>> factors(n, detail::FactorProduct<Rational>(groups));
  std::vector<Rational> witness(n);
  Rational total = 0;

  const Point root = to_frame(faces_[0].representative);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      if (x == i || orient2d(root, sites_[i], sites_[x]) >= 0) continue;
      right[i][x] = 1;
      mass[i][group[x]] += prob[x];
    }
    for (std::size_t u = 0; u < groups; ++u) factors[i].set(u, 1 - mass[i][u]);
    witness[i] = prob[i] * factors[i].product_excluding(group[i]);
    total += witness[i];
  }
  auto toggle = [&](std::size_t i, std::size_t x) {
    std::size_t u = group[x];
    right[i][x] ^= 1;
    if (right[i][x]) mass[i][u] += prob[x]; else mass[i][u] -= prob[x];
    factors[i].set(u, 1 - mass[i][u]);
    total -= witness[i];
    witness[i] = prob[i] * factors[i].product_excluding(group[i]);
    total += witness[i];
  };

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(faces_.size());
  for (const auto& e : adjacency_) {
    adj[e.a].emplace_back(e.b, e.line);
    adj[e.b].emplace_back(e.a, e.line);
  }
  if (options_.reverse_traversal)
    for (auto& a : adj) std::reverse(a.begin(), a.end());

  struct Frame {
    std::size_t face, next = 0;
    std::vector<std::pair<std::size_t, std::size_t>> undo;
  };
  std::vector<char> seen(faces_.size(), 0);
  std::vector<Frame> stack;
  seen[0] = 1;
  faces_[0].probability = 1 - empty - total;
  stack.push_back({0, 0, {}});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == adj[top.face].size()) {
      for (auto [i, x] : top.undo) toggle(i, x);
      stack.pop_back();
      continue;
    }
    auto [to, line] = adj[top.face][top.next++];
    if (seen[to]) continue;
    seen[to] = 1;
    Frame next{to, 0, {}};
    const Point r = to_frame(faces_[to].representative);
    auto [a, b] = line_sites_[line];
    for (auto [i, x] : {std::pair{a, b}, std::pair{b, a}}) {
      bool want = orient2d(r, sites_[i], sites_[x]) < 0;
      if (want != static_cast<bool>(right[i][x])) {
        toggle(i, x);
        next.undo.emplace_back(i, x);
      }
    }
    faces_[to].probability = 1 - empty - total;
    stack.push_back(std::move(next));
  }
}

FaceLocation ProbabilityMap::locate(const Point& q) const {
  if (q.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "map queries are planar");
  const Point p = to_frame(q);
  const std::size_t L = lines_.size();
  const std::size_t slab = std::lower_bound(slab_x_.begin(), slab_x_.end(), p.x()) - slab_x_.begin();

  const std::vector<LineId>* order = &order_snap_[slab / stride_];
  const std::vector<std::uint32_t>* gap = &face_snap_[slab / stride_];
  std::vector<LineId> order_copy;
  std::vector<std::uint32_t> gap_copy;
  if (slab % stride_ != 0) {
    order_copy = *order;
    gap_copy = *gap;
    for (std::size_t c = slab - slab % stride_; c < slab; ++c)
      for (std::size_t e = column_begin_[c]; e < column_begin_[c + 1]; ++e) {
        const Event& ev = events_[e];
        std::reverse(order_copy.begin() + ev.lo, order_copy.begin() + ev.lo + ev.size);
        for (std::uint32_t t = 1; t < ev.size; ++t) gap_copy[ev.lo + t] = ev.first_face + t - 1;
      }
    order = &order_copy;
    gap = &gap_copy;
  }

  std::size_t lo = 0, hi = L;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (lines_[(*order)[mid]].at(p.x()) < p.y()) lo = mid + 1; else hi = mid;
  }
  FaceLocation out;
  if (lo < L && lines_[(*order)[lo]].at(p.x()) == p.y()) {
    out.on_skeleton = true;
    return out;
  }
  out.face = (*gap)[lo];
  out.probability = faces_[out.face].probability;
  return out;
}

}  // namespace uhull
