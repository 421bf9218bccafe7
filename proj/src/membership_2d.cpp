#include <algorithm>
#include <numeric>

#include "factor_product.hpp"
#include "kernel.hpp"
#include "uhull/errors.hpp"
#include "uhull/membership.hpp"

namespace uhull {

namespace {

template <class Prob>
Prob prob_cast(const Rational& r);
template <>
Rational prob_cast<Rational>(const Rational& r) { return r; }
template <>
double prob_cast<double>(const Rational& r) { return r.get_d(); }

void require_planar(const Point& q, const UncertainPointSet& model) {
  if (model.dimension != 2 || q.dim() != 2)
    throw Error(ErrorCode::DimensionMismatch, "planar membership needs 2-dimensional sites and query");
}

[[noreturn]] void collinear(std::size_t a, std::size_t b) {
  throw Error(ErrorCode::Degenerate,
              "query is collinear with sites " + std::to_string(a) + " and " + std::to_string(b));
}

// Witness probability of every site (flatten order) by one radial sweep.
// The window holds the sites strictly right of q -> current, which form the
// circular run just before the current site in counter-clockwise order.
template <class Vec, class Prob>
std::vector<Prob> sweep(const std::vector<Vec>& dir, const std::vector<SiteRef>& refs, std::size_t groups) {
  const std::size_t n = dir.size();
  std::vector<Prob> witness(n, Prob(0));
  if (n == 0) return witness;
  for (std::size_t i = 0; i < n; ++i)
    if (kernel::is_zero(dir[i]))
      throw Error(ErrorCode::Degenerate, "query coincides with site " + std::to_string(i));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return kernel::angle_less(dir[a], dir[b]); });
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (kernel::same_direction(dir[order[k]], dir[order[k + 1]])) collinear(order[k], order[k + 1]);
  for (std::size_t s = 0; s < n; ++s) {
    Vec back = kernel::negate(dir[s]);
    auto it = std::lower_bound(order.begin(), order.end(), back, [&](std::size_t a, const Vec& v) {
      return kernel::angle_less(dir[a], v);
    });
    std::size_t at = it == order.end() ? order[0] : *it;
    if (kernel::same_direction(dir[at], back)) collinear(s, at);
  }

  std::vector<Prob> prob(n);
  for (std::size_t i = 0; i < n; ++i) prob[i] = prob_cast<Prob>(*refs[i].prob);

  detail::FactorProduct<Prob> factors(groups);
  std::vector<Prob> mass(groups, Prob(0));
  std::vector<std::size_t> count(groups, 0);
  auto add = [&](std::size_t s) {
    std::size_t g = refs[s].group;
    mass[g] += prob[s];
    ++count[g];
    factors.set(g, Prob(1) - mass[g]);
  };
  auto remove = [&](std::size_t s) {
    std::size_t g = refs[s].group;
    if (--count[g] == 0) mass[g] = Prob(0); else mass[g] -= prob[s];
    factors.set(g, Prob(1) - mass[g]);
  };
  auto at = [&](std::size_t unrolled) { return order[unrolled % n]; };
  auto right_of = [&](std::size_t c, std::size_t x) { return kernel::cross_sign(dir[c], dir[x]) < 0; };

  std::size_t lo = n;
  while (lo - 1 >= 1 && right_of(order[0], at(lo - 1))) add(at(--lo));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t c = order[k];
    witness[c] = prob[c] * factors.product_excluding(refs[c].group);
    if (k + 1 == n) break;
    add(c);
    std::size_t next = order[k + 1];
    while (lo < k + 1 + n && !right_of(next, at(lo))) remove(at(lo++));
  }
  return witness;
}

template <class Prob>
std::vector<Prob> sweep_model(const Point& q, const UncertainPointSet& model) {
  auto refs = flatten(model);
  std::vector<const Point*> pts;
  pts.reserve(refs.size());
  for (const auto& r : refs) pts.push_back(r.location);
  if (auto ints = kernel::int_frame(q, pts)) return sweep<kernel::IntVec, Prob>(*ints, refs, model.group_count());
  return sweep<kernel::RatVec, Prob>(kernel::rat_frame(q, pts), refs, model.group_count());
}

}  // namespace

Rational empty_outcome_probability(const UncertainPointSet& model) {
  Rational out = 1;
  for (std::size_t g = 0; g < model.group_count(); ++g) out *= 1 - model.group_mass(g);
  return out;
}

Rational witness_edge_probability(const Point& q, SiteId site, const UncertainPointSet& model) {
  require_planar(q, model);
  const Site& s = model.groups.at(site.group).at(site.index);
  if (s.location == q) throw Error(ErrorCode::Degenerate, "query coincides with a site");
  std::vector<Rational> right(model.group_count(), 0);
  for (std::size_t g = 0; g < model.group_count(); ++g) {
    for (std::size_t i = 0; i < model.groups[g].size(); ++i) {
      if (g == site.group && i == site.index) continue;
      const Point& x = model.groups[g][i].location;
      int o = orient2d(q, s.location, x);
      if (o == 0) throw Error(ErrorCode::Degenerate, "query is collinear with two sites");
      if (o < 0) right[g] += model.groups[g][i].prob;
    }
  }
  Rational out = s.prob;
  for (std::size_t g = 0; g < model.group_count(); ++g)
    if (g != site.group) out *= 1 - right[g];
  return out;
}

std::vector<WitnessTerm> witness_terms(const Point& q, const UncertainPointSet& model) {
  require_planar(q, model);
  auto w = sweep_model<Rational>(q, model);
  auto refs = flatten(model);
  std::vector<WitnessTerm> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({{refs[i].group, refs[i].index}, std::move(w[i])});
  return out;
}

Rational membership_2d(const Point& q, const UncertainPointSet& model) {
  require_planar(q, model);
  Rational out = 1 - empty_outcome_probability(model);
  for (const Rational& w : sweep_model<Rational>(q, model)) out -= w;
  return out;
}

double membership_2d_fast(const Point& q, const UncertainPointSet& model) {
  require_planar(q, model);
  double empty = 1;
  for (const auto& g : model.groups) {
    double m = 0;
    for (const auto& s : g) m += s.prob.get_d();
    empty *= 1 - m;
  }
  double out = 1 - empty;
  for (double w : sweep_model<double>(q, model)) out -= w;
  return std::clamp(out, 0.0, 1.0);
}

UncertainPointSet condition_model(const UncertainPointSet& model, SiteId anchor, std::span<const SiteId> excluded) {
  const Site& a = model.groups.at(anchor.group).at(anchor.index);
  std::vector<std::vector<bool>> drop(model.group_count());
  for (std::size_t g = 0; g < model.group_count(); ++g) drop[g].assign(model.groups[g].size(), false);
  for (const SiteId& e : excluded) {
    if (e == anchor) throw Error(ErrorCode::InvalidInput, "anchor cannot be excluded");
    drop.at(e.group).at(e.index) = true;
  }
  UncertainPointSet out;
  out.dimension = model.dimension;
  out.kind = model.kind;
  out.groups.resize(model.group_count());
  for (std::size_t g = 0; g < model.group_count(); ++g) {
    if (g == anchor.group) {
      out.groups[g].push_back({a.location, Rational(1)});
      continue;
    }
    Rational gone = 0;
    for (std::size_t i = 0; i < model.groups[g].size(); ++i)
      if (drop[g][i]) gone += model.groups[g][i].prob;
    if (gone == 1) continue;  // the whole group is surely absent
    Rational keep = 1 / (1 - gone);
    for (std::size_t i = 0; i < model.groups[g].size(); ++i)
      if (!drop[g][i]) out.groups[g].push_back({model.groups[g][i].location, model.groups[g][i].prob * keep});
  }
  return out;
}

Rational membership_2d_conditioned(const Point& q, const UncertainPointSet& model, SiteId anchor,
                                   std::span<const SiteId> excluded) {
  return membership_2d(q, condition_model(model, anchor, excluded));
}

}  // namespace uhull
