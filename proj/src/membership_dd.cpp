#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "factor_product.hpp"
#include "uhull/errors.hpp"
#include "uhull/membership.hpp"

namespace uhull {

namespace {

[[noreturn]] void degenerate(const std::string& msg) { throw Error(ErrorCode::DegenerateProjection, msg); }

// Calls visit for every k-subset of [0, n) in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void check_levels(const Point& q, const UncertainPointSet& model) {
  std::vector<Point> sites;
  for (const auto& g : model.groups)
    for (const auto& s : g) sites.push_back(s.location);
  auto report = general_position_check(sites, q);
  if (!report.ok) degenerate(report.message);
  for (std::size_t axis = 2; axis < model.dimension; ++axis) {
    std::vector<Rational> vals{q[axis]};
    for (const auto& p : sites) vals.push_back(p[axis]);
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
      degenerate("two points share coordinate " + std::to_string(axis + 1));
  }
}

struct Flat {
  std::vector<SiteRef> refs;
  std::size_t last;
  const Rational& height(std::size_t i) const { return (*refs[i].location)[last]; }
  const Point& at(std::size_t i) const { return *refs[i].location; }
  const Rational& prob(std::size_t i) const { return *refs[i].prob; }
  std::size_t group(std::size_t i) const { return refs[i].group; }
};

int orient_with(const Point& q, const std::vector<const Point*>& mid, const Point& a, const Point& b) {
  std::vector<Point> simplex;
  simplex.reserve(mid.size() + 3);
  simplex.push_back(q);
  for (const Point* p : mid) simplex.push_back(*p);
  simplex.push_back(a);
  simplex.push_back(b);
  return orient_d(simplex);
}

bool distinct_groups(const Flat& f, std::span<const std::size_t> ids) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (f.group(ids[i]) == f.group(ids[j])) return false;
  return true;
}

// Facet event probability given the facet ids (flat), anchor (flat).
Rational facet_event(const Point& q, const Flat& f, std::span<const std::size_t> facet, std::size_t anchor,
                     std::size_t groups) {
  const Rational& ha = f.height(anchor);
  if (ha >= q[f.last]) return 0;
  for (std::size_t s : facet) {
    if (s == anchor || f.group(s) == f.group(anchor)) return 0;
    if (f.height(s) < ha) return 0;
  }
  if (!distinct_groups(f, facet)) return 0;

  std::vector<const Point*> mid;
  for (std::size_t s : facet) mid.push_back(&f.at(s));
  const Point* last = mid.back();
  mid.pop_back();
  int anchor_side = orient_with(q, mid, *last, f.at(anchor));
  if (anchor_side == 0) degenerate("anchor lies on a facet hyperplane");

  std::vector<Rational> gone(groups, 0);
  for (std::size_t x = 0; x < f.refs.size(); ++x) {
    if (x == anchor || std::find(facet.begin(), facet.end(), x) != facet.end()) continue;
    bool out = f.height(x) < ha;
    if (!out) {
      int side = orient_with(q, mid, *last, f.at(x));
      if (side == 0) degenerate("site lies on a facet hyperplane");
      out = side != anchor_side;
    }
    if (out) gone[f.group(x)] += f.prob(x);
  }
  Rational p = f.prob(anchor);
  for (std::size_t s : facet) p *= f.prob(s);
  for (std::size_t u = 0; u < groups; ++u) {
    if (u == f.group(anchor)) continue;
    bool in_facet = false;
    for (std::size_t s : facet) in_facet |= f.group(s) == u;
    if (!in_facet) p *= 1 - gone[u];
  }
  return p;
}

bool escaping(const Point& q, const Flat& f, std::span<const std::size_t> facet, std::size_t anchor) {
  std::vector<Point> pts;
  for (std::size_t s : facet) pts.push_back(f.at(s));
  return escaping_facet_test(q, pts, f.at(anchor));
}

// Sum over anchors of the facet terms, visiting each facet once per anchor.
std::map<std::size_t, Rational> naive_facets(const Point& q, const Flat& f, std::size_t groups,
                                             const std::vector<std::size_t>& anchors) {
  std::map<std::size_t, Rational> sum;
  std::size_t d = f.last + 1;
  for (std::size_t a : anchors) {
    Rational& acc = sum[a];
    acc = 0;
    for_each_subset(f.refs.size(), d - 1, [&](const std::vector<std::size_t>& facet) {
      Rational p = facet_event(q, f, facet, a, groups);
      if (sgn(p) != 0 && escaping(q, f, facet, a)) acc += p;
    });
  }
  return sum;
}

// Radial variant: for every (d-2)-subset L sort the other sites around the
// flat through q and L, then sweep each anchor with two windows holding the
// sites strictly right and strictly left of the current facet hyperplane.
std::map<std::size_t, Rational> radial_facets(const Point& q, const Flat& f, std::size_t groups,
                                              const std::vector<std::size_t>& anchors) {
  std::map<std::size_t, Rational> sum;
  for (std::size_t a : anchors) sum[a] = 0;
  const std::size_t n = f.refs.size();
  const std::size_t d = f.last + 1;

  for_each_subset(n, d - 2, [&](const std::vector<std::size_t>& flat) {
    if (!distinct_groups(f, flat)) return;
    std::vector<const Point*> mid;
    for (std::size_t s : flat) mid.push_back(&f.at(s));
    std::vector<std::size_t> ord;
    for (std::size_t x = 0; x < n; ++x)
      if (std::find(flat.begin(), flat.end(), x) == flat.end()) ord.push_back(x);
    if (ord.size() < 2) return;
    auto orient = [&](std::size_t x, std::size_t y) { return orient_with(q, mid, f.at(x), f.at(y)); };
    const std::size_t ref = ord[0];
    std::vector<int> half(n, 0);
    for (std::size_t x : ord) {
      if (x == ref) continue;
      int o = orient(ref, x);
      if (o == 0) degenerate("two sites are coplanar with a flat through the query");
      half[x] = o > 0 ? 0 : 1;
    }
    std::sort(ord.begin(), ord.end(), [&](std::size_t x, std::size_t y) {
      if (x == y) return false;
      if (half[x] != half[y]) return half[x] < half[y];
      if (x == ref) return true;
      if (y == ref) return false;
      return orient(x, y) > 0;
    });
    const std::size_t m = ord.size();
    std::size_t flat_max = flat.empty() ? 0 : flat.back();

    for (std::size_t a : anchors) {
      if (std::find(flat.begin(), flat.end(), a) != flat.end()) continue;
      bool clash = false;
      for (std::size_t s : flat) clash |= f.group(s) == f.group(a) || f.height(s) < f.height(a);
      if (clash) continue;

      std::vector<bool> below(n, false);
      std::vector<Rational> base(groups, 0), total(groups, 0), right(groups, 0), current(groups, 0);
      for (std::size_t x = 0; x < n; ++x) {
        below[x] = f.height(x) < f.height(a) && x != a;
        if (below[x]) base[f.group(x)] += f.prob(x);
      }
      for (std::size_t x : ord)
        if (!below[x]) total[f.group(x)] += f.prob(x);
      detail::FactorProduct<Rational> right_f(groups), left_f(groups);
      auto refresh = [&](std::size_t u) {
        right_f.set(u, 1 - base[u] - right[u]);
        left_f.set(u, 1 - base[u] - (total[u] - right[u] - current[u]));
      };
      auto shift = [&](std::vector<Rational>& v, std::size_t x, int sign) {
        if (below[x]) return;
        if (sign > 0) v[f.group(x)] += f.prob(x); else v[f.group(x)] -= f.prob(x);
        refresh(f.group(x));
      };
      for (std::size_t u = 0; u < groups; ++u) refresh(u);

      auto at = [&](std::size_t unrolled) { return ord[unrolled % m]; };
      auto right_of = [&](std::size_t c, std::size_t x) {
        if (x == c) return false;
        int o = orient(c, x);
        if (o == 0) degenerate("two sites are coplanar with a flat through the query");
        return o < 0;
      };

      Rational acc = 0;
      std::size_t lo = m;
      while (lo - 1 >= 1 && right_of(ord[0], at(lo - 1))) shift(right, at(--lo), +1);
      for (std::size_t k = 0; k < m; ++k) {
        std::size_t c = ord[k];
        shift(current, c, +1);
        if (c != a && !below[c] && c > flat_max && f.group(c) != f.group(a)) {
          std::vector<std::size_t> facet = flat;
          facet.push_back(c);
          if (distinct_groups(f, facet)) {
            int side = orient(c, a);
            if (side == 0) degenerate("anchor lies on a facet hyperplane");
            if (escaping(q, f, facet, a)) {
              std::vector<std::size_t> skip{f.group(a)};
              for (std::size_t s : facet) skip.push_back(f.group(s));
              Rational p = f.prob(a);
              for (std::size_t s : facet) p *= f.prob(s);
              p *= side > 0 ? right_f.product_excluding(skip) : left_f.product_excluding(skip);
              acc += p;
            }
          }
        }
        shift(current, c, -1);
        if (k + 1 == m) break;
        shift(right, c, +1);
        std::size_t next = ord[k + 1];
        while (lo < k + 1 + m && !right_of(next, at(lo))) shift(right, at(lo++), -1);
      }
      sum[a] += acc;
    }
  });
  return sum;
}

Rational membership_unchecked(const Point& q, const UncertainPointSet& model, bool radial);

LowestPointDecomposition decompose(const Point& q, const UncertainPointSet& model, bool radial) {
  Flat f{flatten(model), model.dimension - 1};
  const std::size_t groups = model.group_count();
  const Rational& hq = q[f.last];
  LowestPointDecomposition out;

  std::vector<Rational> under(groups, 0);
  for (std::size_t x = 0; x < f.refs.size(); ++x)
    if (f.height(x) < hq) under[f.group(x)] += f.prob(x);
  out.query_lowest = 1;
  for (const Rational& m : under) out.query_lowest *= 1 - m;

  std::vector<std::size_t> anchors;
  for (std::size_t x = 0; x < f.refs.size(); ++x)
    if (f.height(x) < hq) anchors.push_back(x);
  auto facets = radial ? radial_facets(q, f, groups, anchors) : naive_facets(q, f, groups, anchors);

  Point q_low = project(q, model.dimension - 1);
  for (std::size_t a : anchors) {
    std::vector<SiteId> excluded;
    std::vector<Rational> gone(groups, 0);
    for (std::size_t x = 0; x < f.refs.size(); ++x) {
      if (x == a || !(f.height(x) < f.height(a))) continue;
      excluded.push_back({f.refs[x].group, f.refs[x].index});
      gone[f.group(x)] += f.prob(x);
    }
    Rational lowest = f.prob(a);
    for (std::size_t u = 0; u < groups; ++u)
      if (u != f.group(a)) lowest *= 1 - gone[u];
    Rational term = facets[a];
    if (sgn(lowest) != 0) {
      UncertainPointSet cond = condition_model(model, {f.refs[a].group, f.refs[a].index}, excluded);
      cond.dimension = model.dimension - 1;
      for (auto& g : cond.groups)
        for (auto& s : g) s.location = project(s.location, cond.dimension);
      term += lowest * (1 - membership_unchecked(q_low, cond, radial));
    }
    out.anchors.push_back({f.refs[a].group, f.refs[a].index});
    out.anchor_terms.push_back(std::move(term));
  }
  return out;
}

Rational membership_unchecked(const Point& q, const UncertainPointSet& model, bool radial) {
  if (model.dimension == 2) return membership_2d(q, model);
  auto parts = decompose(q, model, radial);
  Rational vertex = parts.query_lowest;
  for (const Rational& t : parts.anchor_terms) vertex += t;
  return 1 - vertex;
}

void require_dd(const Point& q, const UncertainPointSet& model) {
  if (model.dimension < 2 || q.dim() != model.dimension)
    throw Error(ErrorCode::DimensionMismatch, "query dimension does not match the model");
  validate(model);
  check_levels(q, model);
}

}  // namespace

bool escaping_facet_test(const Point& q, std::span<const Point> facet, const Point& anchor) {
  const std::size_t k = q.dim() - 1;
  if (facet.size() != k) throw Error(ErrorCode::InvalidInput, "facet needs d - 1 sites");
  // Solve sum_j lambda_j (p_j' - q') = q' - anchor' and require every lambda_j > 0.
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
  std::vector<Rational> rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r][c] = facet[c][r] - q[r];
    rhs[r] = q[r] - anchor[r];
  }
  int base = sgn(determinant(m));
  if (base == 0) return false;
  for (std::size_t c = 0; c < k; ++c) {
    auto mc = m;
    for (std::size_t r = 0; r < k; ++r) mc[r][c] = rhs[r];
    if (sgn(determinant(mc)) != base) return false;
  }
  return true;
}

Rational facet_probability(const Point& q, std::span<const SiteId> facet, SiteId anchor,
                           const UncertainPointSet& model) {
  Flat f{flatten(model), model.dimension - 1};
  auto flat_of = [&](SiteId id) {
    for (std::size_t i = 0; i < f.refs.size(); ++i)
      if (f.refs[i].group == id.group && f.refs[i].index == id.index) return i;
    throw Error(ErrorCode::InvalidInput, "unknown site");
  };
  if (facet.size() + 1 != model.dimension) throw Error(ErrorCode::InvalidInput, "facet needs d - 1 sites");
  std::vector<std::size_t> ids;
  for (SiteId s : facet) ids.push_back(flat_of(s));
  return facet_event(q, f, ids, flat_of(anchor), model.group_count());
}

LowestPointDecomposition lowest_point_decomposition(const Point& q, const UncertainPointSet& model, bool radial) {
  require_dd(q, model);
  if (model.dimension < 3) throw Error(ErrorCode::DimensionMismatch, "decomposition needs d >= 3");
  return decompose(q, model, radial);
}

Rational membership_dd(const Point& q, const UncertainPointSet& model) {
  require_dd(q, model);
  return membership_unchecked(q, model, false);
}

Rational membership_dd_radial(const Point& q, const UncertainPointSet& model) {
  require_dd(q, model);
  return membership_unchecked(q, model, true);
}

Rational membership(const Point& q, const UncertainPointSet& model, bool radial) {
  if (model.dimension == 2) {
    validate(model);
    return membership_2d(q, model);
  }
  return radial ? membership_dd_radial(q, model) : membership_dd(q, model);
}

}  // namespace uhull
