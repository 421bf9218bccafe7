#include "uhull/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "uhull/errors.hpp"

namespace uhull {

Point parse_point(const std::vector<std::string>& coords) {
  Point p;
  p.coords.reserve(coords.size());
  for (const auto& c : coords) p.coords.push_back(parse_rational(c));
  return p;
}

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += ", ";
    out += to_string(p[i]);
  }
  return out + ")";
}

Point project(const Point& p, std::size_t k) {
  return Point(std::vector<Rational>(p.coords.begin(), p.coords.begin() + k));
}

int orient2d(const Point& a, const Point& b, const Point& c) {
  Rational det = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
  return sgn(det);
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

int orient_d(std::span<const Point> simplex) {
  if (simplex.empty()) throw Error(ErrorCode::DimensionMismatch, "empty simplex");
  const std::size_t d = simplex.size() - 1;
  for (const auto& p : simplex) {
    if (p.dim() != d) {
      throw Error(ErrorCode::DimensionMismatch,
                  "orient_d needs d + 1 points of dimension d");
    }
  }
  if (d == 2) return orient2d(simplex[0], simplex[1], simplex[2]);
  if (d == 3) {
    const Point& o = simplex[0];
    Rational a[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) a[r][c] = simplex[r + 1][c] - o[c];
    Rational det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    return sgn(det);
  }
  std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) rows[r][c] = simplex[r + 1][c] - simplex[0][c];
  return sgn(determinant(std::move(rows)));
}

Halfplane Halfplane::left_of(const Point& p, const Point& r) {
  Rational dx = r.x() - p.x();
  Rational dy = r.y() - p.y();
  return Halfplane{dy, -dx, dy * p.x() - dx * p.y()};
}

ConvexPolygon ConvexPolygon::from_ccw(std::vector<Point> ccw) {
  ConvexPolygon poly;
  if (ccw.empty()) return poly;
  auto smallest = std::min_element(ccw.begin(), ccw.end());
  std::rotate(ccw.begin(), smallest, ccw.end());
  poly.kind = ccw.size() == 1   ? PolygonKind::Point
              : ccw.size() == 2 ? PolygonKind::Segment
                                : PolygonKind::Polygon;
  poly.vertices = std::move(ccw);
  return poly;
}

bool operator==(const ConvexPolygon& a, const ConvexPolygon& b) {
  return a.kind == b.kind && a.vertices == b.vertices;
}

std::string_view to_string(Location loc) {
  switch (loc) {
    case Location::Inside: return "INSIDE";
    case Location::Boundary: return "BOUNDARY";
    case Location::Outside: return "OUTSIDE";
  }
  return "?";
}

ConvexPolygon convex_hull_2d(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return ConvexPolygon::from_ccw(std::move(pts));

  // Andrew's monotone chain, dropping collinear points.
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return ConvexPolygon::from_ccw(std::move(hull));
}

namespace {

bool on_segment(const Point& a, const Point& b, const Point& q) {
  if (orient2d(a, b, q) != 0) return false;
  return std::min(a.x(), b.x()) <= q.x() && q.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= q.y() && q.y() <= std::max(a.y(), b.y());
}

}  // namespace

Location locate_in_polygon(const ConvexPolygon& poly, const Point& q) {
  const auto& v = poly.vertices;
  switch (poly.kind) {
    case PolygonKind::Empty: return Location::Outside;
    case PolygonKind::WholePlane: return Location::Inside;
    case PolygonKind::Point: return v[0] == q ? Location::Boundary : Location::Outside;
    case PolygonKind::Segment:
      return on_segment(v[0], v[1], q) ? Location::Boundary : Location::Outside;
    case PolygonKind::Polygon:
    case PolygonKind::Unbounded: break;
  }
  const std::size_t n = v.size();
  const int first = orient2d(v[0], v[1], q);
  const int last = orient2d(v[0], v[n - 1], q);
  if (first < 0 || last > 0) return Location::Outside;

  // Largest i in [1, n - 2] with q left of or on v0 -> vi.
  std::size_t lo = 1, hi = n - 2;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (orient2d(v[0], v[mid], q) >= 0) lo = mid; else hi = mid - 1;
  }
  const int edge = orient2d(v[lo], v[lo + 1], q);
  if (edge < 0) return Location::Outside;
  if (edge == 0) return Location::Boundary;
  if ((lo == 1 && first == 0) || (lo + 1 == n - 1 && last == 0)) return Location::Boundary;
  return Location::Inside;
}

namespace {

// Row-reduces vectors; returns indices of a maximal independent subset.
std::vector<std::size_t> independent_rows(const std::vector<std::vector<Rational>>& rows,
                                          std::vector<std::size_t>* pivot_cols) {
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<Rational> v = rows[r];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (sgn(v[pivots[b]]) == 0) continue;
      Rational f = v[pivots[b]] / basis[b][pivots[b]];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * basis[b][c];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    basis.push_back(std::move(v));
    chosen.push_back(r);
  }
  if (pivot_cols) *pivot_cols = pivots;
  return chosen;
}

// Normal n of the hyperplane through d points in R^d: n . (x - p0) equals
// det(p1 - p0, ..., p_{d-1} - p0, x - p0).
std::vector<Rational> hyperplane_normal(const std::vector<const Point*>& pts) {
  const std::size_t d = pts.size();
  std::vector<std::vector<Rational>> m(d - 1, std::vector<Rational>(d));
  for (std::size_t r = 0; r + 1 < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m[r][c] = (*pts[r + 1])[c] - (*pts[0])[c];
  std::vector<Rational> normal(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<Rational>> minor(d - 1, std::vector<Rational>(d - 1));
    for (std::size_t r = 0; r + 1 < d; ++r)
      for (std::size_t c = 0, cc = 0; c < d; ++c)
        if (c != j) minor[r][cc++] = m[r][c];
    Rational det = determinant(std::move(minor));
    normal[j] = ((d - 1 + j) % 2 == 0) ? det : Rational(-det);
  }
  return normal;
}

Location full_dim_hull_test(const Point& q, std::span<const Point> sites) {
  const std::size_t d = q.dim();
  const std::size_t n = sites.size();
  bool boundary = false;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<const Point*> pts(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) pts[i] = &sites[idx[i]];
    auto normal = hyperplane_normal(pts);
    if (std::any_of(normal.begin(), normal.end(), [](const Rational& x) { return sgn(x) != 0; })) {
      Rational offset = 0;
      for (std::size_t c = 0; c < d; ++c) offset += normal[c] * (*pts[0])[c];
      auto eval = [&](const Point& x) {
        Rational s = -offset;
        for (std::size_t c = 0; c < d; ++c) s += normal[c] * x[c];
        return sgn(s);
      };
      int pos = 0, neg = 0;
      for (const auto& s : sites) {
        int e = eval(s);
        pos += e > 0;
        neg += e < 0;
        if (pos && neg) break;
      }
      if (!(pos && neg)) {
        int side = pos ? 1 : -1;
        int e = eval(q);
        if (e * side < 0) return Location::Outside;
        if (e == 0) boundary = true;
      }
    }
    // Next d-combination of [0, n).
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == n - d + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return boundary ? Location::Boundary : Location::Inside;
}

}  // namespace

Location point_in_hull(const Point& q, std::span<const Point> sites) {
  if (sites.empty()) return Location::Outside;
  const std::size_t d = q.dim();
  for (const auto& s : sites) {
    if (s.dim() != d) throw Error(ErrorCode::DimensionMismatch, "point_in_hull");
  }
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(sites.begin(), sites.end());
    if (q[0] < (*lo)[0] || q[0] > (*hi)[0]) return Location::Outside;
    if (q[0] == (*lo)[0] || q[0] == (*hi)[0]) return Location::Boundary;
    return Location::Inside;
  }
  if (d == 2) return locate_in_polygon(convex_hull_2d(sites), q);

  std::vector<std::vector<Rational>> diffs;
  diffs.reserve(sites.size());
  for (const auto& s : sites) {
    std::vector<Rational> v(d);
    for (std::size_t c = 0; c < d; ++c) v[c] = s[c] - sites[0][c];
    diffs.push_back(std::move(v));
  }
  std::vector<std::size_t> pivots;
  auto basis = independent_rows(diffs, &pivots);
  const std::size_t rank = basis.size();
  if (rank == d) return full_dim_hull_test(q, sites);

  // Lower-dimensional hull: q must lie in the affine hull, then recurse on a
  // coordinate projection that is injective on it.
  std::vector<std::vector<Rational>> with_q;
  for (auto b : basis) with_q.push_back(diffs[b]);
  std::vector<Rational> qv(d);
  for (std::size_t c = 0; c < d; ++c) qv[c] = q[c] - sites[0][c];
  with_q.push_back(qv);
  if (independent_rows(with_q, nullptr).size() > rank) return Location::Outside;
  if (rank == 0) return Location::Boundary;  // q coincides with the single site

  std::sort(pivots.begin(), pivots.end());
  auto proj = [&](const Point& p) {
    Point r;
    for (auto c : pivots) r.coords.push_back(p[c]);
    return r;
  };
  std::vector<Point> sub;
  sub.reserve(sites.size());
  for (const auto& s : sites) sub.push_back(proj(s));
  Location loc = point_in_hull(proj(q), sub);
  return loc == Location::Outside ? Location::Outside : Location::Boundary;
}

namespace {

mpz_class lcm_den(const Halfplane& h) {
  mpz_class l = 1;
  for (const Rational* r : {&h.a, &h.b, &h.c}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->get_den_mpz_t());
  return l;
}

struct Directed {
  Halfplane h;
  Rational dx, dy;  // boundary direction with the region on its left
};

int half_of(const Rational& x, const Rational& y) {
  return (sgn(y) < 0 || (sgn(y) == 0 && sgn(x) < 0)) ? 1 : 0;
}

bool angle_less(const Directed& a, const Directed& b) {
  int ha = half_of(a.dx, a.dy), hb = half_of(b.dx, b.dy);
  if (ha != hb) return ha < hb;
  return sgn(a.dx * b.dy - a.dy * b.dx) > 0;
}

bool same_angle(const Directed& a, const Directed& b) {
  return half_of(a.dx, a.dy) == half_of(b.dx, b.dy) && sgn(a.dx * b.dy - a.dy * b.dx) == 0;
}

Point point_on(const Halfplane& h) {
  if (sgn(h.a) != 0) return Point{h.c / h.a, Rational(0)};
  return Point{Rational(0), h.c / h.b};
}

Point intersect(const Halfplane& p, const Halfplane& q) {
  Rational det = p.a * q.b - q.a * p.b;
  return Point{(p.c * q.b - q.c * p.b) / det, (p.a * q.c - q.a * p.c) / det};
}

ConvexPolygon finish(const std::vector<Point>& raw, const Rational& box) {
  ConvexPolygon hull = convex_hull_2d(raw);
  if (hull.kind == PolygonKind::Empty) return hull;
  bool touches = std::any_of(hull.vertices.begin(), hull.vertices.end(), [&](const Point& p) {
    return abs(p.x()) == box || abs(p.y()) == box;
  });
  if (touches) hull.kind = PolygonKind::Unbounded;
  return hull;
}

std::vector<Point> clip(std::vector<Point> poly, const Halfplane& h) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& r = poly[(i + 1) % n];
    int sp = h.side(p), sr = h.side(r);
    if (sp >= 0) out.push_back(p);
    if (sp * sr < 0) {
      Rational t = (h.c - h.a * p.x() - h.b * p.y()) /
                   (h.a * (r.x() - p.x()) + h.b * (r.y() - p.y()));
      out.push_back(Point{p.x() + t * (r.x() - p.x()), p.y() + t * (r.y() - p.y())});
    }
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

}  // namespace

ConvexPolygon halfplane_intersection(std::span<const Halfplane> halfplanes) {
  if (halfplanes.empty()) return ConvexPolygon::whole_plane();

  // Every vertex of the arrangement of integer-scaled lines has coordinates
  // bounded by 2 * max|c| * max(|a|, |b|).
  mpz_class cmax = 0, abmax = 1;
  std::vector<Directed> hs;
  hs.reserve(halfplanes.size() + 4);
  for (const auto& h : halfplanes) {
    if (sgn(h.a) == 0 && sgn(h.b) == 0) {
      if (sgn(h.c) < 0) return ConvexPolygon::empty();
      continue;  // 0 <= c holds everywhere
    }
    Rational scale(lcm_den(h));
    Halfplane s{h.a * scale, h.b * scale, h.c * scale};
    mpz_class ac = abs(s.c.get_num());
    if (ac > cmax) cmax = ac;
    for (const Rational* r : {&s.a, &s.b}) {
      mpz_class v = abs(r->get_num());
      if (v > abmax) abmax = v;
    }
    hs.push_back({s, -s.b, s.a});
  }
  if (hs.empty()) return ConvexPolygon::whole_plane();
  const Rational box(2 * cmax * abmax + 1);
  for (auto [a, b] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
    Halfplane h{Rational(a), Rational(b), box};
    hs.push_back({h, -h.b, h.a});
  }

  // Angle order; among equal angles the most restrictive first.
  std::sort(hs.begin(), hs.end(), [](const Directed& x, const Directed& y) {
    if (!same_angle(x, y)) return angle_less(x, y);
    return y.h.side(point_on(x.h)) > 0;
  });
  std::vector<Directed> uniq;
  for (const auto& h : hs) {
    if (!uniq.empty() && same_angle(uniq.back(), h)) continue;
    uniq.push_back(h);
  }

  std::vector<Directed> dq(uniq.size() + 1);
  std::size_t head = 0, tail = 0;  // [head, tail)
  bool degenerate = false;
  for (const auto& h : uniq) {
    while (tail - head >= 2 && h.h.side(intersect(dq[tail - 1].h, dq[tail - 2].h)) < 0) --tail;
    while (tail - head >= 2 && h.h.side(intersect(dq[head].h, dq[head + 1].h)) < 0) ++head;
    if (tail - head >= 1) {
      const auto& back = dq[tail - 1];
      if (sgn(back.dx * h.dy - back.dy * h.dx) <= 0) {
        // Non-left turn between consecutive boundaries: the region is empty
        // or has no interior. Resolve exactly below.
        degenerate = true;
        break;
      }
    }
    dq[tail++] = h;
  }
  if (!degenerate) {
    while (tail - head >= 3 && dq[head].h.side(intersect(dq[tail - 1].h, dq[tail - 2].h)) < 0) --tail;
    while (tail - head >= 3 && dq[tail - 1].h.side(intersect(dq[head].h, dq[head + 1].h)) < 0) ++head;
    if (tail - head < 3) degenerate = true;
  }
  if (!degenerate) {
    std::vector<Point> verts;
    for (std::size_t i = head; i < tail; ++i) {
      const auto& next = (i + 1 == tail) ? dq[head] : dq[i + 1];
      if (sgn(dq[i].dx * next.dy - dq[i].dy * next.dx) <= 0) { degenerate = true; break; }
      verts.push_back(intersect(dq[i].h, next.h));
    }
    if (!degenerate) {
      ConvexPolygon result = finish(verts, box);
      if (result.kind == PolygonKind::Polygon || result.kind == PolygonKind::Unbounded) return result;
    }
  }

  // Exact incremental clipping; handles regions without interior.
  std::vector<Point> poly{Point{-box, -box}, Point{box, -box}, Point{box, box}, Point{-box, box}};
  for (const auto& h : uniq) {
    poly = clip(std::move(poly), h.h);
    if (poly.empty()) return ConvexPolygon::empty();
  }
  return finish(poly, box);
}

DualLine dual_of_point(const Point& p) { return DualLine{p.x(), -p.y()}; }

Point dual_of_line(const DualLine& line) { return Point{line.slope, -line.intercept}; }

GeneralPositionReport general_position_check(std::span<const Point> sites, const Point& q) {
  std::vector<const Point*> all;
  for (const auto& s : sites) all.push_back(&s);
  all.push_back(&q);
  const std::size_t d = q.dim();
  const std::size_t n = all.size();
  GeneralPositionReport report;
  for (std::size_t k = 2; k <= d; ++k) {
    const std::size_t t = k + 1;
    if (n < t) break;
    std::vector<std::size_t> idx(t);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Point> simplex(t);
    while (true) {
      for (std::size_t i = 0; i < t; ++i) simplex[i] = project(*all[idx[i]], k);
      if (orient_d(simplex) == 0) {
        report.ok = false;
        report.k = k;
        report.tuple = idx;
        report.message = "affinely dependent " + std::to_string(t) + "-tuple in the projection onto the first " +
                         std::to_string(k) + " axes:";
        for (auto i : idx) report.message += " " + (i == sites.size() ? std::string("q") : "#" + std::to_string(i)) +
                                             to_string(*all[i]);
        return report;
      }
      std::size_t i = t;
      while (i > 0 && idx[i - 1] == n - t + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return report;
}

}  // namespace uhull
