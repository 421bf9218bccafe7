#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "uhull/rational.hpp"

namespace uhull {

struct Point {
  std::vector<Rational> coords;

  Point() = default;
  explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Rational> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  Rational& operator[](std::size_t i) { return coords[i]; }
  const Rational& x() const { return coords[0]; }
  const Rational& y() const { return coords[1]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
  friend bool operator<(const Point& a, const Point& b) { return a.coords < b.coords; }
};

// Parses each coordinate with parse_rational.
Point parse_point(const std::vector<std::string>& coords);
std::string to_string(const Point& p);

// Drops trailing coordinates: the projection onto the first k axes.
Point project(const Point& p, std::size_t k);

// Sign of det(b - a, c - a). +1 for a counter-clockwise triple.
int orient2d(const Point& a, const Point& b, const Point& c);

// Sign of det(p1 - p0, ..., pd - p0) for d + 1 points in R^d.
int orient_d(std::span<const Point> simplex);

// Exact determinant of a square matrix given row-major.
Rational determinant(std::vector<std::vector<Rational>> rows);

// Closed halfplane a*x + b*y <= c.
struct Halfplane {
  Rational a, b, c;

  // +1 strictly inside, 0 on the boundary line, -1 outside.
  int side(const Point& p) const { return sgn(c - a * p.x() - b * p.y()); }
  bool contains(const Point& p) const { return side(p) >= 0; }

  // Closed halfplane to the left of the directed line p -> r.
  static Halfplane left_of(const Point& p, const Point& r);
};

enum class PolygonKind { Empty, Point, Segment, Polygon, Unbounded, WholePlane };

// Convex region in the plane. For Point/Segment/Polygon the vertices are the
// region's extreme points in counter-clockwise order. Unbounded regions keep
// their vertices clipped to a box that contains every vertex of the
// arrangement of the defining lines.
struct ConvexPolygon {
  PolygonKind kind = PolygonKind::Empty;
  std::vector<Point> vertices;

  static ConvexPolygon empty() { return {}; }
  static ConvexPolygon whole_plane() { return {PolygonKind::WholePlane, {}}; }
  // Classifies a CCW vertex cycle with duplicates already removed.
  static ConvexPolygon from_ccw(std::vector<Point> ccw);

  bool is_empty() const { return kind == PolygonKind::Empty; }
  bool is_bounded() const {
    return kind != PolygonKind::Unbounded && kind != PolygonKind::WholePlane;
  }
  std::size_t size() const { return vertices.size(); }
};

bool operator==(const ConvexPolygon& a, const ConvexPolygon& b);

enum class Location { Inside, Boundary, Outside };
std::string_view to_string(Location loc);

ConvexPolygon convex_hull_2d(std::span<const Point> points);

// O(log n) for polygons; closed-region semantics via Boundary.
Location locate_in_polygon(const ConvexPolygon& poly, const Point& q);

// Exact classification of q against CH(S) in any dimension.
Location point_in_hull(const Point& q, std::span<const Point> sites);

// O(k log k) angular-sort intersection.
ConvexPolygon halfplane_intersection(std::span<const Halfplane> halfplanes);

// Dual of point (a, b) is the line y = a x - b.
struct DualLine {
  Rational slope;
  Rational intercept;  // y = slope * x + intercept

  Rational at(const Rational& x) const { return slope * x + intercept; }
  friend bool operator==(const DualLine&, const DualLine&) = default;
};

DualLine dual_of_point(const Point& p);
// Dual of the line y = m x + c is the point (m, -c).
Point dual_of_line(const DualLine& line);

struct GeneralPositionReport {
  bool ok = true;
  std::size_t k = 0;                 // projection dimension of the violation
  std::vector<std::size_t> tuple;    // indices into sites; sites.size() denotes q
  std::string message;
};

// For every k in [2, d], no k + 1 of the points (sites and q) projected onto
// the first k axes may be affinely dependent.
GeneralPositionReport general_position_check(std::span<const Point> sites, const Point& q);

}  // namespace uhull
