#include "uhull/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace uhull::svg {

namespace {

struct Box {
  Rational x0, y0, x1, y1;

  std::vector<Halfplane> halfplanes() const {
    return {{Rational(-1), Rational(0), -x0}, {Rational(1), Rational(0), x1},
            {Rational(0), Rational(-1), -y0}, {Rational(0), Rational(1), y1}};
  }
};

Box box_around(const std::vector<Point>& pts) {
  Box b{pts.front().x(), pts.front().y(), pts.front().x(), pts.front().y()};
  for (const auto& p : pts) {
    b.x0 = std::min(b.x0, p.x());
    b.x1 = std::max(b.x1, p.x());
    b.y0 = std::min(b.y0, p.y());
    b.y1 = std::max(b.y1, p.y());
  }
  Rational extent = std::max<Rational>(b.x1 - b.x0, b.y1 - b.y0);
  Rational margin = std::max<Rational>(1, extent / 10);
  b.x0 -= margin;
  b.y0 -= margin;
  b.x1 += margin;
  b.y1 += margin;
  return b;
}

std::string num(const Rational& v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", to_double(v));
  return buf;
}

// Screen coordinates put y upward.
std::string points_attr(const std::vector<Point>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += ' ';
    out += num(v.x()) + "," + num(-v.y());
  }
  return out;
}

std::string header(const Box& b) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b.x0) << ' ' << num(-b.y1) << ' '
     << num(b.x1 - b.x0) << ' ' << num(b.y1 - b.y0) << "\">\n";
  return os.str();
}

std::string sites(const UncertainPointSet& model, const Box& b) {
  std::ostringstream os;
  const std::string r = num(std::max<Rational>(b.x1 - b.x0, b.y1 - b.y0) / 150);
  for (std::size_t g = 0; g < model.groups.size(); ++g)
    for (const auto& s : model.groups[g])
      os << "<circle class=\"site\" data-group=\"" << g << "\" data-prob=\"" << to_string(s.prob) << "\" cx=\""
         << num(s.location.x()) << "\" cy=\"" << num(-s.location.y()) << "\" r=\"" << r << "\" fill=\"#c0392b\"/>\n";
  return os.str();
}

std::string shade(const Rational& p) {
  int level = static_cast<int>(255 * (1 - std::clamp(to_double(p), 0.0, 1.0)) + 0.5);
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, 255);
  return buf;
}

}  // namespace

std::string render_map(const ProbabilityMap& map) {
  const auto& model = map.model();
  std::vector<Point> pts;
  for (const auto& ref : flatten(model)) pts.push_back(*ref.location);
  std::vector<Point> framed = pts;
  for (const auto& f : map.faces()) framed.push_back(f.representative);
  const Box b = box_around(framed);

  std::vector<std::vector<std::size_t>> bounding(map.faces().size());
  for (const auto& e : map.adjacency()) {
    bounding[e.a].push_back(e.line);
    bounding[e.b].push_back(e.line);
  }
  std::ostringstream os;
  os << header(b);
  for (std::size_t f = 0; f < map.faces().size(); ++f) {
    const auto& face = map.faces()[f];
    std::vector<Halfplane> hs = b.halfplanes();
    for (auto l : bounding[f]) {
      auto [i, j] = map.lines()[l];
      Halfplane h = Halfplane::left_of(pts[i], pts[j]);
      if (h.side(face.representative) < 0) h = {-h.a, -h.b, -h.c};
      hs.push_back(h);
    }
    ConvexPolygon poly = halfplane_intersection(hs);
    if (poly.kind != PolygonKind::Polygon) continue;
    os << "<polygon class=\"face " << (face.bounded ? "bounded" : "unbounded") << "\" data-face=\"" << f
       << "\" data-probability=\"" << to_string(face.probability) << "\" points=\"" << points_attr(poly.vertices)
       << "\" fill=\"" << shade(face.probability) << "\" stroke=\"#888888\" stroke-width=\"0.1%\"/>\n";
  }
  os << sites(model, b) << "</svg>\n";
  return os.str();
}

std::string render_region(const UncertainPointSet& model, const ConvexPolygon& region) {
  std::vector<Point> pts;
  for (const auto& ref : flatten(model)) pts.push_back(*ref.location);
  const Box b = box_around(pts);
  std::ostringstream os;
  os << header(b);
  std::vector<Point> shape;
  if (region.kind == PolygonKind::WholePlane)
    shape = {Point{b.x0, b.y0}, Point{b.x1, b.y0}, Point{b.x1, b.y1}, Point{b.x0, b.y1}};
  else if (!region.is_empty())
    shape = region.vertices;
  if (!shape.empty())
    os << "<polygon class=\"region\" points=\"" << points_attr(shape)
       << "\" fill=\"#3498db\" fill-opacity=\"0.35\" stroke=\"#1f618d\" stroke-width=\"0.3%\"/>\n";
  os << sites(model, b) << "</svg>\n";
  return os.str();
}

}  // namespace uhull::svg
