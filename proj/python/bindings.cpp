// Exact values cross the boundary as "num/den" strings; the Python package
// turns them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uhull/beta_hull.hpp"
#include "uhull/errors.hpp"
#include "uhull/io.hpp"
#include "uhull/mc_index.hpp"
#include "uhull/membership.hpp"
#include "uhull/probability_map.hpp"
#include "uhull/svg.hpp"
#include "uhull/tukey.hpp"

namespace py = pybind11;
using namespace uhull;

namespace {

using Coords = std::vector<std::string>;

Coords coords_of(const Point& p) {
  Coords out;
  for (const auto& c : p.coords) out.push_back(to_string(c));
  return out;
}

py::tuple polygon(const ConvexPolygon& poly) {
  static const char* kinds[] = {"empty", "point", "segment", "polygon", "unbounded", "whole_plane"};
  std::vector<Coords> vs;
  for (const auto& v : poly.vertices) vs.push_back(coords_of(v));
  return py::make_tuple(kinds[static_cast<int>(poly.kind)], vs);
}

Point query_point(const UncertainPointSet& model, const Coords& q) {
  Point p = parse_point(q);
  if (p.dim() != model.dimension) throw Error(ErrorCode::DimensionMismatch, "query dimension");
  return p;
}

UncertainPointSet unipoint(const std::vector<Coords>& pts, const std::vector<std::string>& probs) {
  if (pts.size() != probs.size()) throw Error(ErrorCode::InvalidInput, "one probability per site");
  std::vector<Point> locs;
  std::vector<Rational> ps;
  for (const auto& p : pts) locs.push_back(parse_point(p));
  for (const auto& p : probs) ps.push_back(parse_rational(p));
  auto m = UncertainPointSet::unipoint(std::move(locs), std::move(ps));
  validate(m);
  return m;
}

UncertainPointSet multipoint(const std::vector<std::vector<std::pair<Coords, std::string>>>& groups) {
  std::vector<std::vector<Site>> gs;
  for (const auto& g : groups) {
    std::vector<Site> sites;
    for (const auto& [c, p] : g) sites.push_back({parse_point(c), parse_rational(p)});
    gs.push_back(std::move(sites));
  }
  auto m = UncertainPointSet::multipoint(std::move(gs));
  validate(m);
  return m;
}

}  // namespace

PYBIND11_MODULE(_uhull, m) {
  py::register_exception<Error>(m, "UhullError", PyExc_ValueError);

  py::class_<UncertainPointSet>(m, "Model")
      .def_static("unipoint", &unipoint, py::arg("points"), py::arg("probs"))
      .def_static("multipoint", &multipoint, py::arg("groups"))
      .def_static("from_json", [](const std::string& text) { return io::parse_model(text); })
      .def("to_json", [](const UncertainPointSet& s) { return io::dump_model(s); })
      .def_readonly("dimension", &UncertainPointSet::dimension)
      .def_property_readonly("site_count", &UncertainPointSet::site_count)
      .def_property_readonly("group_count", &UncertainPointSet::group_count)
      .def_property_readonly("is_unipoint", &UncertainPointSet::is_unipoint);

  m.def("membership", [](const UncertainPointSet& s, const Coords& q, bool radial) {
    return to_string(membership(query_point(s, q), s, radial));
  }, py::arg("model"), py::arg("q"), py::arg("radial") = false);
  m.def("membership_fast", [](const UncertainPointSet& s, const Coords& q) {
    Point p = query_point(s, q);
    return s.dimension == 2 ? membership_2d_fast(p, s) : to_double(membership(p, s));
  });
  m.def("brute_force", [](const UncertainPointSet& s, const Coords& q) {
    return to_string(brute_force_membership(query_point(s, q), s, outcome_cap_from_env()));
  });

  py::class_<ProbabilityMap>(m, "ProbabilityMap")
      .def(py::init([](const UncertainPointSet& s, std::size_t max_sites) {
             MapOptions options;
             options.max_sites = max_sites;
             return ProbabilityMap::build(s, options);
           }), py::arg("model"), py::arg("max_sites") = MapOptions{}.max_sites)
      .def_static("from_json", [](const std::string& text) { return io::load_map(text); })
      .def("to_json", [](const ProbabilityMap& pm) { return io::dump_map(pm); })
      .def("svg", [](const ProbabilityMap& pm) { return svg::render_map(pm); })
      .def("locate", [](const ProbabilityMap& pm, const Coords& q) {
        Point p = query_point(pm.model(), q);
        auto loc = pm.locate(p);
        if (loc.on_skeleton) loc.probability = brute_force_membership(p, pm.model(), outcome_cap_from_env());
        py::object face = loc.on_skeleton ? py::none() : py::cast(loc.face);
        return py::make_tuple(to_string(loc.probability), face);
      })
      .def("stats", [](const ProbabilityMap& pm) {
        auto st = pm.stats();
        py::dict d;
        d["vertices"] = st.vertices;
        d["edges"] = st.edges;
        d["faces"] = st.faces;
        d["lines"] = st.lines;
        return d;
      })
      .def("faces", [](const ProbabilityMap& pm) {
        py::list out;
        for (const auto& f : pm.faces())
          out.append(py::make_tuple(to_string(f.probability), coords_of(f.representative), f.bounded));
        return out;
      });

  py::class_<MonteCarloIndex>(m, "MonteCarloIndex")
      .def(py::init(&MonteCarloIndex::build), py::arg("model"), py::arg("eps"), py::arg("delta"), py::arg("seed"))
      .def_static("from_json", [](const std::string& text) { return io::load_mc_index(text); })
      .def_static("sample_count", &MonteCarloIndex::sample_count)
      .def("to_json", [](const MonteCarloIndex& mc) { return io::dump_mc_index(mc); })
      .def("query", [](const MonteCarloIndex& mc, const Coords& q) {
        return to_string(mc.query(query_point(mc.model(), q)));
      })
      .def_property_readonly("size", &MonteCarloIndex::size);

  py::class_<TukeyStructure>(m, "TukeyStructure")
      .def_readonly("c", &TukeyStructure::c)
      .def_readonly("t0", &TukeyStructure::t0)
      .def_readonly("min_depth", &TukeyStructure::min_depth)
      .def_readonly("halfplanes", &TukeyStructure::halfplanes)
      .def_property_readonly("gamma", [](const TukeyStructure& ts) { return to_string(ts.gamma); })
      .def_property_readonly("region", [](const TukeyStructure& ts) { return polygon(ts.region); });
  m.def("tukey_structure", &build_tukey_structure, py::arg("model"), py::arg("c") = 8.0);
  m.def("tukey_query", [](const TukeyStructure& ts, const UncertainPointSet& s, const Coords& q) {
    auto a = query_tukey(ts, s, query_point(s, q));
    std::vector<Coords> contacts;
    for (const auto& p : a.contacts) contacts.push_back(coords_of(p));
    py::dict d;
    d["estimate"] = to_string(a.estimate);
    d["in_region"] = a.in_region;
    d["n_q"] = a.n_q;
    d["contacts"] = contacts;
    return d;
  });
  m.def("tukey_depth", [](const Coords& q, const std::vector<Coords>& points) {
    std::vector<Point> pts;
    for (const auto& p : points) pts.push_back(parse_point(p));
    return tukey_depth_2d(parse_point(q), std::span<const Point>(pts));
  });

  m.def("beta_hull", [](const UncertainPointSet& s, const std::string& beta, bool oracle) {
    Rational b = parse_rational(beta);
    return polygon(oracle ? beta_hull_oracle(s, b) : beta_hull_2d(s, b));
  }, py::arg("model"), py::arg("beta") = "1", py::arg("oracle") = false);
}
