#include "uhull/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uhull/errors.hpp"

namespace uhull::io {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational exact(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.dump());
  malformed("expected an exact decimal string, got " + j.dump());
}

Point point_of(const json& j, std::size_t dimension) {
  if (!j.is_array() || j.size() != dimension)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dimension) + " coordinates, got " + j.dump());
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(exact(v));
  return Point(std::move(c));
}

json coords_of(const Point& p) {
  json out = json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) out.push_back(to_string(p[i]));
  return out;
}

json model_json(const UncertainPointSet& model) {
  json points = json::array();
  for (const auto& g : model.groups) {
    json sites = json::array();
    for (const auto& s : g) sites.push_back({{"coords", coords_of(s.location)}, {"prob", to_string(s.prob)}});
    points.push_back({{"sites", sites}});
  }
  return {{"dimension", model.dimension},
          {"model", model.kind == ModelKind::Unipoint ? "unipoint" : "multipoint"},
          {"points", points}};
}

UncertainPointSet model_of(const json& doc) {
  const json& dim = member(doc, "dimension");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() < 2) malformed("dimension must be an integer >= 2");
  const std::size_t d = dim.get<std::size_t>();
  const json& kind = member(doc, "model");
  if (kind != "unipoint" && kind != "multipoint") malformed("model must be \"unipoint\" or \"multipoint\"");
  const json& points = member(doc, "points");
  if (!points.is_array()) malformed("points must be an array");
  std::vector<std::vector<Site>> groups;
  for (const auto& p : points) {
    const json& sites = member(p, "sites");
    if (!sites.is_array() || sites.empty()) malformed("every point needs a nonempty sites array");
    if (kind == "unipoint" && sites.size() != 1) malformed("unipoint models have one site per point");
    std::vector<Site> g;
    for (const auto& s : sites) g.push_back({point_of(member(s, "coords"), d), exact(member(s, "prob"))});
    groups.push_back(std::move(g));
  }
  UncertainPointSet model;
  if (kind == "unipoint") {
    std::vector<Point> locs;
    std::vector<Rational> probs;
    for (auto& g : groups) {
      locs.push_back(g[0].location);
      probs.push_back(g[0].prob);
    }
    model = UncertainPointSet::unipoint(std::move(locs), std::move(probs));
  } else {
    model = UncertainPointSet::multipoint(std::move(groups));
  }
  model.dimension = d;
  validate(model);
  return model;
}

void check_header(const json& doc, const char* format) {
  if (member(doc, "format") != format) malformed(std::string("not a ") + format + " document");
  if (member(doc, "version") != kFormatVersion)
    malformed("unsupported " + std::string(format) + " version " + doc.at("version").dump());
}

// Type errors from the JSON library surface as InvalidInput.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    malformed(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

UncertainPointSet parse_model(std::string_view json_text) {
  return guarded([&] { return model_of(parse(json_text)); });
}

std::string dump_model(const UncertainPointSet& model) { return model_json(model).dump(2); }

std::vector<Point> parse_queries(std::string_view json_text, std::size_t dimension) {
  return guarded([&] {
    json doc = parse(json_text);
    const json& qs = member(doc, "queries");
    if (!qs.is_array()) malformed("queries must be an array");
    std::vector<Point> out;
    for (const auto& q : qs) out.push_back(point_of(q, dimension));
    return out;
  });
}

std::string dump_map(const ProbabilityMap& map) {
  json lines = json::array(), adjacency = json::array(), probs = json::array();
  for (const auto& [a, b] : map.lines()) lines.push_back({a, b});
  for (const auto& e : map.adjacency()) adjacency.push_back({e.a, e.b, e.line});
  for (const auto& f : map.faces()) probs.push_back(to_string(f.probability));
  return json{{"format", "uhull-map"},
              {"version", kFormatVersion},
              {"model", model_json(map.model())},
              {"max_sites", map.options().max_sites},
              {"lines", lines},
              {"adjacency", adjacency},
              {"probabilities", probs}}
      .dump();
}

ProbabilityMap load_map(std::string_view json_text) {
  return guarded([&] {
    json doc = parse(json_text);
    check_header(doc, "uhull-map");
    MapOptions options;
    options.max_sites = member(doc, "max_sites").get<std::size_t>();
    std::vector<Rational> probs;
    for (const auto& p : member(doc, "probabilities")) probs.push_back(exact(p));
    ProbabilityMap map = ProbabilityMap::restore(model_of(member(doc, "model")), probs, options);
    // The stored arrangement must be the one rebuilt from the model.
    json lines = json::array(), adjacency = json::array();
    for (const auto& [a, b] : map.lines()) lines.push_back({a, b});
    for (const auto& e : map.adjacency()) adjacency.push_back({e.a, e.b, e.line});
    if (lines != member(doc, "lines") || adjacency != member(doc, "adjacency"))
      malformed("stored arrangement does not match the model");
    return map;
  });
}

std::string dump_mc_index(const MonteCarloIndex& index) {
  json samples = json::array();
  for (const auto& s : index.samples()) {
    json row = json::array();
    for (const auto& c : s) row.push_back(c ? json(*c) : json(nullptr));
    samples.push_back(std::move(row));
  }
  return json{{"format", "uhull-mc-index"},
              {"version", kFormatVersion},
              {"model", model_json(index.model())},
              {"epsilon", index.epsilon()},
              {"delta", index.delta()},
              {"seed", index.seed()},
              {"samples", samples}}
      .dump();
}

MonteCarloIndex load_mc_index(std::string_view json_text) {
  return guarded([&] {
    json doc = parse(json_text);
    check_header(doc, "uhull-mc-index");
    UncertainPointSet model = model_of(member(doc, "model"));
    std::vector<MonteCarloIndex::Sample> samples;
    for (const auto& row : member(doc, "samples")) {
      if (!row.is_array() || row.size() != model.group_count()) malformed("sample does not match the model's groups");
      MonteCarloIndex::Sample s;
      for (std::size_t g = 0; g < row.size(); ++g) {
        if (row[g].is_null()) {
          s.push_back(std::nullopt);
          continue;
        }
        auto i = row[g].get<std::size_t>();
        if (i >= model.groups[g].size()) malformed("sample names a missing site");
        s.push_back(i);
      }
      samples.push_back(std::move(s));
    }
    return MonteCarloIndex::restore(model, member(doc, "epsilon").get<double>(), member(doc, "delta").get<double>(),
                                    member(doc, "seed").get<std::uint64_t>(), std::move(samples));
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) malformed("cannot write " + path);
  out << text;
  if (!out) malformed("failed writing " + path);
}

}  // namespace uhull::io
