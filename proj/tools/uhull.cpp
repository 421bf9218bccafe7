#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uhull/beta_hull.hpp"
#include "uhull/errors.hpp"
#include "uhull/io.hpp"
#include "uhull/mc_index.hpp"
#include "uhull/membership.hpp"
#include "uhull/probability_map.hpp"
#include "uhull/svg.hpp"
#include "uhull/tukey.hpp"

using nlohmann::json;
using namespace uhull;

namespace {

enum Exit { kOk = 0, kValidation = 2, kDegenerate = 3, kCap = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Degenerate:
    case ErrorCode::DegenerateSites:
    case ErrorCode::DegenerateProjection: return kDegenerate;
    case ErrorCode::CapExceeded: return kCap;
    default: return kValidation;
  }
}

json coords(const Point& p) {
  json out = json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) out.push_back(to_string(p[i]));
  return out;
}

json polygon_json(const ConvexPolygon& poly) {
  static const char* kinds[] = {"empty", "point", "segment", "polygon", "unbounded", "whole_plane"};
  json vs = json::array();
  for (const auto& v : poly.vertices) vs.push_back(coords(v));
  return {{"kind", kinds[static_cast<int>(poly.kind)]}, {"vertices", vs}};
}

UncertainPointSet load_model(const std::string& path) { return io::parse_model(io::read_file(path)); }

std::vector<Point> load_queries(const std::string& path, std::size_t dimension) {
  return io::parse_queries(io::read_file(path), dimension);
}

// Runs f per query, naming the query when it fails.
template <class F>
json per_query(const std::vector<Point>& queries, F&& f) {
  json results = json::array();
  for (const auto& q : queries) {
    try {
      json r = f(q);
      r["query"] = coords(q);
      results.push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()).substr(to_string(e.code()).size() + 2) + " (query " +
                                to_string(q) + ")");
    }
  }
  return results;
}

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex hull membership for uncertain points"};
  app.require_subcommand(1);

  std::string model_path, query_path;

  auto* mem = app.add_subcommand("membership", "exact or fast membership probability per query");
  bool fast = false, radial = false;
  mem->add_option("model", model_path, "model JSON")->required();
  mem->add_option("queries", query_path, "query JSON")->required();
  auto* exact_flag = mem->add_flag("--exact", "exact rationals (default)");
  mem->add_flag("--fast", fast, "floating-point probabilities, planar models")->excludes(exact_flag);
  mem->add_flag("--dd-radial", radial, "radial facet enumeration for d >= 3");

  auto* oracle = app.add_subcommand("oracle", "brute-force membership over all outcomes");
  oracle->add_option("model", model_path, "model JSON")->required();
  oracle->add_option("queries", query_path, "query JSON")->required();

  auto* map = app.add_subcommand("map", "probability map of a planar model");
  std::string map_out, map_load, svg_out;
  std::vector<std::string> map_query;
  std::size_t max_sites = MapOptions{}.max_sites;
  map->add_option("model", model_path, "model JSON");
  map->add_option("--build", map_out, "write the map to this file");
  map->add_option("--query", map_query, "stored map and query JSON")->expected(2);
  map->add_option("--load", map_load, "stored map to render with --svg");
  map->add_option("--svg", svg_out, "write an SVG of the faces");
  map->add_option("--max-sites", max_sites, "refuse larger models")->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte Carlo membership index");
  double eps = 0.1, delta = 0.05;
  std::uint64_t seed = 0;
  std::string mc_out, mc_load, mc_query;
  mc->add_option("model", model_path, "model JSON");
  mc->add_option("--eps", eps, "additive error")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  mc->add_option("--delta", delta, "failure probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  mc->add_option("--seed", seed, "sampling seed")->capture_default_str();
  mc->add_option("--build", mc_out, "write the index to this file");
  mc->add_option("--load", mc_load, "read a stored index instead of sampling");
  mc->add_option("--query", mc_query, "query JSON");

  auto* tukey = app.add_subcommand("tukey", "depth-region membership estimate for a uniform model");
  std::string gamma_text, tukey_query;
  double c = 8;
  tukey->add_option("model", model_path, "model JSON")->required();
  tukey->add_option("--gamma", gamma_text, "common site probability, replacing the model's");
  tukey->add_option("--c", c, "depth constant")->check(CLI::PositiveNumber)->capture_default_str();
  tukey->add_option("--query", tukey_query, "query JSON");

  auto* beta = app.add_subcommand("beta", "beta-hull of a planar multipoint model");
  std::string beta_text = "1", beta_svg;
  bool use_oracle = false;
  beta->add_option("model", model_path, "model JSON")->required();
  beta->add_option("--beta", beta_text, "required mass per group, exact decimal")->capture_default_str();
  beta->add_option("--svg", beta_svg, "write an SVG of the region");
  beta->add_flag("--oracle", use_oracle, "intersect dense site-pair halfplanes instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (mem->parsed()) {
      auto model = load_model(model_path);
      auto queries = load_queries(query_path, model.dimension);
      emit({{"results", per_query(queries, [&](const Point& q) -> json {
                if (fast && model.dimension == 2) return {{"probability", membership_2d_fast(q, model)}};
                Rational p = membership(q, model, radial);
                if (fast) return {{"probability", to_double(p)}};
                return {{"probability", to_string(p)}};
              })}});
    } else if (oracle->parsed()) {
      auto model = load_model(model_path);
      auto queries = load_queries(query_path, model.dimension);
      const auto cap = outcome_cap_from_env();
      emit({{"results", per_query(queries, [&](const Point& q) -> json {
                return {{"probability", to_string(brute_force_membership(q, model, cap))}};
              })}});
    } else if (map->parsed()) {
      if (!map_query.empty()) {
        auto pm = io::load_map(io::read_file(map_query[0]));
        auto queries = load_queries(map_query[1], 2);
        emit({{"results", per_query(queries, [&](const Point& q) -> json {
                  auto loc = pm.locate(q);
                  // Only open faces store probabilities; points on a pair line
                  // are answered by enumerating outcomes.
                  if (loc.on_skeleton) loc.probability = brute_force_membership(q, pm.model(), outcome_cap_from_env());
                  return {{"probability", to_string(loc.probability)},
                          {"on_skeleton", loc.on_skeleton},
                          {"face", loc.on_skeleton ? json(nullptr) : json(loc.face)}};
                })}});
        return kOk;
      }
      if (model_path.empty() == map_load.empty())
        throw Error(ErrorCode::InvalidInput, "map needs exactly one of a model file or --load");
      if (map_out.empty() && svg_out.empty())
        throw Error(ErrorCode::InvalidInput, "map needs --build, --query or --svg");
      MapOptions options;
      options.max_sites = max_sites;
      auto pm = map_load.empty() ? ProbabilityMap::build(load_model(model_path), options)
                                 : io::load_map(io::read_file(map_load));
      if (!map_out.empty()) io::write_file(map_out, io::dump_map(pm));
      if (!svg_out.empty()) io::write_file(svg_out, svg::render_map(pm));
      auto st = pm.stats();
      std::size_t bounded = 0;
      for (const auto& f : pm.faces()) bounded += f.bounded;
      emit({{"stats",
             {{"vertices", st.vertices}, {"edges", st.edges}, {"faces", st.faces}, {"lines", st.lines},
              {"bounded_faces", bounded}}}});
    } else if (mc->parsed()) {
      if (model_path.empty() == mc_load.empty())
        throw Error(ErrorCode::InvalidInput, "mc needs exactly one of a model file or --load");
      auto index = mc_load.empty() ? MonteCarloIndex::build(load_model(model_path), eps, delta, seed)
                                   : io::load_mc_index(io::read_file(mc_load));
      if (!mc_out.empty()) io::write_file(mc_out, io::dump_mc_index(index));
      json doc{{"samples", index.size()},
               {"epsilon", index.epsilon()},
               {"delta", index.delta()},
               {"seed", index.seed()}};
      if (!mc_query.empty()) {
        auto queries = load_queries(mc_query, index.model().dimension);
        doc["results"] = per_query(queries, [&](const Point& q) -> json {
          return {{"estimate", to_string(index.query(q))}, {"hits", index.hits(q)}};
        });
      }
      emit(doc);
    } else if (tukey->parsed()) {
      auto model = load_model(model_path);
      if (!gamma_text.empty()) {
        Rational gamma = parse_rational(gamma_text);
        for (auto& g : model.groups)
          for (auto& s : g) s.prob = gamma;
        validate(model);
      }
      auto ts = build_tukey_structure(model, c);
      json doc{{"gamma", to_string(ts.gamma)},  {"c", ts.c},
               {"t0", ts.t0},                   {"min_depth", ts.min_depth},
               {"halfplanes", ts.halfplanes},   {"region", polygon_json(ts.region)}};
      if (!tukey_query.empty()) {
        auto queries = load_queries(tukey_query, 2);
        doc["results"] = per_query(queries, [&](const Point& q) -> json {
          auto a = query_tukey(ts, model, q);
          return {{"estimate", to_string(a.estimate)}, {"in_region", a.in_region}, {"n_q", a.n_q}};
        });
      }
      emit(doc);
    } else if (beta->parsed()) {
      auto model = load_model(model_path);
      Rational b = parse_rational(beta_text);
      auto region = use_oracle ? beta_hull_oracle(model, b) : beta_hull_2d(model, b);
      if (!beta_svg.empty()) io::write_file(beta_svg, svg::render_region(model, region));
      emit({{"beta", to_string(b)}, {"region", polygon_json(region)}});
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e.code());
  }
  return kOk;
}
