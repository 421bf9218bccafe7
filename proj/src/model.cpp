#include "uhull/model.hpp"

#include <cstdlib>
#include <string>

#include "uhull/errors.hpp"

namespace uhull {

UncertainPointSet UncertainPointSet::unipoint(std::vector<Point> sites, std::vector<Rational> probs) {
  if (sites.size() != probs.size()) throw Error(ErrorCode::InvalidInput, "sites/probabilities length mismatch");
  UncertainPointSet m;
  m.kind = ModelKind::Unipoint;
  m.dimension = sites.empty() ? 2 : sites.front().dim();
  for (std::size_t i = 0; i < sites.size(); ++i) m.groups.push_back({Site{std::move(sites[i]), probs[i]}});
  return m;
}

UncertainPointSet UncertainPointSet::multipoint(std::vector<std::vector<Site>> groups) {
  UncertainPointSet m;
  m.kind = ModelKind::Multipoint;
  for (const auto& g : groups) {
    if (!g.empty()) {
      m.dimension = g.front().location.dim();
      break;
    }
  }
  m.groups = std::move(groups);
  return m;
}

std::size_t UncertainPointSet::site_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

Rational UncertainPointSet::group_mass(std::size_t g) const {
  Rational mass = 0;
  for (const auto& s : groups[g]) mass += s.prob;
  return mass;
}

bool UncertainPointSet::is_unipoint() const {
  for (const auto& g : groups)
    if (g.size() != 1) return false;
  return true;
}

std::vector<SiteRef> flatten(const UncertainPointSet& model) {
  std::vector<SiteRef> out;
  out.reserve(model.site_count());
  for (std::size_t g = 0; g < model.groups.size(); ++g)
    for (std::size_t j = 0; j < model.groups[g].size(); ++j)
      out.push_back({g, j, &model.groups[g][j].location, &model.groups[g][j].prob});
  return out;
}

void validate(const UncertainPointSet& model, bool check_general_position) {
  if (model.dimension < 2) throw Error(ErrorCode::DimensionMismatch, "dimension must be at least 2");
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    const auto& group = model.groups[g];
    if (group.empty()) throw Error(ErrorCode::InvalidInput, "group " + std::to_string(g) + " has no sites");
    if (model.kind == ModelKind::Unipoint && group.size() != 1)
      throw Error(ErrorCode::InvalidInput, "unipoint model with a multi-site group " + std::to_string(g));
    Rational mass = 0;
    for (const auto& s : group) {
      if (s.location.dim() != model.dimension)
        throw Error(ErrorCode::DimensionMismatch, "site in group " + std::to_string(g) + " has dimension " +
                                                      std::to_string(s.location.dim()));
      if (sgn(s.prob) <= 0 || s.prob > 1)
        throw Error(ErrorCode::ProbabilityOutOfRange,
                    "probability " + to_string(s.prob) + " in group " + std::to_string(g) + " is outside (0, 1]");
      mass += s.prob;
    }
    if (mass > 1)
      throw Error(ErrorCode::GroupMassExceedsOne, "group " + std::to_string(g) + " has mass " + to_string(mass));
  }
  if (!check_general_position) return;

  std::vector<Point> pts;
  for (const auto& g : model.groups)
    for (const auto& s : g) pts.push_back(s.location);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j])
        throw Error(ErrorCode::DegenerateSites, "sites #" + std::to_string(i) + " and #" + std::to_string(j) +
                                                    " coincide at " + to_string(pts[i]));
  if (pts.size() < 2) return;
  Point last = pts.back();
  pts.pop_back();
  auto report = general_position_check(pts, last);
  if (!report.ok) {
    // The trailing point was passed as "q"; rename it back to its site index.
    std::string msg = report.message;
    auto pos = msg.find(" q(");
    if (pos != std::string::npos) msg.replace(pos, 2, " #" + std::to_string(pts.size()));
    throw Error(ErrorCode::DegenerateSites, msg);
  }
}

std::uint64_t outcome_cap_from_env() {
  if (const char* env = std::getenv("UH_OUTCOME_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultOutcomeCap;
}

std::vector<Point> Outcome::sites(const UncertainPointSet& model) const {
  std::vector<Point> out;
  for (std::size_t g = 0; g < chosen.size(); ++g)
    if (chosen[g]) out.push_back(model.groups[g][*chosen[g]].location);
  return out;
}

std::uint64_t outcome_count(const UncertainPointSet& model) {
  std::uint64_t total = 1;
  for (const auto& g : model.groups) {
    std::uint64_t radix = g.size() + 1;
    if (total > UINT64_MAX / radix) return UINT64_MAX;
    total *= radix;
  }
  return total;
}

void enumerate_outcomes(const UncertainPointSet& model, const std::function<void(const Outcome&)>& visit,
                        std::uint64_t cap) {
  const std::uint64_t total = outcome_count(model);
  if (total > cap) {
    std::string count = total == UINT64_MAX ? std::string("more than 2^64") : std::to_string(total);
    throw Error(ErrorCode::CapExceeded, "outcome count " + count + " exceeds cap " + std::to_string(cap));
  }

  const std::size_t m = model.groups.size();
  std::vector<Rational> residual(m);
  for (std::size_t g = 0; g < m; ++g) residual[g] = 1 - model.group_mass(g);

  // Odometer over choices; digit k in [0, n_g] where n_g means "absent".
  std::vector<std::size_t> digit(m, 0);
  Outcome outcome;
  outcome.chosen.assign(m, std::nullopt);
  while (true) {
    outcome.probability = 1;
    for (std::size_t g = 0; g < m; ++g) {
      const auto& group = model.groups[g];
      if (digit[g] == group.size()) {
        outcome.chosen[g] = std::nullopt;
        outcome.probability *= residual[g];
      } else {
        outcome.chosen[g] = digit[g];
        outcome.probability *= group[digit[g]].prob;
      }
    }
    visit(outcome);
    std::size_t g = 0;
    while (g < m && digit[g] == model.groups[g].size()) digit[g++] = 0;
    if (g == m) break;
    ++digit[g];
  }
}

Rational brute_force_membership(const Point& q, const UncertainPointSet& model, std::uint64_t cap) {
  Rational total = 0;
  enumerate_outcomes(
      model,
      [&](const Outcome& o) {
        if (sgn(o.probability) == 0) return;
        auto pts = o.sites(model);
        if (point_in_hull(q, pts) != Location::Outside) total += o.probability;
      },
      cap);
  return total;
}

}  // namespace uhull
