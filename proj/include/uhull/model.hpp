#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "uhull/geometry.hpp"

namespace uhull {

enum class ModelKind { Unipoint, Multipoint };

struct Site {
  Point location;
  Rational prob;
};

// Groups of mutually exclusive sites. A group's residual mass 1 - sum(prob)
// is the probability that the uncertain point does not exist.
struct UncertainPointSet {
  std::size_t dimension = 2;
  ModelKind kind = ModelKind::Unipoint;
  std::vector<std::vector<Site>> groups;

  static UncertainPointSet unipoint(std::vector<Point> sites, std::vector<Rational> probs);
  static UncertainPointSet multipoint(std::vector<std::vector<Site>> groups);

  std::size_t site_count() const;
  std::size_t group_count() const { return groups.size(); }
  Rational group_mass(std::size_t g) const;
  bool is_unipoint() const;
};

// Flat view of all sites with their group index, in group order.
struct SiteRef {
  std::size_t group;
  std::size_t index;  // within the group
  const Point* location;
  const Rational* prob;
};
std::vector<SiteRef> flatten(const UncertainPointSet& model);

// Throws Error with ProbabilityOutOfRange, GroupMassExceedsOne,
// DimensionMismatch or (when check_general_position) DegenerateSites.
void validate(const UncertainPointSet& model, bool check_general_position = false);

constexpr std::uint64_t kDefaultOutcomeCap = std::uint64_t{1} << 22;

// Cap from UH_OUTCOME_CAP when set, otherwise kDefaultOutcomeCap.
std::uint64_t outcome_cap_from_env();

struct Outcome {
  // Per group: chosen site index, or nullopt when the point is absent.
  std::vector<std::optional<std::size_t>> chosen;
  Rational probability;

  std::vector<Point> sites(const UncertainPointSet& model) const;
};

std::uint64_t outcome_count(const UncertainPointSet& model);

// Calls visit once per outcome. Throws CapExceeded when the number of
// outcomes exceeds cap.
void enumerate_outcomes(const UncertainPointSet& model, const std::function<void(const Outcome&)>& visit,
                        std::uint64_t cap = kDefaultOutcomeCap);

// Exact pi(q) by summing Pr(B) over outcomes B with q in the closed CH(B).
Rational brute_force_membership(const Point& q, const UncertainPointSet& model,
                                std::uint64_t cap = kDefaultOutcomeCap);

}  // namespace uhull
