#include <gtest/gtest.h>

#include "support.hpp"
#include "uhull/errors.hpp"
#include "uhull/model.hpp"

using namespace uhull;
using uhull::testing::Gen;

namespace {

ErrorCode code_of(const UncertainPointSet& m, bool gp = false) {
  try {
    validate(m, gp);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidInput;
}

UncertainPointSet triangle(Rational p) {
  return UncertainPointSet::unipoint({{0, 10}, {-10, -5}, {10, -5}}, std::vector<Rational>(3, p));
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_NO_THROW(validate(triangle(Rational(1, 2))));
  auto heavy = UncertainPointSet::multipoint({{{Point{0, 0}, Rational(7, 10)}, {Point{1, 0}, Rational(3, 5)}}});
  EXPECT_EQ(code_of(heavy), ErrorCode::GroupMassExceedsOne);
  EXPECT_EQ(code_of(triangle(0)), ErrorCode::ProbabilityOutOfRange);
  EXPECT_EQ(code_of(triangle(Rational(3, 2))), ErrorCode::ProbabilityOutOfRange);
  auto mixed = UncertainPointSet::unipoint({{0, 0}, {1, 2, 3}}, {Rational(1), Rational(1)});
  EXPECT_EQ(code_of(mixed), ErrorCode::DimensionMismatch);
  auto line = UncertainPointSet::unipoint({{0, 0}, {1, 1}, {2, 2}}, std::vector<Rational>(3, Rational(1, 2)));
  EXPECT_NO_THROW(validate(line));
  EXPECT_EQ(code_of(line, true), ErrorCode::DegenerateSites);
}

TEST(Outcomes, CountsAndMass) {
  auto check = [](const UncertainPointSet& m, std::uint64_t expect) {
    std::uint64_t seen = 0;
    Rational total = 0;
    enumerate_outcomes(m, [&](const Outcome& o) {
      ++seen;
      total += o.probability;
    });
    EXPECT_EQ(seen, expect);
    EXPECT_EQ(outcome_count(m), expect);
    EXPECT_EQ(total, Rational(1));
  };
  check(triangle(Rational(1, 2)), 8);
  check(UncertainPointSet::multipoint({{{Point{0, 0}, Rational(1, 4)}, {Point{1, 0}, Rational(1, 4)}},
                                       {{Point{0, 1}, Rational(1, 3)}, {Point{1, 1}, Rational(1, 3)}}}),
        9);
  std::vector<Rational> probs;
  enumerate_outcomes(UncertainPointSet::unipoint({{0, 0}}, {Rational(1)}),
                     [&](const Outcome& o) { probs.push_back(o.probability); });
  std::sort(probs.begin(), probs.end());
  EXPECT_EQ(probs, (std::vector<Rational>{Rational(0), Rational(1)}));
}

TEST(Outcomes, ProbabilityIsTheProductOfChoices) {
  Gen g(10);
  auto m = uhull::testing::random_multipoint(g, 3, 2, 2);
  enumerate_outcomes(m, [&](const Outcome& o) {
    Rational p = 1;
    for (std::size_t i = 0; i < m.group_count(); ++i)
      p *= o.chosen[i] ? m.groups[i][*o.chosen[i]].prob : 1 - m.group_mass(i);
    EXPECT_EQ(o.probability, p);
    EXPECT_EQ(o.sites(m).size(),
              static_cast<std::size_t>(std::count_if(o.chosen.begin(), o.chosen.end(), [](auto c) { return c.has_value(); })));
  });
}

TEST(Outcomes, Cap) {
  auto m = triangle(Rational(1, 2));
  EXPECT_THROW(enumerate_outcomes(m, [](const Outcome&) {}, 7), Error);
  EXPECT_NO_THROW(enumerate_outcomes(m, [](const Outcome&) {}, 8));
  std::vector<Point> many;
  for (int i = 0; i < 30; ++i) many.push_back(Point{i, i * i});
  auto big = UncertainPointSet::unipoint(many, std::vector<Rational>(30, Rational(1, 2)));
  try {
    brute_force_membership({1, 5}, big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_membership({0, 0}, triangle(Rational(1, 2))), Rational(1, 8));
  EXPECT_EQ(brute_force_membership({500, 500}, triangle(Rational(1, 2))), Rational(0));
  EXPECT_EQ(brute_force_membership({1, 1}, triangle(Rational(1))), Rational(1));
  // on a site: present with probability 1/2, otherwise needs the other two to span it (they cannot)
  EXPECT_EQ(brute_force_membership({0, 10}, triangle(Rational(1, 2))), Rational(1, 2));
}
