#pragma once

// Product of per-group factors that tolerates exact zeros (groups whose whole
// mass is excluded), so factors can be swapped in and out without dividing by 0.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "uhull/rational.hpp"

namespace uhull::detail {

inline bool is_zero_prob(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero_prob(double v) { return std::fabs(v) <= 1e-12; }

template <class Prob>
class FactorProduct {
 public:
  explicit FactorProduct(std::size_t groups) : factor_(groups, Prob(1)), nonzero_(1) {}

  const Prob& factor(std::size_t g) const { return factor_[g]; }

  void set(std::size_t g, const Prob& v) {
    Prob& f = factor_[g];
    if (is_zero_prob(f)) --zeros_; else nonzero_ /= f;
    f = v;
    if (is_zero_prob(f)) ++zeros_; else nonzero_ *= f;
  }

  // Product over all groups except the listed ones (which must be distinct).
  Prob product_excluding(std::span<const std::size_t> skip) const {
    std::size_t zeros = zeros_;
    Prob out = nonzero_;
    for (std::size_t g : skip) {
      if (is_zero_prob(factor_[g])) --zeros; else out /= factor_[g];
    }
    return zeros ? Prob(0) : out;
  }

  Prob product_excluding(std::size_t g) const { return product_excluding(std::span<const std::size_t>(&g, 1)); }

 private:
  std::vector<Prob> factor_;
  Prob nonzero_;
  std::size_t zeros_ = 0;
};

}  // namespace uhull::detail
