#include "kernel.hpp"

namespace uhull::kernel {

std::optional<std::vector<IntVec>> int_frame(const Point& origin, std::span<const Point* const> pts) {
  std::vector<Rational> diffs;
  diffs.reserve(2 * pts.size());
  mpz_class scale = 1;
  for (const Point* p : pts) {
    for (int c = 0; c < 2; ++c) {
      diffs.push_back((*p)[c] - origin[c]);
      const mpz_class& den = diffs.back().get_den();
      if (den != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
  }
  static const mpz_class limit = mpz_class(1) << 62;
  std::vector<IntVec> out(pts.size());
  mpz_class v;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    v = diffs[i].get_num() * (scale / diffs[i].get_den());
    if (abs(v) >= limit) return std::nullopt;
    std::int64_t iv = v.get_si();
    if (i % 2 == 0) out[i / 2].x = iv; else out[i / 2].y = iv;
  }
  return out;
}

std::optional<std::vector<IntVec>> int_points(std::span<const Point* const> pts) {
  mpz_class scale = 1;
  for (const Point* p : pts)
    for (int c = 0; c < 2; ++c) {
      const mpz_class& den = (*p)[c].get_den();
      if (den != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
  static const mpz_class limit = mpz_class(1) << 61;
  std::vector<IntVec> out(pts.size());
  mpz_class v;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int c = 0; c < 2; ++c) {
      const Rational& r = (*pts[i])[c];
      v = r.get_num() * (scale / r.get_den());
      if (abs(v) >= limit) return std::nullopt;
      (c == 0 ? out[i].x : out[i].y) = v.get_si();
    }
  return out;
}

std::vector<RatVec> rat_frame(const Point& origin, std::span<const Point* const> pts) {
  std::vector<RatVec> out;
  out.reserve(pts.size());
  for (const Point* p : pts) out.push_back({(*p)[0] - origin[0], (*p)[1] - origin[1]});
  return out;
}

}  // namespace uhull::kernel
