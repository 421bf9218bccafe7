#pragma once

// Planar vectors relative to an origin, either as exact 64-bit integers
// (common-denominator scaling) or as rationals when scaling overflows.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uhull/geometry.hpp"

namespace uhull::kernel {

struct IntVec {
  std::int64_t x, y;
};

struct RatVec {
  Rational x, y;
};

inline int cross_sign(const IntVec& a, const IntVec& b) {
  __int128 v = static_cast<__int128>(a.x) * b.y - static_cast<__int128>(a.y) * b.x;
  return (v > 0) - (v < 0);
}

inline int cross_sign(const RatVec& a, const RatVec& b) { return sgn(a.x * b.y - a.y * b.x); }

inline bool is_zero(const IntVec& a) { return a.x == 0 && a.y == 0; }
inline bool is_zero(const RatVec& a) { return sgn(a.x) == 0 && sgn(a.y) == 0; }

// 0 for directions in [0, pi), 1 for [pi, 2 pi).
inline int half(const IntVec& a) { return (a.y < 0 || (a.y == 0 && a.x < 0)) ? 1 : 0; }
inline int half(const RatVec& a) { return (sgn(a.y) < 0 || (sgn(a.y) == 0 && sgn(a.x) < 0)) ? 1 : 0; }

inline IntVec negate(const IntVec& a) { return {-a.x, -a.y}; }
inline RatVec negate(const RatVec& a) { return {-a.x, -a.y}; }

template <class Vec>
bool angle_less(const Vec& a, const Vec& b) {
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross_sign(a, b) > 0;
}

template <class Vec>
bool same_direction(const Vec& a, const Vec& b) {
  return half(a) == half(b) && cross_sign(a, b) == 0;
}

// Coordinates of (p - origin) scaled by a common positive factor so that every
// component is an integer of magnitude below 2^62; nullopt when impossible.
std::optional<std::vector<IntVec>> int_frame(const Point& origin, std::span<const Point* const> pts);

// Absolute coordinates scaled by one common positive factor, each of
// magnitude below 2^61 so that pairwise differences fit int_frame's bound.
std::optional<std::vector<IntVec>> int_points(std::span<const Point* const> pts);

std::vector<RatVec> rat_frame(const Point& origin, std::span<const Point* const> pts);

}  // namespace uhull::kernel
