#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace uhull {

using Rational = mpq_class;

// Parses "12", "-0.125", "3.5e-2", "1/3" exactly. Throws Error(InvalidInput).
Rational parse_rational(std::string_view text);

// Canonical exact form: "0", "-7", "1/8".
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

double to_double(const Rational& value);

}  // namespace uhull
