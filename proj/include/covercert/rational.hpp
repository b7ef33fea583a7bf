#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace covercert {

using BigInt = mpz_class;
using Rational = mpq_class;

static_assert(sizeof(unsigned long) == 8, "GMP conversions assume LP64");

inline BigInt to_big(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }

// Always "num/den", including integers ("0/1", "3/1").
std::string to_string(const Rational& q);

// Accepts "n", "-n", "n/d" with d > 0. Result is canonicalized.
Rational parse_rational(std::string_view text);

}  // namespace covercert
