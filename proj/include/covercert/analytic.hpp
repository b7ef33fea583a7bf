#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "covercert/core.hpp"
#include "covercert/distortion.hpp"
#include "covercert/rational.hpp"

namespace covercert {

using HighPrecision = boost::multiprecision::mpfr_float;

// s * sum_{1 <= r <= v_j} sum_{g | Q_{j-1}, g p_j^r >= d1} 1 / (g p_j^r),
// with s the multiplicity of sys. An upper bound for M1_j whenever
// delta_i = 0 for every i < j.
Rational moment1_rhs(const CongruenceSystem& sys, const PrimeLadder& ladder, std::size_t j,
                     std::uint64_t d1, const Limits& limits = {});

// Exact sum of 1/d over threshold < d <= cap with every prime factor of d at
// most y.
Rational smooth_reciprocal_sum(std::uint64_t y, std::uint64_t threshold, std::uint64_t cap,
                               const Limits& limits = {});

// exp(c j^2 / log(j + 1)): the growth bound for the j-th smallest modulus of
// a minimal covering system. c is caller-supplied; `digits` is the number of
// significant decimal digits to carry.
HighPrecision jth_modulus_bound(std::uint64_t j, const HighPrecision& c, unsigned digits = 50);

// exp(c log^2(s + 1) / log log(s + 2)): the bound on the smallest modulus of a
// covering system of multiplicity s.
HighPrecision min_modulus_bound(std::uint64_t s, const HighPrecision& c, unsigned digits = 50);

// M2 / (s^2 (log p)^6 / p^2). Diagnostic only: the constant it would be
// compared against is not known.
double moment2_shape_ratio(const Rational& m2, std::uint64_t s, std::uint64_t p);

// Parses a decimal such as "1.5" or "2e-3" at `digits` precision.
HighPrecision parse_high_precision(std::string_view text, unsigned digits = 50);

// Decimal rendering with `digits` significant digits, scientific when large.
std::string format_decimal(const HighPrecision& x, unsigned digits);

}  // namespace covercert
