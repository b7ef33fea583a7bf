#include "covercert/analytic.hpp"

#include <cmath>
#include <ios>
#include <string>
#include <vector>

#include "covercert/error.hpp"
#include "divisors.hpp"

namespace covercert {

namespace {

// Restores the thread's default mpfr precision on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : saved_(HighPrecision::default_precision()) {
    HighPrecision::default_precision(digits10);
  }
  ~PrecisionScope() { HighPrecision::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

constexpr unsigned kGuardDigits = 20;

// Sum of 1/d over ds[lo, hi) by binary splitting.
Rational reciprocal_sum(const std::vector<std::uint64_t>& ds, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return Rational(0);
  if (hi - lo == 1) return Rational(BigInt(1), to_big(ds[lo]));
  const std::size_t mid = lo + (hi - lo) / 2;
  Rational sum = reciprocal_sum(ds, lo, mid) + reciprocal_sum(ds, mid, hi);
  sum.canonicalize();
  return sum;
}

}  // namespace

Rational moment1_rhs(const CongruenceSystem& sys, const PrimeLadder& ladder, std::size_t j,
                     std::uint64_t d1, const Limits& limits) {
  if (j < 1 || j > ladder.levels())
    throw DomainError("level " + std::to_string(j) + " outside 1.." +
                      std::to_string(ladder.levels()));
  enumerable_partial(ladder, j - 1, limits);
  const BigInt s = to_big(multiplicity(sys));
  const BigInt threshold = to_big(d1);
  const auto divs = detail::divisors_of_partial(ladder, j - 1, limits);

  Rational sum = 0;
  BigInt pr = 1;
  for (unsigned r = 1; r <= ladder.exponent(j); ++r) {
    pr *= ladder.prime(j);
    for (const std::uint64_t g : divs) {
      const BigInt d = to_big(g) * pr;
      if (d >= threshold) sum += Rational(BigInt(1), d);
    }
  }
  return Rational(s) * sum;
}

Rational smooth_reciprocal_sum(std::uint64_t y, std::uint64_t threshold, std::uint64_t cap,
                               const Limits& limits) {
  if (y < 2) throw DomainError("smoothness bound y must be >= 2");
  if (threshold > cap)
    throw DomainError("threshold " + std::to_string(threshold) + " exceeds cap " +
                      std::to_string(cap));
  if (cap > limits.max_residue_space)
    throw ResourceLimitError("cap " + std::to_string(cap) + " exceeds enumeration limit " +
                             std::to_string(limits.max_residue_space));

  const std::uint64_t sieve_top = std::min(y, cap);
  std::vector<bool> composite(sieve_top + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= sieve_top; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= sieve_top; m += p) composite[m] = true;
  }

  std::vector<std::uint64_t> smooth;
  for (std::uint64_t d = threshold + 1; d <= cap; ++d) {
    std::uint64_t m = d;
    for (const std::uint64_t p : primes) {
      if (m <= y || p * p > m) break;
      while (m % p == 0) m /= p;
    }
    if (m <= y) smooth.push_back(d);
  }
  return reciprocal_sum(smooth, 0, smooth.size());
}

HighPrecision jth_modulus_bound(std::uint64_t j, const HighPrecision& c, unsigned digits) {
  if (j < 1) throw DomainError("j must be >= 1");
  if (c <= 0) throw DomainError("c must be positive");
  PrecisionScope scope(digits + kGuardDigits);
  const HighPrecision jj(j);
  const HighPrecision cc(c);
  return exp(cc * jj * jj / log(jj + 1));
}

HighPrecision min_modulus_bound(std::uint64_t s, const HighPrecision& c, unsigned digits) {
  if (s < 1) throw DomainError("s must be >= 1");
  if (c <= 0) throw DomainError("c must be positive");
  PrecisionScope scope(digits + kGuardDigits);
  const HighPrecision ss(s);
  const HighPrecision cc(c);
  const HighPrecision l = log(ss + 1);
  return exp(cc * l * l / log(log(ss + 2)));
}

double moment2_shape_ratio(const Rational& m2, std::uint64_t s, std::uint64_t p) {
  const double lp = std::log(static_cast<double>(p));
  const double shape = static_cast<double>(s) * static_cast<double>(s) * std::pow(lp, 6) /
                       (static_cast<double>(p) * static_cast<double>(p));
  return m2.get_d() / shape;
}

HighPrecision parse_high_precision(std::string_view text, unsigned digits) {
  PrecisionScope scope(digits + kGuardDigits);
  try {
    return HighPrecision(std::string(text));
  } catch (const std::exception&) {
    throw ParseError("malformed decimal '" + std::string(text) + "'");
  }
}

std::string format_decimal(const HighPrecision& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits));
}

}  // namespace covercert
