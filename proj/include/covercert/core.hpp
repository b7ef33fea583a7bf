#pragma once

// Residue-class algebra and exhaustive coverage decisions for finite systems
// of congruences.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "covercert/rational.hpp"

namespace covercert {

// Caps on every enumeration the library performs.
struct Limits {
  std::uint64_t max_residue_space = 10'000'000;  // |Z/QZ| or |Z/Q_jZ|
  std::uint64_t max_interval = std::uint64_t{1} << 24;  // 2^n for interval checks
  std::uint64_t max_divisors = 1'000'000;  // divisor and term enumerations
};

// The class a mod d, stored with 0 <= a < d.
class ResidueClass {
 public:
  std::uint64_t residue() const noexcept { return residue_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  bool contains(std::uint64_t x) const noexcept { return x % modulus_ == residue_; }

  // Orders by (modulus, residue).
  friend std::strong_ordering operator<=>(const ResidueClass& a, const ResidueClass& b) noexcept {
    if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
    return a.residue_ <=> b.residue_;
  }
  friend bool operator==(const ResidueClass&, const ResidueClass&) noexcept = default;

 private:
  friend ResidueClass make_class(std::int64_t a, std::int64_t d);
  friend ResidueClass make_class(const BigInt& a, std::uint64_t d);
  ResidueClass(std::uint64_t residue, std::uint64_t modulus) noexcept
      : residue_(residue), modulus_(modulus) {}

  std::uint64_t residue_;
  std::uint64_t modulus_;
};

// Throws InvalidModulus when d < 1.
ResidueClass make_class(std::int64_t a, std::int64_t d);
ResidueClass make_class(const BigInt& a, std::uint64_t d);

// Intersection via CRT; nullopt when the classes are disjoint. Throws
// DomainError if the lcm of the moduli does not fit in 64 bits.
std::optional<ResidueClass> intersect(const ResidueClass& a, const ResidueClass& b);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class Factorization {
 public:
  Factorization() = default;
  // Factors must have strictly increasing primes and positive exponents.
  explicit Factorization(std::vector<PrimePower> factors);

  std::span<const PrimePower> factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }
  std::size_t omega() const noexcept { return factors_.size(); }

  // P^+(n); 1 for n = 1.
  std::uint64_t largest_prime() const noexcept {
    return factors_.empty() ? 1 : factors_.back().prime;
  }

  BigInt value() const;
  // nullopt when the value does not fit in 64 bits.
  std::optional<std::uint64_t> value_u64() const;

  // Factorization of lcm(*this, other).
  Factorization lcm(const Factorization& other) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

// Deterministic trial division. Throws DomainError for m < 1.
Factorization factorize(std::int64_t m);
Factorization factorize_u64(std::uint64_t m);

// Ordered multiset of residue classes. Duplicates are kept.
class CongruenceSystem {
 public:
  CongruenceSystem() = default;
  explicit CongruenceSystem(std::vector<ResidueClass> classes);

  std::span<const ResidueClass> classes() const noexcept { return classes_; }
  const ResidueClass& operator[](std::size_t i) const { return classes_[i]; }
  std::size_t size() const noexcept { return classes_.size(); }
  bool empty() const noexcept { return classes_.empty(); }

  // Factored lcm of all moduli (empty factorization, i.e. 1, for no classes).
  const Factorization& lcm_factorization() const noexcept { return lcm_; }
  BigInt lcm() const { return lcm_.value(); }

  // Smallest modulus. Throws DomainError on an empty system.
  std::uint64_t min_modulus() const;

  CongruenceSystem sorted() const;
  // Sorted, with repeated classes collapsed.
  CongruenceSystem deduplicated() const;

  friend bool operator==(const CongruenceSystem& a, const CongruenceSystem& b) {
    return a.classes_ == b.classes_;
  }

 private:
  std::vector<ResidueClass> classes_;
  Factorization lcm_;
};

struct CoverageReport {
  bool covers = false;
  std::optional<std::uint64_t> witness;  // smallest uncovered residue mod Q
  std::uint64_t uncovered_count = 0;
};

struct MinimalityReport {
  bool minimal = false;
  std::vector<std::size_t> redundant;  // indices whose single removal keeps coverage
};

// Q as an enumerable size; throws ResourceLimitError naming Q otherwise.
std::uint64_t residue_space(const CongruenceSystem& sys, const Limits& limits);

// Exhaustive check over Z/QZ. The empty system does not cover (witness 0).
CoverageReport covers_oracle(const CongruenceSystem& sys, const Limits& limits = {});

// Checks {1, ..., 2^n} only, which is equivalent to covering Z.
bool covers_interval(const CongruenceSystem& sys, const Limits& limits = {});

// Largest number of classes sharing one modulus, duplicates counted.
// Throws DomainError on an empty system.
std::uint64_t multiplicity(const CongruenceSystem& sys);
// Same, after collapsing repeated classes.
std::uint64_t distinct_multiplicity(const CongruenceSystem& sys);

// Throws DomainError when sys does not cover Z.
MinimalityReport is_minimal(const CongruenceSystem& sys, const Limits& limits = {});

Rational density_uncovered(const CongruenceSystem& sys, const Limits& limits = {});

}  // namespace covercert
