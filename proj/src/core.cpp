#include "covercert/core.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "covercert/error.hpp"

namespace covercert {

namespace {

using i128 = __int128;

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

// Inverse of a modulo m, for gcd(a, m) = 1 and m >= 1.
i128 inverse_mod(i128 a, i128 m) {
  i128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  old_s %= m;
  return old_s < 0 ? old_s + m : old_s;
}

std::vector<ResidueClass> distinct_classes(std::span<const ResidueClass> classes) {
  std::vector<ResidueClass> out(classes.begin(), classes.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ResidueClass make_class(std::int64_t a, std::int64_t d) {
  if (d < 1) throw InvalidModulus("modulus must be >= 1, got " + std::to_string(d));
  std::int64_t r = a % d;
  if (r < 0) r += d;
  return ResidueClass(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(d));
}

ResidueClass make_class(const BigInt& a, std::uint64_t d) {
  if (d < 1) throw InvalidModulus("modulus must be >= 1, got 0");
  const BigInt mod = to_big(d);
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
  return ResidueClass(r.get_ui(), d);
}

std::optional<ResidueClass> intersect(const ResidueClass& a, const ResidueClass& b) {
  const std::uint64_t m = a.modulus(), n = b.modulus();
  const std::uint64_t g = gcd_u64(m, n);
  const i128 diff = static_cast<i128>(b.residue()) - static_cast<i128>(a.residue());
  if (diff % static_cast<i128>(g) != 0) return std::nullopt;
  const i128 lcm = static_cast<i128>(m / g) * static_cast<i128>(n);
  if (lcm > static_cast<i128>(std::numeric_limits<std::int64_t>::max()))
    throw DomainError("lcm(" + std::to_string(m) + ", " + std::to_string(n) +
                      ") does not fit in 63 bits");
  const i128 n_g = n / g;
  i128 t = 0;
  if (n_g > 1) {
    i128 rhs = (diff / static_cast<i128>(g)) % n_g;
    if (rhs < 0) rhs += n_g;
    t = rhs * inverse_mod(static_cast<i128>(m / g) % n_g, n_g) % n_g;
  }
  const i128 x = (static_cast<i128>(a.residue()) + static_cast<i128>(m) * t) % lcm;
  return make_class(static_cast<std::int64_t>(x), static_cast<std::int64_t>(lcm));
}

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].exponent == 0 || factors_[i].prime < 2 ||
        (i > 0 && factors_[i - 1].prime >= factors_[i].prime))
      throw DomainError("factorization must have increasing primes and positive exponents");
  }
}

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto& [p, e] : factors_) {
    BigInt pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
    v *= pe;
  }
  return v;
}

std::optional<std::uint64_t> Factorization::value_u64() const {
  std::uint64_t v = 1;
  for (const auto& [p, e] : factors_) {
    for (unsigned k = 0; k < e; ++k) {
      if (v > std::numeric_limits<std::uint64_t>::max() / p) return std::nullopt;
      v *= p;
    }
  }
  return v;
}

Factorization Factorization::lcm(const Factorization& other) const {
  std::vector<PrimePower> out;
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() || j != other.factors_.end()) {
    if (j == other.factors_.end() || (i != factors_.end() && i->prime < j->prime)) {
      out.push_back(*i++);
    } else if (i == factors_.end() || j->prime < i->prime) {
      out.push_back(*j++);
    } else {
      out.push_back({i->prime, std::max(i->exponent, j->exponent)});
      ++i;
      ++j;
    }
  }
  return Factorization(std::move(out));
}

Factorization factorize_u64(std::uint64_t m) {
  if (m < 1) throw DomainError("cannot factorize 0");
  std::vector<PrimePower> out;
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  take(2);
  take(3);
  for (std::uint64_t p = 5; p <= m / p; p += 6) {
    take(p);
    take(p + 2);
  }
  if (m > 1) out.push_back({m, 1});
  return Factorization(std::move(out));
}

Factorization factorize(std::int64_t m) {
  if (m < 1) throw DomainError("factorize requires m >= 1, got " + std::to_string(m));
  return factorize_u64(static_cast<std::uint64_t>(m));
}

CongruenceSystem::CongruenceSystem(std::vector<ResidueClass> classes)
    : classes_(std::move(classes)) {
  std::map<std::uint64_t, Factorization> seen;
  for (const auto& c : classes_) {
    auto [it, inserted] = seen.try_emplace(c.modulus());
    if (inserted) {
      it->second = factorize_u64(c.modulus());
      lcm_ = lcm_.lcm(it->second);
    }
  }
}

std::uint64_t CongruenceSystem::min_modulus() const {
  if (classes_.empty()) throw DomainError("empty system has no smallest modulus");
  return std::min_element(classes_.begin(), classes_.end(),
                          [](const auto& a, const auto& b) { return a.modulus() < b.modulus(); })
      ->modulus();
}

CongruenceSystem CongruenceSystem::sorted() const {
  std::vector<ResidueClass> out = classes_;
  std::stable_sort(out.begin(), out.end());
  return CongruenceSystem(std::move(out));
}

CongruenceSystem CongruenceSystem::deduplicated() const {
  return CongruenceSystem(distinct_classes(classes_));
}

std::uint64_t residue_space(const CongruenceSystem& sys, const Limits& limits) {
  const auto q = sys.lcm_factorization().value_u64();
  if (!q || *q > limits.max_residue_space)
    throw ResourceLimitError("residue space Q = " + sys.lcm().get_str() +
                             " exceeds limit " + std::to_string(limits.max_residue_space));
  return *q;
}

CoverageReport covers_oracle(const CongruenceSystem& sys, const Limits& limits) {
  const std::uint64_t q = residue_space(sys, limits);
  std::vector<bool> covered(q, false);
  for (const auto& c : distinct_classes(sys.classes())) {
    for (std::uint64_t x = c.residue(); x < q; x += c.modulus()) covered[x] = true;
  }
  CoverageReport report;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (covered[x]) continue;
    if (report.uncovered_count++ == 0) report.witness = x;
  }
  report.covers = report.uncovered_count == 0;
  return report;
}

bool covers_interval(const CongruenceSystem& sys, const Limits& limits) {
  const std::size_t n = sys.size();
  if (n >= 63 || (std::uint64_t{1} << n) > limits.max_interval)
    throw ResourceLimitError("interval {1..2^" + std::to_string(n) + "} exceeds limit " +
                             std::to_string(limits.max_interval));
  const std::uint64_t top = std::uint64_t{1} << n;
  std::vector<bool> covered(top + 1, false);
  for (const auto& c : distinct_classes(sys.classes())) {
    const std::uint64_t first = c.residue() == 0 ? c.modulus() : c.residue();
    for (std::uint64_t x = first; x <= top; x += c.modulus()) covered[x] = true;
  }
  for (std::uint64_t x = 1; x <= top; ++x) {
    if (!covered[x]) return false;
  }
  return true;
}

std::uint64_t multiplicity(const CongruenceSystem& sys) {
  if (sys.empty()) throw DomainError("multiplicity of an empty system is undefined");
  std::map<std::uint64_t, std::uint64_t> count;
  std::uint64_t best = 0;
  for (const auto& c : sys.classes()) best = std::max(best, ++count[c.modulus()]);
  return best;
}

std::uint64_t distinct_multiplicity(const CongruenceSystem& sys) {
  return multiplicity(sys.deduplicated());
}

MinimalityReport is_minimal(const CongruenceSystem& sys, const Limits& limits) {
  const std::uint64_t q = residue_space(sys, limits);
  std::vector<std::uint32_t> count(q, 0);
  for (const auto& c : sys.classes()) {
    for (std::uint64_t x = c.residue(); x < q; x += c.modulus()) ++count[x];
  }
  if (std::find(count.begin(), count.end(), 0u) != count.end())
    throw DomainError("minimality is only defined for covering systems");
  MinimalityReport report;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto& c = sys[i];
    bool needed = false;
    for (std::uint64_t x = c.residue(); x < q && !needed; x += c.modulus()) needed = count[x] == 1;
    if (!needed) report.redundant.push_back(i);
  }
  report.minimal = report.redundant.empty();
  return report;
}

Rational density_uncovered(const CongruenceSystem& sys, const Limits& limits) {
  const auto report = covers_oracle(sys, limits);
  Rational d(to_big(report.uncovered_count), sys.lcm());
  d.canonicalize();
  return d;
}

}  // namespace covercert
