#pragma once

// Test-only reference computations. Nothing here calls into the library's
// algorithms; they work pointwise on Z/QZ straight from the definitions.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace covercert::oracle {

using Rational = mpq_class;

struct Class {
  std::uint64_t r;
  std::uint64_t d;
};

inline Rational frac(std::uint64_t num, std::uint64_t den) {
  Rational q{mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den))};
  q.canonicalize();
  return q;
}

inline std::uint64_t lcm_of(const std::vector<Class>& cs) {
  std::uint64_t q = 1;
  for (const auto& c : cs) q = std::lcm(q, c.d);
  return q;
}

inline bool covered(const std::vector<Class>& cs, std::uint64_t x) {
  for (const auto& c : cs) {
    if (x % c.d == c.r % c.d) return true;
  }
  return false;
}

struct Coverage {
  std::uint64_t uncovered = 0;
  std::optional<std::uint64_t> first;
};

inline Coverage brute_coverage(const std::vector<Class>& cs) {
  const std::uint64_t q = lcm_of(cs);
  Coverage out;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (covered(cs, x)) continue;
    if (out.uncovered++ == 0) out.first = x;
  }
  return out;
}

// Residues in [0, lcm) lying in both classes.
inline std::vector<std::uint64_t> brute_intersection(Class a, Class b) {
  const std::uint64_t l = std::lcm(a.d, b.d);
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < l; ++x) {
    if (x % a.d == a.r && x % b.d == b.r) out.push_back(x);
  }
  return out;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::uint64_t largest_prime_factor(std::uint64_t n) {
  const auto f = trial_factor(n);
  return f.empty() ? 1 : f.back().first;
}

struct DistortionTrace {
  std::uint64_t q = 1;
  std::vector<std::uint64_t> partials;        // Q_0, ..., Q_J
  std::vector<std::vector<Rational>> points;  // P_0, ..., P_J pointwise on Z/QZ
  std::vector<Rational> m1, m2;
  Rational eta = 0;
};

// Builds every P_j pointwise over Z/QZ from the two-case definition.
inline DistortionTrace pointwise_distortion(const std::vector<Class>& cs,
                                            const std::vector<Rational>& deltas) {
  DistortionTrace t;
  t.q = lcm_of(cs);
  const auto factors = trial_factor(t.q);
  t.partials.push_back(1);
  for (const auto& [p, e] : factors) {
    std::uint64_t pe = 1;
    for (unsigned k = 0; k < e; ++k) pe *= p;
    t.partials.push_back(t.partials.back() * pe);
  }
  std::vector<Rational> P(t.q, frac(1, t.q));
  t.points.push_back(P);
  for (std::size_t j = 1; j <= factors.size(); ++j) {
    const std::uint64_t pj = factors[j - 1].first;
    const std::uint64_t qprev = t.partials[j - 1];
    std::vector<bool> in_b(t.q, false);
    for (std::uint64_t x = 0; x < t.q; ++x) {
      for (const auto& c : cs) {
        if (largest_prime_factor(c.d) == pj && x % c.d == c.r) in_b[x] = true;
      }
    }
    std::vector<std::uint64_t> hits(qprev, 0);
    for (std::uint64_t x = 0; x < t.q; ++x) hits[x % qprev] += in_b[x];
    const std::uint64_t fiber = t.q / qprev;
    auto alpha = [&](std::uint64_t x) { return frac(hits[x % qprev], fiber); };

    Rational m1 = 0, m2 = 0;
    for (std::uint64_t x = 0; x < t.q; ++x) {
      const Rational a = alpha(x);
      m1 += P[x] * a;
      m2 += P[x] * a * a;
    }
    const Rational& delta = deltas[j - 1];
    Rational term = m1;
    if (delta != 0) {
      const Rational second = m2 / (4 * delta * (1 - delta));
      if (second < term) term = second;
    }
    t.m1.push_back(m1);
    t.m2.push_back(m2);
    t.eta += term;

    std::vector<Rational> next(t.q);
    for (std::uint64_t x = 0; x < t.q; ++x) {
      const Rational a = alpha(x);
      if (a < delta) {
        next[x] = in_b[x] ? Rational(0) : Rational(P[x] / (1 - a));
      } else if (in_b[x]) {
        next[x] = P[x] * (a - delta) / (a * (1 - delta));
      } else {
        next[x] = P[x] / (1 - delta);
      }
    }
    P = std::move(next);
    t.points.push_back(P);
  }
  return t;
}

// Random system with every modulus a divisor (>= min_modulus) of `base`.
inline std::vector<Class> random_system(std::mt19937_64& rng, const std::vector<std::uint64_t>& moduli,
                                        std::size_t min_size, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size_dist(min_size, max_size);
  std::uniform_int_distribution<std::size_t> pick(0, moduli.size() - 1);
  std::vector<Class> out(size_dist(rng));
  for (auto& c : out) {
    c.d = moduli[pick(rng)];
    c.r = std::uniform_int_distribution<std::uint64_t>(0, c.d - 1)(rng);
  }
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n, std::uint64_t at_least = 1) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = at_least; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

}  // namespace covercert::oracle
