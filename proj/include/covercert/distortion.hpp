#pragma once

// Distortion-method non-covering certificates.
//
// For a system with moduli d_i >= 2 and Q = p_1^v_1 ... p_J^v_J (p_1 < ... < p_J),
// the pipeline builds probability measures P_0, ..., P_J on Z/QZ. P_j is
// constant on the fibers of Z/QZ -> Z/Q_jZ, so it is stored as one exact
// fiber mass per residue mod Q_j. Level j re-weights mass away from B_j, the
// residues covered by classes whose modulus has largest prime factor p_j,
// with strength delta_j in [0, 1/2]. If
//
//   eta = sum_j min(M1_j, M2_j / (4 delta_j (1 - delta_j))) < 1,
//
// where M1_j, M2_j are the first two moments of alpha_j under P_{j-1}, the
// system does not cover Z.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "covercert/core.hpp"
#include "covercert/rational.hpp"

namespace covercert {

// Prime-power components of Q in increasing prime order. Level j (1-based)
// refers to primes[j - 1]; partials[j] = Q_j, partials[0] = 1.
struct PrimeLadder {
  std::vector<std::uint64_t> primes;
  std::vector<unsigned> exponents;
  std::vector<BigInt> partials;

  std::size_t levels() const noexcept { return primes.size(); }
  std::uint64_t prime(std::size_t j) const { return primes.at(j - 1); }
  unsigned exponent(std::size_t j) const { return exponents.at(j - 1); }
  // p_j^v_j.
  BigInt prime_power(std::size_t j) const;
};

PrimeLadder prime_ladder(const Factorization& q);

// Q_j as an enumerable count. Throws ResourceLimitError naming Q_j.
std::uint64_t enumerable_partial(const PrimeLadder& ladder, std::size_t j, const Limits& limits);

// A Q_level-measurable probability measure on Z/QZ. masses[y] is the total
// mass of the fiber {x mod Q : x = y mod Q_level}.
struct FiberMeasure {
  std::size_t level = 0;
  std::vector<Rational> masses;

  Rational total() const;
};

FiberMeasure uniform_measure();

// Sums masses over lifts: the level-(level - 1) marginal of a measure.
FiberMeasure pushforward(const FiberMeasure& measure, const PrimeLadder& ladder);

// B_j as a membership table over Z/Q_jZ.
struct LevelSet {
  std::size_t level = 0;
  std::vector<bool> members;

  bool contains(std::uint64_t y) const { return members.at(y); }
  std::vector<std::uint64_t> residues() const;
};

// Throws DomainError if some modulus is 1, ResourceLimitError if Q_j is too big.
LevelSet level_set(const CongruenceSystem& sys, const PrimeLadder& ladder, std::size_t j,
                   const Limits& limits = {});

// alpha_j indexed by residue mod Q_{j-1}.
using AlphaMap = std::vector<Rational>;

AlphaMap alpha(const FiberMeasure& prev, const LevelSet& level, const PrimeLadder& ladder);

// P_{j-1} -> P_j. Throws DomainError when delta is outside [0, 1/2].
FiberMeasure step_measure(const FiberMeasure& prev, const AlphaMap& alpha, const Rational& delta,
                          const LevelSet& level);

struct Moments {
  Rational first;
  Rational second;
};

Moments moments(const FiberMeasure& prev, const AlphaMap& alpha);

class DeltaSchedule {
 public:
  DeltaSchedule() = default;
  // Throws DomainError unless every delta lies in [0, 1/2].
  explicit DeltaSchedule(std::vector<Rational> deltas);

  std::size_t size() const noexcept { return deltas_.size(); }
  // 1-based, matching PrimeLadder levels.
  const Rational& at_level(std::size_t j) const { return deltas_.at(j - 1); }
  const std::vector<Rational>& deltas() const noexcept { return deltas_; }

 private:
  std::vector<Rational> deltas_;
};

// delta_i = 0 for p_i <= C s^3 and 1/2 beyond.
DeltaSchedule default_delta_schedule(std::uint64_t s, const Rational& C, const PrimeLadder& ladder);

enum class Branch { FirstMoment, SecondMoment };
enum class Verdict { NotCovering, Inconclusive };

const char* to_string(Branch b) noexcept;
const char* to_string(Verdict v) noexcept;

struct TermRecord {
  std::uint64_t prime = 0;
  Rational delta;
  Rational m1;
  Rational m2;
  // min(m1, m2 / (4 delta (1 - delta))); the second operand is +inf at delta = 0,
  // so the term is always finite.
  Rational term;
  Branch branch = Branch::FirstMoment;
};

struct Certificate {
  std::vector<TermRecord> terms;
  Rational eta;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::uint64_t> witness;
};

// Everything computed at one level of the pipeline. References stay valid
// only for the duration of the callback.
struct LevelView {
  std::size_t level;
  const FiberMeasure& previous;
  const LevelSet& set;
  const AlphaMap& alpha;
  const FiberMeasure& next;
  const Moments& moments;
  const TermRecord& record;
};

using LevelObserver = std::function<void(const LevelView&)>;

// Runs P_0 -> P_J. The schedule must have one delta per prime of Q. When the
// verdict is NotCovering and Q fits the residue-space limit, the smallest
// uncovered residue is attached as an independent confirmation.
Certificate certify(const CongruenceSystem& sys, const DeltaSchedule& schedule,
                    const Limits& limits = {}, const LevelObserver& observer = {});

struct ApViolation {
  std::uint64_t modulus;
  std::uint64_t residue;
  Rational mass;
  Rational bound;
};

// Checks measure(a + gZ) <= prod_{p_i | g} (1 - delta_i)^-1 / g for every
// g | Q_level and every a mod g. Expected to return nothing.
std::vector<ApViolation> ap_mass_bound_check(const FiberMeasure& measure,
                                             const DeltaSchedule& schedule,
                                             const PrimeLadder& ladder, const Limits& limits = {});

}  // namespace covercert
