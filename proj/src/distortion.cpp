#include "covercert/distortion.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "covercert/error.hpp"
#include "divisors.hpp"

namespace covercert {

namespace {

const Rational kHalf(1, 2);

void require_level_pair(const FiberMeasure& prev, const LevelSet& level) {
  if (level.level != prev.level + 1 || prev.masses.empty() ||
      level.members.size() % prev.masses.size() != 0)
    throw InternalError("measure at level " + std::to_string(prev.level) +
                        " is inconsistent with level set " + std::to_string(level.level));
}

}  // namespace

BigInt PrimeLadder::prime_power(std::size_t j) const {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), prime(j), exponent(j));
  return out;
}

PrimeLadder prime_ladder(const Factorization& q) {
  PrimeLadder ladder;
  ladder.partials.emplace_back(1);
  for (const auto& [p, e] : q.factors()) {
    ladder.primes.push_back(p);
    ladder.exponents.push_back(e);
    BigInt pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
    ladder.partials.push_back(ladder.partials.back() * pe);
  }
  return ladder;
}

std::uint64_t enumerable_partial(const PrimeLadder& ladder, std::size_t j, const Limits& limits) {
  const BigInt& qj = ladder.partials.at(j);
  if (qj > to_big(limits.max_residue_space))
    throw ResourceLimitError("Q_" + std::to_string(j) + " = " + qj.get_str() +
                             " exceeds residue-space limit " +
                             std::to_string(limits.max_residue_space));
  return qj.get_ui();
}

Rational FiberMeasure::total() const {
  Rational sum = 0;
  for (const auto& m : masses) sum += m;
  return sum;
}

FiberMeasure uniform_measure() { return FiberMeasure{0, {Rational(1)}}; }

FiberMeasure pushforward(const FiberMeasure& measure, const PrimeLadder& ladder) {
  if (measure.level == 0) throw DomainError("level-0 measure has no pushforward");
  const std::uint64_t parent = ladder.partials.at(measure.level - 1).get_ui();
  FiberMeasure out{measure.level - 1, std::vector<Rational>(parent, Rational(0))};
  for (std::uint64_t z = 0; z < measure.masses.size(); ++z) out.masses[z % parent] += measure.masses[z];
  return out;
}

std::vector<std::uint64_t> LevelSet::residues() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t y = 0; y < members.size(); ++y) {
    if (members[y]) out.push_back(y);
  }
  return out;
}

LevelSet level_set(const CongruenceSystem& sys, const PrimeLadder& ladder, std::size_t j,
                   const Limits& limits) {
  if (j < 1 || j > ladder.levels())
    throw DomainError("level " + std::to_string(j) + " outside 1.." +
                      std::to_string(ladder.levels()));
  const std::uint64_t qj = enumerable_partial(ladder, j, limits);
  const std::uint64_t pj = ladder.prime(j);
  LevelSet out{j, std::vector<bool>(qj, false)};
  std::map<std::uint64_t, std::uint64_t> largest_prime;
  for (const auto& c : sys.classes()) {
    if (c.modulus() < 2) throw DomainError("the distortion method requires every modulus >= 2");
    auto [it, inserted] = largest_prime.try_emplace(c.modulus());
    if (inserted) it->second = factorize_u64(c.modulus()).largest_prime();
    if (it->second != pj) continue;
    if (qj % c.modulus() != 0)
      throw InternalError("modulus " + std::to_string(c.modulus()) + " does not divide Q_" +
                          std::to_string(j));
    for (std::uint64_t y = c.residue(); y < qj; y += c.modulus()) out.members[y] = true;
  }
  return out;
}

AlphaMap alpha(const FiberMeasure& prev, const LevelSet& level, const PrimeLadder& ladder) {
  require_level_pair(prev, level);
  const std::uint64_t parent = prev.masses.size();
  const std::uint64_t lifts = level.members.size() / parent;
  if (ladder.prime_power(level.level) != to_big(lifts))
    throw InternalError("level set size does not match p_j^v_j");
  std::vector<std::uint64_t> count(parent, 0);
  for (std::uint64_t z = 0; z < level.members.size(); ++z) {
    if (level.members[z]) ++count[z % parent];
  }
  std::map<std::uint64_t, Rational> cache;
  AlphaMap out(parent);
  for (std::uint64_t y = 0; y < parent; ++y) {
    auto [it, inserted] = cache.try_emplace(count[y]);
    if (inserted) {
      it->second = Rational(to_big(count[y]), to_big(lifts));
      it->second.canonicalize();
    }
    out[y] = it->second;
  }
  return out;
}

FiberMeasure step_measure(const FiberMeasure& prev, const AlphaMap& alpha, const Rational& delta,
                          const LevelSet& level) {
  if (delta < 0 || delta > kHalf)
    throw DomainError("delta " + to_string(delta) + " outside [0, 1/2]");
  require_level_pair(prev, level);
  const std::uint64_t parent = prev.masses.size();
  if (alpha.size() != parent) throw InternalError("alpha map has the wrong level");
  const std::uint64_t lifts = level.members.size() / parent;
  const Rational lift_share(BigInt(1), to_big(lifts));

  // Per parent fiber: the factor applied to lifts inside and outside B_j,
  // already divided by the number of lifts.
  std::vector<Rational> on_b(parent), off_b(parent);
  for (std::uint64_t y = 0; y < parent; ++y) {
    const Rational& a = alpha[y];
    const Rational share = prev.masses[y] * lift_share;
    if (a < delta) {
      on_b[y] = 0;
      off_b[y] = share / (1 - a);
    } else if (a == 0) {
      // delta = 0 here and the fiber misses B_j.
      on_b[y] = 0;
      off_b[y] = share;
    } else {
      on_b[y] = share * (a - delta) / (a * (1 - delta));
      off_b[y] = share / (1 - delta);
    }
  }

  FiberMeasure next{level.level, std::vector<Rational>(level.members.size())};
  for (std::uint64_t z = 0; z < level.members.size(); ++z) {
    const std::uint64_t y = z % parent;
    if (level.members[z]) {
      if (alpha[y] == 0) throw InternalError("lift inside B_j over a fiber with alpha = 0");
      next.masses[z] = on_b[y];
    } else {
      next.masses[z] = off_b[y];
    }
  }
  return next;
}

Moments moments(const FiberMeasure& prev, const AlphaMap& alpha) {
  if (alpha.size() != prev.masses.size()) throw InternalError("alpha map has the wrong level");
  Moments out{0, 0};
  for (std::size_t y = 0; y < alpha.size(); ++y) {
    if (alpha[y] == 0) continue;
    const Rational weighted = prev.masses[y] * alpha[y];
    out.first += weighted;
    out.second += weighted * alpha[y];
  }
  return out;
}

DeltaSchedule::DeltaSchedule(std::vector<Rational> deltas) : deltas_(std::move(deltas)) {
  for (std::size_t i = 0; i < deltas_.size(); ++i) {
    if (deltas_[i] < 0 || deltas_[i] > kHalf)
      throw DomainError("delta_" + std::to_string(i + 1) + " = " + to_string(deltas_[i]) +
                        " outside [0, 1/2]");
  }
}

DeltaSchedule default_delta_schedule(std::uint64_t s, const Rational& C, const PrimeLadder& ladder) {
  if (s < 1) throw DomainError("multiplicity must be >= 1");
  if (C <= 0) throw DomainError("schedule constant C must be positive");
  const BigInt s_big = to_big(s);
  const Rational y = C * Rational(s_big * s_big * s_big);
  std::vector<Rational> deltas;
  for (const std::uint64_t p : ladder.primes) deltas.push_back(Rational(to_big(p)) <= y ? Rational(0) : kHalf);
  return DeltaSchedule(std::move(deltas));
}

const char* to_string(Branch b) noexcept {
  return b == Branch::FirstMoment ? "first-moment" : "second-moment";
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::NotCovering ? "NotCovering" : "Inconclusive";
}

Certificate certify(const CongruenceSystem& sys, const DeltaSchedule& schedule,
                    const Limits& limits, const LevelObserver& observer) {
  for (const auto& c : sys.classes()) {
    if (c.modulus() < 2)
      throw DomainError("the distortion method requires every modulus >= 2 (found " +
                        std::to_string(c.residue()) + " mod 1)");
  }
  const PrimeLadder ladder = prime_ladder(sys.lcm_factorization());
  if (schedule.size() != ladder.levels())
    throw DomainError("delta schedule has " + std::to_string(schedule.size()) +
                      " entries but Q has " + std::to_string(ladder.levels()) + " prime factors");
  for (std::size_t j = 1; j <= ladder.levels(); ++j) enumerable_partial(ladder, j, limits);

  Certificate cert;
  cert.eta = 0;
  FiberMeasure measure = uniform_measure();
  for (std::size_t j = 1; j <= ladder.levels(); ++j) {
    const LevelSet set = level_set(sys, ladder, j, limits);
    const AlphaMap a = alpha(measure, set, ladder);
    const Moments m = moments(measure, a);
    const Rational& delta = schedule.at_level(j);

    TermRecord record{ladder.prime(j), delta, m.first, m.second, m.first, Branch::FirstMoment};
    if (delta != 0) {
      const Rational second = m.second / (4 * delta * (1 - delta));
      if (second < m.first) {
        record.term = second;
        record.branch = Branch::SecondMoment;
      }
    }
    cert.eta += record.term;

    FiberMeasure next = step_measure(measure, a, delta, set);
    if (observer) observer(LevelView{j, measure, set, a, next, m, record});
    cert.terms.push_back(std::move(record));
    measure = std::move(next);
  }

  cert.verdict = cert.eta < 1 ? Verdict::NotCovering : Verdict::Inconclusive;
  if (cert.verdict == Verdict::NotCovering) {
    const auto q = sys.lcm_factorization().value_u64();
    if (q && *q <= limits.max_residue_space) {
      const CoverageReport report = covers_oracle(sys, limits);
      if (report.covers)
        throw InternalError("eta < 1 but the exhaustive check finds the system covering");
      cert.witness = report.witness;
    }
  }
  return cert;
}

std::vector<ApViolation> ap_mass_bound_check(const FiberMeasure& measure,
                                             const DeltaSchedule& schedule,
                                             const PrimeLadder& ladder, const Limits& limits) {
  const std::size_t level = measure.level;
  if (level > ladder.levels() || schedule.size() < level)
    throw DomainError("measure level exceeds the ladder or schedule");
  const std::uint64_t top = enumerable_partial(ladder, level, limits);
  if (measure.masses.size() != top) throw InternalError("measure size does not match Q_level");

  const std::vector<std::uint64_t> divs = detail::divisors_of_partial(ladder, level, limits);
  // Scale every mass by the common denominator so folding is integer addition.
  BigInt common = 1;
  for (const Rational& m : measure.masses) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), m.get_den_mpz_t());
  std::vector<BigInt> scaled(top);
  for (std::uint64_t y = 0; y < top; ++y) {
    scaled[y] = measure.masses[y].get_num() * (common / measure.masses[y].get_den());
  }

  // masses of a + gZ for every g, folded down from the next multiple g * p.
  std::map<std::uint64_t, std::vector<BigInt>> by_modulus;
  by_modulus.emplace(top, std::move(scaled));
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    const std::uint64_t g = *it;
    if (g == top) continue;
    std::uint64_t p = 0;
    for (std::size_t i = 1; i <= level && p == 0; ++i) {
      if ((top / g) % ladder.prime(i) == 0) p = ladder.prime(i);
    }
    const std::vector<BigInt>& finer = by_modulus.at(g * p);
    std::vector<BigInt> coarse(g, BigInt(0));
    for (std::uint64_t x = 0; x < finer.size(); ++x) coarse[x % g] += finer[x];
    by_modulus.emplace(g, std::move(coarse));
  }

  std::vector<ApViolation> violations;
  for (const std::uint64_t g : divs) {
    Rational bound(BigInt(1), to_big(g));
    for (std::size_t i = 1; i <= level; ++i) {
      if (g % ladder.prime(i) == 0) bound /= 1 - schedule.at_level(i);
    }
    // An integer exceeds x exactly when it exceeds floor(x).
    BigInt ceiling;
    mpz_fdiv_q(ceiling.get_mpz_t(), BigInt(bound.get_num() * common).get_mpz_t(), bound.get_den_mpz_t());
    const auto& masses = by_modulus.at(g);
    for (std::uint64_t a = 0; a < g; ++a) {
      if (masses[a] > ceiling) {
        Rational mass(masses[a], common);
        mass.canonicalize();
        violations.push_back({g, a, mass, bound});
      }
    }
  }
  return violations;
}

}  // namespace covercert
