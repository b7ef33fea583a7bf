#include "covercert/distortion.hpp"

#include <gtest/gtest.h>

#include <random>

#include "covercert/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using ::covercert::AlphaMap;
using ::covercert::Branch;
using ::covercert::CongruenceSystem;
using ::covercert::DeltaSchedule;
using ::covercert::DomainError;
using ::covercert::FiberMeasure;
using ::covercert::Limits;
using ::covercert::Rational;
using ::covercert::ResourceLimitError;
using ::covercert::Verdict;
using ::covercert::oracle::frac;
using ::covercert::testing::from_oracle;
using ::covercert::testing::make_system;

const Rational kHalf = frac(1, 2);

std::vector<Rational> rationals(std::initializer_list<std::pair<int, int>> items) {
  std::vector<Rational> out;
  for (const auto& [n, d] : items) out.push_back(frac(n, d));
  return out;
}

TEST(PrimeLadderTest, Examples) {
  const auto l12 = covercert::prime_ladder(covercert::factorize(12));
  EXPECT_EQ(l12.primes, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(l12.exponents, (std::vector<unsigned>{2, 1}));
  EXPECT_EQ(l12.partials, (std::vector<covercert::BigInt>{1, 4, 12}));
  EXPECT_EQ(covercert::prime_ladder(covercert::factorize(6)).partials,
            (std::vector<covercert::BigInt>{1, 2, 6}));
  const auto l8 = covercert::prime_ladder(covercert::factorize(8));
  EXPECT_EQ(l8.primes, std::vector<std::uint64_t>{2});
  EXPECT_EQ(l8.partials, (std::vector<covercert::BigInt>{1, 8}));
}

TEST(LevelSetTest, Examples) {
  const auto sys = make_system({{0, 2}, {0, 3}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  EXPECT_EQ(covercert::level_set(sys, ladder, 1).residues(), std::vector<std::uint64_t>{0});
  EXPECT_EQ(covercert::level_set(sys, ladder, 2).residues(), (std::vector<std::uint64_t>{0, 3}));

  const auto sys2 = make_system({{1, 2}, {0, 4}});
  const auto ladder2 = covercert::prime_ladder(sys2.lcm_factorization());
  EXPECT_EQ(covercert::level_set(sys2, ladder2, 1).residues(),
            (std::vector<std::uint64_t>{0, 1, 3}));
}

TEST(LevelSetTest, EmptyWhenNoModulusTopsAtThePrime) {
  // Q = 6 but 2 is never the largest prime of a modulus.
  const auto sys = make_system({{1, 3}, {5, 6}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  EXPECT_TRUE(covercert::level_set(sys, ladder, 1).residues().empty());
}

TEST(LevelSetTest, RejectsModulusOne) {
  const auto sys = make_system({{0, 1}, {0, 2}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  EXPECT_THROW(covercert::level_set(sys, ladder, 1), DomainError);
}

TEST(AlphaTest, Examples) {
  const auto sys = make_system({{0, 2}, {0, 3}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto p0 = covercert::uniform_measure();
  const auto b1 = covercert::level_set(sys, ladder, 1);
  const auto a1 = covercert::alpha(p0, b1, ladder);
  EXPECT_EQ(a1, rationals({{1, 2}}));

  const auto p1 = covercert::step_measure(p0, a1, 0, b1);
  const auto a2 = covercert::alpha(p1, covercert::level_set(sys, ladder, 2), ladder);
  EXPECT_EQ(a2, rationals({{1, 3}, {1, 3}}));
}

TEST(AlphaTest, EmptyLevelGivesZero) {
  const auto sys = make_system({{1, 3}, {5, 6}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto a = covercert::alpha(covercert::uniform_measure(),
                                  covercert::level_set(sys, ladder, 1), ladder);
  EXPECT_EQ(a, rationals({{0, 1}}));
}

TEST(StepMeasureTest, HalfDeltaMovesMassOffB) {
  const auto sys = make_system({{0, 2}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto p0 = covercert::uniform_measure();
  const auto b = covercert::level_set(sys, ladder, 1);
  const auto p1 = covercert::step_measure(p0, covercert::alpha(p0, b, ladder), kHalf, b);
  EXPECT_EQ(p1.level, 1u);
  EXPECT_EQ(p1.masses, rationals({{0, 1}, {1, 1}}));
}

TEST(StepMeasureTest, ZeroDeltaRefinesEqually) {
  const auto sys = make_system({{1, 4}, {0, 3}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto p0 = covercert::uniform_measure();
  const auto b = covercert::level_set(sys, ladder, 1);
  const auto p1 = covercert::step_measure(p0, covercert::alpha(p0, b, ladder), 0, b);
  EXPECT_EQ(p1.masses, std::vector<Rational>(4, frac(1, 4)));
}

TEST(StepMeasureTest, FullFiberKeepsMass) {
  const auto sys = make_system({{0, 2}, {1, 2}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto p0 = covercert::uniform_measure();
  const auto b = covercert::level_set(sys, ladder, 1);
  const auto p1 = covercert::step_measure(p0, covercert::alpha(p0, b, ladder), frac(1, 4), b);
  EXPECT_EQ(p1.masses, rationals({{1, 2}, {1, 2}}));
}

TEST(StepMeasureTest, SmallAlphaKillsB) {
  // alpha = 1/8 < delta = 1/4: mass on B vanishes, the rest renormalizes.
  const auto sys = make_system({{3, 8}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto p0 = covercert::uniform_measure();
  const auto b = covercert::level_set(sys, ladder, 1);
  const auto p1 = covercert::step_measure(p0, covercert::alpha(p0, b, ladder), frac(1, 4), b);
  for (std::uint64_t z = 0; z < 8; ++z) EXPECT_EQ(p1.masses[z], z == 3 ? frac(0, 1) : frac(1, 7));
}

TEST(StepMeasureTest, RejectsDeltaOutOfRange) {
  const auto sys = make_system({{0, 2}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto p0 = covercert::uniform_measure();
  const auto b = covercert::level_set(sys, ladder, 1);
  const auto a = covercert::alpha(p0, b, ladder);
  EXPECT_THROW(covercert::step_measure(p0, a, frac(3, 5), b), DomainError);
  EXPECT_THROW(covercert::step_measure(p0, a, Rational(-1), b), DomainError);
  EXPECT_THROW(DeltaSchedule(rationals({{0, 1}, {2, 3}})), DomainError);
}

TEST(MomentsTest, Examples) {
  const auto sys = make_system({{0, 2}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const auto p0 = covercert::uniform_measure();
  const auto m = covercert::moments(p0, covercert::alpha(p0, covercert::level_set(sys, ladder, 1), ladder));
  EXPECT_EQ(m.first, frac(1, 2));
  EXPECT_EQ(m.second, frac(1, 4));

  const FiberMeasure uniform2{1, rationals({{1, 2}, {1, 2}})};
  const auto m2 = covercert::moments(uniform2, rationals({{1, 3}, {1, 3}}));
  EXPECT_EQ(m2.first, frac(1, 3));
  EXPECT_EQ(m2.second, frac(1, 9));

  const auto zero = covercert::moments(uniform2, rationals({{0, 1}, {0, 1}}));
  EXPECT_EQ(zero.first, 0);
  EXPECT_EQ(zero.second, 0);
}

TEST(DefaultScheduleTest, Examples) {
  const auto ladder = covercert::prime_ladder(covercert::factorize(2 * 3 * 7));
  EXPECT_EQ(covercert::default_delta_schedule(1, 5, ladder).deltas(),
            rationals({{0, 1}, {0, 1}, {1, 2}}));
  EXPECT_EQ(covercert::default_delta_schedule(2, 1, covercert::prime_ladder(covercert::factorize(6)))
                .deltas(),
            rationals({{0, 1}, {0, 1}}));
  EXPECT_EQ(covercert::default_delta_schedule(1, frac(1, 1000), ladder).deltas(),
            rationals({{1, 2}, {1, 2}, {1, 2}}));
  EXPECT_THROW(covercert::default_delta_schedule(1, 0, ladder), DomainError);
}

TEST(CertifyTest, TwoClassExample) {
  const auto cert = covercert::certify(make_system({{0, 2}, {0, 3}}), DeltaSchedule(rationals({{0, 1}, {0, 1}})));
  ASSERT_EQ(cert.terms.size(), 2u);
  EXPECT_EQ(cert.terms[0].term, frac(1, 2));
  EXPECT_EQ(cert.terms[1].term, frac(1, 3));
  EXPECT_EQ(cert.terms[0].branch, Branch::FirstMoment);
  EXPECT_EQ(cert.eta, frac(5, 6));
  EXPECT_EQ(cert.verdict, Verdict::NotCovering);
  EXPECT_EQ(cert.witness, 1u);
}

TEST(CertifyTest, PrimePowerExample) {
  const auto cert = covercert::certify(make_system({{1, 2}, {0, 4}}), DeltaSchedule(rationals({{0, 1}})));
  EXPECT_EQ(cert.eta, frac(3, 4));
  EXPECT_EQ(cert.verdict, Verdict::NotCovering);
  EXPECT_EQ(cert.witness, 2u);
}

TEST(CertifyTest, ParityCoverIsInconclusive) {
  for (const auto& delta : rationals({{0, 1}, {1, 4}, {1, 2}})) {
    const auto cert = covercert::certify(make_system({{0, 2}, {1, 2}}), DeltaSchedule({delta}));
    EXPECT_EQ(cert.terms[0].m1, 1);
    EXPECT_GE(cert.eta, 1);
    EXPECT_EQ(cert.verdict, Verdict::Inconclusive);
    EXPECT_FALSE(cert.witness.has_value());
  }
}

TEST(CertifyTest, SecondMomentBranchWins) {
  // alpha = 1/4 on Z/4Z: M1 = 1/4, M2 = 1/16, delta = 1/2 gives M2 / 1 = 1/16.
  const auto cert = covercert::certify(make_system({{0, 4}}), DeltaSchedule({kHalf}));
  EXPECT_EQ(cert.terms[0].term, frac(1, 16));
  EXPECT_EQ(cert.terms[0].branch, Branch::SecondMoment);
}

TEST(CertifyTest, Errors) {
  EXPECT_THROW(covercert::certify(make_system({{0, 1}, {0, 2}}), DeltaSchedule(rationals({{0, 1}}))),
               DomainError);
  EXPECT_THROW(covercert::certify(make_system({{0, 2}, {0, 3}}), DeltaSchedule(rationals({{0, 1}}))),
               DomainError);
  Limits tight;
  tight.max_residue_space = 10;
  try {
    covercert::certify(make_system({{0, 2}, {0, 3}, {0, 5}}),
                       DeltaSchedule(rationals({{0, 1}, {0, 1}, {0, 1}})), tight);
    FAIL() << "expected ResourceLimitError";
  } catch (const ResourceLimitError& e) {
    EXPECT_NE(std::string(e.what()).find("Q_3 = 30"), std::string::npos) << e.what();
  }
}

TEST(CertifyTest, EmptySystemHasEtaZero) {
  const auto cert = covercert::certify(CongruenceSystem(), DeltaSchedule());
  EXPECT_EQ(cert.eta, 0);
  EXPECT_EQ(cert.verdict, Verdict::NotCovering);
  EXPECT_EQ(cert.witness, 0u);
}

TEST(ApMassBoundTest, Examples) {
  const auto sys = make_system({{0, 2}});
  const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
  const DeltaSchedule schedule({kHalf});
  EXPECT_TRUE(covercert::ap_mass_bound_check(covercert::uniform_measure(), schedule, ladder).empty());
  const FiberMeasure after{1, rationals({{0, 1}, {1, 1}})};
  EXPECT_TRUE(covercert::ap_mass_bound_check(after, schedule, ladder).empty());
  // A measure that is not produced by the pipeline trips the bound at delta = 0.
  const auto violations = covercert::ap_mass_bound_check(after, DeltaSchedule(rationals({{0, 1}})), ladder);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].modulus, 2u);
  EXPECT_EQ(violations[0].residue, 1u);
  EXPECT_EQ(violations[0].bound, frac(1, 2));
}

std::vector<Rational> random_schedule(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<Rational> choices = rationals({{0, 1}, {1, 10}, {1, 4}, {1, 3}, {2, 5}, {1, 2}});
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(choices[pick(rng)]);
  return out;
}

// Fiber-mass pipeline against the pointwise construction over Z/QZ, plus the
// structural invariants of every intermediate measure.
TEST(CertifyPropertyTest, MatchesPointwiseConstruction) {
  std::mt19937_64 rng(314);
  const auto moduli = covercert::oracle::divisors(360, 2);
  for (int iter = 0; iter < 300; ++iter) {
    const auto cs = covercert::oracle::random_system(rng, moduli, 1, 6);
    const auto sys = from_oracle(cs);
    const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
    const auto deltas = random_schedule(rng, ladder.levels());
    const auto expected = covercert::oracle::pointwise_distortion(cs, deltas);
    const DeltaSchedule schedule(deltas);

    const auto cert = covercert::certify(sys, schedule, {}, [&](const covercert::LevelView& v) {
      const std::uint64_t qj = expected.partials[v.level];
      const auto& pts = expected.points[v.level];
      ASSERT_EQ(v.next.masses.size(), qj);
      for (std::uint64_t y = 0; y < qj; ++y) {
        Rational fiber = 0;
        for (std::uint64_t x = y; x < expected.q; x += qj) fiber += pts[x];
        EXPECT_EQ(v.next.masses[y], fiber);
      }
      EXPECT_EQ(v.next.total(), 1);
      EXPECT_EQ(covercert::pushforward(v.next, ladder).masses, v.previous.masses);
      for (std::uint64_t z = 0; z < v.next.masses.size(); ++z) {
        const auto y = z % v.previous.masses.size();
        if (v.set.contains(z) && v.alpha[y] < schedule.at_level(v.level))
          EXPECT_EQ(v.next.masses[z], 0);
      }
      // Moments by direct summation over Z/Q_jZ.
      Rational m1 = 0, m2 = 0;
      const auto lifts = v.next.masses.size() / v.previous.masses.size();
      for (std::uint64_t z = 0; z < v.next.masses.size(); ++z) {
        const auto y = z % v.previous.masses.size();
        const Rational lifted = v.previous.masses[y] / Rational(covercert::to_big(lifts));
        m1 += lifted * v.alpha[y];
        m2 += lifted * v.alpha[y] * v.alpha[y];
      }
      EXPECT_EQ(v.moments.first, m1);
      EXPECT_EQ(v.moments.second, m2);
      EXPECT_TRUE(covercert::ap_mass_bound_check(v.previous, schedule, ladder).empty());
      EXPECT_TRUE(covercert::ap_mass_bound_check(v.next, schedule, ladder).empty());
    });
    ASSERT_EQ(cert.terms.size(), expected.m1.size());
    for (std::size_t j = 0; j < cert.terms.size(); ++j) {
      EXPECT_EQ(cert.terms[j].m1, expected.m1[j]);
      EXPECT_EQ(cert.terms[j].m2, expected.m2[j]);
    }
    EXPECT_EQ(cert.eta, expected.eta);
  }
}

TEST(CertifyPropertyTest, ZeroScheduleIsUnionBound) {
  std::mt19937_64 rng(271);
  const auto moduli = covercert::oracle::divisors(720, 2);
  for (int iter = 0; iter < 200; ++iter) {
    const auto sys = from_oracle(covercert::oracle::random_system(rng, moduli, 1, 6));
    const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
    const DeltaSchedule zeros(std::vector<Rational>(ladder.levels(), Rational(0)));
    Rational densities = 0;
    FiberMeasure last;
    const auto cert = covercert::certify(sys, zeros, {}, [&](const covercert::LevelView& v) {
      const auto members = v.set.residues();
      densities += covercert::oracle::frac(members.size(), v.set.members.size());
      last = v.next;
    });
    EXPECT_EQ(cert.eta, densities);
    const Rational uniform(covercert::BigInt(1), covercert::to_big(last.masses.size()));
    for (const auto& m : last.masses) EXPECT_EQ(m, uniform);
  }
}

TEST(CertifyPropertyTest, SoundAgainstExhaustiveCheck) {
  std::mt19937_64 rng(1618);
  const auto moduli = covercert::oracle::divisors(240, 2);
  int not_covering = 0, covering = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    const auto cs = covercert::oracle::random_system(rng, moduli, 1, 8);
    const auto sys = from_oracle(cs);
    const auto ladder = covercert::prime_ladder(sys.lcm_factorization());
    const auto cert = covercert::certify(sys, DeltaSchedule(random_schedule(rng, ladder.levels())));
    const auto brute = covercert::oracle::brute_coverage(cs);
    if (brute.uncovered == 0) {
      ++covering;
      EXPECT_EQ(cert.verdict, Verdict::Inconclusive);
    }
    if (cert.verdict == Verdict::NotCovering) {
      ++not_covering;
      EXPECT_GT(brute.uncovered, 0u);
      EXPECT_EQ(cert.witness, brute.first);
    }
  }
  EXPECT_GT(not_covering, 100);
  EXPECT_GT(covering, 0);
}

}  // namespace
