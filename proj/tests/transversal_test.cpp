#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qhs/error.hpp"
#include "qhs/transversal.hpp"

using namespace qhs;

namespace {

// Exact peak mass of the Shor transversal for N=21, a=2, Q=512, computed once
// with oracle::shor_geometric + oracle::peak_mass_ref and frozen here.
constexpr double kPeakMass21 = 0.78930150020552059;

double max_prob(const OutcomeDistribution& d) { return *std::max_element(d.probs.begin(), d.probs.end()); }

}  // namespace

TEST(ShorTransversal, TableAndSection) {
  const auto t = shor_transversal(4);
  EXPECT_EQ(t.table(), (std::vector<std::int64_t>{0, 1, 2, 3}));
  EXPECT_TRUE(t.targets_integers());
  for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(t.project(t[q]), q);
}

TEST(ShorTransversal, ApproximateFunctionCycles) {
  const auto inst = make_periodic_instance(15, 7, 16);
  EXPECT_EQ(inst.period, 4u);
  const auto f = approximate_function(inst, shor_transversal(16));
  for (std::size_t q = 0; q < 16; ++q) EXPECT_EQ(f.values[q], (std::vector<Elem>{1, 7, 4, 13})[q % 4]);
  EXPECT_TRUE(f.consistent_with(inst));
}

TEST(OffsetTransversal, BoundOneIsShor) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_EQ(offset_transversal(16, 1, seed).table(), shor_transversal(16).table());
}

TEST(OffsetTransversal, AlwaysASection) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = offset_transversal(16, 7, seed);
    EXPECT_TRUE(t.is_section());
    for (std::size_t q = 0; q < 16; ++q) {
      EXPECT_EQ(((t[q] % 16) + 16) % 16, static_cast<std::int64_t>(q));
      EXPECT_GE(t[q], 0);
      EXPECT_LT(t[q], 16 * 7);
    }
  }
  EXPECT_THROW(offset_transversal(16, 0, 0), DomainError);
}

TEST(OffsetTransversal, BreaksPeriodicityUnlessPeriodDividesQ) {
  // a^{q + Q m} = a^q whenever r | Q, so offsets cannot change f~ there.
  const auto exact = make_periodic_instance(15, 7, 16);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_EQ(approximate_function(exact, offset_transversal(16, 4, seed)).values,
              approximate_function(exact, shor_transversal(16)).values);

  const auto inexact = make_periodic_instance(21, 2, 16);  // r = 6
  std::size_t broken = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = approximate_function(inexact, offset_transversal(16, 4, seed));
    bool periodic = true;
    for (std::size_t q = 0; q + 6 < 16; ++q) periodic = periodic && f.values[q] == f.values[q + 6];
    broken += !periodic;
  }
  EXPECT_GE(broken, 18u);
}

TEST(FiniteTransversal, KnownCases) {
  const auto z12 = FiniteGroup::cyclic(12);
  const auto k = subgroup_from_elements(z12, {0, 4, 8});
  const auto least = finite_transversal(z12, k, TransversalPolicy::least_index);
  EXPECT_EQ(least.table(), (std::vector<std::int64_t>{0, 1, 2, 3}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = finite_transversal(z12, k, TransversalPolicy::seeded_random, seed);
    EXPECT_TRUE(t.is_section());
    for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(t.project(t[q]), q);
  }
  const auto d4 = FiniteGroup::dihedral(4);
  const auto t = finite_transversal(d4, subgroup_from_elements(d4, {0, 2}), TransversalPolicy::least_index);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_TRUE(t.is_section());
  const auto d3 = FiniteGroup::dihedral(3);
  EXPECT_THROW(finite_transversal(d3, subgroup_from_elements(d3, {0, 3}), TransversalPolicy::least_index),
               DomainError);
}

TEST(Transversal, RejectsNonSections) {
  EXPECT_THROW(Transversal::into_integers(4, {0, 1, 2, 2}, TransversalKind::custom), InvariantViolation);
  EXPECT_THROW(Transversal::into_integers(4, {0, 1, 2}, TransversalKind::custom), DomainError);
  EXPECT_NO_THROW(Transversal::into_integers(4, {-4, 5, 2, 7}, TransversalKind::custom));
}

TEST(PeriodicInstance, Validation) {
  EXPECT_THROW(make_periodic_instance(15, 5, 16), DomainError);
  EXPECT_THROW(make_periodic_instance(15, 7, 24), DomainError);
  EXPECT_NO_THROW(make_periodic_instance(15, 7, 24, true));
  EXPECT_THROW(make_periodic_instance(1, 1, 16), DomainError);
  EXPECT_THROW(make_periodic_instance(4099, 2, 2048), ResourceLimitError);
  EXPECT_EQ(multiplicative_order(2, 21), 6u);
  EXPECT_EQ(multiplicative_order(1, 15), 1u);
  EXPECT_EQ(multiplicative_order(7, 15), 4u);
}

TEST(ShorPipeline, ExactCaseUniformOnPeaks) {
  const auto inst = make_periodic_instance(15, 7, 16);
  const auto d = shor_pipeline(inst, shor_transversal(16));
  const auto geo = oracle::shor_geometric(16, 4);
  for (std::size_t y = 0; y < 16; ++y) {
    ASSERT_EQ(d.labels[y].irrep, y);
    const double expect = y % 4 == 0 ? 0.25 : 0.0;
    EXPECT_NEAR(d.probs[y], expect, 1e-12);
    EXPECT_NEAR(geo[y], expect, 1e-12);
  }
  EXPECT_EQ(peak_mass(d, 4, 16), 1.0);
}

TEST(ShorPipeline, MatchesDirectSummation) {
  for (auto [n, a, q] : {std::tuple{21u, 2u, 64u}, {15u, 2u, 32u}, {35u, 3u, 128u}, {33u, 5u, 64u}}) {
    const auto inst = make_periodic_instance(n, a, q);
    const auto d = shor_pipeline(inst, shor_transversal(q));
    const auto geo = oracle::shor_geometric(q, inst.period);
    const auto sum = oracle::period_finding_sum(q, approximate_function(inst, shor_transversal(q)).values, n);
    for (std::size_t y = 0; y < q; ++y) {
      ASSERT_NEAR(d.probs[y], geo[y], 1e-12) << n << " " << y;
      ASSERT_NEAR(d.probs[y], sum[y], 1e-12) << n << " " << y;
    }
    EXPECT_NEAR(peak_mass(d, inst.period, q), oracle::peak_mass_ref(geo, inst.period), 1e-12);
  }
}

TEST(ShorPipeline, OffsetMatchesDirectSummation) {
  const auto inst = make_periodic_instance(15, 7, 16);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto tau = offset_transversal(16, 15, seed);
    const auto d = shor_pipeline(inst, tau);
    const auto sum = oracle::period_finding_sum(16, approximate_function(inst, tau).values, 15);
    for (std::size_t y = 0; y < 16; ++y) ASSERT_NEAR(d.probs[y], sum[y], 1e-12);
  }
}

TEST(ShorPipeline, OffsetIsInvisibleWhenPeriodDividesQ) {
  const auto inst = make_periodic_instance(15, 7, 16);
  const auto shor = shor_pipeline(inst, shor_transversal(16));
  const auto d = shor_pipeline(inst, offset_transversal(16, 15, 1));
  EXPECT_EQ(d.support().size(), 4u);
  for (std::size_t y = 0; y < 16; ++y) EXPECT_NEAR(d.probs[y], shor.probs[y], 1e-12);
}

TEST(ShorPipeline, OffsetSpreadsSupport) {
  const auto inst = make_periodic_instance(21, 2, 64);
  const auto shor = shor_pipeline(inst, shor_transversal(64));
  const auto d = shor_pipeline(inst, offset_transversal(64, 21, 1));
  EXPECT_GT(d.support().size(), shor.support().size() / 2);
  EXPECT_LT(peak_mass(d, 6, 64), peak_mass(shor, 6, 64));
}

TEST(ShorPipeline, TrivialPeriodIsPointMass) {
  const auto inst = make_periodic_instance(15, 1, 16);
  EXPECT_EQ(inst.period, 1u);
  const auto d = shor_pipeline(inst, shor_transversal(16));
  EXPECT_NEAR(d.probs[0], 1.0, 1e-12);
  EXPECT_EQ(d.support().size(), 1u);
}

TEST(ShorPipeline, ShiftCovariance) {
  const auto inst = make_periodic_instance(15, 7, 16);
  const auto base = shor_pipeline(inst, shor_transversal(16));
  for (std::int64_t c = 1; c <= 5; ++c) {
    std::vector<std::int64_t> shifted(16);
    for (std::int64_t q = 0; q < 16; ++q) shifted[q] = q + c;
    const auto d = shor_pipeline(inst, approximate_function(inst, shifted));
    for (std::size_t y = 0; y < 16; ++y) EXPECT_NEAR(d.probs[y], base.probs[y], 1e-12) << c;
  }
  // Also for an offset transversal: a constant shift is a relabeling of H.
  const auto tau = offset_transversal(16, 9, 3);
  const auto off = shor_pipeline(inst, tau);
  for (std::int64_t c = 1; c <= 5; ++c) {
    auto shifted = tau.table();
    for (auto& x : shifted) x += c;
    const auto d = shor_pipeline(inst, approximate_function(inst, shifted));
    for (std::size_t y = 0; y < 16; ++y) EXPECT_NEAR(d.probs[y], off.probs[y], 1e-12);
  }
}

TEST(PeakMass, Examples) {
  OutcomeDistribution uniform;
  uniform.one_dimensional = true;
  for (std::size_t y = 0; y < 64; ++y) {
    uniform.labels.push_back({y, 0, 0});
    uniform.probs.push_back(1.0 / 64);
  }
  // r = 4 divides 64: exactly 4 peak outcomes.
  EXPECT_NEAR(peak_mass(uniform, 4, 64), 4.0 / 64, 1e-15);
  // r = 6: peaks at round(64 j / 6) for j = 0..5, and y = 64 wraps off the end.
  EXPECT_NEAR(peak_mass(uniform, 6, 64), 6.0 / 64, 1e-15);
  EXPECT_THROW(peak_mass(uniform, 0, 64), DomainError);
}

TEST(PeakMass, FrozenInexactCase) {
  const auto inst = make_periodic_instance(21, 2, 512);
  const auto d = shor_pipeline(inst, shor_transversal(512));
  const double m = peak_mass(d, 6, 512);
  EXPECT_NEAR(m, kPeakMass21, 1e-10);
  EXPECT_GE(m, 0.4);
}

TEST(Sweep, RowsInSeedOrderAndDeterministic) {
  const auto inst = make_periodic_instance(15, 7, 16);
  const auto rows = sweep_transversals(inst, 15, 12, 100);
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].seed, 100 + i);
    EXPECT_EQ(rows[i].peak_mass_shor, 1.0);
    EXPECT_EQ(rows[i].peak_mass_offset, peak_mass(shor_pipeline(inst, offset_transversal(16, 15, 100 + i)), 4, 16));
  }
  EXPECT_EQ(sweep_csv(rows), sweep_csv(sweep_transversals(inst, 15, 12, 100)));
  EXPECT_EQ(sweep_csv(rows).substr(0, 35), "seed,peak_mass_shor,peak_mass_offse");
}
