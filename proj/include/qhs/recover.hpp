#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhs/engine.hpp"
#include "qhs/group.hpp"

namespace qhs {

// Measured outcomes in a group context. For cyclic and product groups an
// outcome is a character label, which is also an element index.
struct SampleSet {
  FiniteGroup group;
  std::vector<Elem> outcomes;
};

struct RecoveryResult {
  Subgroup candidate;
  bool confirmed = false;
  std::size_t samples_used = 0;
};

// Null space over GF(2) of the sample span in Z2^n. With a reference support
// (e.g. the support of the exact distribution) the result is confirmed when
// adding it to the samples leaves the span unchanged. No samples gives the
// whole group, unconfirmed.
RecoveryResult simon_solve(const SampleSet& samples, std::span<const Elem> reference_support = {});

// K = intersection of ker chi_y over the samples, for cyclic and product G.
// Confirmed when the reference support does not shrink K further.
RecoveryResult character_sieve(const SampleSet& samples, std::span<const Elem> reference_support = {});

// Convergent c/d of y/Q with the smallest d < N such that |y/Q - c/d| <= 1/(2Q).
// Integer arithmetic only. None for y = 0 or when nothing qualifies.
std::optional<std::uint64_t> continued_fraction_period(std::uint64_t y, std::uint64_t q, std::uint64_t n);

// Continued-fraction convergents (numerator, denominator) of y/Q, in order.
std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents(std::uint64_t y, std::uint64_t q);

struct PeriodResult {
  std::optional<std::uint64_t> candidate;
  bool confirmed = false;  // a^candidate == 1 mod N
};

// lcm of the per-sample denominators, validated by a^r = 1 mod N.
PeriodResult period_from_samples(std::span<const std::uint64_t> samples, std::uint64_t q, std::uint64_t n,
                                 std::uint64_t a);

struct RankedCandidate {
  Subgroup subgroup;
  double distance = 0.0;       // total variation to the observed distribution
  std::size_t tie_group = 0;   // candidates with identical predicted distributions share an id
};

inline constexpr std::size_t kMaxConsistencyRankOrder = 32;

// Re-simulates the pipeline for every subgroup of G and ranks by total
// variation to `observed`, ascending; ties broken by element list.
std::vector<RankedCandidate> subgroup_consistency_rank(const OutcomeDistribution& observed, const FiniteGroup& g,
                                                       const BasisOrdering& ordering = {},
                                                       const PipelineConfig& cfg = {});

}  // namespace qhs
