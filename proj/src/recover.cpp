#include "qhs/recover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "qhs/error.hpp"
#include "qhs/numeric.hpp"
#include "qhs/oracle.hpp"
#include "qhs/parallel.hpp"
#include "qhs/repr.hpp"

namespace qhs {

namespace {

bool is_binary_product(const FiniteGroup& g) {
  if (g.kind() != GroupKind::product) return false;
  return std::all_of(g.moduli().begin(), g.moduli().end(), [](std::size_t m) { return m == 2; });
}

// Bit i of the mask is tuple component i.
std::uint64_t to_bits(const FiniteGroup& g, Elem x) {
  const auto d = g.digits(x);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < d.size(); ++i) bits |= std::uint64_t{d[i]} << i;
  return bits;
}

// Reduced row echelon basis over GF(2); returns rows keyed by pivot bit.
std::map<int, std::uint64_t> gf2_basis(std::span<const std::uint64_t> vectors) {
  std::map<int, std::uint64_t> rows;
  for (std::uint64_t v : vectors) {
    for (auto& [pivot, row] : rows)
      if (v >> pivot & 1) v ^= row;
    if (v == 0) continue;
    int pivot = 0;
    while (!(v >> pivot & 1)) ++pivot;
    for (auto& [p, row] : rows)
      if (row >> pivot & 1) row ^= v;
    rows[pivot] = v;
  }
  return rows;
}

std::vector<std::uint64_t> bit_vectors(const FiniteGroup& g, std::span<const Elem> xs) {
  std::vector<std::uint64_t> out;
  out.reserve(xs.size());
  for (Elem x : xs) out.push_back(to_bits(g, x));
  return out;
}

std::vector<Elem> kernel_intersection(const FiniteGroup& g, std::span<const Elem> ys) {
  std::vector<Elem> k;
  for (Elem x = 0; x < g.order(); ++x) {
    bool in = true;
    for (Elem y : ys) {
      if (!abelian_character_phase(g, y, x).is_one()) {
        in = false;
        break;
      }
    }
    if (in) k.push_back(x);
  }
  return k;
}

}  // namespace

RecoveryResult simon_solve(const SampleSet& samples, std::span<const Elem> reference_support) {
  const FiniteGroup& g = samples.group;
  if (!is_binary_product(g)) throw DomainError("simon_solve needs Z2^n, got " + g.name());
  const std::size_t n = g.moduli().size();
  for (Elem y : samples.outcomes) g.check(y);

  const auto vecs = bit_vectors(g, samples.outcomes);
  const auto basis = gf2_basis(vecs);

  // x is in the null space iff <x, b> = 0 for every basis row.
  std::vector<Elem> kernel;
  for (Elem x = 0; x < g.order(); ++x) {
    const std::uint64_t bits = to_bits(g, x);
    bool in = true;
    for (const auto& [p, row] : basis) in = in && std::popcount(row & bits) % 2 == 0;
    if (in) kernel.push_back(x);
  }
  if (kernel.size() != (std::size_t{1} << (n - basis.size())))
    throw InvariantViolation("simon_solve: null space size disagrees with rank");

  RecoveryResult result{subgroup_from_elements(g, std::move(kernel)), false, samples.outcomes.size()};
  if (!samples.outcomes.empty() && !reference_support.empty()) {
    std::vector<std::uint64_t> all = vecs;
    const auto extra = bit_vectors(g, reference_support);
    all.insert(all.end(), extra.begin(), extra.end());
    result.confirmed = gf2_basis(all).size() == basis.size();
  }
  return result;
}

RecoveryResult character_sieve(const SampleSet& samples, std::span<const Elem> reference_support) {
  const FiniteGroup& g = samples.group;
  if (g.kind() != GroupKind::cyclic && g.kind() != GroupKind::product)
    throw DomainError("character_sieve needs a cyclic or product group, got " + g.name());
  for (Elem y : samples.outcomes) g.check(y);
  std::vector<Elem> k = kernel_intersection(g, samples.outcomes);
  RecoveryResult result{subgroup_from_elements(g, k), false, samples.outcomes.size()};
  if (!samples.outcomes.empty() && !reference_support.empty()) {
    std::vector<Elem> all = samples.outcomes;
    all.insert(all.end(), reference_support.begin(), reference_support.end());
    result.confirmed = kernel_intersection(g, all).size() == k.size();
  }
  return result;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents(std::uint64_t y, std::uint64_t q) {
  if (q == 0) throw DomainError("convergents: Q must be positive");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  // h_k = a_k h_{k-1} + h_{k-2}, same for k_k.
  std::uint64_t h_prev = 1, h_prev2 = 0;
  std::uint64_t k_prev = 0, k_prev2 = 1;
  std::uint64_t num = y, den = q;
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t h = a * h_prev + h_prev2;
    const std::uint64_t k = a * k_prev + k_prev2;
    out.emplace_back(h, k);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const std::uint64_t rem = num % den;
    num = den;
    den = rem;
  }
  return out;
}

std::optional<std::uint64_t> continued_fraction_period(std::uint64_t y, std::uint64_t q, std::uint64_t n) {
  if (q == 0) throw DomainError("continued_fraction_period: Q must be positive");
  if (y >= q) throw DomainError("continued_fraction_period: y must be < Q");
  if (y == 0) return std::nullopt;
  std::optional<std::uint64_t> best;
  for (auto [c, d] : convergents(y, q)) {
    if (d == 0 || d >= n) continue;
    // |y/Q - c/d| <= 1/(2Q)  <=>  2|y d - c Q| <= d
    const auto lhs = static_cast<unsigned __int128>(y) * d;
    const auto rhs = static_cast<unsigned __int128>(c) * q;
    const unsigned __int128 gap = lhs > rhs ? lhs - rhs : rhs - lhs;
    if (2 * gap <= d && (!best || d < *best)) best = d;
  }
  return best;
}

PeriodResult period_from_samples(std::span<const std::uint64_t> samples, std::uint64_t q, std::uint64_t n,
                                 std::uint64_t a) {
  PeriodResult result;
  std::uint64_t acc = 0;
  for (std::uint64_t y : samples) {
    const auto d = continued_fraction_period(y, q, n);
    if (!d) continue;
    acc = acc == 0 ? *d : lcm_u64(acc, *d);
  }
  if (acc == 0) return result;
  result.candidate = acc;
  result.confirmed = pow_mod(a, acc, n) == 1 % n;
  return result;
}

std::vector<RankedCandidate> subgroup_consistency_rank(const OutcomeDistribution& observed, const FiniteGroup& g,
                                                       const BasisOrdering& ordering, const PipelineConfig& cfg) {
  if (g.order() > kMaxConsistencyRankOrder)
    throw ResourceLimitError("subgroup_consistency_rank is limited to |G| <= 32");
  const std::vector<Subgroup> candidates = all_subgroups(g);
  const FourierOperator fourier = fourier_operator(g, ordering);

  std::vector<OutcomeDistribution> predicted(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    // The oracle seed does not affect the distribution.
    predicted[i] = run_pipeline(build_instance(g, candidates[i], 0), fourier, cfg);
  });

  // Tie groups: identical predicted distributions, numbered by first
  // occurrence. Members share the leader's distance so ties compare equal.
  std::vector<std::size_t> group_of(candidates.size());
  std::vector<std::size_t> leaders;
  std::vector<RankedCandidate> out;
  out.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    group_of[i] = leaders.size();
    for (std::size_t l = 0; l < leaders.size(); ++l) {
      double diff = 0.0;
      for (std::size_t p = 0; p < predicted[i].size(); ++p)
        diff = std::max(diff, std::abs(predicted[i].probs[p] - predicted[leaders[l]].probs[p]));
      if (diff <= 1e-12) {
        group_of[i] = l;
        break;
      }
    }
    if (group_of[i] == leaders.size()) leaders.push_back(i);
    out.push_back({candidates[i], total_variation(observed, predicted[leaders[group_of[i]]]), group_of[i]});
  }

  std::stable_sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.subgroup.elements < b.subgroup.elements;
  });
  return out;
}

}  // namespace qhs
