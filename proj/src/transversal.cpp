#include "qhs/transversal.hpp"

#include <algorithm>
#include <set>

#include "qhs/error.hpp"
#include "qhs/numeric.hpp"
#include "qhs/parallel.hpp"
#include "qhs/rng.hpp"

namespace qhs {

std::string to_string(TransversalKind kind) {
  switch (kind) {
    case TransversalKind::shor: return "shor";
    case TransversalKind::offset: return "offset";
    case TransversalKind::least_index: return "least_index";
    case TransversalKind::seeded_random: return "seeded_random";
    case TransversalKind::custom: return "custom";
  }
  return {};
}

Transversal::Transversal(FiniteGroup quotient, std::optional<FiniteGroup> target,
                         std::vector<std::size_t> projection, std::vector<std::int64_t> table, TransversalKind kind,
                         std::uint64_t seed, std::int64_t bound)
    : quotient_(std::move(quotient)),
      target_(std::move(target)),
      projection_(std::move(projection)),
      table_(std::move(table)),
      kind_(kind),
      seed_(seed),
      bound_(bound) {
  if (!is_section()) throw InvariantViolation("transversal is not a section of the quotient map");
}

Transversal Transversal::into_integers(std::size_t q, std::vector<std::int64_t> table, TransversalKind kind,
                                       std::uint64_t seed, std::int64_t bound) {
  if (q == 0) throw DomainError("transversal: Q must be positive");
  if (table.size() != q) throw DomainError("transversal: table size differs from Q");
  return Transversal(FiniteGroup::cyclic(q), std::nullopt, {}, std::move(table), kind, seed, bound);
}

Transversal Transversal::into_group(const FiniteGroup& g, QuotientGroup quotient, std::vector<Elem> reps,
                                    TransversalKind kind, std::uint64_t seed) {
  std::vector<std::int64_t> table(reps.begin(), reps.end());
  return Transversal(std::move(quotient.group), g, std::move(quotient.partition.coset_of), std::move(table), kind,
                     seed, 1);
}

std::size_t Transversal::project(std::int64_t x) const {
  if (!target_) {
    const auto q = static_cast<std::int64_t>(quotient_.order());
    const std::int64_t r = x % q;
    return static_cast<std::size_t>(r < 0 ? r + q : r);
  }
  if (x < 0 || static_cast<std::size_t>(x) >= projection_.size()) throw DomainError("transversal: element out of range");
  return projection_[static_cast<std::size_t>(x)];
}

bool Transversal::is_section() const {
  if (table_.size() != quotient_.order()) return false;
  std::set<std::int64_t> seen;
  for (std::size_t q = 0; q < table_.size(); ++q) {
    if (target_ && (table_[q] < 0 || static_cast<std::size_t>(table_[q]) >= target_->order())) return false;
    if (project(table_[q]) != q) return false;
    if (!seen.insert(table_[q]).second) return false;
  }
  return true;
}

Transversal shor_transversal(std::size_t q) {
  std::vector<std::int64_t> table(q);
  for (std::size_t i = 0; i < q; ++i) table[i] = static_cast<std::int64_t>(i);
  return Transversal::into_integers(q, std::move(table), TransversalKind::shor);
}

Transversal offset_transversal(std::size_t q, std::int64_t bound, std::uint64_t seed) {
  if (bound < 1) throw DomainError("offset_transversal: bound must be >= 1");
  Rng rng(seed);
  std::vector<std::int64_t> table(q);
  const auto qi = static_cast<std::int64_t>(q);
  for (std::size_t i = 0; i < q; ++i) {
    const auto m = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(bound)));
    table[i] = static_cast<std::int64_t>(i) + qi * m;
  }
  return Transversal::into_integers(q, std::move(table), TransversalKind::offset, seed, bound);
}

Transversal finite_transversal(const FiniteGroup& g, const Subgroup& k, TransversalPolicy policy,
                               std::uint64_t seed) {
  QuotientGroup quotient = quotient_group(g, k);
  std::vector<Elem> reps = quotient.partition.representatives;
  if (policy == TransversalPolicy::seeded_random) {
    Rng rng(seed);
    for (std::size_t c = 0; c < reps.size(); ++c) {
      const auto& block = quotient.partition.blocks[c];
      reps[c] = block[rng.uniform_below(block.size())];
    }
  }
  const auto kind = policy == TransversalPolicy::least_index ? TransversalKind::least_index
                                                             : TransversalKind::seeded_random;
  return Transversal::into_group(g, std::move(quotient), std::move(reps), kind, seed);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
  if (gcd_u64(a % n, n) != 1) throw DomainError("multiplicative_order: base is not a unit mod N");
  std::uint64_t x = a % n;
  for (std::uint64_t r = 1; r <= n; ++r) {
    if (x == 1) return r;
    x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * (a % n) % n);
  }
  throw InvariantViolation("multiplicative_order: no period found");
}

PeriodicInstance make_periodic_instance(std::uint64_t n, std::uint64_t a, std::uint64_t q, bool allow_any_q) {
  if (n < 2) throw DomainError("N must be >= 2");
  if (gcd_u64(a, n) != 1)
    throw DomainError("gcd(" + std::to_string(a) + ", " + std::to_string(n) + ") != 1");
  if (q < 1) throw DomainError("Q must be positive");
  if (!allow_any_q && !is_power_of_two(q)) throw DomainError("Q must be a power of two");
  if (q > kMaxPeriodicStateSize / n) throw ResourceLimitError("Q * N exceeds 2^22");
  if (q > kMaxFourierOrder) throw ResourceLimitError("Q exceeds " + std::to_string(kMaxFourierOrder));
  return {n, a, multiplicative_order(a, n), q};
}

bool ApproximateFunction::consistent_with(const PeriodicInstance& inst) const {
  if (values.size() != exponents.size() || values.size() != inst.q) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    // a^x for negative x is a^(x mod r).
    const auto r = static_cast<std::int64_t>(inst.period);
    std::int64_t e = exponents[i] % r;
    if (e < 0) e += r;
    if (values[i] != pow_mod(inst.base, static_cast<std::uint64_t>(e), inst.modulus)) return false;
  }
  return true;
}

ApproximateFunction approximate_function(const PeriodicInstance& inst, std::vector<std::int64_t> exponents) {
  if (exponents.size() != inst.q) throw DomainError("approximate_function: exponent table size differs from Q");
  ApproximateFunction f;
  f.values.resize(exponents.size());
  const auto r = static_cast<std::int64_t>(inst.period);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    std::int64_t e = exponents[i] % r;
    if (e < 0) e += r;
    f.values[i] = pow_mod(inst.base, static_cast<std::uint64_t>(e), inst.modulus);
  }
  f.exponents = std::move(exponents);
  return f;
}

ApproximateFunction approximate_function(const PeriodicInstance& inst, const Transversal& tau) {
  if (!tau.targets_integers() || tau.size() != inst.q)
    throw DomainError("approximate_function: transversal must map Z_Q into Z for this instance");
  ApproximateFunction f = approximate_function(inst, tau.table());
  f.provenance = tau.kind();
  f.seed = tau.seed();
  f.bound = tau.bound();
  return f;
}

OutcomeDistribution shor_pipeline(const PeriodicInstance& inst, const ApproximateFunction& f,
                                  const FourierOperator* fourier, const PipelineConfig& cfg) {
  if (gcd_u64(inst.base, inst.modulus) != 1) throw DomainError("shor_pipeline: gcd(a, N) != 1");
  if (inst.q * inst.modulus > kMaxPeriodicStateSize) throw ResourceLimitError("Q * N exceeds 2^22");
  const FiniteGroup zq = FiniteGroup::cyclic(inst.q);
  std::optional<FourierOperator> owned;
  if (fourier == nullptr) {
    owned.emplace(fourier_operator(zq));
    fourier = &*owned;
  }
  const FunctionOracle oracle{zq, FiniteGroup::cyclic(inst.modulus), f.values};
  return detail::run_pipeline_capped(oracle, *fourier, cfg, kMaxPeriodicStateSize);
}

OutcomeDistribution shor_pipeline(const PeriodicInstance& inst, const Transversal& tau,
                                  const FourierOperator* fourier, const PipelineConfig& cfg) {
  return shor_pipeline(inst, approximate_function(inst, tau), fourier, cfg);
}

double peak_mass(const OutcomeDistribution& dist, std::uint64_t r, std::uint64_t q) {
  if (r == 0) throw DomainError("peak_mass: r must be positive");
  if (dist.size() != q) throw DomainError("peak_mass: distribution is not over Z_Q");
  double mass = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const auto y = static_cast<unsigned __int128>(dist.labels[i].irrep);
    // |y - jQ/r| <= 1/2  <=>  2|y r - j Q| <= r; only the two j around yr/Q can qualify.
    const unsigned __int128 yr = y * r;
    const unsigned __int128 j0 = yr / q;
    bool hit = false;
    for (unsigned __int128 j = j0; j <= j0 + 1 && !hit; ++j) {
      const unsigned __int128 jq = j * q;
      const unsigned __int128 gap = yr > jq ? yr - jq : jq - yr;
      hit = 2 * gap <= r;
    }
    if (hit) mass += dist.probs[i];
  }
  return mass;
}

std::vector<SweepRow> sweep_transversals(const PeriodicInstance& inst, std::int64_t bound, std::size_t count,
                                         std::uint64_t first_seed) {
  const FourierOperator fourier = fourier_operator(FiniteGroup::cyclic(inst.q));
  const double shor_mass = peak_mass(shor_pipeline(inst, shor_transversal(inst.q), &fourier), inst.period, inst.q);
  std::vector<SweepRow> rows(count);
  parallel_for(count, [&](std::size_t i) {
    const std::uint64_t seed = first_seed + i;
    const auto dist = shor_pipeline(inst, offset_transversal(inst.q, bound, seed), &fourier);
    rows[i] = {seed, shor_mass, peak_mass(dist, inst.period, inst.q)};
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "seed,peak_mass_shor,peak_mass_offset\n";
  for (const SweepRow& r : rows)
    out += std::to_string(r.seed) + "," + format_double(r.peak_mass_shor) + "," + format_double(r.peak_mass_offset) + "\n";
  return out;
}

}  // namespace qhs
