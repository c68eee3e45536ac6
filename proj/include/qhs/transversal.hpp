#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhs/engine.hpp"
#include "qhs/group.hpp"

namespace qhs {

enum class TransversalKind { shor, offset, least_index, seeded_random, custom };

std::string to_string(TransversalKind kind);

// tau: Q -> G with nu . tau = id_Q. The target is either a finite group G
// (Q = G/K) or the integer line Z (Q = Z_Q, nu = reduction mod Q), which is
// never materialized beyond this table.
class Transversal {
 public:
  // Validates nu(tau(q)) = q for every q; throws InvariantViolation otherwise.
  static Transversal into_integers(std::size_t q, std::vector<std::int64_t> table, TransversalKind kind,
                                   std::uint64_t seed = 0, std::int64_t bound = 1);
  static Transversal into_group(const FiniteGroup& g, QuotientGroup quotient, std::vector<Elem> reps,
                                TransversalKind kind, std::uint64_t seed = 0);

  TransversalKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t bound() const { return bound_; }
  bool targets_integers() const { return !target_.has_value(); }
  const FiniteGroup& quotient() const { return quotient_; }
  std::size_t size() const { return table_.size(); }
  // Representative of q: an integer, or an element index of the target group.
  std::int64_t operator[](std::size_t q) const { return table_.at(q); }
  const std::vector<std::int64_t>& table() const { return table_; }
  // nu
  std::size_t project(std::int64_t x) const;

  // nu(tau(q)) == q for all q, and tau injective.
  bool is_section() const;

 private:
  Transversal(FiniteGroup quotient, std::optional<FiniteGroup> target, std::vector<std::size_t> projection,
              std::vector<std::int64_t> table, TransversalKind kind, std::uint64_t seed, std::int64_t bound);

  FiniteGroup quotient_;
  std::optional<FiniteGroup> target_;
  std::vector<std::size_t> projection_;  // finite target only: element -> coset
  std::vector<std::int64_t> table_;
  TransversalKind kind_;
  std::uint64_t seed_;
  std::int64_t bound_;
};

// tau(q) = q.
Transversal shor_transversal(std::size_t q);
// tau(q) = q + Q * m_q with m_q uniform on [0, bound).
Transversal offset_transversal(std::size_t q, std::int64_t bound, std::uint64_t seed);

enum class TransversalPolicy { least_index, seeded_random };
// One representative per coset of a normal K.
Transversal finite_transversal(const FiniteGroup& g, const Subgroup& k, TransversalPolicy policy,
                               std::uint64_t seed = 0);

// Cap on Q * N for period-finding instances.
inline constexpr std::uint64_t kMaxPeriodicStateSize = std::uint64_t{1} << 22;

struct PeriodicInstance {
  std::uint64_t modulus = 0;  // N
  std::uint64_t base = 0;     // a
  std::uint64_t period = 0;   // r, the multiplicative order of a mod N
  std::uint64_t q = 0;        // size of the finite approximation Z_Q
};

// Throws DomainError for N < 2, gcd(a, N) != 1 or a Q that is not a power of
// two (unless allow_any_q); ResourceLimitError when Q * N is above the cap.
PeriodicInstance make_periodic_instance(std::uint64_t n, std::uint64_t a, std::uint64_t q, bool allow_any_q = false);

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

// f~ = f . tau with f(x) = a^x mod N.
struct ApproximateFunction {
  TransversalKind provenance = TransversalKind::custom;
  std::uint64_t seed = 0;
  std::int64_t bound = 1;
  std::vector<std::int64_t> exponents;  // tau(q)
  std::vector<Elem> values;             // a^tau(q) mod N

  // values[q] == a^exponents[q] mod N for all q.
  bool consistent_with(const PeriodicInstance& inst) const;
};

ApproximateFunction approximate_function(const PeriodicInstance& inst, const Transversal& tau);
// Exponent table taken verbatim; no section check. Used for shifted tables.
ApproximateFunction approximate_function(const PeriodicInstance& inst, std::vector<std::int64_t> exponents);

// Exact left-register distribution of the pipeline on Z_Q with f~, right
// register Cyclic(N). Pass a prebuilt Fourier operator for Cyclic(Q) to reuse it.
OutcomeDistribution shor_pipeline(const PeriodicInstance& inst, const ApproximateFunction& f,
                                  const FourierOperator* fourier = nullptr, const PipelineConfig& cfg = {});
OutcomeDistribution shor_pipeline(const PeriodicInstance& inst, const Transversal& tau,
                                  const FourierOperator* fourier = nullptr, const PipelineConfig& cfg = {});

// Mass on outcomes y with |y - jQ/r| <= 1/2 for some integer j.
double peak_mass(const OutcomeDistribution& dist, std::uint64_t r, std::uint64_t q);

struct SweepRow {
  std::uint64_t seed;
  double peak_mass_shor;
  double peak_mass_offset;
};

// Offset transversals with seeds first_seed .. first_seed + count - 1, each
// compared against the Shor transversal. Rows come back in seed order.
std::vector<SweepRow> sweep_transversals(const PeriodicInstance& inst, std::int64_t bound, std::size_t count,
                                         std::uint64_t first_seed);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qhs
