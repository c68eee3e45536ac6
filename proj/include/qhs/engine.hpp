#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qhs/oracle.hpp"
#include "qhs/repr.hpp"
#include "qhs/state.hpp"

namespace qhs {

// Largest |G| * |H| accepted by run_pipeline.
inline constexpr std::size_t kMaxStateSize = 65536;

enum class SecondTransform { forward, inverse };
enum class MeasureGranularity { full_triple, irrep_label_only };

struct PipelineConfig {
  SecondTransform second_transform = SecondTransform::forward;
  MeasureGranularity granularity = MeasureGranularity::full_triple;
  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

std::string to_string(SecondTransform t);
std::string to_string(MeasureGranularity m);
SecondTransform parse_second_transform(std::string_view text);
MeasureGranularity parse_granularity(std::string_view text);

enum class OutcomeSpace {
  irrep_triple,   // (i, j, k); printed as "i" when every irrep is 1-dim
  irrep_label,    // i only (weak Fourier sampling)
  group_element,  // inverse second transform lands back in the group basis
};

struct OutcomeDistribution {
  OutcomeSpace space = OutcomeSpace::irrep_triple;
  bool one_dimensional = false;
  // For group_element outcomes the element index sits in `irrep`.
  std::vector<FourierRow> labels;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  std::string label_string(std::size_t i) const;
  double total() const;
  // Positions with probability above threshold.
  std::vector<std::size_t> support(double threshold = 1e-10) const;
  // Position of a label; throws DomainError when absent.
  std::size_t position(const FourierRow& label) const;

  // "outcome_label,probability" header then one row per outcome, %.17g.
  std::string to_csv() const;
  // Inverse of to_csv. `one_dimensional` disambiguates bare integer labels.
  static OutcomeDistribution from_csv(std::string_view text, bool one_dimensional);
};

// Steps 0-4: |0>|1>, F on the left register, U_f, F (or F^dagger) on the
// left register, then the left-register Born distribution with the right
// register marginalized rather than measured.
OutcomeDistribution run_pipeline(const FunctionOracle& f, const FourierOperator& fourier,
                                 const PipelineConfig& cfg = {});
OutcomeDistribution run_pipeline(const HspInstance& instance, const FourierOperator& fourier,
                                 const PipelineConfig& cfg = {});

// psi_0 .. psi_3.
std::vector<QuantumState> step_trace(const FunctionOracle& f, const FourierOperator& fourier,
                                     const PipelineConfig& cfg = {});

// Born distribution of the left register of a final state.
OutcomeDistribution measure_left(const QuantumState& psi, const FourierOperator& fourier, const PipelineConfig& cfg);

// n draws by inverse CDF over the label order; draw i uses the stream
// derive_seed(seed, i), so the sequence depends only on (dist, seed).
// Returns positions into dist.labels.
std::vector<std::size_t> sample(const OutcomeDistribution& dist, std::size_t n, std::uint64_t seed);

// Half the l1 distance; label sets must match position by position.
double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b);

namespace detail {
OutcomeDistribution run_pipeline_capped(const FunctionOracle& f, const FourierOperator& fourier,
                                        const PipelineConfig& cfg, std::size_t max_state);
}

}  // namespace qhs
