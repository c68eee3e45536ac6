#include "qhs/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>

#include "qhs/error.hpp"
#include "qhs/rng.hpp"

namespace qhs {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kClampBelow = 1e-15;
constexpr double kTotalTolerance = 1e-10;

enum class Direction { forward, adjoint };

// Applies F (or F^dagger) to the left register, one right-register slice at
// a time. All-zero slices are skipped.
QuantumState transform_left(const QuantumState& psi, const FourierOperator& fourier, Direction dir) {
  QuantumState out(psi.left_dim, psi.right_dim);
  std::vector<cplx> slice(psi.left_dim), result(psi.left_dim);
  for (Elem h = 0; h < psi.right_dim; ++h) {
    bool any = false;
    for (Elem g = 0; g < psi.left_dim; ++g) {
      slice[g] = psi.at(g, h);
      any = any || slice[g] != cplx{};
    }
    if (!any) continue;
    if (dir == Direction::forward) fourier.apply(slice, result);
    else fourier.apply_adjoint(slice, result);
    for (Elem g = 0; g < psi.left_dim; ++g) out.at(g, h) = result[g];
  }
  return out;
}

void check_norm(const QuantumState& psi, const char* step) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) >= kNormTolerance)
    throw InvariantViolation(std::string("state norm drifted after ") + step + ": " + std::to_string(n));
}

void check_compatible(const FunctionOracle& f, const FourierOperator& fourier, const PipelineConfig& cfg,
                      std::size_t max_state) {
  if (!(fourier.group() == f.domain))
    throw DomainError("Fourier operator was built for " + fourier.group().name() + ", oracle domain is " +
                      f.domain.name());
  const std::size_t size = f.domain.order() * f.codomain.order();
  if (size > max_state)
    throw ResourceLimitError("state size |G|*|H| = " + std::to_string(size) + " exceeds " + std::to_string(max_state));
  if (cfg.second_transform == SecondTransform::inverse && cfg.granularity == MeasureGranularity::irrep_label_only)
    throw DomainError("irrep_label_only measurement needs the forward second transform");
}

std::vector<QuantumState> trace_impl(const FunctionOracle& f, const FourierOperator& fourier,
                                     const PipelineConfig& cfg) {
  const std::size_t left = f.domain.order(), right = f.codomain.order();
  std::vector<QuantumState> states;
  states.reserve(4);
  states.push_back(QuantumState::basis(left, right, f.domain.identity(), f.codomain.identity()));
  states.push_back(transform_left(states.back(), fourier, Direction::forward));
  check_norm(states.back(), "step 1");
  states.push_back(OracleUnitary(f).apply(states.back()));
  check_norm(states.back(), "step 2");
  const Direction second = cfg.second_transform == SecondTransform::forward ? Direction::forward : Direction::adjoint;
  states.push_back(transform_left(states.back(), fourier, second));
  check_norm(states.back(), "step 3");
  return states;
}

}  // namespace

std::string to_string(SecondTransform t) { return t == SecondTransform::forward ? "forward" : "inverse"; }

std::string to_string(MeasureGranularity m) {
  return m == MeasureGranularity::full_triple ? "full_triple" : "irrep_label_only";
}

SecondTransform parse_second_transform(std::string_view text) {
  if (text == "forward") return SecondTransform::forward;
  if (text == "inverse") return SecondTransform::inverse;
  throw DomainError("second_transform must be 'forward' or 'inverse'");
}

MeasureGranularity parse_granularity(std::string_view text) {
  if (text == "full_triple") return MeasureGranularity::full_triple;
  if (text == "irrep_label_only") return MeasureGranularity::irrep_label_only;
  throw DomainError("measure_granularity must be 'full_triple' or 'irrep_label_only'");
}

std::string OutcomeDistribution::label_string(std::size_t i) const {
  const FourierRow& l = labels.at(i);
  switch (space) {
    case OutcomeSpace::group_element:
      return "g" + std::to_string(l.irrep);
    case OutcomeSpace::irrep_label:
      return std::to_string(l.irrep);
    case OutcomeSpace::irrep_triple:
      if (one_dimensional) return std::to_string(l.irrep);
      return std::to_string(l.irrep) + ":" + std::to_string(l.row) + ":" + std::to_string(l.col);
  }
  return {};
}

double OutcomeDistribution::total() const {
  double acc = 0.0;
  for (double p : probs) acc += p;
  return acc;
}

std::vector<std::size_t> OutcomeDistribution::support(double threshold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > threshold) out.push_back(i);
  return out;
}

std::size_t OutcomeDistribution::position(const FourierRow& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw DomainError("outcome label not present in distribution");
}

std::string OutcomeDistribution::to_csv() const {
  std::string out = "outcome_label,probability\n";
  for (std::size_t i = 0; i < probs.size(); ++i) out += label_string(i) + "," + format_double(probs[i]) + "\n";
  return out;
}

OutcomeDistribution OutcomeDistribution::from_csv(std::string_view text, bool one_dimensional) {
  OutcomeDistribution d;
  d.one_dimensional = one_dimensional;
  bool first = true;
  bool decided = false;
  auto parse_index = [](std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
      throw DomainError("malformed outcome label '" + std::string(s) + "'");
    return v;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == "outcome_label,probability") continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) throw DomainError("malformed distribution row '" + std::string(line) + "'");
    std::string_view lab = line.substr(0, comma);
    const std::string prob_text(line.substr(comma + 1));
    char* prob_end = nullptr;
    const double p = std::strtod(prob_text.c_str(), &prob_end);
    if (prob_end == prob_text.c_str() || *prob_end != '\0')
      throw DomainError("malformed probability '" + prob_text + "'");

    OutcomeSpace space;
    FourierRow row;
    if (!lab.empty() && lab.front() == 'g') {
      space = OutcomeSpace::group_element;
      row.irrep = parse_index(lab.substr(1));
    } else if (auto c1 = lab.find(':'); c1 != std::string_view::npos) {
      const auto c2 = lab.find(':', c1 + 1);
      if (c2 == std::string_view::npos) throw DomainError("malformed triple label '" + std::string(lab) + "'");
      space = OutcomeSpace::irrep_triple;
      row = {parse_index(lab.substr(0, c1)), parse_index(lab.substr(c1 + 1, c2 - c1 - 1)),
             parse_index(lab.substr(c2 + 1))};
    } else {
      space = one_dimensional ? OutcomeSpace::irrep_triple : OutcomeSpace::irrep_label;
      row.irrep = parse_index(lab);
    }
    if (decided && space != d.space) throw DomainError("distribution mixes outcome label kinds");
    d.space = space;
    decided = true;
    d.labels.push_back(row);
    d.probs.push_back(p);
  }
  return d;
}

OutcomeDistribution measure_left(const QuantumState& psi, const FourierOperator& fourier, const PipelineConfig& cfg) {
  if (psi.left_dim != fourier.group().order()) throw DomainError("measure_left: register size mismatch");
  std::vector<double> marginal(psi.left_dim, 0.0);
  for (Elem g = 0; g < psi.left_dim; ++g)
    for (Elem h = 0; h < psi.right_dim; ++h) marginal[g] += std::norm(psi.at(g, h));
  for (double& p : marginal)
    if (p < kClampBelow) p = 0.0;

  OutcomeDistribution d;
  d.one_dimensional = fourier.one_dimensional();
  if (cfg.second_transform == SecondTransform::inverse) {
    d.space = OutcomeSpace::group_element;
    for (Elem g = 0; g < psi.left_dim; ++g) d.labels.push_back({g, 0, 0});
    d.probs = std::move(marginal);
  } else if (cfg.granularity == MeasureGranularity::full_triple) {
    d.space = OutcomeSpace::irrep_triple;
    d.labels = fourier.rows();
    d.probs = std::move(marginal);
  } else {
    d.space = OutcomeSpace::irrep_label;
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t r = 0; r < marginal.size(); ++r) {
      const std::size_t irrep = fourier.rows()[r].irrep;
      auto [it, fresh] = slot.try_emplace(irrep, d.labels.size());
      if (fresh) {
        d.labels.push_back({irrep, 0, 0});
        d.probs.push_back(0.0);
      }
      d.probs[it->second] += marginal[r];
    }
  }
  const double total = d.total();
  if (std::abs(total - 1.0) > kTotalTolerance)
    throw InvariantViolation("outcome probabilities sum to " + format_double(total));
  return d;
}

OutcomeDistribution detail::run_pipeline_capped(const FunctionOracle& f, const FourierOperator& fourier,
                                                const PipelineConfig& cfg, std::size_t max_state) {
  check_compatible(f, fourier, cfg, max_state);
  const auto states = trace_impl(f, fourier, cfg);
  return measure_left(states.back(), fourier, cfg);
}

OutcomeDistribution run_pipeline(const FunctionOracle& f, const FourierOperator& fourier, const PipelineConfig& cfg) {
  return detail::run_pipeline_capped(f, fourier, cfg, kMaxStateSize);
}

OutcomeDistribution run_pipeline(const HspInstance& instance, const FourierOperator& fourier,
                                 const PipelineConfig& cfg) {
  return run_pipeline(instance.f, fourier, cfg);
}

std::vector<QuantumState> step_trace(const FunctionOracle& f, const FourierOperator& fourier,
                                     const PipelineConfig& cfg) {
  check_compatible(f, fourier, cfg, kMaxStateSize);
  return trace_impl(f, fourier, cfg);
}

std::vector<std::size_t> sample(const OutcomeDistribution& dist, std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> out;
  if (n == 0) return out;
  std::vector<double> cdf(dist.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    if (dist.probs[i] < 0.0) throw DomainError("sample: negative probability");
    acc += dist.probs[i];
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw DomainError("sample: distribution has no mass");
  out.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double u = to_unit_interval(splitmix64(derive_seed(seed, t))) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // Step back over trailing zero-probability slots that share the cdf value.
    std::size_t pos = static_cast<std::size_t>(it - cdf.begin());
    while (dist.probs[pos] == 0.0 && pos > 0) --pos;
    out.push_back(pos);
  }
  return out;
}

double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.labels != b.labels) throw DomainError("total_variation: outcome spaces differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) acc += std::abs(a.probs[i] - b.probs[i]);
  return 0.5 * acc;
}

}  // namespace qhs
