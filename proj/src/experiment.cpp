#include "qhs/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhs/error.hpp"
#include "qhs/recover.hpp"
#include "qhs/repr.hpp"
#include "qhs/transversal.hpp"

namespace qhs {

using nlohmann::json;

namespace {

const std::vector<std::string> kKnownKeys = {
    "experiment", "group", "hidden_generators", "transversal", "Q", "N", "a", "trials", "seeds", "seed",
    "allow_any_Q", "second_transform", "measure_granularity", "ordering", "dist", "out_dir"};

std::uint64_t positive_uint(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw ConfigError(field, "must be a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string string_field(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "must be a string");
  return j.get<std::string>();
}

GeneratorSpec generator_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<std::uint64_t> digits;
    for (const json& d : j) digits.push_back(positive_uint(d, "hidden_generators"));
    return digits;
  }
  return positive_uint(j, "hidden_generators");
}

json generator_to_json(const GeneratorSpec& g) {
  if (std::holds_alternative<std::uint64_t>(g)) return std::get<std::uint64_t>(g);
  return std::get<std::vector<std::uint64_t>>(g);
}

Elem resolve_generator(const FiniteGroup& g, const GeneratorSpec& spec) {
  if (std::holds_alternative<std::uint64_t>(spec)) {
    const auto x = static_cast<Elem>(std::get<std::uint64_t>(spec));
    g.check(x);
    return x;
  }
  const auto& digits = std::get<std::vector<std::uint64_t>>(spec);
  switch (g.kind()) {
    case GroupKind::product: {
      std::vector<std::size_t> d(digits.begin(), digits.end());
      return g.from_digits(d);
    }
    case GroupKind::dihedral:
      if (digits.size() != 2 || digits[1] > 1) throw DomainError("dihedral generator must be [a, b] with b in {0,1}");
      return digits[1] == 1 ? g.reflection(digits[0]) : g.rotation(digits[0]);
    default:
      if (digits.size() != 1) throw DomainError("generator for " + g.name() + " must be a single index");
      g.check(digits[0]);
      return digits[0];
  }
}

FiniteGroup config_group(const ExperimentConfig& cfg) {
  if (!cfg.group) throw ConfigError("group", "is required for " + to_string(cfg.experiment));
  try {
    return FiniteGroup::parse(*cfg.group);
  } catch (const DomainError& e) {
    throw ConfigError("group", e.what());
  }
}

PipelineConfig pipeline_config(const ExperimentConfig& cfg) {
  PipelineConfig p;
  if (cfg.second_transform) p.second_transform = parse_second_transform(*cfg.second_transform);
  if (cfg.measure_granularity) p.granularity = parse_granularity(*cfg.measure_granularity);
  return p;
}

BasisOrdering basis_ordering(const ExperimentConfig& cfg) {
  return cfg.ordering ? BasisOrdering::parse(*cfg.ordering) : BasisOrdering{};
}

void require_positive(const std::optional<std::uint64_t>& v, const char* field, const ExperimentConfig& cfg) {
  if (!v) throw ConfigError(field, "is required for " + to_string(cfg.experiment));
  if (*v == 0) throw ConfigError(field, "must be positive");
}

std::int64_t offset_bound(const ExperimentConfig& cfg) {
  if (cfg.transversal && cfg.transversal->bound) return *cfg.transversal->bound;
  return static_cast<std::int64_t>(*cfg.n);
}

json distribution_json(const OutcomeDistribution& d) {
  json arr = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) arr.push_back({{"label", d.label_string(i)}, {"probability", d.probs[i]}});
  return arr;
}

json subgroup_json(const FiniteGroup& g, const Subgroup& k) {
  json labels = json::array();
  for (Elem x : k.elements) labels.push_back(g.label(x));
  return {{"elements", k.elements}, {"labels", labels}, {"generators", k.generators}, {"order", k.order()},
          {"normal", k.normal}};
}

std::vector<std::string> sample_labels(const OutcomeDistribution& d, const std::vector<std::size_t>& picks) {
  std::vector<std::string> out;
  out.reserve(picks.size());
  for (std::size_t p : picks) out.push_back(d.label_string(p));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("dist", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void run_simulate(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const FiniteGroup g = config_group(cfg);
  const Subgroup k = hidden_subgroup(g, cfg.hidden_generators);
  const HspInstance inst = build_instance(g, k, cfg.seed);
  const FourierOperator fourier = fourier_operator(g, basis_ordering(cfg));
  const PipelineConfig pc = pipeline_config(cfg);
  const auto states = step_trace(inst.f, fourier, pc);
  const OutcomeDistribution dist = measure_left(states.back(), fourier, pc);
  const auto picks = sample(dist, cfg.trials.value_or(0), cfg.seed);

  json norms = json::array();
  for (const auto& s : states) norms.push_back(s.norm());
  rep.distribution = dist;
  rep.samples = sample_labels(dist, picks);
  rep.body["hidden"] = subgroup_json(g, k);
  rep.body["distribution"] = distribution_json(dist);
  rep.body["samples"] = rep.samples;
  rep.body["norms"] = norms;
  rep.files["f_table.csv"] = f_table_csv(inst.f);
}

void run_simon(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const FiniteGroup g = config_group(cfg);
  const Subgroup k = hidden_subgroup(g, cfg.hidden_generators);
  const HspInstance inst = build_instance(g, k, cfg.seed);
  const OutcomeDistribution dist = run_pipeline(inst, fourier_operator(g));
  const std::size_t trials = cfg.trials.value_or(g.moduli().size() + 3);
  const auto picks = sample(dist, trials, cfg.seed);

  SampleSet samples{g, {}};
  for (std::size_t p : picks) samples.outcomes.push_back(dist.labels[p].irrep);
  std::vector<Elem> support;
  for (std::size_t p : dist.support()) support.push_back(dist.labels[p].irrep);
  const RecoveryResult res = simon_solve(samples, support);
  const Subgroup truth = classical_brute_force_hsp(inst);

  json gens = json::array();
  for (Elem x : res.candidate.generators) gens.push_back(g.digits(x));
  rep.distribution = dist;
  rep.samples = sample_labels(dist, picks);
  rep.metrics["matches_brute_force"] = res.candidate == truth ? 1.0 : 0.0;
  rep.body["recovered_generators"] = gens;
  rep.body["recovered"] = subgroup_json(g, res.candidate);
  rep.body["confirmed"] = res.confirmed;
  rep.body["trials_used"] = res.samples_used;
  rep.body["brute_force"] = subgroup_json(g, truth);
  rep.body["matches_brute_force"] = res.candidate == truth;
  rep.body["samples"] = rep.samples;
}

void run_shor(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const PeriodicInstance inst = make_periodic_instance(*cfg.n, *cfg.a, *cfg.q, cfg.allow_any_q);
  const std::string kind = cfg.transversal ? cfg.transversal->kind : "shor";
  const Transversal tau =
      kind == "offset" ? offset_transversal(inst.q, offset_bound(cfg), cfg.seed) : shor_transversal(inst.q);
  const OutcomeDistribution dist = shor_pipeline(inst, tau, nullptr, pipeline_config(cfg));
  const auto picks = sample(dist, cfg.trials.value_or(0), cfg.seed);
  std::vector<std::uint64_t> ys;
  for (std::size_t p : picks) ys.push_back(dist.labels[p].irrep);
  const PeriodResult period = period_from_samples(ys, inst.q, inst.modulus, inst.base);

  const double mass = peak_mass(dist, inst.period, inst.q);
  rep.distribution = dist;
  rep.samples = sample_labels(dist, picks);
  rep.metrics["peak_mass"] = mass;
  rep.body["peak_mass"] = mass;
  rep.body["r_true"] = inst.period;
  rep.body["transversal"] = {{"kind", to_string(tau.kind())}, {"bound", tau.bound()}, {"seed", tau.seed()}};
  rep.body["distribution_csv_path"] =
      cfg.out_dir ? (std::filesystem::path(*cfg.out_dir) / "distribution.csv").string() : "distribution.csv";
  rep.body["samples"] = rep.samples;
  rep.body["period_candidate"] = period.candidate ? json(*period.candidate) : json(nullptr);
  rep.body["period_confirmed"] = period.confirmed;
}

void run_sweep(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const PeriodicInstance inst = make_periodic_instance(*cfg.n, *cfg.a, *cfg.q, cfg.allow_any_q);
  const auto rows = sweep_transversals(inst, offset_bound(cfg), cfg.seeds.value_or(100), cfg.seed);
  std::size_t wins = 0;
  std::vector<double> offsets;
  for (const SweepRow& r : rows) {
    wins += r.peak_mass_shor > r.peak_mass_offset ? 1 : 0;
    offsets.push_back(r.peak_mass_offset);
  }
  std::sort(offsets.begin(), offsets.end());
  const std::size_t m = offsets.size();
  const double median = m == 0 ? 0.0 : (m % 2 ? offsets[m / 2] : 0.5 * (offsets[m / 2 - 1] + offsets[m / 2]));
  rep.metrics["shor_wins"] = static_cast<double>(wins);
  rep.metrics["median_peak_mass_offset"] = median;
  rep.metrics["peak_mass_shor"] = rows.empty() ? 0.0 : rows.front().peak_mass_shor;
  rep.body["r_true"] = inst.period;
  rep.body["runs"] = rows.size();
  rep.body["shor_wins"] = wins;
  rep.body["median_peak_mass_offset"] = median;
  rep.body["peak_mass_shor"] = rep.metrics["peak_mass_shor"];
  rep.files["sweep.csv"] = sweep_csv(rows);
}

void run_recover(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const FiniteGroup g = config_group(cfg);
  if (!cfg.dist) throw ConfigError("dist", "is required for recover");
  const FourierOperator fourier = fourier_operator(g, basis_ordering(cfg));
  const OutcomeDistribution observed = OutcomeDistribution::from_csv(read_file(*cfg.dist), fourier.one_dimensional());
  PipelineConfig pc = pipeline_config(cfg);
  if (observed.space == OutcomeSpace::group_element) pc.second_transform = SecondTransform::inverse;
  if (observed.space == OutcomeSpace::irrep_label) pc.granularity = MeasureGranularity::irrep_label_only;
  const auto ranked = subgroup_consistency_rank(observed, g, basis_ordering(cfg), pc);
  json arr = json::array();
  for (const RankedCandidate& c : ranked) {
    json entry = subgroup_json(g, c.subgroup);
    entry["distance"] = c.distance;
    entry["tie_group"] = c.tie_group;
    arr.push_back(entry);
  }
  rep.body["candidates"] = arr;
  if (!ranked.empty()) rep.metrics["best_distance"] = ranked.front().distance;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::simulate: return "simulate";
    case ExperimentKind::simon: return "simon";
    case ExperimentKind::shor: return "shor";
    case ExperimentKind::sweep_transversal: return "sweep-transversal";
    case ExperimentKind::irreps: return "irreps";
    case ExperimentKind::fourier_check: return "fourier-check";
    case ExperimentKind::recover: return "recover";
  }
  return {};
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::simulate, ExperimentKind::simon, ExperimentKind::shor,
                 ExperimentKind::sweep_transversal, ExperimentKind::irreps, ExperimentKind::fourier_check,
                 ExperimentKind::recover})
    if (to_string(k) == text) return k;
  throw ConfigError("experiment", "unknown experiment '" + std::string(text) + "'");
}

Subgroup hidden_subgroup(const FiniteGroup& g, const std::vector<GeneratorSpec>& gens) {
  std::vector<Elem> elems;
  for (const auto& spec : gens) {
    try {
      elems.push_back(resolve_generator(g, spec));
    } catch (const DomainError& e) {
      throw ConfigError("hidden_generators", e.what());
    }
  }
  return subgroup_from_generators(g, elems);
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      throw ConfigError(key, "unknown key");

  ExperimentConfig cfg;
  if (j.contains("experiment")) cfg.experiment = parse_experiment_kind(string_field(j["experiment"], "experiment"));
  if (j.contains("group")) cfg.group = string_field(j["group"], "group");
  if (j.contains("hidden_generators")) {
    if (!j["hidden_generators"].is_array()) throw ConfigError("hidden_generators", "must be an array");
    for (const json& g : j["hidden_generators"]) cfg.hidden_generators.push_back(generator_from_json(g));
  }
  if (j.contains("transversal")) {
    const json& t = j["transversal"];
    if (!t.is_object()) throw ConfigError("transversal", "must be an object");
    TransversalSpec spec;
    for (const auto& [key, value] : t.items()) {
      if (key == "kind") spec.kind = string_field(value, "transversal.kind");
      else if (key == "bound") spec.bound = static_cast<std::int64_t>(positive_uint(value, "transversal.bound"));
      else throw ConfigError("transversal." + key, "unknown key");
    }
    cfg.transversal = spec;
  }
  if (j.contains("Q")) cfg.q = positive_uint(j["Q"], "Q");
  if (j.contains("N")) cfg.n = positive_uint(j["N"], "N");
  if (j.contains("a")) cfg.a = positive_uint(j["a"], "a");
  if (j.contains("trials")) cfg.trials = positive_uint(j["trials"], "trials");
  if (j.contains("seeds")) cfg.seeds = positive_uint(j["seeds"], "seeds");
  if (j.contains("seed")) cfg.seed = positive_uint(j["seed"], "seed");
  if (j.contains("allow_any_Q")) {
    if (!j["allow_any_Q"].is_boolean()) throw ConfigError("allow_any_Q", "must be a boolean");
    cfg.allow_any_q = j["allow_any_Q"].get<bool>();
  }
  if (j.contains("second_transform")) cfg.second_transform = string_field(j["second_transform"], "second_transform");
  if (j.contains("measure_granularity"))
    cfg.measure_granularity = string_field(j["measure_granularity"], "measure_granularity");
  if (j.contains("ordering")) cfg.ordering = string_field(j["ordering"], "ordering");
  if (j.contains("dist")) cfg.dist = string_field(j["dist"], "dist");
  if (j.contains("out_dir")) cfg.out_dir = string_field(j["out_dir"], "out_dir");
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  if (cfg.group) j["group"] = *cfg.group;
  if (!cfg.hidden_generators.empty()) {
    json arr = json::array();
    for (const auto& g : cfg.hidden_generators) arr.push_back(generator_to_json(g));
    j["hidden_generators"] = arr;
  }
  if (cfg.transversal) {
    j["transversal"] = {{"kind", cfg.transversal->kind}};
    if (cfg.transversal->bound) j["transversal"]["bound"] = *cfg.transversal->bound;
  }
  if (cfg.q) j["Q"] = *cfg.q;
  if (cfg.n) j["N"] = *cfg.n;
  if (cfg.a) j["a"] = *cfg.a;
  if (cfg.trials) j["trials"] = *cfg.trials;
  if (cfg.seeds) j["seeds"] = *cfg.seeds;
  j["seed"] = cfg.seed;
  if (cfg.allow_any_q) j["allow_any_Q"] = true;
  if (cfg.second_transform) j["second_transform"] = *cfg.second_transform;
  if (cfg.measure_granularity) j["measure_granularity"] = *cfg.measure_granularity;
  if (cfg.ordering) j["ordering"] = *cfg.ordering;
  if (cfg.dist) j["dist"] = *cfg.dist;
  if (cfg.out_dir) j["out_dir"] = *cfg.out_dir;
  return j;
}

void validate_config(const ExperimentConfig& cfg) {
  try {
    if (cfg.second_transform) parse_second_transform(*cfg.second_transform);
  } catch (const DomainError& e) {
    throw ConfigError("second_transform", e.what());
  }
  try {
    if (cfg.measure_granularity) parse_granularity(*cfg.measure_granularity);
  } catch (const DomainError& e) {
    throw ConfigError("measure_granularity", e.what());
  }
  try {
    if (cfg.ordering) BasisOrdering::parse(*cfg.ordering);
  } catch (const DomainError& e) {
    throw ConfigError("ordering", e.what());
  }
  if (cfg.second_transform == "inverse" && cfg.measure_granularity == "irrep_label_only")
    throw ConfigError("measure_granularity", "irrep_label_only needs the forward second transform");

  switch (cfg.experiment) {
    case ExperimentKind::irreps:
    case ExperimentKind::fourier_check: {
      const FiniteGroup g = config_group(cfg);
      if (g.kind() == GroupKind::tabulated) throw ConfigError("group", "no built-in irreps");
      if (g.order() > kMaxFourierOrder) throw ResourceLimitError("|G| exceeds " + std::to_string(kMaxFourierOrder));
      return;
    }
    case ExperimentKind::simulate:
    case ExperimentKind::simon: {
      const FiniteGroup g = config_group(cfg);
      if (cfg.experiment == ExperimentKind::simon) {
        const auto& m = g.moduli();
        if (g.kind() != GroupKind::product || !std::all_of(m.begin(), m.end(), [](std::size_t x) { return x == 2; }))
          throw ConfigError("group", "simon needs a group of the form Z2^n");
      }
      if (g.order() > kMaxFourierOrder) throw ResourceLimitError("|G| exceeds " + std::to_string(kMaxFourierOrder));
      const Subgroup k = hidden_subgroup(g, cfg.hidden_generators);
      const std::size_t state = g.order() * (g.order() / k.order());
      if (state > kMaxStateSize)
        throw ResourceLimitError("state size |G|*|H| = " + std::to_string(state) + " exceeds " +
                                 std::to_string(kMaxStateSize));
      return;
    }
    case ExperimentKind::shor:
    case ExperimentKind::sweep_transversal: {
      require_positive(cfg.n, "N", cfg);
      require_positive(cfg.a, "a", cfg);
      require_positive(cfg.q, "Q", cfg);
      if (*cfg.n < 2) throw ConfigError("N", "must be >= 2");
      if (gcd_u64(*cfg.a, *cfg.n) != 1)
        throw ConfigError("a", "gcd(" + std::to_string(*cfg.a) + ", " + std::to_string(*cfg.n) + ") != 1");
      if (!cfg.allow_any_q && !is_power_of_two(*cfg.q)) throw ConfigError("Q", "must be a power of two");
      if (cfg.transversal) {
        if (cfg.transversal->kind != "shor" && cfg.transversal->kind != "offset")
          throw ConfigError("transversal.kind", "must be 'shor' or 'offset'");
        if (cfg.transversal->bound && *cfg.transversal->bound < 1)
          throw ConfigError("transversal.bound", "must be >= 1");
      }
      if (cfg.seeds && *cfg.seeds == 0) throw ConfigError("seeds", "must be positive");
      if (*cfg.q > kMaxPeriodicStateSize / *cfg.n) throw ResourceLimitError("Q * N exceeds 2^22");
      if (*cfg.q > kMaxFourierOrder) throw ResourceLimitError("Q exceeds " + std::to_string(kMaxFourierOrder));
      return;
    }
    case ExperimentKind::recover: {
      const FiniteGroup g = config_group(cfg);
      if (!cfg.dist) throw ConfigError("dist", "is required for recover");
      if (g.order() > kMaxConsistencyRankOrder) throw ResourceLimitError("recover is limited to |G| <= 32");
      return;
    }
  }
}

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg = config_from_json(j);
  validate_config(cfg);
  return cfg;
}

std::string ExperimentReport::samples_csv() const {
  std::string out = "trial,outcome_label\n";
  for (std::size_t i = 0; i < samples.size(); ++i) out += std::to_string(i) + "," + samples[i] + "\n";
  return out;
}

json irreps_json(const FiniteGroup& g) {
  json arr = json::array();
  for (const Irrep& p : irreps_of(g)) {
    json chars = json::array();
    json mats = json::array();
    for (Elem x = 0; x < g.order(); ++x) {
      const cplx c = p.character(x);
      chars.push_back({c.real(), c.imag()});
      json m = json::array();
      for (const cplx& v : p.matrix(x)) m.push_back({v.real(), v.imag()});
      mats.push_back(m);
    }
    arr.push_back({{"label", p.label()}, {"dim", p.dim()}, {"character", chars}, {"matrices", mats}});
  }
  json labels = json::array();
  for (Elem x = 0; x < g.order(); ++x) labels.push_back(g.label(x));
  return {{"group", g.name()}, {"order", g.order()}, {"elements", labels}, {"irreps", arr}};
}

json representation_report_json(const RepresentationReport& rep) {
  return {{"group", rep.group},
          {"completeness_defect", rep.completeness_defect},
          {"max_schur_residual", rep.max_schur_residual},
          {"max_unitarity_residual", rep.max_unitarity_residual},
          {"max_irrep_unitarity_residual", rep.max_irrep_unitarity_residual},
          {"max_homomorphism_residual", rep.max_homomorphism_residual},
          {"max_character_norm_defect", rep.max_character_norm_defect}};
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentReport rep;
  rep.config = cfg;
  rep.body["config"] = config_to_json(cfg);
  rep.body["version"] = kVersion;
  rep.body["seed"] = cfg.seed;

  switch (cfg.experiment) {
    case ExperimentKind::simulate: run_simulate(cfg, rep); break;
    case ExperimentKind::simon: run_simon(cfg, rep); break;
    case ExperimentKind::shor: run_shor(cfg, rep); break;
    case ExperimentKind::sweep_transversal: run_sweep(cfg, rep); break;
    case ExperimentKind::recover: run_recover(cfg, rep); break;
    case ExperimentKind::irreps: rep.body["irreps"] = irreps_json(config_group(cfg)); break;
    case ExperimentKind::fourier_check:
      rep.body["report"] = representation_report_json(verify_representation_suite(config_group(cfg)));
      break;
  }

  if (rep.distribution) {
    rep.files["distribution.csv"] = rep.distribution->to_csv();
    rep.files["samples.csv"] = rep.samples_csv();
  }
  rep.files["report.json"] = rep.body.dump(2) + "\n";

  if (cfg.out_dir) {
    const std::filesystem::path dir(*cfg.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& [name, contents] : rep.files) {
      std::ofstream out(dir / name, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
      out << contents;
    }
  }
  return rep;
}

}  // namespace qhs
