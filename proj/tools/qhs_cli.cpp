// qhs: command-line front end for the hidden subgroup simulator.
//
// Exit codes: 0 success, 2 config error, 3 resource cap, 4 internal
// invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qhs/error.hpp"
#include "qhs/experiment.hpp"
#include "qhs/repr.hpp"

namespace {

using qhs::ExperimentConfig;
using qhs::ExperimentKind;
using nlohmann::json;

std::string slurp(const std::string& path_or_json) {
  if (!path_or_json.empty() && path_or_json.front() == '{') return path_or_json;
  std::ifstream in(path_or_json, std::ios::binary);
  if (!in) throw qhs::ConfigError("", "cannot read '" + path_or_json + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "101,011" -> [[1,0,1],[0,1,1]]
std::vector<qhs::GeneratorSpec> parse_bitstrings(const std::string& text) {
  std::vector<qhs::GeneratorSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::vector<std::uint64_t> bits;
    for (char c : item) {
      if (c != '0' && c != '1') throw qhs::ConfigError("hidden", "generators must be bit strings like 101");
      bits.push_back(static_cast<std::uint64_t>(c - '0'));
    }
    out.emplace_back(std::move(bits));
  }
  return out;
}

std::string fourier_csv(const qhs::FourierOperator& f) {
  std::string out = "row_label,column,re,im\n";
  for (std::size_t r = 0; r < f.rows().size(); ++r) {
    const auto& row = f.rows()[r];
    const std::string label =
        std::to_string(row.irrep) + ":" + std::to_string(row.row) + ":" + std::to_string(row.col);
    for (std::size_t c = 0; c < f.matrix().cols(); ++c)
      out += label + "," + std::to_string(c) + "," + qhs::format_double(f.matrix()(r, c).real()) + "," +
             qhs::format_double(f.matrix()(r, c).imag()) + "\n";
  }
  return out;
}

json fourier_json(const qhs::FourierOperator& f) {
  json rows = json::array();
  for (const auto& row : f.rows()) rows.push_back({row.irrep, row.row, row.col});
  json m = json::array();
  for (std::size_t r = 0; r < f.matrix().rows(); ++r) {
    json line = json::array();
    for (std::size_t c = 0; c < f.matrix().cols(); ++c) line.push_back({f.matrix()(r, c).real(), f.matrix()(r, c).imag()});
    m.push_back(line);
  }
  return {{"group", f.group().name()}, {"ordering", f.ordering().name()}, {"rows", rows}, {"matrix", m}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator for quantum hidden subgroup algorithms over small finite groups"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format = "json";
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--out-dir", out_dir, "Directory for CSV/JSON artifacts");
  app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"json", "csv"}));

  std::string group;
  std::string ordering;
  auto* irreps = app.add_subcommand("irreps", "Irrep/character table as JSON");
  irreps->add_option("group", group, "Group spec, e.g. Z6, Z2^3, Z2xZ4, D4")->required();

  bool check = false;
  auto* fourier = app.add_subcommand("fourier", "Fourier operator, or its residual report with --check");
  fourier->add_option("group", group)->required();
  fourier->add_flag("--check", check, "Emit completeness/Schur/unitarity residuals");
  fourier->add_option("--ordering", ordering, "default | dim_desc | column_major | dim_desc+column_major");

  std::string instance;
  std::uint64_t trials = 0;
  std::string second_transform, granularity;
  auto* simulate = app.add_subcommand("simulate", "Run the pipeline on an instance JSON");
  simulate->add_option("--instance", instance, "Instance JSON file or inline JSON")->required();
  simulate->add_option("--trials", trials);
  simulate->add_option("--second-transform", second_transform, "forward | inverse");
  simulate->add_option("--granularity", granularity, "full_triple | irrep_label_only");
  simulate->add_option("--ordering", ordering);

  std::uint64_t bits = 0;
  std::string hidden;
  auto* simon = app.add_subcommand("simon", "Simon instance over Z2^n with sampled recovery");
  simon->add_option("--n", bits)->required();
  simon->add_option("--hidden", hidden, "Comma-separated bit strings, e.g. 101,011");
  simon->add_option("--trials", trials);

  std::uint64_t big_n = 0, base = 0, q = 0, seeds = 100;
  std::string transversal = "shor";
  std::int64_t bound = 0;
  bool any_q = false;
  auto* shor = app.add_subcommand("shor", "Period finding through a chosen transversal");
  shor->add_option("--N", big_n)->required();
  shor->add_option("--a", base)->required();
  shor->add_option("--Q", q)->required();
  shor->add_option("--transversal", transversal)->check(CLI::IsMember({"shor", "offset"}));
  shor->add_option("--bound", bound);
  shor->add_option("--trials", trials);
  shor->add_flag("--allow-any-Q", any_q);

  auto* sweep = app.add_subcommand("sweep-transversal", "Peak mass, Shor vs seeded offset transversals");
  sweep->add_option("--seeds", seeds);
  sweep->add_option("--N", big_n)->required();
  sweep->add_option("--a", base)->required();
  sweep->add_option("--Q", q)->required();
  sweep->add_option("--bound", bound);
  sweep->add_flag("--allow-any-Q", any_q);

  std::string dist;
  auto* recover = app.add_subcommand("recover", "Rank subgroups against an observed distribution CSV");
  recover->add_option("--dist", dist)->required();
  recover->add_option("--group", group)->required();
  recover->add_option("--ordering", ordering);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment config JSON");
  run->add_option("--config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg;
    if (*run) {
      cfg = qhs::parse_config(slurp(config_path));
    } else if (*irreps) {
      cfg.experiment = ExperimentKind::irreps;
      cfg.group = group;
    } else if (*fourier) {
      if (!check) {
        const auto f = qhs::fourier_operator(qhs::FiniteGroup::parse(group),
                                             qhs::BasisOrdering::parse(ordering));
        std::cout << (format == "csv" ? fourier_csv(f) : fourier_json(f).dump(2) + "\n");
        return 0;
      }
      cfg.experiment = ExperimentKind::fourier_check;
      cfg.group = group;
    } else if (*simulate) {
      cfg = qhs::config_from_json(json::parse(slurp(instance)));
      cfg.experiment = ExperimentKind::simulate;
      if (simulate->count("--trials")) cfg.trials = trials;
      if (!second_transform.empty()) cfg.second_transform = second_transform;
      if (!granularity.empty()) cfg.measure_granularity = granularity;
      if (!ordering.empty()) cfg.ordering = ordering;
    } else if (*simon) {
      cfg.experiment = ExperimentKind::simon;
      cfg.group = "Z2^" + std::to_string(bits);
      cfg.hidden_generators = parse_bitstrings(hidden);
      if (simon->count("--trials")) cfg.trials = trials;
    } else if (*shor || *sweep) {
      cfg.experiment = *shor ? ExperimentKind::shor : ExperimentKind::sweep_transversal;
      cfg.n = big_n;
      cfg.a = base;
      cfg.q = q;
      cfg.allow_any_q = any_q;
      qhs::TransversalSpec t;
      t.kind = *shor ? transversal : "offset";
      if (bound > 0) t.bound = bound;
      cfg.transversal = t;
      if (*shor && shor->count("--trials")) cfg.trials = trials;
      if (*sweep) cfg.seeds = seeds;
    } else if (*recover) {
      cfg.experiment = ExperimentKind::recover;
      cfg.group = group;
      cfg.dist = dist;
      if (!ordering.empty()) cfg.ordering = ordering;
    }
    if (app.count("--seed")) cfg.seed = seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!*run && !ordering.empty() && !cfg.ordering) cfg.ordering = ordering;

    const qhs::ExperimentReport rep = qhs::run_experiment(cfg);
    if (format == "csv") {
      if (rep.files.count("sweep.csv")) std::cout << rep.files.at("sweep.csv");
      else if (rep.files.count("distribution.csv")) std::cout << rep.files.at("distribution.csv");
      else std::cout << rep.files.at("report.json");
    } else {
      std::cout << rep.files.at("report.json");
    }
    return 0;
  } catch (const qhs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qhs::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qhs::ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const qhs::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
