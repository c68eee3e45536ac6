#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhs/engine.hpp"
#include "qhs/error.hpp"
#include "qhs/experiment.hpp"
#include "qhs/group.hpp"
#include "qhs/oracle.hpp"
#include "qhs/recover.hpp"
#include "qhs/repr.hpp"
#include "qhs/transversal.hpp"

namespace py = pybind11;

namespace {

qhs::PipelineConfig make_pipeline_config(const std::string& second_transform, const std::string& granularity) {
  return {qhs::parse_second_transform(second_transform), qhs::parse_granularity(granularity)};
}

}  // namespace

PYBIND11_MODULE(_qhs, m) {
  m.doc() = "Exact simulator for quantum hidden subgroup algorithms over small finite groups.";
  m.attr("__version__") = qhs::kVersion;

  py::register_exception<qhs::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<qhs::ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);
  py::register_exception<qhs::InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<qhs::FiniteGroup>(m, "Group")
      .def(py::init([](const std::string& spec) { return qhs::FiniteGroup::parse(spec); }), py::arg("spec"))
      .def_property_readonly("order", &qhs::FiniteGroup::order)
      .def_property_readonly("name", &qhs::FiniteGroup::name)
      .def_property_readonly("is_abelian", &qhs::FiniteGroup::is_abelian)
      .def("op", &qhs::FiniteGroup::op)
      .def("inv", &qhs::FiniteGroup::inv)
      .def("label", &qhs::FiniteGroup::label)
      .def("__repr__", [](const qhs::FiniteGroup& g) { return "Group('" + g.name() + "')"; });

  m.def(
      "all_subgroups",
      [](const qhs::FiniteGroup& g) {
        std::vector<std::vector<qhs::Elem>> out;
        for (const auto& k : qhs::all_subgroups(g)) out.push_back(k.elements);
        return out;
      },
      "Element lists of every subgroup, sorted by (order, elements).");

  m.def("subgroup", [](const qhs::FiniteGroup& g, const std::vector<qhs::Elem>& gens) {
    const auto k = qhs::subgroup_from_generators(g, gens);
    return py::make_tuple(k.elements, k.normal);
  });

  m.def("representation_report", [](const qhs::FiniteGroup& g) {
    const auto rep = qhs::verify_representation_suite(g);
    py::dict d;
    d["completeness_defect"] = rep.completeness_defect;
    d["max_schur_residual"] = rep.max_schur_residual;
    d["max_unitarity_residual"] = rep.max_unitarity_residual;
    d["max_homomorphism_residual"] = rep.max_homomorphism_residual;
    return d;
  });

  m.def(
      "fourier_matrix",
      [](const qhs::FiniteGroup& g, const std::string& ordering) {
        const auto f = qhs::fourier_operator(g, qhs::BasisOrdering::parse(ordering));
        const std::size_t n = f.matrix().rows();
        py::array_t<std::complex<double>> arr({n, n});
        auto view = arr.mutable_unchecked<2>();
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) view(r, c) = f.matrix()(r, c);
        return arr;
      },
      py::arg("group"), py::arg("ordering") = "default");

  py::class_<qhs::OutcomeDistribution>(m, "Distribution")
      .def_property_readonly("labels",
                             [](const qhs::OutcomeDistribution& d) {
                               std::vector<std::string> out;
                               for (std::size_t i = 0; i < d.size(); ++i) out.push_back(d.label_string(i));
                               return out;
                             })
      .def_property_readonly("probs", [](const qhs::OutcomeDistribution& d) { return d.probs; })
      .def("support", &qhs::OutcomeDistribution::support, py::arg("threshold") = 1e-10)
      .def("to_csv", &qhs::OutcomeDistribution::to_csv)
      .def(
          "sample",
          [](const qhs::OutcomeDistribution& d, std::size_t n, std::uint64_t seed) { return qhs::sample(d, n, seed); },
          py::arg("n"), py::arg("seed"), "Positions into labels, reproducible from the seed.")
      .def("__len__", &qhs::OutcomeDistribution::size);

  m.def(
      "run_pipeline",
      [](const qhs::FiniteGroup& g, const std::vector<qhs::Elem>& hidden_generators, std::uint64_t seed,
         const std::string& second_transform, const std::string& granularity, const std::string& ordering) {
        const auto k = qhs::subgroup_from_generators(g, hidden_generators);
        const auto inst = qhs::build_instance(g, k, seed);
        return qhs::run_pipeline(inst, qhs::fourier_operator(g, qhs::BasisOrdering::parse(ordering)),
                                 make_pipeline_config(second_transform, granularity));
      },
      py::arg("group"), py::arg("hidden_generators"), py::arg("seed") = 0, py::arg("second_transform") = "forward",
      py::arg("granularity") = "full_triple", py::arg("ordering") = "default");

  m.def(
      "shor_pipeline",
      [](std::uint64_t n, std::uint64_t a, std::uint64_t q, const std::string& transversal, std::int64_t bound,
         std::uint64_t seed) {
        const auto inst = qhs::make_periodic_instance(n, a, q);
        const auto tau = transversal == "offset" ? qhs::offset_transversal(q, bound, seed) : qhs::shor_transversal(q);
        return qhs::shor_pipeline(inst, tau);
      },
      py::arg("N"), py::arg("a"), py::arg("Q"), py::arg("transversal") = "shor", py::arg("bound") = 1,
      py::arg("seed") = 0);

  m.def("peak_mass", &qhs::peak_mass, py::arg("dist"), py::arg("r"), py::arg("Q"));
  m.def("multiplicative_order", &qhs::multiplicative_order);

  m.def(
      "sweep_transversals",
      [](std::uint64_t n, std::uint64_t a, std::uint64_t q, std::int64_t bound, std::size_t count,
         std::uint64_t first_seed) {
        std::vector<std::tuple<std::uint64_t, double, double>> out;
        for (const auto& r : qhs::sweep_transversals(qhs::make_periodic_instance(n, a, q), bound, count, first_seed))
          out.emplace_back(r.seed, r.peak_mass_shor, r.peak_mass_offset);
        return out;
      },
      py::arg("N"), py::arg("a"), py::arg("Q"), py::arg("bound"), py::arg("count") = 100, py::arg("first_seed") = 0);

  m.def(
      "simon_solve",
      [](std::size_t bits, const std::vector<qhs::Elem>& samples) {
        const auto r = qhs::simon_solve({qhs::FiniteGroup::parse("Z2^" + std::to_string(bits)), samples});
        return r.candidate.elements;
      },
      py::arg("n"), py::arg("samples"));

  m.def(
      "character_sieve",
      [](const qhs::FiniteGroup& g, const std::vector<qhs::Elem>& samples) {
        return qhs::character_sieve({g, samples}).candidate.elements;
      },
      py::arg("group"), py::arg("samples"));

  m.def("continued_fraction_period", &qhs::continued_fraction_period, py::arg("y"), py::arg("Q"), py::arg("N"));

  m.def(
      "period_from_samples",
      [](const std::vector<std::uint64_t>& samples, std::uint64_t q, std::uint64_t n, std::uint64_t a) {
        const auto r = qhs::period_from_samples(samples, q, n, a);
        return py::make_tuple(r.candidate, r.confirmed);
      },
      py::arg("samples"), py::arg("Q"), py::arg("N"), py::arg("a"));

  m.def(
      "run_experiment_json",
      [](const std::string& config) { return qhs::run_experiment(qhs::parse_config(config)).files.at("report.json"); },
      "Run an experiment config (JSON text) and return the report JSON text.");
}
