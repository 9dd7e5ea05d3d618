// _uncert - python bindings for the main operations.

#include "uncert/analytics.hpp"
#include "uncert/growth.hpp"
#include "uncert/scenario.hpp"
#include "uncert/speccore.hpp"
#include "uncert/structures.hpp"
#include "uncert/uncertainty.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace uncert;

PYBIND11_MODULE(_uncert, m) {
    m.doc() = "uncertainty-inequality verifier for operator pairs on graphs";

    py::class_<spectral::SpectralDecomposition>(m, "SpectralDecomposition")
        .def_readonly("eigenvalues", &spectral::SpectralDecomposition::eigenvalues)
        .def_readonly("eigenvectors", &spectral::SpectralDecomposition::eigenvectors)
        .def_readonly("source_norm", &spectral::SpectralDecomposition::source_norm)
        .def("kernel_dim", &spectral::SpectralDecomposition::kernel_dim,
             py::arg("kernel_tol") = spectral::kDefaultKernelTol);

    m.def(
        "eigendecompose",
        [](const Eigen::MatrixXd& a) {
            return spectral::eigendecompose(spectral::SymmetricOperator::from_matrix(a));
        },
        py::arg("matrix"));
    m.def(
        "spectral_projector",
        [](const spectral::SpectralDecomposition& dec, double lam, double tie_tol) {
            return spectral::spectral_projector(dec, lam, tie_tol).entries;
        },
        py::arg("decomposition"), py::arg("lam"), py::arg("tie_tol") = spectral::kDefaultTieTol);
    m.def(
        "apply_function",
        [](const spectral::SpectralDecomposition& dec, const std::function<double(double)>& g) {
            return spectral::apply_function(dec, g).entries;
        },
        py::arg("decomposition"), py::arg("g"));
    m.def(
        "pseudo_power",
        [](const spectral::SpectralDecomposition& dec, double gamma, double kernel_tol) {
            auto res = spectral::pseudo_power(dec, gamma, kernel_tol);
            return py::make_tuple(res.op.entries, res.kernel_dim);
        },
        py::arg("decomposition"), py::arg("gamma"),
        py::arg("kernel_tol") = spectral::kDefaultKernelTol);
    m.def(
        "norm_1_to_inf",
        [](const Eigen::MatrixXd& a) { return spectral::norm_1_to_inf(a).value; },
        py::arg("matrix"));
    m.def(
        "norm_inf_to_1",
        [](const Eigen::MatrixXd& a, int cutoff) {
            auto v = spectral::norm_inf_to_1(a, cutoff);
            return py::make_tuple(v.value, v.exact);
        },
        py::arg("matrix"), py::arg("exact_cutoff") = spectral::kDefaultExactCutoff);
    m.def(
        "norm_1_to_2", [](const Eigen::MatrixXd& a) { return spectral::norm_1_to_2(a); },
        py::arg("matrix"));

    py::class_<graphs::StructureModel>(m, "StructureModel")
        .def_readonly("vertex_count", &graphs::StructureModel::vertex_count)
        .def_readonly("root_index", &graphs::StructureModel::root_index)
        .def_property_readonly(
            "adjacency", [](const graphs::StructureModel& s) { return s.adjacency; })
        .def_property_readonly(
            "distance", [](const graphs::StructureModel& s) { return s.distance; })
        .def_property_readonly("degree",
                               [](const graphs::StructureModel& s) { return s.degree; });

    m.def("build_cycle_torus", &graphs::build_cycle_torus, py::arg("dims"), py::arg("side"),
          py::arg("size_cap") = graphs::kDefaultSizeCap);
    m.def("build_tree_ball", &graphs::build_tree_ball, py::arg("branching_degree"),
          py::arg("radius"), py::arg("size_cap") = graphs::kDefaultSizeCap);
    m.def("build_path", &graphs::build_path, py::arg("count"),
          py::arg("size_cap") = graphs::kDefaultSizeCap);
    m.def("build_lattice_box", &graphs::build_lattice_box, py::arg("dims"), py::arg("side"),
          py::arg("size_cap") = graphs::kDefaultSizeCap);
    m.def(
        "adjacency_laplacian",
        [](const graphs::StructureModel& s) { return graphs::adjacency_laplacian(s).entries; },
        py::arg("structure"));
    m.def(
        "transition_laplacian",
        [](const graphs::StructureModel& s) { return graphs::transition_laplacian(s).entries; },
        py::arg("structure"));
    m.def(
        "dirichlet_laplacian",
        [](const graphs::StructureModel& s, int degree) {
            return graphs::dirichlet_laplacian(s, degree).entries;
        },
        py::arg("structure"), py::arg("degree"));
    m.def("ball_volume", &graphs::ball_volume, py::arg("structure"), py::arg("r"));

    py::class_<growth::GrowthFunction>(m, "GrowthFunction")
        .def_readonly("local_exponent_at_zero", &growth::GrowthFunction::local_exponent_at_zero)
        .def_readonly("description", &growth::GrowthFunction::description)
        .def("__call__", [](const growth::GrowthFunction& g, double s) { return g(s); })
        .def_static("power", &growth::GrowthFunction::power, py::arg("d"),
                    py::arg("scale") = 1.0)
        .def_static("glued_exp", &growth::GrowthFunction::glued_exp, py::arg("delta"),
                    py::arg("kappa"), py::arg("scale") = 1.0)
        .def_static("log_density", &growth::GrowthFunction::log_density, py::arg("delta"),
                    py::arg("scale") = 1.0);

    py::class_<growth::AdmissibilityCertificate>(m, "AdmissibilityCertificate")
        .def_readonly("alpha", &growth::AdmissibilityCertificate::alpha)
        .def_readonly("constant", &growth::AdmissibilityCertificate::constant)
        .def_readonly("grid_points", &growth::AdmissibilityCertificate::grid_points)
        .def_readonly("quadrature_error_estimate",
                      &growth::AdmissibilityCertificate::quadrature_error_estimate)
        .def_property_readonly("verdict", [](const growth::AdmissibilityCertificate& c) {
            return growth::verdict_name(c.verdict);
        });

    m.def(
        "check_admissibility",
        [](const growth::GrowthFunction& phi, double alpha, double lo, double hi, int ppd) {
            return growth::check_admissibility(phi, alpha, lo, hi, ppd);
        },
        py::arg("phi"), py::arg("alpha"), py::arg("interval_lo"), py::arg("interval_hi"),
        py::arg("points_per_decade") = growth::kDefaultPointsPerDecade);

    m.def("local_constant", &verify::local_constant, py::arg("gamma"), py::arg("eta"),
          py::arg("K"), py::arg("M"));
    m.def(
        "global_constants",
        [](double alpha, double beta, double gamma, double delta, double C) {
            auto g = verify::global_constants(alpha, beta, gamma, delta, C);
            return py::make_tuple(g.D_alpha_beta, g.K_alpha_gamma, g.D_gamma_beta);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("C"));
    m.def("exp_constant", &verify::exp_constant, py::arg("C"), py::arg("gamma"),
          py::arg("delta"), py::arg("tol") = 1e-12);
    m.def(
        "semigroup_sandwich",
        [](const spectral::SpectralDecomposition& L, double t, const Eigen::VectorXd& f,
           int truncation) {
            auto r = verify::semigroup_sandwich(L, t, f, truncation);
            return py::make_tuple(r.lower_ok, r.upper_ok, r.tail_bound);
        },
        py::arg("L"), py::arg("t"), py::arg("f"), py::arg("truncation") = 40);

    m.def("lattice_projector_measure", &oracles::lattice_projector_measure, py::arg("dims"),
          py::arg("r"), py::arg("resolution") = oracles::kDefaultSymbolResolution);
    m.def("tree_gap", &oracles::tree_gap, py::arg("branching_degree"));
    m.def(
        "fit_exponent",
        [](const std::vector<std::pair<double, double>>& samples, double claimed) {
            auto fit = oracles::fit_exponent(samples, claimed);
            return py::make_tuple(fit.fitted_exponent, fit.residual);
        },
        py::arg("samples"), py::arg("claimed"));

    m.def(
        "run_scenario",
        [](const std::string& config_path) {
            auto cfg = scenario::parse_config_file(config_path);
            auto result = scenario::run_scenario(cfg);
            return py::make_tuple(result.exit_code, result.all_pass);
        },
        py::arg("config_path"));
}
