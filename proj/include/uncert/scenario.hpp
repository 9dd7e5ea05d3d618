// scenario.hpp - scenario runner: builds a structure, assembles the
// operator pair, certifies the hypotheses, runs the local/global/semigroup
// verifications and writes CSV/JSON artifacts.
//
// Built-in scenarios:
//   lattice       cycle torus, L = Delta_A, T = diag(rho), restricted to
//                 {f : f(root) = 0}; the theorem runs on the swapped pair
//                 over the dual couple with delta = 2 and gamma/2.
//   tree          tree ball with the degree-n Dirichlet Laplacian shifted by
//                 b = n - 2 sqrt(n-1), T = diag(e^{kappa rho / 3}); swapped
//                 pair, delta = 2, gamma/2.
//   cycle_compact cycle with the restriction to mean-zero functions
//                 (the discrete stand-in for the compact case); unswapped,
//                 delta = 1/2.
//   custom        structure from a JSON document, everything explicit.

#pragma once

#include "uncert/analytics.hpp"
#include "uncert/growth.hpp"
#include "uncert/matrix_io.hpp"
#include "uncert/structures.hpp"
#include "uncert/uncertainty.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uncert {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace scenario {

enum class ScenarioKind { lattice, tree, cycle_compact, custom };

std::string scenario_name(ScenarioKind k);

struct ScenarioConfig {
    int schema_version = 1;
    ScenarioKind kind = ScenarioKind::lattice;

    // structure parameters
    int dims = 1;
    int side = 64;        // lattice default; cycle_compact defaults to 16
    int branching = 3;
    int radius = 8;
    std::string structure_file;  // custom scenario

    // transform (custom scenario; built-ins fix their own)
    std::string transform_kind = "identity";
    std::vector<double> transform_params;

    // exponents; negative = scenario default
    double gamma = -1.0;
    double delta = -1.0;
    double alpha = 1.0;
    double beta = 1.0;

    // Phi; empty kind = scenario default
    std::string phi_kind;
    std::vector<double> phi_params;
    std::vector<std::pair<double, double>> phi_table;
    double phi_table_d0 = 1.0;

    double eta = 1.0;
    double interval_lo = 0.0;  // 0 = spectral default
    double interval_hi = 0.0;

    int t_points = 40;
    int r_points = 24;
    double r_floor = -1.0;  // negative = scenario default
    int random_vectors = 100;
    int sandwich_truncation = 40;
    int sandwich_t_count = 5;
    std::uint64_t seed = 42;
    std::string output_dir = "out";
    int size_cap = graphs::kDefaultSizeCap;

    // custom scenario knobs
    std::string restriction = "complement_of_kernel_T";
    bool swap_pair = false;
    std::string couple = "l2_l1";
};

ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_file(const std::string& path);

struct ScenarioResult {
    bool hypotheses_ok = false;
    bool all_pass = false;
    int exit_code = 1;
    double gamma_theorem = 0.0;
    double delta_theorem = 0.0;
    verify::HypothesisBundle bundle;
    verify::InequalityReport local;
    verify::InequalityReport global;
    double global_D = 0.0;
    int sandwich_checked = 0;
    int sandwich_violations = 0;
    std::vector<std::string> artifact_files;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

// Plot-data CSVs: (t, max ratio), (t, sharp vs paper constant),
// (r, sublevel volume vs Phi). Returns the written file paths.
std::vector<std::string> emit_plotdata(const verify::InequalityReport& local,
                                       const std::vector<double>& r_grid,
                                       const std::vector<long long>& volumes,
                                       const std::vector<double>& phi_values,
                                       const std::string& output_dir);

}  // namespace scenario
}  // namespace uncert
