// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include "uncert/analytics.hpp"
#include "uncert/quadrature.hpp"
#include "uncert/growth.hpp"
#include "uncert/matrix_io.hpp"
#include "uncert/scenario.hpp"
#include "uncert/speccore.hpp"
#include "uncert/structures.hpp"
#include "uncert/uncertainty.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace uncert;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path out_root() {
    static fs::path root = [] {
        fs::path dir = fs::temp_directory_path() / "uncert_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }();
    return root;
}

scenario::ScenarioConfig lattice_config(const std::string& out) {
    scenario::ScenarioConfig cfg;
    cfg.kind = scenario::ScenarioKind::lattice;
    cfg.dims = 1;
    cfg.side = 64;
    cfg.gamma = 0.4;
    cfg.delta = 2.0;
    cfg.output_dir = out;
    return cfg;
}

scenario::ScenarioConfig tree_config(const std::string& out) {
    scenario::ScenarioConfig cfg;
    cfg.kind = scenario::ScenarioKind::tree;
    cfg.branching = 3;
    cfg.radius = 8;
    cfg.gamma = 1.4;
    cfg.delta = 2.0;
    cfg.output_dir = out;
    return cfg;
}

scenario::ScenarioConfig cycle_config(const std::string& out) {
    scenario::ScenarioConfig cfg;
    cfg.kind = scenario::ScenarioKind::cycle_compact;
    cfg.dims = 1;
    cfg.side = 16;
    cfg.gamma = 0.4;
    cfg.delta = 0.5;
    cfg.output_dir = out;
    return cfg;
}

verify::OperatorPair micro_pair() {
    auto s = graphs::build_cycle_torus(1, 4);
    auto l = spectral::eigendecompose(graphs::adjacency_laplacian(s));
    auto t = spectral::eigendecompose(
        graphs::distance_operator(s, graphs::DistanceTransform::identity()));
    return verify::OperatorPair::make(l, t, 0.0,
                                      verify::Restriction::complement_of_kernel_T);
}

// 1. Adjoint-norm identity over 1000 seeded random matrices, dim <= 12.
bool criterion_adjnorm(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    verify::GaussianStream gs(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 11;
        Eigen::MatrixXd p(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p(i, j) = gs.next();
        const double lhs = spectral::norm_1_to_2(p);
        const double rhs = spectral::norm_1_to_inf(p.transpose() * p).value;
        worst = std::max(worst, std::abs(lhs * lhs - rhs) / std::max(rhs, 1e-300));
    }
    const double elapsed = seconds_since(start);
    note = "max relative deviation " + io::fmt15(worst) + ", " + io::fmt15(elapsed) + " s";
    return worst < 1e-10 && elapsed < 5.0;
}

// 2. Admissibility oracle for pure powers plus the divergent critical case.
bool criterion_admissibility(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    struct Case {
        double d, alpha;
    };
    double worst = 0.0;
    for (const auto& c : {Case{2.0, 1.0}, Case{3.0, 0.5}, Case{1.0, 0.9}}) {
        const auto cert = growth::check_admissibility(growth::GrowthFunction::power(c.d),
                                                      c.alpha, 1e-2, 1e2);
        if (cert.verdict != growth::AdmissibilityVerdict::holds) {
            note = "certificate does not hold for d=" + io::fmt15(c.d);
            return false;
        }
        const double expected = 1.0 / (c.d - c.alpha);
        worst = std::max(worst, std::abs(cert.constant - expected) / expected);
    }
    const auto critical = growth::check_admissibility(growth::GrowthFunction::power(1.0), 1.0,
                                                      1e-2, 1e2);
    const bool divergent =
        critical.verdict == growth::AdmissibilityVerdict::divergent_at_zero;
    const double elapsed = seconds_since(start);
    note = "max relative deviation " + io::fmt15(worst) +
           ", critical case divergent_at_zero=" + (divergent ? "yes" : "no") + ", " +
           io::fmt15(elapsed) + " s";
    return worst < 1e-6 && divergent && elapsed < 10.0;
}

// 3. Lattice symbol formula: closed form vs grid, cycle N=512 vs measure,
//    small-r exponent.
bool criterion_lattice_symbol(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    double worst_grid = 0.0;
    for (double r = 0.05; r < 4.0; r += 0.1973) {
        const auto grid = oracles::lattice_projector_measure_grid(1, r, 1 << 16);
        worst_grid =
            std::max(worst_grid, std::abs(grid.value - oracles::lattice_projector_measure(1, r)));
    }

    auto cycle = graphs::build_cycle_torus(1, 512, 1 << 20);
    auto dec = spectral::eigendecompose(graphs::adjacency_laplacian(cycle));
    auto r_grid = oracles::eigenvalue_gap_midpoints(dec.eigenvalues, 0.1, 3.9, 32);
    double worst_cycle = 0.0;
    for (double r : r_grid) {
        const double proj =
            spectral::norm_1_to_inf(spectral::spectral_projector(dec, r)).value;
        const double ref = oracles::lattice_projector_measure(1, r);
        worst_cycle = std::max(worst_cycle, std::abs(proj - ref) / ref);
    }

    std::vector<std::pair<double, double>> samples;
    for (int k = 0; k < 16; ++k) {
        const double r = 1e-3 * std::pow(100.0, k / 15.0);
        samples.emplace_back(r, oracles::lattice_projector_measure(1, r));
    }
    const auto fit = oracles::fit_exponent(samples, 0.5);

    const double elapsed = seconds_since(start);
    note = "closed-vs-grid " + io::fmt15(worst_grid) + ", cycle deviation " +
           io::fmt15(worst_cycle) + ", small-r exponent " + io::fmt15(fit.fitted_exponent) +
           ", " + io::fmt15(elapsed) + " s";
    return worst_grid < 1e-4 && worst_cycle < 0.02 &&
           std::abs(fit.fitted_exponent - 0.5) < 0.05 && elapsed < 60.0;
}

// 4. Local inequality on the lattice scenario and the 4-cycle micro-scenario.
bool criterion_local(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    auto lattice = scenario::run_scenario(lattice_config((out_root() / "lat4").string()));
    bool sharp_ok = true;
    const double gd = lattice.gamma_theorem * lattice.delta_theorem;
    for (const auto& row : lattice.local.rows)
        sharp_ok = sharp_ok && row.sharp_constant * std::pow(row.t, gd) <=
                                   lattice.local.paper_constant * (1.0 + 1e-9);

    auto pair = micro_pair();
    auto t_grid = verify::spectral_t_grid(pair.L, 40);
    auto phi = growth::GrowthFunction::power(2.0, 2.0);
    auto bundle = verify::verify_hypotheses(pair, phi, 1.0, 1.0, 0.5,
                                            {t_grid.front(), t_grid.back()}, t_grid,
                                            {0.25, 0.5, 0.75, 0.99});
    auto vectors = verify::make_test_vectors(pair, 100, 42);
    auto micro = verify::verify_local(pair, bundle, t_grid, vectors);
    bool micro_sharp_ok = true;
    for (const auto& row : micro.rows)
        micro_sharp_ok = micro_sharp_ok &&
                         row.sharp_constant * std::pow(row.t, 0.5) <=
                             micro.paper_constant * (1.0 + 1e-9);

    const double elapsed = seconds_since(start);
    note = "lattice all_pass=" + std::string(lattice.local.all_pass ? "yes" : "no") +
           " sharp<=C=" + (sharp_ok ? "yes" : "no") +
           ", micro all_pass=" + (micro.all_pass ? "yes" : "no") +
           " sharp<=C=" + (micro_sharp_ok ? "yes" : "no") + ", " + io::fmt15(elapsed) + " s";
    return lattice.local.all_pass && sharp_ok && micro.all_pass && micro_sharp_ok &&
           elapsed < 60.0;
}

// 5. Global inequality on the same scenarios plus the exact constant cases.
bool criterion_global(std::string& note) {
    auto lattice = scenario::run_scenario(lattice_config((out_root() / "lat5").string()));

    auto pair = micro_pair();
    auto t_grid = verify::spectral_t_grid(pair.L, 40);
    auto phi = growth::GrowthFunction::power(2.0, 2.0);
    auto bundle = verify::verify_hypotheses(pair, phi, 1.0, 1.0, 0.5,
                                            {t_grid.front(), t_grid.back()}, t_grid,
                                            {0.25, 0.5, 0.75, 0.99});
    auto vectors = verify::make_test_vectors(pair, 100, 42);
    auto local = verify::verify_local(pair, bundle, t_grid, vectors);
    auto micro =
        verify::verify_global(pair, 1.0, 1.0, 0.5, 1.0, local.paper_constant, vectors);

    const double c_probe = 1.7;
    auto trivial = verify::global_constants(0.8, 0.8, 0.8, 1.0, c_probe);
    const bool exact_d = trivial.D_alpha_beta == 1.0 + c_probe;
    auto doubled = verify::global_constants(1.2, 0.7, 0.6, 1.0, c_probe);
    const bool exact_k = doubled.K_alpha_gamma == 1.0;

    note = "lattice global all_pass=" + std::string(lattice.global.all_pass ? "yes" : "no") +
           ", micro global all_pass=" + (micro.all_pass ? "yes" : "no") +
           ", D(alpha=gamma=beta)=1+C " + (exact_d ? "exact" : "off") + ", K(2g,g)=1 " +
           (exact_k ? "exact" : "off");
    return lattice.global.all_pass && micro.all_pass && exact_d && exact_k;
}

// 6. Semigroup sandwich across every built-in structure.
bool criterion_semigroup(std::string& note) {
    const std::vector<graphs::StructureModel> roster = {
        graphs::build_cycle_torus(1, 4),  graphs::build_cycle_torus(1, 16),
        graphs::build_cycle_torus(2, 3),  graphs::build_path(8),
        graphs::build_tree_ball(3, 1),    graphs::build_tree_ball(3, 3),
        graphs::build_lattice_box(2, 4)};
    long long checked = 0, violations = 0;
    for (const auto& s : roster) {
        auto dec = spectral::eigendecompose(graphs::adjacency_laplacian(s));
        auto grid = verify::spectral_t_grid(dec, 8);
        verify::GaussianStream gs(7);
        Eigen::MatrixXd randoms(s.vertex_count, 100);
        for (int k = 0; k < 100; ++k) randoms.col(k) = gs.vector(s.vertex_count);
        for (double t : grid) {
            for (int j = 0; j < dec.dim(); ++j) {
                const auto res =
                    verify::semigroup_sandwich(dec, 1.0 / t, dec.eigenvectors.col(j), 40);
                ++checked;
                if (!res.lower_ok || !res.upper_ok) ++violations;
            }
            for (int k = 0; k < 100; ++k) {
                const auto res = verify::semigroup_sandwich(dec, 1.0 / t, randoms.col(k), 40);
                ++checked;
                if (!res.lower_ok || !res.upper_ok) ++violations;
            }
        }
    }
    note = std::to_string(checked) + " sandwich checks, " + std::to_string(violations) +
           " violations";
    return violations == 0;
}

// 7. Tree scenario: gap value, ball convergence, transformed volume, full run.
bool criterion_tree(std::string& note) {
    const auto start = std::chrono::steady_clock::now();
    const double gap = oracles::tree_gap(3);
    const bool gap_ok = std::abs(gap - (3.0 - 2.0 * std::sqrt(2.0))) < 1e-12;

    auto conv = oracles::tree_truncation_convergence(3, {1, 2, 3, 4, 5, 6, 7, 8});
    const double limit = 2.0 * std::sqrt(2.0);
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < conv.size(); ++i)
        monotone = monotone && conv[i].lambda_max <= conv[i + 1].lambda_max + 1e-12;
    const bool close = std::abs(conv.back().lambda_max - limit) / limit < 0.05;

    auto volume = oracles::transformed_volume_check(3, 20);
    const bool exponent_ok = std::abs(volume.fit.fitted_exponent - 3.0) < 0.1;

    auto run = scenario::run_scenario(tree_config((out_root() / "tree7").string()));

    const double elapsed = seconds_since(start);
    note = "gap " + io::fmt15(gap) + ", lambda_max(R=8) " +
           io::fmt15(conv.back().lambda_max) + " (" +
           io::fmt15(100.0 * (limit - conv.back().lambda_max) / limit) +
           "% below 2 sqrt 2), volume exponent " + io::fmt15(volume.fit.fitted_exponent) +
           ", run all_pass=" + (run.all_pass ? "yes" : "no") + " K=" +
           io::fmt15(run.bundle.K) + ", " + io::fmt15(elapsed) + " s";
    return gap_ok && monotone && close && exponent_ok && run.all_pass && elapsed < 120.0;
}

// 8. Stieltjes integration by parts and the tail estimate on 200 random
//    seeded decompositions.
bool criterion_stieltjes_tail(std::string& note) {
    verify::GaussianStream gs(555);
    double worst_identity = 0.0;
    bool tail_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + trial % 9;
        Eigen::MatrixXd b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = gs.next();
        Eigen::MatrixXd a = b.transpose() * b + 0.05 * Eigen::MatrixXd::Identity(n, n);
        auto dec = spectral::eigendecompose(spectral::SymmetricOperator::from_matrix(a));
        Eigen::VectorXd g = gs.vector(n);
        Eigen::VectorXd coeff = dec.eigenvectors.transpose() * g;
        const double gamma = 0.6;
        const double r = dec.eigenvalues[n - 1] * 0.77 + 1e-3;

        double lhs = 0.0, mass = 0.0;
        for (int i = 0; i < n; ++i) {
            if (dec.eigenvalues[i] < r) {
                lhs += std::pow(dec.eigenvalues[i], -2.0 * gamma) * coeff[i] * coeff[i];
                mass += coeff[i] * coeff[i];
            }
        }
        auto nu_below = [&](double s) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                if (dec.eigenvalues[i] < s) acc += coeff[i] * coeff[i];
            return acc;
        };
        std::vector<double> knots = {0.0};
        for (int i = 0; i < n; ++i)
            if (dec.eigenvalues[i] < r) knots.push_back(dec.eigenvalues[i]);
        knots.push_back(r);
        double integral = 0.0;
        for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
            if (knots[k + 1] <= knots[k]) continue;
            integral +=
                quad::adaptive_simpson(
                    [&](double s) {
                        return s <= 0.0 ? 0.0 : std::pow(s, -2.0 * gamma - 1.0) * nu_below(s);
                    },
                    knots[k], knots[k + 1], 1e-12)
                    .value;
        }
        const double rhs = std::pow(r, -2.0 * gamma) * mass + 2.0 * gamma * integral;
        worst_identity = std::max(
            worst_identity, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));

        auto inv = spectral::pseudo_power(dec, -gamma).op;
        for (double rr : {0.3, 1.0, 3.0}) {
            Eigen::MatrixXd tail = (Eigen::MatrixXd::Identity(n, n) -
                                    spectral::spectral_projector(dec, rr).entries) *
                                   inv.entries;
            tail_ok = tail_ok &&
                      spectral::operator_norm_2(tail) <= std::pow(rr, -gamma) * (1.0 + 1e-9);
        }
    }
    note = "identity max relative deviation " + io::fmt15(worst_identity) +
           ", tail bound " + (tail_ok ? "holds" : "violated");
    return worst_identity < 1e-6 && tail_ok;
}

// 9. Byte-identical artifacts across repeated scenario runs.
bool criterion_determinism(std::string& note) {
    const std::vector<std::pair<std::string, std::function<scenario::ScenarioConfig(std::string)>>>
        runs = {{"lattice", [](std::string o) { return lattice_config(o); }},
                {"tree", [](std::string o) { return tree_config(o); }},
                {"cycle_compact", [](std::string o) { return cycle_config(o); }}};
    int compared = 0;
    for (const auto& [name, make_cfg] : runs) {
        const auto dir1 = out_root() / (name + "_run1");
        const auto dir2 = out_root() / (name + "_run2");
        scenario::run_scenario(make_cfg(dir1.string()));
        scenario::run_scenario(make_cfg(dir2.string()));
        for (const auto& entry : fs::directory_iterator(dir1)) {
            const auto other = dir2 / entry.path().filename();
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
                note = "mismatch in " + name + "/" + entry.path().filename().string();
                return false;
            }
            ++compared;
        }
    }
    note = std::to_string(compared) + " artifact files byte-identical across reruns";
    return true;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria = {
        {"adjoint-norm identity (1000 random matrices, dim <= 12)", criterion_adjnorm},
        {"admissibility oracle (powers and the critical case)", criterion_admissibility},
        {"lattice symbol formula (closed form, N=512 cycle, small-r exponent)",
         criterion_lattice_symbol},
        {"local inequality (lattice N=64 and 4-cycle micro-scenario)", criterion_local},
        {"global inequality (same scenarios, alpha = beta = 1)", criterion_global},
        {"semigroup sandwich (all built-ins, J = 40)", criterion_semigroup},
        {"tree scenario (gap, convergence, volume exponent, full run)", criterion_tree},
        {"Stieltjes identity and tail estimate (200 random decompositions)",
         criterion_stieltjes_tail},
        {"determinism (byte-identical artifacts)", criterion_determinism}};

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string note;
        bool ok = false;
        try {
            ok = criteria[i].second(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": "
                  << criteria[i].first << " - " << note << "\n";
        if (!ok) ++failures;
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    else std::cout << "all 9 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
