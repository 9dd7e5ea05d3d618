#include "uncert/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

namespace uncert::scenario {

namespace {

using io::fmt15;
using nlohmann::json;
using nlohmann::ordered_json;

ScenarioKind kind_from_string(const std::string& s) {
    if (s == "lattice") return ScenarioKind::lattice;
    if (s == "tree") return ScenarioKind::tree;
    if (s == "cycle_compact") return ScenarioKind::cycle_compact;
    if (s == "custom") return ScenarioKind::custom;
    throw config_error("unknown scenario: " + s);
}

growth::GrowthFunction phi_from_config(const ScenarioConfig& cfg) {
    const auto& p = cfg.phi_params;
    auto need = [&](std::size_t count) {
        if (p.size() < count)
            throw config_error("phi kind '" + cfg.phi_kind + "' needs " +
                               std::to_string(count) + " params");
    };
    if (cfg.phi_kind == "power") {
        need(1);
        return growth::GrowthFunction::power(p[0], p.size() > 1 ? p[1] : 1.0);
    }
    if (cfg.phi_kind == "glued_exp") {
        need(2);
        return growth::GrowthFunction::glued_exp(p[0], p[1], p.size() > 2 ? p[2] : 1.0);
    }
    if (cfg.phi_kind == "log_density") {
        need(1);
        return growth::GrowthFunction::log_density(p[0], p.size() > 1 ? p[1] : 1.0);
    }
    if (cfg.phi_kind == "table")
        return growth::GrowthFunction::table(cfg.phi_table, cfg.phi_table_d0);
    throw config_error("unknown phi kind: " + cfg.phi_kind);
}

graphs::DistanceTransform transform_from_config(const ScenarioConfig& cfg) {
    const auto& p = cfg.transform_params;
    if (cfg.transform_kind == "identity") return graphs::DistanceTransform::identity();
    if (cfg.transform_kind == "power_shift") {
        if (p.empty()) throw config_error("power_shift transform needs [sigma]");
        return graphs::DistanceTransform::power_shift(p[0]);
    }
    if (cfg.transform_kind == "exp_scaled") {
        if (p.size() < 2) throw config_error("exp_scaled transform needs [c, s]");
        return graphs::DistanceTransform::exp_scaled(p[0], p[1]);
    }
    throw config_error("unknown transform kind: " + cfg.transform_kind);
}

verify::Restriction restriction_from_string(const std::string& s) {
    if (s == "full_space") return verify::Restriction::full_space;
    if (s == "complement_of_kernel_T") return verify::Restriction::complement_of_kernel_T;
    if (s == "complement_of_kernel_L") return verify::Restriction::complement_of_kernel_L;
    throw config_error("unknown restriction: " + s);
}

// Everything the runner needs once the scenario is assembled.
struct Assembled {
    graphs::StructureModel structure;
    graphs::DistanceTransform transform;
    verify::OperatorPair frame;  // theorem orientation
    verify::CoupleOrientation couple = verify::CoupleOrientation::l2_l1;
    bool swapped_form = false;
    double gamma_theorem = 0.0;
    double delta_theorem = 0.0;
    growth::GrowthFunction phi;
    double r_floor = 0.0;
    double gamma_config = 0.0;
};

Assembled assemble(const ScenarioConfig& cfg) {
    Assembled a;
    switch (cfg.kind) {
        case ScenarioKind::lattice: {
            a.structure = graphs::build_cycle_torus(cfg.dims, cfg.side, cfg.size_cap);
            a.transform = graphs::DistanceTransform::identity();
            const auto l_dec =
                spectral::eigendecompose(graphs::adjacency_laplacian(a.structure));
            const auto t_dec =
                spectral::eigendecompose(graphs::distance_operator(a.structure, a.transform));
            const auto pair =
                verify::OperatorPair::make(l_dec, t_dec, 0.0,
                                           verify::Restriction::complement_of_kernel_T);
            a.frame = verify::swapped(pair);
            a.couple = verify::CoupleOrientation::l2_linf0;
            a.swapped_form = true;
            a.gamma_config = cfg.gamma > 0.0 ? cfg.gamma : 0.4;
            a.delta_theorem = cfg.delta > 0.0 ? cfg.delta : 2.0;
            a.gamma_theorem = a.gamma_config / 2.0;
            const double scale = 0.55;
            a.phi = cfg.phi_kind.empty()
                        ? growth::GrowthFunction::power(cfg.dims / 2.0, scale)
                        : phi_from_config(cfg);
            if (cfg.r_floor >= 0.0) {
                a.r_floor = cfg.r_floor;
            } else {
                // Restricted projector norms floor at ~1/N^dims near r = 0 on a
                // finite torus; certify ip0 above the floor with a 1.5x margin.
                const double vertices = std::pow(static_cast<double>(cfg.side), cfg.dims);
                a.r_floor =
                    std::pow(1.5 / (scale * vertices), 2.0 / cfg.dims);
            }
            break;
        }
        case ScenarioKind::tree: {
            a.structure = graphs::build_tree_ball(cfg.branching, cfg.radius, cfg.size_cap);
            const double kappa = std::log(static_cast<double>(cfg.branching) - 1.0);
            a.transform = graphs::DistanceTransform::exp_scaled(kappa / 3.0, 0.0);
            const double b = oracles::tree_gap(cfg.branching);
            const auto l_dec = spectral::eigendecompose(
                graphs::dirichlet_laplacian(a.structure, cfg.branching));
            const auto t_dec =
                spectral::eigendecompose(graphs::distance_operator(a.structure, a.transform));
            const auto pair = verify::OperatorPair::make(l_dec, t_dec, b,
                                                         verify::Restriction::full_space);
            a.frame = verify::swapped(pair);
            a.couple = verify::CoupleOrientation::l2_linf0;
            a.swapped_form = true;
            a.gamma_config = cfg.gamma > 0.0 ? cfg.gamma : 1.4;
            a.delta_theorem = cfg.delta > 0.0 ? cfg.delta : 2.0;
            a.gamma_theorem = a.gamma_config / 2.0;
            a.phi = cfg.phi_kind.empty() ? growth::GrowthFunction::power(1.5, 6.0)
                                         : phi_from_config(cfg);
            a.r_floor = cfg.r_floor >= 0.0 ? cfg.r_floor : 0.0;
            break;
        }
        case ScenarioKind::cycle_compact: {
            const int side = cfg.side == 64 ? 16 : cfg.side;  // smaller default
            a.structure = graphs::build_cycle_torus(cfg.dims, side, cfg.size_cap);
            a.transform = graphs::DistanceTransform::identity();
            const auto l_dec =
                spectral::eigendecompose(graphs::adjacency_laplacian(a.structure));
            const auto t_dec =
                spectral::eigendecompose(graphs::distance_operator(a.structure, a.transform));
            a.frame = verify::OperatorPair::make(l_dec, t_dec, 0.0,
                                                 verify::Restriction::complement_of_kernel_L);
            a.couple = verify::CoupleOrientation::l2_l1;
            a.gamma_config = cfg.gamma > 0.0 ? cfg.gamma : 0.4;
            a.delta_theorem = cfg.delta > 0.0 ? cfg.delta : 0.5;
            a.gamma_theorem = a.gamma_config;
            a.phi = cfg.phi_kind.empty()
                        ? growth::GrowthFunction::power(static_cast<double>(cfg.dims), 9.0)
                        : phi_from_config(cfg);
            a.r_floor = cfg.r_floor >= 0.0 ? cfg.r_floor : 0.7;
            break;
        }
        case ScenarioKind::custom: {
            if (cfg.structure_file.empty())
                throw config_error("custom scenario requires structure_file");
            if (cfg.phi_kind.empty()) throw config_error("custom scenario requires phi");
            if (!(cfg.gamma > 0.0) || !(cfg.delta > 0.0))
                throw config_error("custom scenario requires gamma and delta");
            json doc;
            try {
                doc = json::parse(io::read_text_file(cfg.structure_file));
            } catch (const json::exception& e) {
                throw config_error("structure file parse error: " + std::string(e.what()));
            }
            a.structure = io::structure_from_json(doc);
            a.transform = transform_from_config(cfg);
            const auto l_dec =
                spectral::eigendecompose(graphs::adjacency_laplacian(a.structure));
            const auto t_dec =
                spectral::eigendecompose(graphs::distance_operator(a.structure, a.transform));
            auto pair = verify::OperatorPair::make(l_dec, t_dec, 0.0,
                                                   restriction_from_string(cfg.restriction));
            a.frame = cfg.swap_pair ? verify::swapped(pair) : pair;
            a.swapped_form = cfg.swap_pair;
            a.couple = cfg.couple == "l2_linf0" ? verify::CoupleOrientation::l2_linf0
                                                : verify::CoupleOrientation::l2_l1;
            a.gamma_config = cfg.gamma;
            a.gamma_theorem = cfg.gamma;
            a.delta_theorem = cfg.delta;
            a.phi = phi_from_config(cfg);
            a.r_floor = cfg.r_floor >= 0.0 ? cfg.r_floor : 0.0;
            break;
        }
    }
    return a;
}

std::vector<double> build_r_grid(const std::vector<double>& t_grid, double eta, double delta,
                                 double r_floor, double b_B, int fill_points) {
    std::set<double> points;
    for (double t : t_grid) {
        const double r = eta * std::pow(t, delta);
        if (r >= r_floor && r < b_B) points.insert(r);
    }
    const double lo = std::max(r_floor, b_B * 1e-6);
    const double hi = b_B * (1.0 - 1e-9);
    if (fill_points >= 2 && hi > lo) {
        for (int i = 0; i < fill_points; ++i)
            points.insert(lo * std::pow(hi / lo, static_cast<double>(i) / (fill_points - 1)));
    }
    if (points.empty()) points.insert(hi);
    return {points.begin(), points.end()};
}

std::string local_report_csv(const verify::InequalityReport& report) {
    std::ostringstream out;
    out << "t,vector_id,lhs,rhs,ratio,sharp_constant\n";
    for (const auto& row : report.rows)
        out << fmt15(row.t) << "," << row.vector_id << "," << fmt15(row.lhs) << ","
            << fmt15(row.rhs) << "," << fmt15(row.ratio) << "," << fmt15(row.sharp_constant)
            << "\n";
    return out.str();
}

std::string global_report_csv(const verify::InequalityReport& report, double alpha,
                              double beta) {
    std::ostringstream out;
    out << "alpha,beta,vector_id,lhs,rhs,ratio\n";
    for (const auto& row : report.rows)
        out << fmt15(alpha) << "," << fmt15(beta) << "," << row.vector_id << ","
            << fmt15(row.lhs) << "," << fmt15(row.rhs) << "," << fmt15(row.ratio) << "\n";
    return out.str();
}

}  // namespace

std::string scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::lattice: return "lattice";
        case ScenarioKind::tree: return "tree";
        case ScenarioKind::cycle_compact: return "cycle_compact";
        case ScenarioKind::custom: return "custom";
    }
    return "custom";
}

ScenarioConfig parse_config(const json& doc) {
    ScenarioConfig cfg;
    try {
        if (!doc.contains("schema_version"))
            throw config_error("config missing schema_version");
        cfg.schema_version = doc.at("schema_version").get<int>();
        if (cfg.schema_version != 1)
            throw config_error("unsupported schema_version " +
                               std::to_string(cfg.schema_version));
        cfg.kind = kind_from_string(doc.at("scenario").get<std::string>());

        if (doc.contains("structure")) {
            const auto& s = doc.at("structure");
            if (s.contains("dims")) cfg.dims = s.at("dims").get<int>();
            if (s.contains("side")) cfg.side = s.at("side").get<int>();
            if (s.contains("branching")) cfg.branching = s.at("branching").get<int>();
            if (s.contains("radius")) cfg.radius = s.at("radius").get<int>();
            if (s.contains("file")) cfg.structure_file = s.at("file").get<std::string>();
        }
        if (doc.contains("transform")) {
            cfg.transform_kind = doc.at("transform").at("kind").get<std::string>();
            if (doc.at("transform").contains("params"))
                cfg.transform_params =
                    doc.at("transform").at("params").get<std::vector<double>>();
        }
        if (doc.contains("exponents")) {
            const auto& e = doc.at("exponents");
            if (e.contains("gamma")) cfg.gamma = e.at("gamma").get<double>();
            if (e.contains("delta")) cfg.delta = e.at("delta").get<double>();
            if (e.contains("alpha")) cfg.alpha = e.at("alpha").get<double>();
            if (e.contains("beta")) cfg.beta = e.at("beta").get<double>();
        }
        if (!(cfg.alpha > 0.0) || !(cfg.beta > 0.0))
            throw config_error("alpha and beta must be > 0");
        if (doc.contains("phi")) {
            const auto& p = doc.at("phi");
            cfg.phi_kind = p.at("kind").get<std::string>();
            if (p.contains("params"))
                cfg.phi_params = p.at("params").get<std::vector<double>>();
            if (p.contains("points"))
                cfg.phi_table =
                    p.at("points").get<std::vector<std::pair<double, double>>>();
            if (p.contains("d0")) cfg.phi_table_d0 = p.at("d0").get<double>();
        }
        if (doc.contains("eta")) cfg.eta = doc.at("eta").get<double>();
        if (!(cfg.eta > 0.0)) throw config_error("eta must be > 0");
        if (doc.contains("interval_A")) {
            cfg.interval_lo = doc.at("interval_A").at(0).get<double>();
            cfg.interval_hi = doc.at("interval_A").at(1).get<double>();
        }
        if (doc.contains("grids")) {
            const auto& g = doc.at("grids");
            if (g.contains("t_points")) cfg.t_points = g.at("t_points").get<int>();
            if (g.contains("r_points")) cfg.r_points = g.at("r_points").get<int>();
            if (g.contains("r_floor")) cfg.r_floor = g.at("r_floor").get<double>();
        }
        if (doc.contains("random_vectors"))
            cfg.random_vectors = doc.at("random_vectors").get<int>();
        if (doc.contains("sandwich_truncation"))
            cfg.sandwich_truncation = doc.at("sandwich_truncation").get<int>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
        if (doc.contains("size_cap")) cfg.size_cap = doc.at("size_cap").get<int>();
        if (doc.contains("restriction"))
            cfg.restriction = doc.at("restriction").get<std::string>();
        if (doc.contains("swap_pair")) cfg.swap_pair = doc.at("swap_pair").get<bool>();
        if (doc.contains("couple")) cfg.couple = doc.at("couple").get<std::string>();
    } catch (const json::exception& e) {
        throw config_error("config parse error: " + std::string(e.what()));
    }
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    json doc;
    try {
        doc = json::parse(io::read_text_file(path));
    } catch (const io_error& e) {
        throw config_error(std::string("config read error: ") + e.what());
    } catch (const json::exception& e) {
        throw config_error("config parse error: " + std::string(e.what()));
    }
    return parse_config(doc);
}

std::vector<std::string> emit_plotdata(const verify::InequalityReport& local,
                                       const std::vector<double>& r_grid,
                                       const std::vector<long long>& volumes,
                                       const std::vector<double>& phi_values,
                                       const std::string& output_dir) {
    std::vector<std::string> files;
    std::map<double, double> max_ratio, sharp;
    for (const auto& row : local.rows) {
        auto& mr = max_ratio[row.t];
        mr = std::max(mr, row.ratio);
        sharp[row.t] = row.sharp_constant;
    }
    {
        std::ostringstream out;
        out << "t,max_ratio\n";
        for (const auto& [t, v] : max_ratio) out << fmt15(t) << "," << fmt15(v) << "\n";
        const std::string path = output_dir + "/plot_ratio_vs_t.csv";
        io::write_text_file(path, out.str());
        files.push_back(path);
    }
    {
        std::ostringstream out;
        out << "t,sharp_constant,paper_constant\n";
        for (const auto& [t, v] : sharp)
            out << fmt15(t) << "," << fmt15(v) << "," << fmt15(local.paper_constant) << "\n";
        const std::string path = output_dir + "/plot_constants_vs_t.csv";
        io::write_text_file(path, out.str());
        files.push_back(path);
    }
    {
        std::ostringstream out;
        out << "r,ball_volume,phi\n";
        for (std::size_t i = 0; i < r_grid.size(); ++i)
            out << fmt15(r_grid[i]) << "," << volumes[i] << "," << fmt15(phi_values[i])
                << "\n";
        const std::string path = output_dir + "/plot_volume_vs_phi.csv";
        io::write_text_file(path, out.str());
        files.push_back(path);
    }
    return files;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    Assembled a = assemble(cfg);

    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw io_error("cannot create output directory " + cfg.output_dir + ": " +
                           ec.message());

    std::vector<double> t_grid = verify::spectral_t_grid(a.frame.L, cfg.t_points);
    const double lo = cfg.interval_lo > 0.0 ? cfg.interval_lo : t_grid.front();
    const double hi = cfg.interval_hi > 0.0 ? cfg.interval_hi : t_grid.back();
    if (cfg.interval_lo > 0.0 || cfg.interval_hi > 0.0) {
        if (!(lo > 0.0) || !(hi > lo)) throw config_error("interval_A must satisfy 0 < a < b");
        for (int i = 0; i < cfg.t_points; ++i)
            t_grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (cfg.t_points - 1));
        t_grid.front() = lo;
        t_grid.back() = hi;
    }
    const double b_B = cfg.eta * std::pow(hi, a.delta_theorem);
    const auto r_grid =
        build_r_grid(t_grid, cfg.eta, a.delta_theorem, a.r_floor, b_B, cfg.r_points);

    ScenarioResult result;
    result.gamma_theorem = a.gamma_theorem;
    result.delta_theorem = a.delta_theorem;
    result.bundle = verify::verify_hypotheses(a.frame, a.phi, cfg.eta, a.delta_theorem,
                                              a.gamma_theorem, {lo, hi}, t_grid, r_grid,
                                              a.couple);
    result.hypotheses_ok = true;

    const auto vectors = verify::make_test_vectors(a.frame, cfg.random_vectors, cfg.seed);
    result.local = verify::verify_local(a.frame, result.bundle, t_grid, vectors);
    result.global =
        verify::verify_global(a.frame, cfg.alpha, cfg.beta, a.gamma_theorem, a.delta_theorem,
                              result.local.paper_constant, vectors);
    result.global_D = result.global.paper_constant;

    // Semigroup sandwich at a spread of grid times over all test vectors.
    const int picks = std::min<int>(cfg.sandwich_t_count, static_cast<int>(t_grid.size()));
    double tail_max = 0.0;
    for (int p = 0; p < picks; ++p) {
        const double t =
            t_grid[static_cast<std::size_t>(p) * (t_grid.size() - 1) / std::max(1, picks - 1)];
        for (int j = 0; j < vectors.vectors.cols(); ++j) {
            const auto res = verify::semigroup_sandwich(a.frame.L, 1.0 / t,
                                                        vectors.vectors.col(j),
                                                        cfg.sandwich_truncation);
            ++result.sandwich_checked;
            if (!res.lower_ok || !res.upper_ok) ++result.sandwich_violations;
            tail_max = std::max(tail_max, res.tail_bound);
        }
    }

    result.all_pass = result.local.all_pass && result.global.all_pass &&
                      result.sandwich_violations == 0;
    result.exit_code = result.all_pass ? 0 : 1;

    // Artifacts.
    const std::string dir = cfg.output_dir;
    io::write_text_file(dir + "/local_report.csv", local_report_csv(result.local));
    result.artifact_files.push_back(dir + "/local_report.csv");
    io::write_text_file(dir + "/global_report.csv",
                        global_report_csv(result.global, cfg.alpha, cfg.beta));
    result.artifact_files.push_back(dir + "/global_report.csv");

    std::vector<long long> volumes;
    std::vector<double> phi_values;
    for (double r : r_grid) {
        long long count = 0;
        for (int v = 0; v < a.structure.vertex_count; ++v)
            if (a.transform(static_cast<double>(a.structure.distance[v])) < r) ++count;
        volumes.push_back(count);
        phi_values.push_back(a.phi(r));
    }
    for (auto& f : emit_plotdata(result.local, r_grid, volumes, phi_values, dir))
        result.artifact_files.push_back(std::move(f));

    ordered_json summary;
    summary["schema_version"] = 1;
    summary["scenario"] = scenario_name(cfg.kind);
    summary["structure"] = {{"kind", graphs::kind_name(a.structure.kind)},
                            {"vertex_count", a.structure.vertex_count},
                            {"parameters", a.structure.parameters}};
    summary["swapped_form"] = a.swapped_form;
    summary["couple"] =
        a.couple == verify::CoupleOrientation::l2_l1 ? "l2_l1" : "l2_linf0";
    summary["restriction"] = verify::restriction_name(a.frame.restriction);
    summary["exponents"] = {{"gamma_config", a.gamma_config},
                            {"gamma_theorem", a.gamma_theorem},
                            {"delta_theorem", a.delta_theorem},
                            {"alpha", cfg.alpha},
                            {"beta", cfg.beta}};
    summary["eta"] = cfg.eta;
    summary["phi"] = a.phi.description;
    summary["interval_A"] = {lo, hi};
    summary["ip0_certified_r_range"] = {result.bundle.ip0_lo, result.bundle.ip0_hi};
    summary["K"] = result.bundle.K;
    summary["M"] = result.bundle.M;
    summary["hypothesis_margin"] = result.bundle.hypothesis_margin;
    summary["paper_constant"] = result.local.paper_constant;
    summary["sharp_constant"] = result.local.sharp_constant;
    double local_max = 0.0, global_max = 0.0;
    for (const auto& row : result.local.rows) local_max = std::max(local_max, row.ratio);
    for (const auto& row : result.global.rows) global_max = std::max(global_max, row.ratio);
    summary["local"] = {{"max_ratio", local_max},
                        {"all_pass", result.local.all_pass},
                        {"C", result.local.paper_constant}};
    summary["global"] = {{"max_ratio", global_max},
                         {"all_pass", result.global.all_pass},
                         {"D", result.global.paper_constant},
                         {"measured_constant", result.global.sharp_constant}};
    summary["semigroup"] = {{"checked", result.sandwich_checked},
                            {"violations", result.sandwich_violations},
                            {"truncation", cfg.sandwich_truncation},
                            {"max_tail_bound", tail_max}};
    summary["all_pass"] = result.all_pass;
    summary["seed"] = cfg.seed;
    io::write_text_file(dir + "/summary.json", summary.dump(2) + "\n");
    result.artifact_files.push_back(dir + "/summary.json");

    return result;
}

}  // namespace uncert::scenario
