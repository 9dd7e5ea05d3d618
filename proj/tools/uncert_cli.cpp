// uncert - CLI for the uncertainty-inequality verifier.
//
//   uncert verify <config.json>          run a scenario, write report artifacts
//   uncert oracle lattice --n D --r R    lattice symbol sublevel measure
//   uncert oracle tree-gap --n DEG       spectral gap n - 2 sqrt(n-1)
//   uncert admissible --phi SPEC --alpha A --interval LO HI
//
// Exit codes: 0 pass, 1 inequality violation, 2 hypothesis failure,
// 3 capacity, 4 config parse, 5 I/O.

#include "uncert/analytics.hpp"
#include "uncert/growth.hpp"
#include "uncert/matrix_io.hpp"
#include "uncert/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using uncert::io::fmt15;

uncert::growth::GrowthFunction parse_phi_spec(const std::string& spec) {
    // "power:d[,scale]", "glued_exp:delta,kappa[,scale]", "log_density:delta[,scale]"
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw uncert::config_error("phi spec must look like kind:params");
    const std::string kind = spec.substr(0, colon);
    std::vector<double> params;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        params.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (kind == "power" && !params.empty())
        return uncert::growth::GrowthFunction::power(params[0],
                                                     params.size() > 1 ? params[1] : 1.0);
    if (kind == "glued_exp" && params.size() >= 2)
        return uncert::growth::GrowthFunction::glued_exp(params[0], params[1],
                                                         params.size() > 2 ? params[2] : 1.0);
    if (kind == "log_density" && !params.empty())
        return uncert::growth::GrowthFunction::log_density(params[0],
                                                           params.size() > 1 ? params[1] : 1.0);
    throw uncert::config_error("unknown phi spec: " + spec);
}

int run_verify(const std::string& config_path) {
    auto cfg = uncert::scenario::parse_config_file(config_path);
    if (const char* dir = std::getenv("UNCERT_OUTPUT_DIR"); dir && *dir)
        cfg.output_dir = dir;
    const auto result = uncert::scenario::run_scenario(cfg);
    std::cout << "scenario " << uncert::scenario::scenario_name(cfg.kind)
              << (result.all_pass ? ": all_pass" : ": FAILED") << "\n"
              << "K=" << fmt15(result.bundle.K) << " M=" << fmt15(result.bundle.M)
              << " C=" << fmt15(result.local.paper_constant)
              << " D=" << fmt15(result.global_D) << "\n";
    for (const auto& f : result.artifact_files) std::cout << "wrote " << f << "\n";
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uncertainty-inequality verifier for operator pairs on graphs"};
    app.require_subcommand(1);

    std::string config_path;
    auto* verify = app.add_subcommand("verify", "run a scenario from a JSON config");
    verify->add_option("config", config_path, "path to config JSON")->required();

    auto* oracle = app.add_subcommand("oracle", "closed-form oracles");
    oracle->require_subcommand(1);
    int lat_dims = 1;
    double lat_r = 1.0;
    int lat_resolution = uncert::oracles::kDefaultSymbolResolution;
    auto* lattice = oracle->add_subcommand("lattice", "symbol sublevel measure");
    lattice->add_option("--n", lat_dims, "lattice dimension")->required();
    lattice->add_option("--r", lat_r, "spectral threshold")->required();
    lattice->add_option("--resolution", lat_resolution, "grid points per dimension");
    int tree_degree = 3;
    auto* treegap = oracle->add_subcommand("tree-gap", "spectral gap of the n-regular tree");
    treegap->add_option("--n", tree_degree, "branching degree")->required();

    std::string phi_spec;
    double adm_alpha = 1.0;
    std::vector<double> adm_interval;
    int adm_ppd = uncert::growth::kDefaultPointsPerDecade;
    auto* admissible = app.add_subcommand("admissible", "admissibility certificate for Phi");
    admissible->add_option("--phi", phi_spec, "kind:params, e.g. power:2 or glued_exp:2,1")
        ->required();
    admissible->add_option("--alpha", adm_alpha, "exponent alpha")->required();
    admissible->add_option("--interval", adm_interval, "interval lo hi")
        ->expected(2)
        ->required();
    admissible->add_option("--points-per-decade", adm_ppd, "grid density");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return run_verify(config_path);
        if (*oracle) {
            if (*lattice) {
                std::cout << fmt15(uncert::oracles::lattice_projector_measure(
                                 lat_dims, lat_r, lat_resolution))
                          << "\n";
                return 0;
            }
            std::cout << fmt15(uncert::oracles::tree_gap(tree_degree)) << "\n";
            return 0;
        }
        if (*admissible) {
            const auto phi = parse_phi_spec(phi_spec);
            const auto cert = uncert::growth::check_admissibility(
                phi, adm_alpha, adm_interval[0], adm_interval[1], adm_ppd);
            nlohmann::ordered_json doc;
            doc["phi"] = phi.description;
            doc["alpha"] = cert.alpha;
            doc["interval"] = {cert.interval_lo, cert.interval_hi};
            doc["verdict"] = uncert::growth::verdict_name(cert.verdict);
            doc["constant"] = cert.constant;
            doc["grid_points"] = cert.grid_points;
            doc["quadrature_error_estimate"] = cert.quadrature_error_estimate;
            std::cout << doc.dump(2) << "\n";
            return cert.verdict == uncert::growth::AdmissibilityVerdict::holds ? 0 : 1;
        }
    } catch (const uncert::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const uncert::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const uncert::hypothesis_error& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return 2;
    } catch (const uncert::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 5;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
