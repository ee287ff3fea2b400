// Scenario-driven front end: simulate, sweep, and predicate-check commands
// with deterministic CSV/JSON outputs.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "kuramoto/analysis.hpp"
#include "kuramoto/dynamics.hpp"
#include "kuramoto/filippov.hpp"
#include "kuramoto/kernel.hpp"
#include "kuramoto/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string under_dir(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kuramoto::ConfigError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void write_scenario_outputs(const kuramoto::ScenarioConfig& cfg,
                            const kuramoto::ScenarioResult& result,
                            const std::string& out_dir) {
    using namespace kuramoto;
    write_file_atomic(under_dir(out_dir, cfg.out_trajectory),
                      trajectory_csv(result.trajectory, output_header(cfg)));
    write_file_atomic(under_dir(out_dir, cfg.out_events),
                      wrap_output_json(cfg, "events", event_log_json(result.trajectory)));
    write_file_atomic(under_dir(out_dir, cfg.out_reports),
                      wrap_output_json(cfg, "reports", bound_reports_json(result.reports)));
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, bool reports_only) {
    using namespace kuramoto;
    ScenarioConfig cfg = ScenarioConfig::load(config_path, seed);
    ScenarioResult result = run_scenario(cfg);
    if (reports_only) {
        write_file_atomic(under_dir(out_dir, cfg.out_reports),
                          wrap_output_json(cfg, "reports", bound_reports_json(result.reports)));
    } else {
        write_scenario_outputs(cfg, result, out_dir);
    }
    for (const auto& r : result.reports)
        std::cout << r.bound_name << ": " << (r.satisfied ? "pass" : "FAIL")
                  << " (margin " << g17(r.margin) << ")\n";
    return result.checks_passed ? kExitPass : kExitCheckFail;
}

int cmd_sweep_epsilon(const std::string& config_path, std::vector<double> eps,
                      const std::string& out_dir, std::optional<std::uint64_t> seed,
                      int jobs) {
    using namespace kuramoto;
    ScenarioConfig cfg = ScenarioConfig::load(config_path, seed);
    if (eps.empty()) eps = cfg.eps_list;
    if (eps.empty()) throw ConfigError("sweep-epsilon: no eps list given");
    PhaseState init;
    init.theta = cfg.theta0;
    NaturalFrequencies om{cfg.omega};
    EpsilonSweepReport report =
        epsilon_sweep(init, om, cfg.params, eps, cfg.integrator, jobs);

    std::string csv;
    for (const std::string& line : {std::string("version: ") + kArtifactVersion,
                                    "config: " + cfg.resolved.dump(),
                                    "reference_membership_residual: " +
                                        g17(report.reference_membership_residual)})
        csv += "# " + line + "\n";
    csv += "eps,sup_dist,h1_seminorm,linf_freq,energy_margin\n";
    for (const auto& row : report.rows)
        csv += g17(row.eps) + "," + g17(row.sup_dist) + "," + g17(row.h1_seminorm) + "," +
               g17(row.linf_freq) + "," + g17(row.energy_margin) + "\n";
    write_file_atomic(under_dir(out_dir, "sweep_epsilon.csv"), csv);

    bool ok = true;
    for (const auto& name : cfg.sweep_checks) {
        bool pass = true;
        if (name == "sup_dist_decreasing") {
            for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
                pass = pass && report.rows[i].sup_dist > report.rows[i + 1].sup_dist;
        } else if (name == "linf_freq_bound") {
            for (const auto& row : report.rows)
                pass = pass && row.linf_freq <= report.linf_bound + 1e-8;
        } else if (name == "energy_inequality") {
            for (const auto& row : report.rows) pass = pass && row.energy_margin >= -1e-8;
        } else if (name.rfind("membership_residual", 0) == 0) {
            const auto colon = name.find(':');
            const double tol = colon == std::string::npos
                                   ? 1e-6
                                   : std::stod(name.substr(colon + 1));
            pass = report.reference_membership_residual <= tol;
        } else {
            throw ConfigError("sweep_checks: unknown check '" + name + "'");
        }
        std::cout << name << ": " << (pass ? "pass" : "FAIL") << "\n";
        ok = ok && pass;
    }
    return ok ? kExitPass : kExitCheckFail;
}

int cmd_sweep_eta(const std::string& config_path, std::vector<double> etas,
                  const std::string& out_dir, std::optional<std::uint64_t> seed,
                  int jobs) {
    using namespace kuramoto;
    ScenarioConfig cfg = ScenarioConfig::load(config_path, seed);
    if (etas.empty()) etas = cfg.eta_list;
    if (etas.empty()) throw ConfigError("sweep-eta: no eta list given");
    PhaseState init;
    init.theta = cfg.theta0;
    NaturalFrequencies om{cfg.omega};
    const auto rows = eta_sweep(init, om, cfg.params, etas, cfg.integrator, jobs);

    std::string csv = "# version: ";
    csv += kArtifactVersion;
    csv += "\n# config: " + cfg.resolved.dump() + "\n";
    csv += "eta,sup_dist\n";
    for (const auto& row : rows) csv += g17(row.eta) + "," + g17(row.sup_dist) + "\n";
    write_file_atomic(under_dir(out_dir, "sweep_eta.csv"), csv);

    bool ok = true;
    for (const auto& name : cfg.sweep_checks) {
        bool pass = true;
        if (name == "sup_dist_decreasing") {
            for (std::size_t i = 0; i + 1 < rows.size(); ++i)
                pass = pass && rows[i].sup_dist > rows[i + 1].sup_dist;
        } else if (name.rfind("ratio_bound", 0) == 0) {
            const auto colon = name.find(':');
            const double bound =
                colon == std::string::npos ? 0.2 : std::stod(name.substr(colon + 1));
            for (std::size_t i = 0; i + 1 < rows.size(); ++i)
                pass = pass && rows[i + 1].sup_dist <= bound * rows[i].sup_dist;
        } else {
            throw ConfigError("sweep_checks: unknown check '" + name + "'");
        }
        std::cout << name << ": " << (pass ? "pass" : "FAIL") << "\n";
        ok = ok && pass;
    }
    return ok ? kExitPass : kExitCheckFail;
}

int cmd_check_sticking(const std::string& input_path) {
    using namespace kuramoto;
    const nlohmann::json j = load_json(input_path);
    if (!j.contains("omegas") || !j.contains("K") || !j.contains("N") ||
        !j.contains("regime"))
        throw ConfigError("check-sticking: need {omegas, K, N, regime}");
    const auto omegas = j["omegas"].get<std::vector<double>>();
    const double k = j["K"].get<double>();
    const int n = j["N"].get<int>();
    const Regime regime = regime_from_string(j["regime"].get<std::string>());
    if (omegas.size() < 2) throw ConfigError("check-sticking: cluster size must be >= 2");

    bool verdict = false;
    switch (regime) {
        case Regime::subcritical:
            verdict = sticking_subcritical(omegas);
            break;
        case Regime::critical: {
            const auto cert = sticking_critical_certificate(omegas, k, n);
            verdict = !cert.has_value();
            if (cert) {
                std::cout << "certificate: m=" << cert->m << " I={";
                for (std::size_t i = 0; i < cert->subset.size(); ++i)
                    std::cout << (i ? "," : "") << cert->subset[i] + 1;
                std::cout << "} deviation=" << g17(cert->lhs)
                          << " bound=" << g17(cert->bound) << "\n";
            } else {
                const auto m = RelativeFrequencyMatrix::from_omegas(omegas);
                if (const auto y = sticking_witness(m, k, n)) {
                    std::cout << "witness Y:\n";
                    for (int r = 0; r < y->dim(); ++r) {
                        for (int c = 0; c < y->dim(); ++c)
                            std::cout << (c ? "," : "") << g17((*y)(r, c));
                        std::cout << "\n";
                    }
                }
            }
            break;
        }
        case Regime::supercritical:
            verdict = sticking_supercritical(RelativeFrequencyMatrix::from_omegas(omegas));
            break;
    }
    std::cout << "sticking: " << (verdict ? "true" : "false") << "\n";
    return verdict ? kExitPass : kExitCheckFail;
}

int cmd_check_membership(const std::string& input_path) {
    using namespace kuramoto;
    const nlohmann::json j = load_json(input_path);
    for (const char* field : {"params", "Omega", "theta", "omega_probe"})
        if (!j.contains(field))
            throw ConfigError(std::string("check-membership: missing field ") + field);
    ModelParams p;
    p.alpha = j["params"].at("alpha").get<double>();
    p.coupling_k = j["params"].at("coupling_k").get<double>();
    p.n_osc = j["params"].at("n_osc").get<int>();
    p.epsilon = j["params"].value("epsilon", 0.0);
    p.c_alpha_zeta = j["params"].value("c", 1.0);
    p.validate();
    PhaseState state;
    state.theta = j["theta"].get<std::vector<double>>();
    NaturalFrequencies om{j["Omega"].get<std::vector<double>>()};
    const auto probe = j["omega_probe"].get<std::vector<double>>();
    const double tol = j.value("tol", 1e-10);
    const ClusterPartition part = detect_partition(state, j.value("collision_tol", 1e-9));
    const FrequencyPolytope poly = build_polytope(state, om, p, part);
    const double residual = membership_residual(poly, probe);
    std::cout << "residual: " << g17(residual) << "\n";
    std::cout << "member: " << (residual <= tol ? "true" : "false") << "\n";
    return residual <= tol ? kExitPass : kExitCheckFail;
}

int cmd_stability(const std::string& config_path, const std::string& out_dir,
                  std::optional<std::uint64_t> seed) {
    using namespace kuramoto;
    ScenarioConfig cfg = ScenarioConfig::load(config_path, seed);
    PhaseState seed_state;
    seed_state.theta = cfg.theta0;
    NaturalFrequencies om{cfg.omega};
    const auto refined = refine_equilibrium(seed_state, om, cfg.params);
    if (!refined.converged) {
        std::cerr << "equilibrium refinement did not converge; residual history:\n";
        for (double r : refined.residual_history) std::cerr << "  " << g17(r) << "\n";
        return kExitRuntimeError;
    }
    const StabilityReport report = linear_stability(refined.equilibrium, om, cfg.params);
    write_file_atomic(under_dir(out_dir, "stability.json"),
                      wrap_output_json(cfg, "stability", stability_report_json(report)));
    std::cout << "verdict: " << to_string(report.verdict) << "\n";
    const StabilityVerdict predicted = cfg.params.regime() == Regime::subcritical
                                           ? StabilityVerdict::stable
                                           : StabilityVerdict::unstable;
    return report.verdict == predicted ? kExitPass : kExitCheckFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"singularly weighted Kuramoto laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir, input_path;
    std::vector<double> eps_list, eta_list;
    int jobs = 1;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "scenario config JSON")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override generator seeds");
        sub->add_option("--jobs", jobs, "concurrent sweep members");
    };

    auto* sim = app.add_subcommand("simulate", "run a scenario and write outputs");
    add_common(sim, true);
    auto* sweep_eps = app.add_subcommand("sweep-epsilon", "regularization sweep");
    add_common(sweep_eps, true);
    sweep_eps->add_option("--eps", eps_list, "epsilon values (decreasing)");
    auto* sweep_eta_cmd = app.add_subcommand("sweep-eta", "learning-rate sweep");
    add_common(sweep_eta_cmd, true);
    sweep_eta_cmd->add_option("--eta", eta_list, "eta values");
    auto* sticking = app.add_subcommand("check-sticking", "cluster sticking predicate");
    sticking->add_option("--input", input_path, "cluster description JSON")->required();
    auto* member = app.add_subcommand("check-membership", "Filippov polytope membership");
    member->add_option("--input", input_path, "state + probe JSON")->required();
    auto* stab = app.add_subcommand("stability", "refine equilibrium and classify");
    add_common(stab, true);
    auto* bounds = app.add_subcommand("bounds", "run checks, write reports only");
    add_common(bounds, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, seed, false);
        if (bounds->parsed()) return cmd_simulate(config_path, out_dir, seed, true);
        if (sweep_eps->parsed())
            return cmd_sweep_epsilon(config_path, eps_list, out_dir, seed, jobs);
        if (sweep_eta_cmd->parsed())
            return cmd_sweep_eta(config_path, eta_list, out_dir, seed, jobs);
        if (sticking->parsed()) return cmd_check_sticking(input_path);
        if (member->parsed()) return cmd_check_membership(input_path);
        if (stab->parsed()) return cmd_stability(config_path, out_dir, seed);
    } catch (const kuramoto::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "runtime failure: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitConfigError;
}
