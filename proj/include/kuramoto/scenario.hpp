#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kuramoto/analysis.hpp"
#include "kuramoto/dynamics.hpp"
#include "kuramoto/params.hpp"
#include "kuramoto/state.hpp"

namespace kuramoto {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Counter-based generator: draw k is a pure function of (seed, k), so runs
// are reproducible regardless of draw order or concurrency.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
    // Uniform in [0, 1).
    double u01(std::uint64_t k) const;

  private:
    std::uint64_t seed_;
};

struct ScenarioCheck {
    std::string name;  // identical_bounds | nonidentical_bounds | regular_bounds
    std::optional<double> d_inf;
    double beta = 0.5;
};

struct ScenarioConfig {
    std::string model;  // adaptive | regular | scaled | singular
    ModelParams params;
    std::vector<double> omega;   // resolved natural frequencies
    std::vector<double> theta0;  // resolved initial phases
    std::vector<double> a0;      // adaptive model only; empty = well-prepared
    IntegratorConfig integrator;
    std::vector<ScenarioCheck> checks;
    std::vector<double> eps_list;  // sweep-epsilon members
    std::vector<double> eta_list;  // sweep-eta members
    std::vector<std::string> sweep_checks;
    std::string out_trajectory = "trajectory.csv";
    std::string out_events = "events.json";
    std::string out_reports = "reports.json";
    nlohmann::json resolved;  // embedded into every output

    KernelKind kernel_kind() const;

    // Throws ConfigError with a field-level message on invalid input.
    // `seed_override` replaces every generator seed when present.
    static ScenarioConfig parse(const nlohmann::json& j,
                                std::optional<std::uint64_t> seed_override = {});
    static ScenarioConfig load(const std::string& path,
                               std::optional<std::uint64_t> seed_override = {});
};

struct ScenarioResult {
    Trajectory trajectory;            // empty samples for adaptive model
    AdaptiveTrajectory adaptive;      // used when model == "adaptive"
    std::vector<BoundReport> reports;
    bool checks_passed = true;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Writes `content` atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

// "# version: ...\n# config: {...}" comment block for CSV outputs.
std::string output_header(const ScenarioConfig& cfg);

// Wraps a JSON payload with the resolved config and version string.
std::string wrap_output_json(const ScenarioConfig& cfg, const std::string& key,
                             const std::string& payload_json);

}  // namespace kuramoto
