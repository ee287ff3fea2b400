#include "kuramoto/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "kuramoto/kernel.hpp"

namespace kuramoto {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double CounterRng::u01(std::uint64_t k) const {
    return static_cast<double>(splitmix64(seed_ ^ splitmix64(k)) >> 11) * 0x1.0p-53;
}

KernelKind ScenarioConfig::kernel_kind() const {
    if (model == "singular") return KernelKind::singular_h;
    if (model == "scaled") return KernelKind::scaled_h_eps;
    if (model == "regular") return KernelKind::regular_h;
    if (model == "adaptive") return KernelKind::adaptive_gamma;
    throw ConfigError("model: expected one of adaptive|regular|scaled|singular");
}

namespace {

double require_number(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw ConfigError(std::string("params.") + field + ": number required");
    return j[field].get<double>();
}

std::vector<double> resolve_omega(const nlohmann::json& spec, int n,
                                  std::optional<std::uint64_t> seed_override) {
    if (spec.is_array()) {
        auto v = spec.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != n)
            throw ConfigError("omega: expected " + std::to_string(n) + " entries");
        return v;
    }
    if (!spec.is_object() || !spec.contains("seed"))
        throw ConfigError("omega: list or generator spec with mandatory seed required");
    const std::string dist = spec.value("distribution", "uniform-zero-mean");
    if (dist != "uniform-zero-mean")
        throw ConfigError("omega.distribution: only uniform-zero-mean is supported");
    const double width = spec.value("width", 1.0);
    CounterRng rng(seed_override ? *seed_override : spec["seed"].get<std::uint64_t>());
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = width * (rng.u01(static_cast<std::uint64_t>(i)) - 0.5);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    for (double& x : v) x -= mean;
    return v;
}

std::vector<double> resolve_theta0(const nlohmann::json& spec, int n,
                                   std::optional<std::uint64_t> seed_override) {
    if (spec.is_array()) {
        auto v = spec.get<std::vector<double>>();
        if (static_cast<int>(v.size()) != n)
            throw ConfigError("theta0: expected " + std::to_string(n) + " entries");
        return v;
    }
    if (!spec.is_object() || !spec.contains("seed"))
        throw ConfigError("theta0: list or generator spec with mandatory seed required");
    const double d0 = spec.value("confined_diameter", 1.0);
    CounterRng rng(seed_override ? *seed_override : spec["seed"].get<std::uint64_t>());
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = rng.u01(static_cast<std::uint64_t>(i) + 1000);
    if (n == 1) return {0.0};
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double lo = *mn, span = *mx - *mn;
    for (double& x : v) x = (x - lo) / span * d0;
    return v;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(const nlohmann::json& j,
                                     std::optional<std::uint64_t> seed_override) {
    ScenarioConfig cfg;
    if (!j.contains("model") || !j["model"].is_string())
        throw ConfigError("model: string required");
    cfg.model = j["model"].get<std::string>();
    if (!j.contains("params") || !j["params"].is_object())
        throw ConfigError("params: object required");
    const auto& jp = j["params"];
    ModelParams p;
    p.alpha = require_number(jp, "alpha");
    p.coupling_k = require_number(jp, "coupling_k");
    p.n_osc = static_cast<int>(require_number(jp, "n_osc"));
    p.epsilon = jp.value("epsilon", 0.0);
    p.sigma = jp.value("sigma", 1.0);
    p.zeta = jp.value("zeta", 0.5);
    p.eta = jp.value("eta", 1.0);
    if (jp.contains("c")) p.c_alpha_zeta = jp["c"].get<double>();
    else if (cfg.model == "regular" || cfg.model == "adaptive")
        p.c_alpha_zeta = ModelParams::derive_c_from_zeta(p.alpha, p.zeta);
    else p.c_alpha_zeta = 1.0;
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    if (cfg.model == "singular" && p.epsilon != 0.0)
        throw ConfigError("params.epsilon: singular model requires epsilon = 0");
    if (cfg.model == "scaled" && !(p.epsilon > 0.0))
        throw ConfigError("params.epsilon: scaled model requires epsilon > 0");
    cfg.params = p;

    if (!j.contains("omega")) throw ConfigError("omega: required");
    cfg.omega = resolve_omega(j["omega"], p.n_osc, seed_override);
    if (!j.contains("theta0")) throw ConfigError("theta0: required");
    cfg.theta0 = resolve_theta0(j["theta0"], p.n_osc, seed_override);
    if (j.contains("a0")) {
        cfg.a0 = j["a0"].get<std::vector<double>>();
        if (static_cast<int>(cfg.a0.size()) != p.n_osc * p.n_osc)
            throw ConfigError("a0: expected n_osc^2 entries");
        for (double v : cfg.a0)
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("a0: entries must lie in [0,1]");
    }

    if (j.contains("integrator")) {
        const auto& ji = j["integrator"];
        if (ji.contains("method")) {
            const std::string m = ji["method"].get<std::string>();
            if (m == "rk45") cfg.integrator.method = IntegratorConfig::Method::rk45;
            else if (m == "semi_implicit")
                cfg.integrator.method = IntegratorConfig::Method::semi_implicit;
            else throw ConfigError("integrator.method: rk45 or semi_implicit");
        }
        cfg.integrator.rel_tol = ji.value("rel_tol", cfg.integrator.rel_tol);
        cfg.integrator.abs_tol = ji.value("abs_tol", cfg.integrator.abs_tol);
        cfg.integrator.dt_max = ji.value("dt_max", cfg.integrator.dt_max);
        cfg.integrator.dt_min = ji.value("dt_min", cfg.integrator.dt_min);
        cfg.integrator.collision_tol = ji.value("collision_tol", cfg.integrator.collision_tol);
        cfg.integrator.event_bisection_tol =
            ji.value("event_bisection_tol", cfg.integrator.event_bisection_tol);
        cfg.integrator.t_end = ji.value("t_end", cfg.integrator.t_end);
        cfg.integrator.sample_dt = ji.value("sample_dt", cfg.integrator.sample_dt);
    }
    try {
        cfg.integrator.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("integrator: ") + e.what());
    }

    if (j.contains("checks")) {
        for (const auto& jc : j["checks"]) {
            ScenarioCheck c;
            if (jc.is_string()) c.name = jc.get<std::string>();
            else if (jc.is_object()) {
                c.name = jc.value("name", "");
                if (jc.contains("d_inf")) c.d_inf = jc["d_inf"].get<double>();
                c.beta = jc.value("beta", 0.5);
            } else throw ConfigError("checks: entries must be strings or objects");
            if (c.name != "identical_bounds" && c.name != "nonidentical_bounds" &&
                c.name != "regular_bounds")
                throw ConfigError("checks: unknown check '" + c.name + "'");
            if (c.name == "nonidentical_bounds" && !c.d_inf)
                throw ConfigError("checks: nonidentical_bounds requires d_inf");
            cfg.checks.push_back(std::move(c));
        }
    }
    if (j.contains("eps_list")) cfg.eps_list = j["eps_list"].get<std::vector<double>>();
    if (j.contains("eta_list")) cfg.eta_list = j["eta_list"].get<std::vector<double>>();
    if (j.contains("sweep_checks"))
        cfg.sweep_checks = j["sweep_checks"].get<std::vector<std::string>>();
    if (j.contains("outputs")) {
        const auto& jo = j["outputs"];
        cfg.out_trajectory = jo.value("trajectory_csv", cfg.out_trajectory);
        cfg.out_events = jo.value("events_json", cfg.out_events);
        cfg.out_reports = jo.value("reports_json", cfg.out_reports);
    }

    // Resolved config: the input with generators replaced by their draws.
    nlohmann::json resolved = j;
    resolved["omega"] = cfg.omega;
    resolved["theta0"] = cfg.theta0;
    resolved["params"]["c"] = cfg.params.c_alpha_zeta;
    if (seed_override) resolved["seed_override"] = *seed_override;
    cfg.resolved = std::move(resolved);
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path,
                                    std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse(j, seed_override);
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    ScenarioResult result;
    PhaseState init;
    init.t = 0.0;
    init.theta = cfg.theta0;
    NaturalFrequencies om{cfg.omega};

    if (cfg.model == "adaptive") {
        AdaptiveState a0;
        a0.theta = cfg.theta0;
        a0.a = cfg.a0.empty() ? well_prepared_couplings(cfg.theta0, cfg.params) : cfg.a0;
        result.adaptive = integrate_adaptive(a0, om, cfg.params, cfg.integrator);
        // Mirror phase samples into a Trajectory for serialization and checks.
        result.trajectory.params = cfg.params;
        result.trajectory.omega_nat = om;
        for (std::size_t k = 0; k < result.adaptive.times.size(); ++k) {
            PhaseState s;
            s.t = result.adaptive.times[k];
            s.theta = result.adaptive.samples[k].theta;
            auto [td, ad] = rhs_adaptive(result.adaptive.samples[k], om, cfg.params);
            (void)ad;
            s.freq = std::move(td);
            result.trajectory.samples.push_back(std::move(s));
        }
    } else {
        result.trajectory = integrate(init, om, cfg.params, cfg.integrator, cfg.kernel_kind());
    }

    for (const auto& c : cfg.checks) {
        std::vector<BoundReport> reports;
        if (c.name == "identical_bounds")
            reports = check_identical_bounds(result.trajectory, cfg.params, c.beta);
        else if (c.name == "nonidentical_bounds")
            reports = check_nonidentical_bounds(result.trajectory, cfg.params, *c.d_inf);
        else if (c.name == "regular_bounds")
            reports = check_regular_bounds(result.trajectory, cfg.params, c.d_inf);
        for (auto& r : reports) {
            result.checks_passed = result.checks_passed && r.satisfied;
            result.reports.push_back(std::move(r));
        }
    }
    return result;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

std::string output_header(const ScenarioConfig& cfg) {
    std::string out = "version: ";
    out += kArtifactVersion;
    out += "\nconfig: ";
    out += cfg.resolved.dump();
    return out;
}

std::string wrap_output_json(const ScenarioConfig& cfg, const std::string& key,
                             const std::string& payload_json) {
    std::string out = "{\n\"version\": \"";
    out += kArtifactVersion;
    out += "\",\n\"config\": ";
    out += cfg.resolved.dump();
    out += ",\n\"";
    out += key;
    out += "\": ";
    out += payload_json;
    out += "}\n";
    return out;
}

}  // namespace kuramoto
