// Acceptance suite: every criterion is evaluated at its stated tolerance and
// reported as one pass/fail line. The process exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "kuramoto/analysis.hpp"
#include "kuramoto/dynamics.hpp"
#include "kuramoto/filippov.hpp"
#include "kuramoto/kernel.hpp"
#include "kuramoto/state.hpp"
#include "oracles.hpp"

using namespace kuramoto;

namespace {

int g_failed = 0;

void report(const std::string& id, const std::string& what, bool pass,
            const std::string& detail = "") {
    std::printf("%-4s %-58s %s%s%s\n", id.c_str(), what.c_str(),
                pass ? "PASS" : "FAIL", detail.empty() ? "" : "  -- ",
                detail.c_str());
    if (!pass) ++g_failed;
}

IntegratorConfig config_for(double t_end, double sample_dt) {
    IntegratorConfig cfg;
    cfg.t_end = t_end;
    cfg.sample_dt = sample_dt;
    return cfg;
}

int count_events(const Trajectory& traj, EventKind kind) {
    int n = 0;
    for (const auto& e : traj.events)
        if (e.kind == kind) ++n;
    return n;
}

double last_event_time(const Trajectory& traj, EventKind kind) {
    double t = -1.0;
    for (const auto& e : traj.events)
        if (e.kind == kind) t = e.t_event;
    return t;
}

bool all_reports_pass(const std::vector<BoundReport>& reports, std::string& detail) {
    bool ok = true;
    for (const auto& r : reports) {
        if (!r.satisfied) {
            ok = false;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s margin=%.3g at t=%.4g; ",
                          r.bound_name.c_str(), r.margin, r.worst_t);
            detail += buf;
        }
    }
    return ok;
}

// ---------------------------------------------------------------------------

void criterion_a1() {
    bool pass = true;
    std::string detail;
    for (double alpha : {0.1, 0.25, 0.4}) {
        for (double theta0 : {0.5, 1.0, 2.0}) {
            const auto start = std::chrono::steady_clock::now();
            ModelParams p = ModelParams::singular_family(alpha, 1.0, 2);
            const auto bounds = two_oscillator_bounds(theta0, p);
            PhaseState init;
            init.theta = {0.0, theta0};
            NaturalFrequencies om{{0.0, 0.0}};
            const auto traj = integrate(init, om, p,
                                        config_for(bounds.t_max * 1.1, 1e-3),
                                        KernelKind::singular_h);
            // coincidence time = merge stamp; numerical contact = collision
            double t_col = -1.0, t_contact = -1.0;
            for (const auto& e : traj.events) {
                if (e.kind == EventKind::collision && t_contact < 0.0)
                    t_contact = e.t_event;
                if (e.kind == EventKind::merge && t_col < 0.0) t_col = e.t_event;
            }
            const bool bracket = t_col >= bounds.t_min * (1.0 - 1e-4) &&
                                 t_col <= bounds.t_max * (1.0 + 1e-4);
            bool envelopes = true;
            for (const auto& s : traj.samples) {
                if (s.t >= t_contact) break;
                const double d = std::pow(phase_diameter(s), 2.0 * alpha);
                envelopes = envelopes && d >= bounds.lower_envelope(s.t) - 1e-6 &&
                            d <= bounds.upper_envelope(s.t) + 1e-6;
            }
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            bool tail_sync = true;  // coincident past the projected time
            for (const auto& s : traj.samples)
                if (s.t > t_col) tail_sync = tail_sync && phase_diameter(s) <= 1e-8;
            if (!(bracket && envelopes && tail_sync && secs < 1.0)) {
                pass = false;
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "alpha=%.2g th0=%.2g T=%.5g in [%.5g,%.5g]? env=%d t=%.2gs; ",
                              alpha, theta0, t_col, bounds.t_min, bounds.t_max,
                              static_cast<int>(envelopes), secs);
                detail += buf;
            }
        }
    }
    report("A1", "two-oscillator collision bracket + envelopes", pass, detail);
}

void criterion_a2() {
    bool pass = true;
    std::string detail;
    for (int n : {5, 20}) {
        const auto start = std::chrono::steady_clock::now();
        ModelParams p = ModelParams::singular_family(0.25, 1.0, n);
        PhaseState init;
        for (int i = 0; i < n; ++i)
            init.theta.push_back(static_cast<double>(i) / (n - 1));
        NaturalFrequencies om{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
        const auto traj =
            integrate(init, om, p, config_for(2.6, 2e-3), KernelKind::singular_h);
        const double hd0 = h_eval(1.0, p);
        const double t_c = 1.0 / (2.0 * p.alpha * p.coupling_k * hd0);
        const double sync = measure_sync_time(traj);
        const auto reports = check_identical_bounds(traj, p);
        std::string rep_detail;
        const bool reports_ok = all_reports_pass(reports, rep_detail);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (!(sync <= t_c && reports_ok && secs < 5.0)) {
            pass = false;
            char buf[200];
            std::snprintf(buf, sizeof(buf), "N=%d sync=%.5g Tc=%.5g t=%.2gs %s; ", n,
                          sync, t_c, secs, rep_detail.c_str());
            detail += buf;
        }
    }
    report("A2", "N-oscillator identical subcritical sync bound", pass, detail);
}

void criterion_a3() {
    bool pass = true;
    std::string detail;
    for (int n : {3, 8}) {
        ModelParams p = ModelParams::singular_family(0.5, 1.0, n);
        PhaseState init;
        for (int i = 0; i < n; ++i)
            init.theta.push_back(static_cast<double>(i) / (n - 1));
        NaturalFrequencies om{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
        const auto traj =
            integrate(init, om, p, config_for(1.4, 2e-3), KernelKind::singular_h);
        const double t_c = 1.0 / (p.coupling_k * h_eval(1.0, p));  // ~1.1884
        const double sync = measure_sync_time(traj);
        const auto part_end = partition_at(traj, traj.samples.back().t);
        std::string rep_detail;
        const bool reports_ok = all_reports_pass(check_identical_bounds(traj, p), rep_detail);
        if (!(sync <= t_c && part_end.n_clusters() == 1 && reports_ok)) {
            pass = false;
            char buf[200];
            std::snprintf(buf, sizeof(buf), "N=%d sync=%.5g Tc=%.5g kappa=%d %s; ", n,
                          sync, t_c, part_end.n_clusters(), rep_detail.c_str());
            detail += buf;
        }
    }
    report("A3", "critical finite-time total synchronization", pass, detail);
}

void criterion_a4() {
    ModelParams p = ModelParams::singular_family(0.5, 1.0, 2);
    PhaseState init;
    init.theta = {0.0, 1.0};

    NaturalFrequencies narrow{{0.4, -0.4}};
    const auto stick =
        integrate(init, narrow, p, config_for(3.0, 1e-2), KernelKind::singular_h);
    bool pass = count_events(stick, EventKind::merge) == 1;
    const double t_merge = last_event_time(stick, EventKind::merge);
    for (const auto& s : stick.samples)
        if (s.t > t_merge)
            for (double f : *s.freq) pass = pass && std::abs(f) <= 1e-8;

    NaturalFrequencies wide{{1.0, -1.0}};
    const auto cross =
        integrate(init, wide, p, config_for(2.0, 1e-2), KernelKind::singular_h);
    pass = pass && count_events(cross, EventKind::merge) == 0 &&
           count_events(cross, EventKind::crossing) >= 1;
    bool pos = false, neg = false;
    for (const auto& s : cross.samples) {
        const double gap = s.theta[1] - s.theta[0];
        pos = pos || gap > 1e-6;
        neg = neg || gap < -1e-6;
    }
    pass = pass && pos && neg;
    report("A4", "two-oscillator critical sticking dichotomy", pass);
}

void criterion_a5() {
    bool pass = true;
    std::string detail;
    struct Case {
        int n;
        std::vector<double> omega;
        std::vector<double> theta0;
    };
    const std::vector<Case> cases = {
        {2, {1.0, 3.0}, {0.0, 0.5}},
        {4, {1.2, 0.4, -0.3, -0.9}, {0.0, 0.5, 1.1, 1.8}},
    };
    for (const auto& c : cases) {
        ModelParams p = ModelParams::singular_family(0.75, 1.0, c.n);
        PhaseState init;
        init.theta = c.theta0;
        NaturalFrequencies om{c.omega};
        const auto traj =
            integrate(init, om, p, config_for(20.0, 1e-2), KernelKind::singular_h);
        // every collision is followed by a merge of the same oscillators
        bool follow = true;
        for (std::size_t i = 0; i < traj.events.size(); ++i)
            if (traj.events[i].kind == EventKind::collision) {
                follow = follow && i + 1 < traj.events.size() &&
                         traj.events[i + 1].kind == EventKind::merge &&
                         traj.events[i + 1].indices == traj.events[i].indices;
            }
        // post-merge cluster frequencies match the member means (the drift
        // residual of the supercritical polytope) at every sample
        ModelParams p0 = p;
        double worst = 0.0;
        for (const auto& s : traj.samples) {
            const auto part = partition_at(traj, s.t);
            const auto poly = build_polytope(s, om, p0, part);
            worst = std::max(worst, membership_residual(poly, *s.freq));
        }
        const auto final_part = partition_at(traj, traj.samples.back().t);
        const double mean = om.mean();
        bool final_ok = final_part.n_clusters() == 1;
        for (double f : *traj.samples.back().freq)
            final_ok = final_ok && std::abs(f - mean) <= 1e-8;
        if (!(follow && worst <= 1e-8 && final_ok)) {
            pass = false;
            char buf[200];
            std::snprintf(buf, sizeof(buf),
                          "N=%d follow=%d residual=%.3g kappa=%d; ", c.n,
                          static_cast<int>(follow), worst, final_part.n_clusters());
            detail += buf;
        }
    }
    report("A5", "supercritical stick-always cascade", pass, detail);
}

void criterion_a6() {
    const std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125, 0.00625};
    bool pass = true;
    std::string detail;

    {  // subcritical: monotone sup-distance, final below 1e-2
        ModelParams p = ModelParams::singular_family(0.25, 1.0, 3);
        PhaseState init;
        init.theta = {0.0, 0.61, 1.13};
        NaturalFrequencies om{{0.12, -0.05, -0.07}};
        const auto rep = epsilon_sweep(init, om, p, eps_list, config_for(2.0, 1e-2), 2);
        bool mono = true;
        for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
            mono = mono && rep.rows[i].sup_dist > rep.rows[i + 1].sup_dist;
        if (!(mono && rep.rows.back().sup_dist <= 1e-2)) {
            pass = false;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "subcritical mono=%d final=%.3g; ",
                          static_cast<int>(mono), rep.rows.back().sup_dist);
            detail += buf;
        }
    }
    {  // critical: frequency bound and Filippov membership of the reference
        ModelParams p = ModelParams::singular_family(0.5, 1.0, 3);
        PhaseState init;
        init.theta = {0.0, 0.5, 1.0};
        NaturalFrequencies om{{0.15, 0.0, -0.15}};
        const auto rep = epsilon_sweep(init, om, p, eps_list, config_for(2.0, 1e-2), 2);
        bool linf_ok = true;
        for (const auto& row : rep.rows)
            linf_ok = linf_ok && row.linf_freq <= rep.linf_bound + 1e-8;
        if (!(linf_ok && rep.reference_membership_residual <= 1e-6)) {
            pass = false;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "critical linf_ok=%d residual=%.3g; ",
                          static_cast<int>(linf_ok), rep.reference_membership_residual);
            detail += buf;
        }
    }
    {  // supercritical: energy inequality at all samples for every epsilon
        ModelParams p = ModelParams::singular_family(0.75, 1.0, 3);
        PhaseState init;
        init.theta = {0.0, 0.5, 1.0};
        NaturalFrequencies om{{0.2, 0.05, -0.25}};
        const auto rep = epsilon_sweep(init, om, p, eps_list, config_for(2.0, 1e-3), 2);
        for (const auto& row : rep.rows)
            if (row.energy_margin < -1e-8) {
                pass = false;
                char buf[120];
                std::snprintf(buf, sizeof(buf), "supercritical eps=%.4g margin=%.3g; ",
                              row.eps, row.energy_margin);
                detail += buf;
            }
    }
    report("A6", "singular limit sweeps (sub/critical/supercritical)", pass, detail);
}

void criterion_a7() {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool pass = true;
    std::string detail;
    int states = 0, probes = 0;
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::vector<int>> assign;
        std::vector<int> work(static_cast<std::size_t>(n), 0);
        std::function<void(int, int)> enumerate = [&](int i, int used) {
            if (i == n) {
                assign.push_back(work);
                return;
            }
            for (int c = 0; c <= used; ++c) {
                work[static_cast<std::size_t>(i)] = c;
                enumerate(i + 1, std::max(used, c + 1));
            }
        };
        enumerate(0, 0);
        for (const auto& a : assign) {
            const int kappa = 1 + *std::max_element(a.begin(), a.end());
            if (kappa == n) continue;  // collision-free
            ++states;
            ModelParams p = ModelParams::singular_family(0.5, 1.0, n);
            PhaseState s;
            s.theta.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                s.theta[static_cast<std::size_t>(i)] = 1.1 * a[static_cast<std::size_t>(i)];
            std::vector<double> omegas(static_cast<std::size_t>(n));
            for (double& w : omegas) w = 0.5 * u(gen);
            NaturalFrequencies om{omegas};
            const auto poly = build_polytope(s, om, p, detect_partition(s));
            for (int probe = 0; probe < 100; ++probe) {
                std::vector<double> omega = poly.drift;
                const double scale = (probe % 2) ? 0.4 : 1.3;
                for (double& x : omega) x += scale * u(gen);
                ++probes;
                if (membership(poly, omega, 1e-9) !=
                    test_oracles::polytope_member_bruteforce(poly, omega, 1e-9)) {
                    pass = false;
                    detail = "disagreement at N=" + std::to_string(n);
                }
            }
        }
    }
    // hexagon geometry: vertices on the boundary, dilations outside
    ModelParams p3 = ModelParams::singular_family(0.5, 1.0, 3);
    PhaseState s3;
    s3.theta = {0.4, 0.4, 0.4};
    const auto poly3 =
        build_polytope(s3, NaturalFrequencies{{0.0, 0.0, 0.0}}, p3, detect_partition(s3));
    const double v = 2.0 / 3.0;
    const std::vector<std::vector<double>> hexagon = {
        {v, -v, 0.0}, {-v, v, 0.0}, {v, 0.0, -v}, {-v, 0.0, v}, {0.0, v, -v}, {0.0, -v, v}};
    for (const auto& vert : hexagon) {
        pass = pass && membership(poly3, vert, 1e-9) &&
               test_oracles::polytope_member_bruteforce(poly3, vert, 1e-6);
        std::vector<double> out = vert;
        for (double& c : out) c *= 1.001;
        pass = pass && !membership(poly3, out, 1e-9) &&
               !test_oracles::polytope_member_bruteforce(poly3, out, 1e-6);
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%d collision states x 100 probes%s", states,
                  detail.empty() ? "" : (", " + detail).c_str());
    (void)probes;
    report("A7", "Filippov polytope oracle equivalence + hexagon", pass, buf);
}

void criterion_a8() {
    std::mt19937_64 gen(515);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool pass = true;
    std::string detail;
    for (double kn : {0.1, 0.5, 1.0}) {
        for (int nk = 2; nk <= 5; ++nk) {
            for (int trial = 0; trial < 200; ++trial) {
                std::vector<double> omegas(static_cast<std::size_t>(nk));
                for (double& w : omegas) w = u(gen) * ((trial % 3) ? 1.0 : 0.3);
                const int n_total = nk;
                const double k = kn * n_total;
                const bool fast = sticking_critical(omegas, k, n_total);
                const bool brute =
                    test_oracles::sticking_critical_exhaustive(omegas, k, n_total);
                const auto m = RelativeFrequencyMatrix::from_omegas(omegas);
                const bool general = sticking_general_check(m, k, n_total, true);
                if (fast != brute || general != fast) {
                    pass = false;
                    detail = "predicate disagreement";
                }
                if (fast) {
                    const auto y = sticking_witness(m, k, n_total);
                    if (!y) {
                        pass = false;
                        detail = "missing witness";
                        continue;
                    }
                    const auto row = y->times_ones();
                    double res = 0.0;
                    for (int i = 0; i < nk; ++i)
                        for (int j = 0; j < nk; ++j)
                            res = std::max(res, std::abs((k / n_total) *
                                                             (row[static_cast<std::size_t>(i)] -
                                                              row[static_cast<std::size_t>(j)]) -
                                                         m.at(i, j)));
                    if (res > 1e-12 || y->max_abs() > 1.0 + 1e-12) {
                        pass = false;
                        detail = "witness residual " + std::to_string(res);
                    }
                }
            }
        }
    }
    report("A8", "sticking-predicate oracle equivalence + witnesses", pass, detail);
}

void criterion_a9() {
    ModelParams p = ModelParams::singular_family(0.25, 1.0, 4);
    PhaseState init;
    init.theta = {0.0, 0.1, 0.2, 0.3};
    NaturalFrequencies om{{-0.075, -0.025, 0.025, 0.075}};
    const double d_inf = 0.5;
    const double d0 = 0.3;
    const double denom = h_prime(d_inf, p) * (d_inf - d0);
    auto fd0_at = [&](double k) {
        ModelParams pk = p;
        pk.coupling_k = k;
        const auto f = rhs_full(init, om, pk, KernelKind::singular_h,
                                ClusterPartition::singletons(4));
        const auto [mn, mx] = std::minmax_element(f.begin(), f.end());
        return *mx - *mn;
    };
    // K solving K = 2 * threshold(K); threshold depends on K through the
    // initial frequency spread
    double lo = 0.05, hi = 0.0;
    auto resid = [&](double k) { return k - 2.0 * fd0_at(k) / denom; };
    for (double k = 0.05; k < 1.0; k += 0.01)
        if (resid(k) > 0.0) { hi = k; break; }
    bool pass = hi > 0.0;
    double k_star = 0.0;
    if (pass) {
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (resid(mid) > 0.0) hi = mid;
            else lo = mid;
        }
        k_star = hi;
    }
    std::string detail;
    if (pass) {
        ModelParams pk = p;
        pk.coupling_k = k_star;
        const auto traj =
            integrate(init, om, pk, config_for(25.0, 2e-2), KernelKind::singular_h);
        const auto reports = check_nonidentical_bounds(traj, pk, d_inf);
        pass = all_reports_pass(reports, detail);
        pass = pass && count_events(traj, EventKind::collision) == 0;
        bool saw_lower = false;
        for (const auto& r : reports) saw_lower = saw_lower || r.bound_name == "freq_diameter_lower";
        pass = pass && saw_lower;
        char buf[80];
        std::snprintf(buf, sizeof(buf), "K=%.5g; %s", k_star, detail.c_str());
        detail = buf;
    }
    report("A9", "non-identical subcritical suite at 2x threshold", pass, detail);
}

void criterion_a10() {
    bool pass = true;
    std::string detail;
    {  // subcritical: stable spectrum after refinement, perturbation returns
        ModelParams p = ModelParams::singular_family(0.25, 1.0, 4);
        const std::vector<double> locked{0.0, 0.12, 0.26, 0.4};
        std::vector<double> omega(4, 0.0);
        for (int i = 0; i < 4; ++i) {
            double acc = 0.0;
            for (int j = 0; j < 4; ++j)
                if (j != i)
                    acc += h_eval(locked[static_cast<std::size_t>(j)] -
                                      locked[static_cast<std::size_t>(i)],
                                  p);
            omega[static_cast<std::size_t>(i)] = -p.coupling_k * acc / 4.0;
        }
        NaturalFrequencies om{omega};
        PhaseState seed;
        seed.theta = {0.002, 0.118, 0.261, 0.399};
        const auto refined = refine_equilibrium(seed, om, p);
        pass = pass && refined.converged;
        const auto rep = linear_stability(refined.equilibrium, om, p);
        pass = pass && rep.verdict == StabilityVerdict::stable &&
               rep.zero_multiplicity == 1;
        for (double l : rep.eigenvalues)
            pass = pass && (std::abs(l) <= 1e-8 || l < -1e-8);
        // 1e-3 perturbation contracts back
        PhaseState pert = refined.equilibrium;
        pert.theta[0] += 1e-3;
        pert.theta[3] -= 1e-3;
        const auto traj =
            integrate(pert, om, p, config_for(10.0, 0.05), KernelKind::singular_h);
        double d_start = 0.0, d_end = 0.0;
        for (int i = 0; i < 4; ++i) {
            d_start = std::max(d_start,
                               std::abs(pert.theta[static_cast<std::size_t>(i)] -
                                        refined.equilibrium.theta[static_cast<std::size_t>(i)]));
            d_end = std::max(d_end,
                             std::abs(traj.samples.back().theta[static_cast<std::size_t>(i)] -
                                      refined.equilibrium.theta[static_cast<std::size_t>(i)]));
        }
        if (!(d_end < 0.5 * d_start)) pass = false;
        if (!pass) detail += "subcritical branch; ";
    }
    {  // supercritical two-oscillator equilibrium: positive eigenvalue, departs
        ModelParams p = ModelParams::singular_family(0.75, 1.0, 2);
        const auto eqs = equilibrium_two(0.25, p);
        bool branch = eqs.roots.size() == 1;
        if (branch) {
            const double tb = eqs.roots[0].theta_bar;
            PhaseState eq;
            eq.theta = {-tb / 2.0, tb / 2.0};
            NaturalFrequencies om{{-0.125, 0.125}};
            const auto rep = linear_stability(eq, om, p);
            branch = branch && rep.verdict == StabilityVerdict::unstable &&
                     rep.eigenvalues.back() > 1e-8 && rep.zero_multiplicity == 1;
            PhaseState pert = eq;
            pert.theta[1] -= 1e-3;
            const auto traj =
                integrate(pert, om, p, config_for(10.0, 0.05), KernelKind::singular_h);
            const bool merged = count_events(traj, EventKind::merge) > 0;
            const double drift =
                std::abs((traj.samples.back().theta[1] - traj.samples.back().theta[0]) - tb);
            branch = branch && (merged || drift > 1e-2);
        }
        if (!branch) {
            pass = false;
            detail += "supercritical branch; ";
        }
    }
    report("A10", "stability spectra + perturbation consistency", pass, detail);
}

void criterion_a11() {
    ModelParams p = ModelParams::regular(0.3, 1.0, 6, 0.5, 0.5);
    PhaseState init;
    init.theta = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    NaturalFrequencies om{std::vector<double>(6, 0.0)};
    const auto traj = integrate(init, om, p, config_for(4.0, 2e-3), KernelKind::regular_h);
    std::string detail;
    const bool pass = all_reports_pass(check_regular_bounds(traj, p), detail);
    report("A11", "regular-model identical diameter sandwich", pass, detail);
}

void criterion_a12() {
    ModelParams p = ModelParams::regular(0.3, 1.0, 4, 1.0, 0.5);
    PhaseState init;
    init.theta = {0.0, 0.4, 0.8, 1.2};
    NaturalFrequencies om{{0.15, 0.05, -0.05, -0.15}};
    const auto rows =
        eta_sweep(init, om, p, {1e2, 1e3, 1e4}, config_for(1.0, 1e-2), 3);
    bool pass = rows.size() == 3;
    std::string detail;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        pass = pass && rows[i + 1].sup_dist < rows[i].sup_dist &&
               rows[i + 1].sup_dist <= 0.2 * rows[i].sup_dist;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "sup: %.3g / %.3g / %.3g", rows[0].sup_dist,
                  rows[1].sup_dist, rows[2].sup_dist);
    report("A12", "fast-learning consistency across eta decades", pass, buf);
}

}  // namespace

int main() {
    criterion_a1();
    criterion_a2();
    criterion_a3();
    criterion_a4();
    criterion_a5();
    criterion_a6();
    criterion_a7();
    criterion_a8();
    criterion_a9();
    criterion_a10();
    criterion_a11();
    criterion_a12();
    if (g_failed) {
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failed);
        return 1;
    }
    std::printf("acceptance: all criteria passed\n");
    return 0;
}
