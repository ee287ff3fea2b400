#include "kuramoto/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "kuramoto/dynamics.hpp"
#include "kuramoto/kernel.hpp"

namespace kuramoto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void track_min(BoundReport& r, double slack, double t) {
    if (slack < r.margin) {
        r.margin = slack;
        r.worst_t = t;
    }
}

BoundReport make_report(std::string name, std::string ref) {
    BoundReport r;
    r.bound_name = std::move(name);
    r.theorem_ref = std::move(ref);
    r.margin = kInf;
    return r;
}

void finalize(std::vector<BoundReport>& out, BoundReport r, double tol = 1e-12) {
    r.satisfied = r.margin >= -tol;
    out.push_back(std::move(r));
}

ModelParams singular_params(const ModelParams& p) {
    ModelParams q = p;
    q.epsilon = 0.0;
    return q;
}

bool omegas_identical(const NaturalFrequencies& om, double tol = 1e-12) {
    if (om.omega.empty()) return true;
    auto [mn, mx] = std::minmax_element(om.omega.begin(), om.omega.end());
    return *mx - *mn <= tol;
}

}  // namespace

double theta_tilde(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("theta_tilde: defined for alpha in (0, 1/2)");
    auto f = [alpha](double t) { return 2.0 * alpha * std::sin(t) - t * std::cos(t); };
    double lo = 1e-15, hi = kPi / 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

TwoOscillatorBounds two_oscillator_bounds(double theta0, const ModelParams& p) {
    const double d0 = std::abs(theta0);
    if (!(d0 > 0.0 && d0 < kPi))
        throw std::invalid_argument("two_oscillator_bounds: |theta0| must be in (0,pi)");
    TwoOscillatorBounds b;
    const double a = p.alpha, k = p.coupling_k;
    b.theta0_pow = std::pow(d0, 2.0 * a);
    b.lower_slope = 2.0 * k * a;
    b.upper_slope = 2.0 * k * a * std::sin(d0) / d0;
    b.t_min = b.theta0_pow / b.lower_slope;
    b.t_max = std::pow(d0, 2.0 * a + 1.0) / (2.0 * k * a * std::sin(d0));
    return b;
}

TwoOscillatorEquilibria equilibrium_two(double omega_rel, const ModelParams& p) {
    TwoOscillatorEquilibria out;
    const ModelParams q = singular_params(p);
    if (omega_rel == 0.0) {
        out.synchronous = true;
        return out;
    }
    if (omega_rel < 0.0)
        throw std::invalid_argument("equilibrium_two: pass the positive relative frequency");
    const double ratio = omega_rel / q.coupling_k;
    auto bisect = [&](double lo, double hi) {
        // sign change of K h(theta) - omega_rel assumed across [lo, hi]
        auto g = [&](double t) { return q.coupling_k * h_eval(t, q) - omega_rel; };
        double a = lo, b = hi;
        double ga = g(a);
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (a + b);
            const double gm = g(m);
            if ((ga <= 0.0) == (gm <= 0.0)) { a = m; ga = gm; }
            else b = m;
        }
        return 0.5 * (a + b);
    };
    if (q.alpha < 0.5) {
        const double tt = theta_tilde(q.alpha);
        const double hbar = h_eval(tt, q);
        if (ratio > hbar) return out;  // no equilibrium below this coupling
        out.exists = true;
        if (ratio == hbar) {
            out.roots.push_back({tt, false});
            return out;
        }
        out.roots.push_back({bisect(1e-14, tt), true});
        out.roots.push_back({bisect(tt, kPi - 1e-14), false});
        return out;
    }
    if (q.alpha == 0.5) {
        if (!(ratio < 1.0)) return out;  // needs K > omega_rel
        out.exists = true;
        out.roots.push_back({bisect(1e-14, kPi - 1e-14), false});
        return out;
    }
    // alpha > 1/2: kernel decreases from +inf to 0, a root always exists.
    out.exists = true;
    double lo = 1e-12;
    while (q.coupling_k * h_eval(lo, q) < omega_rel) lo *= 0.5;
    out.roots.push_back({bisect(lo, kPi - 1e-14), false});
    return out;
}

StabilityReport linear_stability(const PhaseState& equilibrium,
                                 const NaturalFrequencies& omega_nat,
                                 const ModelParams& p) {
    const int n = p.n_osc;
    const ModelParams q = singular_params(p);
    const auto residual =
        rhs_full(equilibrium, omega_nat, q, KernelKind::singular_h,
                 ClusterPartition::singletons(n));
    double rnorm = 0.0;
    for (double v : residual) rnorm = std::max(rnorm, std::abs(v));
    if (rnorm > 1e-8)
        throw std::invalid_argument("linear_stability: residual ||H(Theta)|| > 1e-8");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (orthodromic_distance(equilibrium.theta[static_cast<std::size_t>(i)] -
                                     equilibrium.theta[static_cast<std::size_t>(j)]) == 0.0)
                throw std::invalid_argument("linear_stability: collision state");

    StabilityReport rep;
    rep.equilibrium = equilibrium;
    rep.matrix_a.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double v = h_prime(
                equilibrium.theta[static_cast<std::size_t>(j)] - equilibrium.theta[static_cast<std::size_t>(i)], q);
            a(i, j) = v;
            row += v;
        }
        a(i, i) = -row;
    }
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    Eigen::VectorXd ev;
    if (asym <= 1e-10) {
        Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
        ev = solver.eigenvalues();
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
        if (solver.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-8)
            throw std::runtime_error("linear_stability: unexpectedly complex spectrum");
        ev = solver.eigenvalues().real();
        std::sort(ev.data(), ev.data() + ev.size());
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rep.matrix_a[static_cast<std::size_t>(i * n + j)] = a(i, j);
    rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
    const double zero_tol = 1e-8;
    rep.zero_multiplicity = static_cast<int>(
        std::count_if(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                      [&](double l) { return std::abs(l) <= zero_tol; }));
    const bool any_positive = rep.eigenvalues.back() > zero_tol;
    const bool rest_negative =
        std::count_if(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                      [&](double l) { return l < -zero_tol; }) == n - rep.zero_multiplicity;
    if (any_positive) rep.verdict = StabilityVerdict::unstable;
    else if (rep.zero_multiplicity == 1 && rest_negative)
        rep.verdict = StabilityVerdict::stable;
    else rep.verdict = StabilityVerdict::indeterminate;
    return rep;
}

EquilibriumRefinement refine_equilibrium(const PhaseState& seed,
                                         const NaturalFrequencies& omega_nat,
                                         const ModelParams& p, int max_iter,
                                         double tol) {
    const int n = p.n_osc;
    const ModelParams q = singular_params(p);
    const ClusterPartition singles = ClusterPartition::singletons(n);
    EquilibriumRefinement out;
    out.equilibrium = seed;
    auto field = [&](const PhaseState& s) {
        return rhs_full(s, omega_nat, q, KernelKind::singular_h, singles);
    };
    auto norm_inf = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    std::vector<double> f = field(out.equilibrium);
    double fn = norm_inf(f);
    out.residual_history.push_back(fn);
    for (int iter = 0; iter < max_iter && fn > tol; ++iter) {
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 1, n);
        Eigen::VectorXd rhs_vec = Eigen::VectorXd::Zero(n + 1);
        const double kn = q.coupling_k / static_cast<double>(n);
        for (int i = 0; i < n; ++i) {
            double diag = 0.0;
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const double hp = kn * h_prime(out.equilibrium.theta[static_cast<std::size_t>(j)] -
                                                   out.equilibrium.theta[static_cast<std::size_t>(i)],
                                               q);
                jac(i, j) = hp;
                diag -= hp;
            }
            jac(i, i) = diag;
            rhs_vec(i) = -f[static_cast<std::size_t>(i)];
        }
        for (int j = 0; j < n; ++j) jac(n, j) = 1.0;  // stay in the zero-mean slice
        Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(rhs_vec);
        double lambda = 1.0;
        PhaseState cand = out.equilibrium;
        for (int back = 0; back < 40; ++back) {
            for (int i = 0; i < n; ++i)
                cand.theta[static_cast<std::size_t>(i)] =
                    out.equilibrium.theta[static_cast<std::size_t>(i)] + lambda * delta(i);
            const auto fc = field(cand);
            if (norm_inf(fc) < fn * (1.0 - 0.25 * lambda) || norm_inf(fc) < tol) {
                out.equilibrium = cand;
                f = fc;
                fn = norm_inf(fc);
                break;
            }
            lambda *= 0.5;
            if (back == 39) {
                out.converged = false;
                out.residual_history.push_back(fn);
                return out;
            }
        }
        out.residual_history.push_back(fn);
    }
    out.converged = fn <= tol;
    return out;
}

double measure_sync_time(const Trajectory& traj, double collision_tol) {
    for (const auto& s : traj.samples)
        if (phase_diameter(s) <= 10.0 * collision_tol) return s.t;
    return kInf;
}

std::vector<BoundReport> check_identical_bounds(const Trajectory& traj,
                                                const ModelParams& p, double beta) {
    if (!omegas_identical(traj.omega_nat))
        throw std::invalid_argument("check_identical_bounds: non-identical frequencies");
    if (traj.samples.empty())
        throw std::invalid_argument("check_identical_bounds: empty trajectory");
    const ModelParams q = singular_params(p);
    const double t0 = traj.samples.front().t;
    const double d0 = phase_diameter(traj.samples.front());
    if (!(d0 > 0.0 && d0 < kPi))
        throw std::invalid_argument("check_identical_bounds: need 0 < D(Theta_0) < pi");
    const double hd0 = h_eval(d0, q);
    const double k = q.coupling_k, a = q.alpha;
    std::vector<BoundReport> out;

    BoundReport mono = make_report("diameter_nonincreasing", "bound:identical/diameter-monotone");
    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i)
        track_min(mono, phase_diameter(traj.samples[i]) - phase_diameter(traj.samples[i + 1]),
                  traj.samples[i + 1].t);
    finalize(out, std::move(mono), 1e-9);

    if (q.regime() == Regime::subcritical || q.regime() == Regime::critical) {
        BoundReport env = make_report("exp_diameter_envelope",
                                      "bound:identical/exponential-envelope");
        for (const auto& s : traj.samples)
            track_min(env, d0 * std::exp(-k * hd0 / d0 * (s.t - t0)) - phase_diameter(s), s.t);
        finalize(out, std::move(env), 1e-6);
    }
    if (q.regime() == Regime::subcritical) {
        // d/dt D^{2a} <= -2aK h(D0)/D0^{1-2a}, so the power itself decays
        // linearly until synchronization.
        BoundReport env = make_report("algebraic_diameter_envelope",
                                      "bound:identical/subcritical/power-envelope");
        const double slope = 2.0 * a * k * hd0 / std::pow(d0, 1.0 - 2.0 * a);
        for (const auto& s : traj.samples) {
            const double rhs_env = std::max(std::pow(d0, 2.0 * a) - slope * (s.t - t0), 0.0);
            track_min(env, rhs_env - std::pow(phase_diameter(s), 2.0 * a), s.t);
        }
        finalize(out, std::move(env), 1e-6);

        BoundReport sync = make_report("sync_time_bound", "bound:identical/subcritical/finite-time-sync");
        const double t_c = std::pow(d0, 1.0 - 2.0 * a) / (2.0 * a * k * hd0);
        track_min(sync, t_c - (measure_sync_time(traj) - t0), t_c);
        finalize(out, std::move(sync));
    }
    if (q.regime() == Regime::critical) {
        BoundReport sync = make_report("total_sync_time_bound", "bound:identical/critical/finite-time-sync");
        const double t_c = d0 / (k * hd0);
        track_min(sync, t_c - (measure_sync_time(traj) - t0), t_c);
        finalize(out, std::move(sync));
    }
    if (q.regime() == Regime::supercritical) {
        BoundReport env = make_report("algebraic_decay_envelope",
                                      "bound:identical/supercritical/algebraic-envelope");
        const double coef = (2.0 * a - 1.0) * std::pow(2.0, 2.0 * a - 1.0) * k * hd0 /
                            std::pow(d0, 2.0 * a);
        for (const auto& s : traj.samples) {
            const double env_val = std::pow(
                std::pow(d0, 1.0 - 2.0 * a) + coef * (s.t - t0), -1.0 / (2.0 * a - 1.0));
            track_min(env, env_val - phase_diameter(s), s.t);
        }
        finalize(out, std::move(env), 1e-6);

        BoundReport first = make_report("first_collision_bound",
                                        "bound:identical/supercritical/first-collision");
        const double t_c1 = d0 / ((1.0 - beta) * k * hd0);
        double first_collision = kInf;
        for (const auto& e : traj.events)
            if (e.kind == EventKind::collision) { first_collision = e.t_event; break; }
        track_min(first, t_c1 - (first_collision - t0), t_c1);
        finalize(out, std::move(first));
    }
    return out;
}

std::vector<BoundReport> check_nonidentical_bounds(const Trajectory& traj,
                                                   const ModelParams& p,
                                                   double d_inf) {
    if (p.regime() != Regime::subcritical)
        throw std::invalid_argument("check_nonidentical_bounds: subcritical only");
    if (traj.samples.empty() || !traj.samples.front().freq)
        throw std::invalid_argument("check_nonidentical_bounds: needs sampled frequencies");
    const ModelParams q = singular_params(p);
    const int n = q.n_osc;
    const double t0 = traj.samples.front().t;
    const double d0 = phase_diameter(traj.samples.front());
    const double fd0 = freq_diameter(traj.samples.front());
    const double tt = theta_tilde(q.alpha);
    const double hp_dinf = h_prime(d_inf, q);
    const double threshold = fd0 / (hp_dinf * (d_inf - d0));
    std::vector<BoundReport> out;

    BoundReport hyp = make_report("hypotheses", "bound:nonidentical/hypotheses");
    track_min(hyp, q.coupling_k - threshold, t0);
    track_min(hyp, tt - d_inf, t0);
    track_min(hyp, d_inf - d0, t0);
    finalize(out, std::move(hyp));

    BoundReport diam = make_report("uniform_diameter_bound", "bound:nonidentical/diameter-below-dinf");
    for (const auto& s : traj.samples) track_min(diam, d_inf - phase_diameter(s), s.t);
    finalize(out, std::move(diam));

    BoundReport upper = make_report("freq_diameter_upper", "bound:nonidentical/frequency-decay-upper");
    for (const auto& s : traj.samples)
        track_min(upper, fd0 * std::exp(-q.coupling_k * hp_dinf * (s.t - t0)) - freq_diameter(s),
                  s.t);
    finalize(out, std::move(upper), 1e-9);

    // Ordering of phases by ascending natural frequency, as the limit state
    // must realize it.
    std::vector<int> omega_order(static_cast<std::size_t>(n));
    std::iota(omega_order.begin(), omega_order.end(), 0);
    std::sort(omega_order.begin(), omega_order.end(), [&](int x, int y) {
        return traj.omega_nat.omega[static_cast<std::size_t>(x)] <
               traj.omega_nat.omega[static_cast<std::size_t>(y)];
    });
    auto ordered_at = [&](const PhaseState& s) {
        for (int i = 0; i + 1 < n; ++i)
            if (!(s.theta[static_cast<std::size_t>(omega_order[static_cast<std::size_t>(i)])] <
                  s.theta[static_cast<std::size_t>(omega_order[static_cast<std::size_t>(i + 1)])]))
                return false;
        return true;
    };

    BoundReport final_order = make_report("limit_ordering", "bound:nonidentical/limit-ordering");
    {
        const auto& last = traj.samples.back();
        double worst = kInf;
        for (int i = 0; i + 1 < n; ++i)
            worst = std::min(worst,
                             last.theta[static_cast<std::size_t>(omega_order[static_cast<std::size_t>(i + 1)])] -
                                 last.theta[static_cast<std::size_t>(omega_order[static_cast<std::size_t>(i)])]);
        track_min(final_order, worst, last.t);
    }
    finalize(out, std::move(final_order));

    // Lower frequency-decay bound past the ordering time, with eps_Delta the
    // observed minimal nearest-neighbor gap from then on.
    std::size_t ord_start = traj.samples.size();
    while (ord_start > 0 && ordered_at(traj.samples[ord_start - 1])) --ord_start;
    bool distinct = true;
    for (int i = 0; i + 1 < n; ++i)
        if (traj.omega_nat.omega[static_cast<std::size_t>(omega_order[static_cast<std::size_t>(i + 1)])] -
                traj.omega_nat.omega[static_cast<std::size_t>(omega_order[static_cast<std::size_t>(i)])] <=
            0.0)
            distinct = false;
    if (distinct && ord_start < traj.samples.size()) {
        double eps_delta = kInf;
        for (std::size_t s = ord_start; s < traj.samples.size(); ++s) {
            std::vector<double> th = traj.samples[s].theta;
            std::sort(th.begin(), th.end());
            for (std::size_t i = 0; i + 1 < th.size(); ++i)
                eps_delta = std::min(eps_delta, th[i + 1] - th[i]);
        }
        if (eps_delta > 0.0 && std::isfinite(eps_delta)) {
            BoundReport lower =
                make_report("freq_diameter_lower", "bound:nonidentical/frequency-decay-lower");
            const double t_ord = traj.samples[ord_start].t;
            const double fd_ord = freq_diameter(traj.samples[ord_start]);
            const double rate = q.coupling_k * h_prime(eps_delta, q);
            for (std::size_t s = ord_start; s < traj.samples.size(); ++s) {
                const auto& smp = traj.samples[s];
                track_min(lower, freq_diameter(smp) - fd_ord * std::exp(-rate * (smp.t - t_ord)),
                          smp.t);
            }
            finalize(out, std::move(lower), 1e-9);
        }
    }

    BoundReport nocol = make_report("collision_free", "bound:nonidentical/no-collision");
    double collisions = 0.0;
    for (const auto& e : traj.events)
        if (e.kind == EventKind::collision) collisions += 1.0;
    track_min(nocol, -collisions, traj.samples.back().t);
    finalize(out, std::move(nocol));
    return out;
}

double gamma_prime_minimizer(const ModelParams& p) {
    return p.sigma / std::sqrt(p.c_alpha_zeta * (2.0 * p.alpha + 1.0));
}

std::vector<BoundReport> check_regular_bounds(const Trajectory& traj,
                                              const ModelParams& p,
                                              std::optional<double> d_inf) {
    if (traj.samples.empty())
        throw std::invalid_argument("check_regular_bounds: empty trajectory");
    const double t0 = traj.samples.front().t;
    const double d0 = phase_diameter(traj.samples.front());
    std::vector<BoundReport> out;
    if (omegas_identical(traj.omega_nat)) {
        if (!(d0 > 0.0 && d0 < kPi))
            throw std::invalid_argument("check_regular_bounds: need 0 < D(Theta_0) < pi");
        const double rate_up =
            p.coupling_k * gamma_regular(d0, p) * std::sin(d0) / d0;
        BoundReport upper = make_report("phase_sandwich_upper", "bound:regular/identical/upper");
        BoundReport lower = make_report("phase_sandwich_lower", "bound:regular/identical/lower");
        for (const auto& s : traj.samples) {
            const double d = phase_diameter(s);
            track_min(upper, d0 * std::exp(-rate_up * (s.t - t0)) - d, s.t);
            track_min(lower, d - d0 * std::exp(-p.coupling_k * (s.t - t0)), s.t);
        }
        finalize(out, std::move(upper), 1e-6);
        finalize(out, std::move(lower), 1e-6);
        return out;
    }
    if (!d_inf)
        throw std::invalid_argument("check_regular_bounds: non-identical case needs d_inf");
    if (!traj.samples.front().freq)
        throw std::invalid_argument("check_regular_bounds: needs sampled frequencies");
    const double di = *d_inf;
    const double theta_plus = gamma_prime_minimizer(p);
    const double gp = gamma_regular_prime(theta_plus, p);  // most negative slope
    const double rate = gp * std::sin(di) + gamma_regular(di, p) * std::cos(di);
    const double fd0 = freq_diameter(traj.samples.front());

    BoundReport hyp = make_report("hypotheses", "bound:regular/nonidentical/hypotheses");
    track_min(hyp, gamma_regular(di, p) / std::tan(di) - (-gp), t0);
    track_min(hyp, p.coupling_k - fd0 / (rate * (di - d0)), t0);
    track_min(hyp, kPi / 2.0 - di, t0);
    finalize(out, std::move(hyp));

    BoundReport diam = make_report("uniform_diameter_bound", "bound:regular/nonidentical/diameter");
    BoundReport upper = make_report("freq_sandwich_upper", "bound:regular/nonidentical/upper");
    BoundReport lower = make_report("freq_sandwich_lower", "bound:regular/nonidentical/lower");
    for (const auto& s : traj.samples) {
        track_min(diam, di - phase_diameter(s), s.t);
        const double fd = freq_diameter(s);
        track_min(upper, fd0 * std::exp(-p.coupling_k * rate * (s.t - t0)) - fd, s.t);
        track_min(lower, fd - fd0 * std::exp(-p.coupling_k * (s.t - t0)), s.t);
    }
    finalize(out, std::move(diam));
    finalize(out, std::move(upper), 1e-9);
    finalize(out, std::move(lower), 1e-9);
    return out;
}

namespace {

void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

std::string bound_reports_json(const std::vector<BoundReport>& reports) {
    std::string out = "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        if (i) out += ",";
        out += "\n  {\"bound_name\": \"" + r.bound_name + "\", \"theorem_ref\": \"" +
               r.theorem_ref + "\", \"satisfied\": ";
        out += r.satisfied ? "true" : "false";
        out += ", \"margin\": ";
        append_g17(out, r.margin);
        out += ", \"worst_t\": ";
        append_g17(out, r.worst_t);
        out += "}";
    }
    out += "\n]\n";
    return out;
}

const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::stable: return "stable";
        case StabilityVerdict::unstable: return "unstable";
        case StabilityVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

std::string stability_report_json(const StabilityReport& report) {
    std::string out = "{\n  \"equilibrium\": [";
    for (std::size_t i = 0; i < report.equilibrium.theta.size(); ++i) {
        if (i) out += ",";
        append_g17(out, report.equilibrium.theta[i]);
    }
    out += "],\n  \"eigenvalues\": [";
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
        if (i) out += ",";
        append_g17(out, report.eigenvalues[i]);
    }
    out += "],\n  \"zero_multiplicity\": " + std::to_string(report.zero_multiplicity);
    out += ",\n  \"verdict\": \"";
    out += to_string(report.verdict);
    out += "\"\n}\n";
    return out;
}

}  // namespace kuramoto
