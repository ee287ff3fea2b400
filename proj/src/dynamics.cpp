#include "kuramoto/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <future>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "kuramoto/kernel.hpp"

namespace kuramoto {

void IntegratorConfig::validate() const {
    if (!(dt_min > 0.0 && dt_min <= dt_max))
        throw std::invalid_argument("IntegratorConfig: need 0 < dt_min <= dt_max");
    if (!(rel_tol > 0.0 && abs_tol > 0.0))
        throw std::invalid_argument("IntegratorConfig: tolerances must be positive");
    if (!(collision_tol > 0.0 && event_bisection_tol > 0.0))
        throw std::invalid_argument("IntegratorConfig: event tolerances must be positive");
    if (!(t_end > 0.0 && sample_dt > 0.0))
        throw std::invalid_argument("IntegratorConfig: t_end and sample_dt must be positive");
}

namespace {

double kernel_for_kind(double theta, const ModelParams& p, KernelKind kind) {
    switch (kind) {
        case KernelKind::regular_h: return h_regular(theta, p);
        case KernelKind::scaled_h_eps: return h_scaled(theta, p);
        case KernelKind::singular_h: {
            ModelParams q = p;
            q.epsilon = 0.0;
            return h_eval(theta, q);
        }
        case KernelKind::adaptive_gamma:
            throw std::invalid_argument("rhs_full: adaptive coupling has its own field");
    }
    throw std::invalid_argument("rhs_full: unknown kernel kind");
}

}  // namespace

std::vector<double> rhs_full(const PhaseState& state,
                             const NaturalFrequencies& omega_nat,
                             const ModelParams& p, KernelKind kind,
                             const ClusterPartition& partition) {
    const int n = static_cast<int>(state.theta.size());
    std::vector<int> cluster_of(static_cast<std::size_t>(n));
    for (int k = 0; k < partition.n_clusters(); ++k)
        for (int i : partition.clusters[static_cast<std::size_t>(k)])
            cluster_of[static_cast<std::size_t>(i)] = k;
    std::vector<double> out(static_cast<std::size_t>(n));
    const double kn = p.coupling_k / static_cast<double>(n);
    for (int i = 0; i < n; ++i) {
        double s = omega_nat.omega[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (cluster_of[static_cast<std::size_t>(j)] == cluster_of[static_cast<std::size_t>(i)]) continue;
            const double d = state.theta[static_cast<std::size_t>(j)] - state.theta[static_cast<std::size_t>(i)];
            if (kind == KernelKind::singular_h && p.alpha >= 0.5 &&
                orthodromic_distance(d) == 0.0)
                throw EventNeededError("rhs_full: colliding non-merged pair");
            s += kn * kernel_for_kind(d, p, kind);
        }
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

std::vector<double> rhs_reduced(const std::vector<double>& cluster_phases,
                                const ClusterPartition& partition,
                                const NaturalFrequencies& omega_nat,
                                const ModelParams& p) {
    const int kappa = partition.n_clusters();
    if (static_cast<int>(cluster_phases.size()) != kappa)
        throw std::invalid_argument("rhs_reduced: phase/partition mismatch");
    ModelParams q = p;
    const double kn = p.coupling_k / static_cast<double>(p.n_osc);
    std::vector<double> out(static_cast<std::size_t>(kappa));
    for (int k = 0; k < kappa; ++k) {
        double omega_hat = 0.0;
        for (int i : partition.clusters[static_cast<std::size_t>(k)])
            omega_hat += omega_nat.omega[static_cast<std::size_t>(i)];
        omega_hat /= static_cast<double>(partition.size_of(k));
        double s = omega_hat;
        for (int m = 0; m < kappa; ++m) {
            if (m == k) continue;
            const double d = cluster_phases[static_cast<std::size_t>(m)] - cluster_phases[static_cast<std::size_t>(k)];
            if (q.epsilon == 0.0 && q.alpha >= 0.5 && orthodromic_distance(d) == 0.0)
                throw EventNeededError("rhs_reduced: colliding clusters");
            s += kn * static_cast<double>(partition.size_of(m)) * h_eval(d, q);
        }
        out[static_cast<std::size_t>(k)] = s;
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> rhs_adaptive(
    const AdaptiveState& state, const NaturalFrequencies& omega_nat,
    const ModelParams& p) {
    const int n = static_cast<int>(state.theta.size());
    std::vector<double> theta_dot(static_cast<std::size_t>(n));
    std::vector<double> a_dot(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = omega_nat.omega[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const double d = state.theta[static_cast<std::size_t>(j)] - state.theta[static_cast<std::size_t>(i)];
            s += p.coupling_k * state.a_at(i, j, n) * std::sin(d) / static_cast<double>(n);
            a_dot[static_cast<std::size_t>(i * n + j)] = p.eta * (gamma_regular(d, p) - state.a_at(i, j, n));
        }
        theta_dot[static_cast<std::size_t>(i)] = s;
    }
    return {std::move(theta_dot), std::move(a_dot)};
}

std::vector<double> well_prepared_couplings(const std::vector<double>& theta0,
                                            const ModelParams& p) {
    const int n = static_cast<int>(theta0.size());
    std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i * n + j)] =
                gamma_regular(theta0[static_cast<std::size_t>(j)] - theta0[static_cast<std::size_t>(i)], p);
    return a;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) stepper
// ---------------------------------------------------------------------------

namespace {

using RhsFn = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;

struct Dp45 {
    RhsFn rhs;
    double rel_tol, abs_tol, dt_min;

    // One accepted step from (t, y), not exceeding dt_limit; h carries the
    // controller's suggestion across calls. Returns the step taken.
    double step(double& t, std::vector<double>& y, double dt_limit, double& h) const {
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
        const std::size_t n = y.size();
        std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
        rhs(t, y, k1);
        double hh = std::min(h, dt_limit);
        for (int iter = 0; iter < 200; ++iter) {
            if (hh < dt_min)
                throw IntegrationError("step size underflow at t = " + std::to_string(t));
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hh * a21 * k1[i];
            rhs(t + hh / 5.0, tmp, k2);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hh * (a31 * k1[i] + a32 * k2[i]);
            rhs(t + 3.0 * hh / 10.0, tmp, k3);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hh * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            rhs(t + 4.0 * hh / 5.0, tmp, k4);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hh * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs(t + 8.0 * hh / 9.0, tmp, k5);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hh * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                      a64 * k4[i] + a65 * k5[i]);
            rhs(t + hh, tmp, k6);
            for (std::size_t i = 0; i < n; ++i)
                ynew[i] = y[i] + hh * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                       b5 * k5[i] + b6 * k6[i]);
            rhs(t + hh, ynew, k7);
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double e = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                       e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc =
                    abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / static_cast<double>(n));
            if (err <= 1.0) {
                t += hh;
                y = ynew;
                const double grow = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -0.2);
                h = hh * std::clamp(grow, 0.2, 5.0);
                return hh;
            }
            hh *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
        throw IntegrationError("step rejected repeatedly at t = " + std::to_string(t));
    }
};

// Generic smooth integration with exact landing on the sample grid.
void integrate_smooth(const RhsFn& rhs, double t0, std::vector<double> y,
                      const IntegratorConfig& cfg,
                      const std::function<void(double, const std::vector<double>&)>& on_sample) {
    Dp45 stepper{rhs, cfg.rel_tol, cfg.abs_tol, cfg.dt_min};
    const double t_final = t0 + cfg.t_end;
    double t = t0;
    double h = std::min(cfg.dt_max, cfg.sample_dt);
    on_sample(t, y);
    long k = 1;
    double next_sample = t0 + cfg.sample_dt;
    while (t < t_final - 1e-14 * std::max(1.0, std::abs(t_final))) {
        const double target = std::min(next_sample, t_final);
        double hcap = std::min({h, cfg.dt_max, target - t});
        stepper.step(t, y, target - t, hcap);
        h = hcap;
        if (t >= target - 1e-12 * std::max(1.0, std::abs(target))) {
            t = target;
            if (target == next_sample || next_sample >= t_final) {
                on_sample(t, y);
                ++k;
                next_sample = t0 + static_cast<double>(k) * cfg.sample_dt;
            }
            if (target == t_final) break;
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Event-driven singular integrator
// ---------------------------------------------------------------------------

namespace {

struct PairKey {
    int a, b;  // minimal member indices of the two clusters, a < b
    bool operator<(const PairKey& o) const { return a < o.a || (a == o.a && b < o.b); }
};

class EventDrivenRun {
  public:
    EventDrivenRun(const PhaseState& init, const NaturalFrequencies& omega_nat,
                   const ModelParams& p, const IntegratorConfig& cfg)
        : omega_(omega_nat), p_(p), cfg_(cfg), regime_(p.regime()) {
        p_.epsilon = 0.0;
        t_ = init.t;
        const int n = p_.n_osc;
        if (static_cast<int>(init.theta.size()) != n)
            throw std::invalid_argument("integrate: state length != n_osc");
        for (double v : init.theta)
            if (!std::isfinite(v)) throw std::invalid_argument("integrate: non-finite state");
        // Initial clusters: groups passing the sticking predicate are fused;
        // the rest start as singletons (their contacts are handled as events).
        ClusterPartition detected = detect_partition(init, cfg_.collision_tol);
        std::vector<std::vector<int>> keep;
        for (const auto& c : detected.clusters) {
            if (c.size() == 1 || sticks(c)) {
                keep.push_back(c);
            } else {
                for (int i : c) keep.push_back({i});
            }
        }
        part_ = ClusterPartition::from_clusters(std::move(keep));
        offsets_.assign(static_cast<std::size_t>(n), 0.0);
        phases_.clear();
        for (const auto& c : part_.clusters) {
            const double anchor = init.theta[static_cast<std::size_t>(c.front())];
            double acc = 0.0;
            for (int i : c) acc += wrap_angle(init.theta[static_cast<std::size_t>(i)] - anchor);
            const double rep = anchor + acc / static_cast<double>(c.size());
            phases_.push_back(rep);
            for (int i : c)
                offsets_[static_cast<std::size_t>(i)] =
                    kTwoPi * std::round((init.theta[static_cast<std::size_t>(i)] - rep) / kTwoPi);
        }
        rebuild_cache();
        traj_.params = p_;
        traj_.omega_nat = omega_;
    }

    Trajectory run() {
        const double t0 = t_;
        const double t_final = t0 + cfg_.t_end;
        double h = std::min(cfg_.dt_max, cfg_.sample_dt);
        emit_sample();
        long k = 1;
        double next_sample = t0 + cfg_.sample_dt;
        int guard = 0;
        while (t_ < t_final - 1e-14 * std::max(1.0, std::abs(t_final))) {
            if (++guard > 100000000) throw IntegrationError("step budget exhausted");
            refresh_suppression();
            if (min_unsuppressed_dist(phases_) < contact_tol()) {
                handle_contact(t_final);
                continue;
            }
            const double target = std::min(next_sample, t_final);
            const double t_prev = t_;
            const std::vector<double> y_prev = phases_;
            double dt_limit = target - t_;
            dt_limit = std::min(dt_limit, cfg_.dt_max);
            dt_limit = std::min(dt_limit, supercritical_cap(phases_));
            double hh = std::min(h, dt_limit);
            step_once(t_, phases_, dt_limit, hh);
            h = hh;
            if (min_unsuppressed_dist(phases_) < contact_tol()) {
                localize_event(t_prev, y_prev);
                handle_contact(t_final);
                continue;
            }
            // A pair may cross coincidence inside one step with both
            // endpoints outside the tolerance; catch the sign flip.
            if (auto crossed = find_gap_sign_flip(y_prev, phases_)) {
                localize_gap_crossing(t_prev, y_prev, crossed->first, crossed->second);
                if (min_unsuppressed_dist(phases_) < contact_tol()) {
                    handle_contact(t_final);
                    continue;
                }
            }
            if (t_ >= target - 1e-12 * std::max(1.0, std::abs(target))) {
                t_ = target;
                if (target == next_sample || next_sample >= t_final) {
                    emit_sample();
                    ++k;
                    next_sample = t0 + static_cast<double>(k) * cfg_.sample_dt;
                }
                if (target == t_final) break;
            }
        }
        std::stable_sort(traj_.events.begin(), traj_.events.end(),
                         [](const EventRecord& a, const EventRecord& b) {
                             return a.t_event < b.t_event;
                         });
        return std::move(traj_);
    }

  private:
    const NaturalFrequencies& omega_;
    ModelParams p_;
    IntegratorConfig cfg_;
    Regime regime_;

    double t_ = 0.0;
    std::vector<double> phases_;
    ClusterPartition part_;
    std::vector<double> offsets_;
    std::vector<double> omega_hat_;
    std::vector<double> sizes_;
    Trajectory traj_;
    std::set<PairKey> suppressed_;
    std::deque<double> event_times_;

    void rebuild_cache() {
        const int kappa = part_.n_clusters();
        omega_hat_.assign(static_cast<std::size_t>(kappa), 0.0);
        sizes_.assign(static_cast<std::size_t>(kappa), 0.0);
        for (int c = 0; c < kappa; ++c) {
            double s = 0.0;
            for (int i : part_.clusters[static_cast<std::size_t>(c)])
                s += omega_.omega[static_cast<std::size_t>(i)];
            omega_hat_[static_cast<std::size_t>(c)] = s / static_cast<double>(part_.size_of(c));
            sizes_[static_cast<std::size_t>(c)] = static_cast<double>(part_.size_of(c));
        }
    }

    void reduced_field(const std::vector<double>& v, std::vector<double>& out) const {
        const int kappa = static_cast<int>(v.size());
        const double kn = p_.coupling_k / static_cast<double>(p_.n_osc);
        for (int c = 0; c < kappa; ++c) {
            double s = omega_hat_[static_cast<std::size_t>(c)];
            for (int m = 0; m < kappa; ++m) {
                if (m == c) continue;
                s += kn * sizes_[static_cast<std::size_t>(m)] *
                     h_eval(v[static_cast<std::size_t>(m)] - v[static_cast<std::size_t>(c)], p_);
            }
            out[static_cast<std::size_t>(c)] = s;
        }
    }

    double supercritical_cap(const std::vector<double>& v) const {
        if (regime_ != Regime::supercritical || v.size() < 2)
            return std::numeric_limits<double>::infinity();
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b)
                dmin = std::min(dmin, orthodromic_distance(v[a] - v[b]));
        return 0.1 * std::pow(dmin, 2.0 * p_.alpha) /
               (p_.coupling_k * static_cast<double>(p_.n_osc));
    }

    // Contact distance threshold. In the supercritical regime the pairwise
    // attraction grows like d^(1-2a), so below
    // d = (K tau / N)^(1/2a) the remaining time to true coincidence is under
    // the bisection tolerance tau and resolving further would need steps
    // below dt_min; contact is declared there.
    double contact_tol() const {
        if (regime_ != Regime::supercritical) return cfg_.collision_tol;
        const double d_eff = std::pow(
            p_.coupling_k * cfg_.event_bisection_tol / static_cast<double>(p_.n_osc),
            1.0 / (2.0 * p_.alpha));
        return std::max(cfg_.collision_tol, d_eff);
    }

    void step_once(double& t, std::vector<double>& y, double dt_limit, double& h) const {
        auto rhs = [this](double, const std::vector<double>& v, std::vector<double>& out) {
            reduced_field(v, out);
        };
        if (cfg_.method == IntegratorConfig::Method::rk45) {
            Dp45 stepper{rhs, cfg_.rel_tol, cfg_.abs_tol, cfg_.dt_min};
            stepper.step(t, y, dt_limit, h);
            return;
        }
        // Rosenbrock-Euler: y+ = y + h (I - h J)^{-1} f(y); fixed step, so the
        // suggestion resets to dt_max instead of inheriting a landing sliver.
        const int kappa = static_cast<int>(y.size());
        const double hh = std::min(dt_limit, cfg_.dt_max);
        std::vector<double> f(static_cast<std::size_t>(kappa));
        reduced_field(y, f);
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(kappa, kappa);
        const double kn = p_.coupling_k / static_cast<double>(p_.n_osc);
        for (int c = 0; c < kappa; ++c)
            for (int m = 0; m < kappa; ++m) {
                if (m == c) continue;
                const double d = y[static_cast<std::size_t>(m)] - y[static_cast<std::size_t>(c)];
                const double hp = kn * sizes_[static_cast<std::size_t>(m)] * h_prime(d, p_);
                jac(c, m) += hp;
                jac(c, c) -= hp;
            }
        Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(kappa, kappa) - hh * jac;
        Eigen::VectorXd fv(kappa);
        for (int c = 0; c < kappa; ++c) fv(c) = f[static_cast<std::size_t>(c)];
        Eigen::VectorXd dy = lhs.partialPivLu().solve(fv);
        for (int c = 0; c < kappa; ++c) y[static_cast<std::size_t>(c)] += hh * dy(c);
        t += hh;
        h = cfg_.dt_max;
    }

    PairKey key_for(int ca, int cb) const {
        int ra = part_.representative(ca), rb = part_.representative(cb);
        if (ra > rb) std::swap(ra, rb);
        return {ra, rb};
    }

    double min_unsuppressed_dist(const std::vector<double>& v) const {
        double dmin = std::numeric_limits<double>::infinity();
        const int kappa = static_cast<int>(v.size());
        for (int a = 0; a < kappa; ++a)
            for (int b = a + 1; b < kappa; ++b) {
                if (suppressed_.count(key_for(a, b))) continue;
                dmin = std::min(dmin, orthodromic_distance(v[static_cast<std::size_t>(a)] -
                                                           v[static_cast<std::size_t>(b)]));
            }
        return dmin;
    }

    void refresh_suppression() {
        if (suppressed_.empty()) return;
        std::set<PairKey> still;
        const int kappa = part_.n_clusters();
        for (int a = 0; a < kappa; ++a)
            for (int b = a + 1; b < kappa; ++b) {
                const PairKey k = key_for(a, b);
                if (!suppressed_.count(k)) continue;
                if (orthodromic_distance(phases_[static_cast<std::size_t>(a)] -
                                         phases_[static_cast<std::size_t>(b)]) <=
                    3.0 * contact_tol())
                    still.insert(k);
            }
        suppressed_ = std::move(still);
    }

    // First unsuppressed pair whose wrapped gap changed sign through zero
    // (sum of magnitudes below pi rules out crossings of the antipode).
    std::optional<std::pair<int, int>> find_gap_sign_flip(
        const std::vector<double>& before, const std::vector<double>& after) const {
        const int kappa = static_cast<int>(before.size());
        for (int a = 0; a < kappa; ++a)
            for (int b = a + 1; b < kappa; ++b) {
                if (suppressed_.count(key_for(a, b))) continue;
                const double g0 = wrap_angle(before[static_cast<std::size_t>(b)] -
                                             before[static_cast<std::size_t>(a)]);
                const double g1 = wrap_angle(after[static_cast<std::size_t>(b)] -
                                             after[static_cast<std::size_t>(a)]);
                if (g0 * g1 < 0.0 && std::abs(g0) + std::abs(g1) < kPi)
                    return std::make_pair(a, b);
            }
        return std::nullopt;
    }

    void localize_gap_crossing(double t_lo, const std::vector<double>& y_lo_in,
                               int a_cl, int b_cl) {
        double a = t_lo, b = t_;
        std::vector<double> y_lo = y_lo_in, y_hi = phases_;
        const double sign0 = wrap_angle(y_lo_in[static_cast<std::size_t>(b_cl)] -
                                        y_lo_in[static_cast<std::size_t>(a_cl)]);
        while (b - a > cfg_.event_bisection_tol) {
            const double mid = 0.5 * (a + b);
            double tm = a;
            std::vector<double> ym = y_lo;
            double h = std::min(cfg_.dt_max, mid - a);
            while (tm < mid - 1e-16 * std::max(1.0, std::abs(mid))) {
                double dt_limit = std::min({mid - tm, cfg_.dt_max, supercritical_cap(ym)});
                double hh = std::min(h, dt_limit);
                step_once(tm, ym, dt_limit, hh);
                h = hh;
            }
            const double gm = wrap_angle(ym[static_cast<std::size_t>(b_cl)] -
                                         ym[static_cast<std::size_t>(a_cl)]);
            if (gm * sign0 > 0.0) {
                a = tm;
                y_lo = ym;
            } else {
                b = tm;
                y_hi = ym;
            }
        }
        t_ = b;
        phases_ = y_hi;
    }

    // Bisect the crossing of the collision tolerance inside the last step.
    void localize_event(double t_lo, const std::vector<double>& y_lo_in) {
        double a = t_lo, b = t_;
        std::vector<double> y_lo = y_lo_in, y_hi = phases_;
        while (b - a > cfg_.event_bisection_tol) {
            const double mid = 0.5 * (a + b);
            double tm = a;
            std::vector<double> ym = y_lo;
            double h = std::min(cfg_.dt_max, mid - a);
            while (tm < mid - 1e-16 * std::max(1.0, std::abs(mid))) {
                double dt_limit = std::min({mid - tm, cfg_.dt_max, supercritical_cap(ym)});
                double hh = std::min(h, dt_limit);
                step_once(tm, ym, dt_limit, hh);
                h = hh;
            }
            if (min_unsuppressed_dist(ym) < contact_tol()) {
                b = tm;
                y_hi = ym;
            } else {
                a = tm;
                y_lo = ym;
            }
        }
        t_ = b;
        phases_ = y_hi;
    }

    PhaseState full_state() const {
        PhaseState s;
        s.t = t_;
        const int n = p_.n_osc;
        s.theta.assign(static_cast<std::size_t>(n), 0.0);
        std::vector<double> freq_red(phases_.size());
        reduced_field(phases_, freq_red);
        s.freq = std::vector<double>(static_cast<std::size_t>(n), 0.0);
        for (int c = 0; c < part_.n_clusters(); ++c)
            for (int i : part_.clusters[static_cast<std::size_t>(c)]) {
                s.theta[static_cast<std::size_t>(i)] =
                    phases_[static_cast<std::size_t>(c)] + offsets_[static_cast<std::size_t>(i)];
                (*s.freq)[static_cast<std::size_t>(i)] = freq_red[static_cast<std::size_t>(c)];
            }
        return s;
    }

    void emit_sample() { traj_.samples.push_back(full_state()); }

    bool sticks(const std::vector<int>& members) const {
        std::vector<double> omegas;
        omegas.reserve(members.size());
        for (int i : members) omegas.push_back(omega_.omega[static_cast<std::size_t>(i)]);
        switch (regime_) {
            case Regime::subcritical: return sticking_subcritical(omegas, 1e-12);
            case Regime::critical:
                return sticking_critical(omegas, p_.coupling_k, p_.n_osc);
            case Regime::supercritical: return true;
        }
        return false;
    }

    void note_event(double t) {
        event_times_.push_back(t);
        if (event_times_.size() > 200) event_times_.pop_front();
        if (event_times_.size() >= 50) {
            const double window_start = event_times_[event_times_.size() - 50];
            if (t - window_start <= cfg_.event_bisection_tol) {
                std::ostringstream os;
                os << "Zeno diagnostic: 50 events within " << cfg_.event_bisection_tol
                   << " time units near t = " << t;
                throw ZenoError(os.str());
            }
        }
        if (traj_.events.size() > 100000)
            throw IntegrationError("event budget exhausted (possible switching loop)");
    }

    // Collisional type at the current instant: current partition with
    // tolerance-close clusters viewed as unioned.
    ClusterPartition contact_view(const std::vector<std::vector<int>>& groups) const {
        std::vector<std::vector<int>> raw;
        std::vector<bool> grouped(static_cast<std::size_t>(part_.n_clusters()), false);
        for (const auto& g : groups) {
            std::vector<int> members;
            for (int c : g) {
                grouped[static_cast<std::size_t>(c)] = true;
                members.insert(members.end(), part_.clusters[static_cast<std::size_t>(c)].begin(),
                               part_.clusters[static_cast<std::size_t>(c)].end());
            }
            raw.push_back(std::move(members));
        }
        for (int c = 0; c < part_.n_clusters(); ++c)
            if (!grouped[static_cast<std::size_t>(c)]) raw.push_back(part_.clusters[static_cast<std::size_t>(c)]);
        return ClusterPartition::from_clusters(std::move(raw));
    }

    void merge_group(const std::vector<int>& group_clusters) {
        // Anchor at the smallest representative; other members may sit on
        // different 2*pi sheets, so the merged phase is the anchor plus the
        // size-weighted mean of wrapped offsets.
        int anchor = group_clusters.front();
        for (int c : group_clusters)
            if (part_.representative(c) < part_.representative(anchor)) anchor = c;
        const double va = phases_[static_cast<std::size_t>(anchor)];
        double acc = 0.0, tot = 0.0;
        for (int c : group_clusters) {
            acc += sizes_[static_cast<std::size_t>(c)] * wrap_angle(phases_[static_cast<std::size_t>(c)] - va);
            tot += sizes_[static_cast<std::size_t>(c)];
        }
        const double rep = va + acc / tot;
        std::vector<int> members;
        for (int c : group_clusters) {
            const double vc = phases_[static_cast<std::size_t>(c)];
            for (int i : part_.clusters[static_cast<std::size_t>(c)]) {
                offsets_[static_cast<std::size_t>(i)] += kTwoPi * std::round((vc - rep) / kTwoPi);
                members.push_back(i);
            }
        }
        std::vector<std::vector<int>> raw;
        std::vector<double> new_phases;
        std::sort(members.begin(), members.end());
        raw.push_back(members);
        new_phases.push_back(rep);
        for (int c = 0; c < part_.n_clusters(); ++c) {
            if (std::find(group_clusters.begin(), group_clusters.end(), c) !=
                group_clusters.end())
                continue;
            raw.push_back(part_.clusters[static_cast<std::size_t>(c)]);
            new_phases.push_back(phases_[static_cast<std::size_t>(c)]);
        }
        // Re-order canonically (by minimal representative).
        std::vector<std::size_t> order(raw.size());
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return raw[x].front() < raw[y].front(); });
        std::vector<std::vector<int>> raw2;
        std::vector<double> ph2;
        for (std::size_t idx : order) {
            raw2.push_back(raw[idx]);
            ph2.push_back(new_phases[idx]);
        }
        part_ = ClusterPartition::from_clusters(std::move(raw2));
        phases_ = std::move(ph2);
        rebuild_cache();
    }

    void handle_contact(double t_final) {
        // Group tolerance-close clusters (suppressed pairs are mid-crossing
        // and do not form contacts).
        const int kappa = part_.n_clusters();
        std::vector<int> root(static_cast<std::size_t>(kappa));
        std::iota(root.begin(), root.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(x)])];
            return x;
        };
        for (int a = 0; a < kappa; ++a)
            for (int b = a + 1; b < kappa; ++b) {
                if (suppressed_.count(key_for(a, b))) continue;
                if (orthodromic_distance(phases_[static_cast<std::size_t>(a)] - phases_[static_cast<std::size_t>(b)]) <=
                    contact_tol())
                    root[static_cast<std::size_t>(find(a))] = find(b);
            }
        std::vector<std::vector<int>> groups;
        {
            std::vector<std::vector<int>> bucket(static_cast<std::size_t>(kappa));
            for (int c = 0; c < kappa; ++c) bucket[static_cast<std::size_t>(find(c))].push_back(c);
            for (auto& g : bucket)
                if (g.size() >= 2) groups.push_back(std::move(g));
        }
        if (groups.empty()) return;

        const ClusterPartition at_contact = contact_view(groups);
        std::vector<std::vector<int>> merge_members;
        std::vector<std::vector<int>> crossing_members;
        for (const auto& g : groups) {
            std::vector<int> members;
            for (int c : g)
                members.insert(members.end(), part_.clusters[static_cast<std::size_t>(c)].begin(),
                               part_.clusters[static_cast<std::size_t>(c)].end());
            std::sort(members.begin(), members.end());
            note_event(t_);
            traj_.events.push_back({t_, EventKind::collision, members, at_contact});
            if (sticks(members)) merge_members.push_back(std::move(members));
            else crossing_members.push_back(std::move(members));
        }
        // Merges first; cluster indices shift, so recover them from members.
        for (const auto& mem : merge_members) {
            std::set<int> cset;
            for (int i : mem) cset.insert(part_.cluster_of(i));
            const std::vector<int> cls(cset.begin(), cset.end());
            // Residual time to exact coincidence from the contact gap: the
            // pair obeys dg/dt = -(K/N)(n_a+n_b) g^{1-2a} c^{-a} to leading
            // order, which integrates to c^a g^{2a} N / (2aK(n_a+n_b)). For
            // small exponents this is not negligible against the collision
            // brackets, so the merge is stamped at the projected time.
            double remaining = 0.0;
            for (std::size_t x = 0; x < cls.size(); ++x)
                for (std::size_t y = x + 1; y < cls.size(); ++y) {
                    const double g = orthodromic_distance(
                        phases_[static_cast<std::size_t>(cls[x])] -
                        phases_[static_cast<std::size_t>(cls[y])]);
                    const double pair_sizes =
                        sizes_[static_cast<std::size_t>(cls[x])] +
                        sizes_[static_cast<std::size_t>(cls[y])];
                    remaining = std::max(
                        remaining, std::pow(p_.c_alpha_zeta, p_.alpha) *
                                       std::pow(g, 2.0 * p_.alpha) *
                                       static_cast<double>(p_.n_osc) /
                                       (2.0 * p_.alpha * p_.coupling_k * pair_sizes));
                }
            merge_group(cls);
            note_event(t_);
            traj_.events.push_back({t_ + remaining, EventKind::merge, mem, part_});
        }
        if (crossing_members.empty()) return;

        // Transversal pass-through: one-sided field, explicit escape step.
        std::vector<double> f(phases_.size());
        reduced_field(phases_, f);
        double dt_escape = 0.0;
        std::vector<PairKey> to_suppress;
        for (const auto& mem : crossing_members) {
            std::set<int> cset;
            for (int i : mem) cset.insert(part_.cluster_of(i));
            const std::vector<int> cls(cset.begin(), cset.end());
            for (std::size_t x = 0; x < cls.size(); ++x)
                for (std::size_t y = x + 1; y < cls.size(); ++y) {
                    const int a = cls[x], b = cls[y];
                    const double gap = wrap_angle(phases_[static_cast<std::size_t>(b)] -
                                                  phases_[static_cast<std::size_t>(a)]);
                    const double v_rel = f[static_cast<std::size_t>(b)] - f[static_cast<std::size_t>(a)];
                    if (std::abs(v_rel) < 1e-10) {
                        note_event(t_);
                        traj_.events.push_back({t_, EventKind::split_rejected, mem, part_});
                        throw IntegrationError(
                            "non-transversal non-sticking contact at t = " + std::to_string(t_));
                    }
                    to_suppress.push_back(key_for(a, b));
                    if (gap * v_rel > 0.0) continue;  // already separating
                    const double sgn = (gap > 0.0) ? 1.0 : ((gap < 0.0) ? -1.0 : ((v_rel > 0.0) ? -1.0 : 1.0));
                    const double target_gap = -sgn * 2.0 * contact_tol();
                    dt_escape = std::max(dt_escape, (target_gap - gap) / v_rel);
                }
            note_event(t_);
            traj_.events.push_back({t_, EventKind::crossing, mem, part_});
        }
        dt_escape = std::min(dt_escape, std::max(t_final - t_, 0.0));
        for (std::size_t i = 0; i < phases_.size(); ++i) phases_[i] += dt_escape * f[i];
        t_ += dt_escape;
        for (const auto& k : to_suppress) suppressed_.insert(k);
    }
};

}  // namespace

Trajectory integrate(const PhaseState& init, const NaturalFrequencies& omega_nat,
                     const ModelParams& p, const IntegratorConfig& cfg,
                     KernelKind kind) {
    p.validate();
    cfg.validate();
    if (static_cast<int>(omega_nat.omega.size()) != p.n_osc)
        throw std::invalid_argument("integrate: omega length != n_osc");
    if (kind == KernelKind::singular_h) {
        EventDrivenRun run(init, omega_nat, p, cfg);
        return run.run();
    }
    if (kind == KernelKind::scaled_h_eps && !(p.epsilon > 0.0))
        throw std::invalid_argument("integrate: scaled kernel requires epsilon > 0");
    if (kind == KernelKind::adaptive_gamma)
        throw std::invalid_argument("integrate: use integrate_adaptive");
    // Smooth path: Lipschitz kernels need no event handling.
    Trajectory traj;
    traj.params = p;
    traj.omega_nat = omega_nat;
    const ClusterPartition singles = ClusterPartition::singletons(p.n_osc);
    auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& out) {
        PhaseState s;
        s.theta = y;
        out = rhs_full(s, omega_nat, p, kind, singles);
    };
    auto on_sample = [&](double t, const std::vector<double>& y) {
        PhaseState s;
        s.t = t;
        s.theta = y;
        std::vector<double> f(y.size());
        rhs(t, y, f);
        s.freq = std::move(f);
        traj.samples.push_back(std::move(s));
    };
    integrate_smooth(rhs, init.t, init.theta, cfg, on_sample);
    return traj;
}

Trajectory integrate(const PhaseState& init, const NaturalFrequencies& omega_nat,
                     const ModelParams& p, const IntegratorConfig& cfg) {
    return integrate(init, omega_nat, p, cfg,
                     p.epsilon > 0.0 ? KernelKind::scaled_h_eps : KernelKind::singular_h);
}

AdaptiveTrajectory integrate_adaptive(const AdaptiveState& init,
                                      const NaturalFrequencies& omega_nat,
                                      const ModelParams& p,
                                      const IntegratorConfig& cfg) {
    p.validate();
    cfg.validate();
    const int n = p.n_osc;
    if (static_cast<int>(init.theta.size()) != n ||
        static_cast<int>(init.a.size()) != n * n)
        throw std::invalid_argument("integrate_adaptive: state size mismatch");
    AdaptiveTrajectory out;
    out.params = p;
    out.omega_nat = omega_nat;
    std::vector<double> y(init.theta);
    y.insert(y.end(), init.a.begin(), init.a.end());
    auto rhs = [&](double, const std::vector<double>& z, std::vector<double>& dz) {
        AdaptiveState s;
        s.theta.assign(z.begin(), z.begin() + n);
        s.a.assign(z.begin() + n, z.end());
        auto [td, ad] = rhs_adaptive(s, omega_nat, p);
        dz = std::move(td);
        dz.insert(dz.end(), ad.begin(), ad.end());
    };
    auto on_sample = [&](double t, const std::vector<double>& z) {
        AdaptiveState s;
        s.theta.assign(z.begin(), z.begin() + n);
        s.a.assign(z.begin() + n, z.end());
        out.times.push_back(t);
        out.samples.push_back(std::move(s));
    };
    integrate_smooth(rhs, 0.0, y, cfg, on_sample);
    return out;
}

ClusterPartition partition_at(const Trajectory& traj, double t) {
    if (traj.samples.empty()) return ClusterPartition::singletons(traj.params.n_osc);
    ClusterPartition current = detect_partition(traj.samples.front(), 1e-9);
    for (const auto& e : traj.events) {
        if (e.t_event > t) break;
        if (e.kind == EventKind::merge) current = e.partition_after;
    }
    return current;
}

// ---------------------------------------------------------------------------
// Sweep harnesses
// ---------------------------------------------------------------------------

namespace {

template <typename F>
void run_jobs(int count, int jobs, F&& body) {
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::future<void>> futs;
    for (int w = 0; w < jobs; ++w)
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (int i = w; i < count; i += jobs) body(i);
        }));
    for (auto& f : futs) f.get();
}

double sup_grid_distance(const Trajectory& a, const Trajectory& b) {
    const std::size_t n = std::min(a.samples.size(), b.samples.size());
    double sup = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < a.samples[k].theta.size(); ++i)
            sup = std::max(sup, std::abs(a.samples[k].theta[i] - b.samples[k].theta[i]));
    return sup;
}

}  // namespace

EpsilonSweepReport epsilon_sweep(const PhaseState& init,
                                 const NaturalFrequencies& omega_nat,
                                 const ModelParams& p_base,
                                 const std::vector<double>& eps_list,
                                 const IntegratorConfig& cfg, int jobs) {
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw std::invalid_argument("epsilon_sweep: eps_list must be strictly decreasing");
    if (!eps_list.empty() && !(eps_list.back() > 0.0))
        throw std::invalid_argument("epsilon_sweep: eps values must be positive");

    EpsilonSweepReport report;
    ModelParams p0 = p_base;
    p0.epsilon = 0.0;
    report.linf_bound = omega_nat.c_omega() + p_base.coupling_k;
    report.reference = integrate(init, omega_nat, p0, cfg, KernelKind::singular_h);

    const double v_int0 = potential(init.theta, omega_nat.omega, p0).second;
    const double c2 = omega_nat.c_omega() * omega_nat.c_omega();

    // Filippov membership of the reference run's sampled frequencies.
    double worst_res = 0.0;
    for (const auto& s : report.reference.samples) {
        const ClusterPartition part = partition_at(report.reference, s.t);
        const FrequencyPolytope poly = build_polytope(s, omega_nat, p0, part);
        worst_res = std::max(worst_res, membership_residual(poly, *s.freq));
    }
    report.reference_membership_residual = worst_res;

    report.rows.resize(eps_list.size());
    run_jobs(static_cast<int>(eps_list.size()), jobs, [&](int idx) {
        ModelParams pe = p_base;
        pe.epsilon = eps_list[static_cast<std::size_t>(idx)];
        const Trajectory tr = integrate(init, omega_nat, pe, cfg, KernelKind::scaled_h_eps);
        EpsilonSweepRow row;
        row.eps = pe.epsilon;
        row.sup_dist = sup_grid_distance(tr, report.reference);
        double h1 = 0.0;
        double margin = std::numeric_limits<double>::infinity();
        double linf = 0.0;
        for (std::size_t k = 0; k < tr.samples.size(); ++k) {
            const auto& s = tr.samples[k];
            double sq = 0.0;
            for (double f : *s.freq) {
                sq += f * f;
                linf = std::max(linf, std::abs(f));
            }
            if (k > 0) {
                double sq_prev = 0.0;
                for (double f : *tr.samples[k - 1].freq) sq_prev += f * f;
                h1 += 0.5 * (sq + sq_prev) * (s.t - tr.samples[k - 1].t);
            }
            margin = std::min(margin, c2 * (s.t - tr.samples.front().t) / 2.0 + v_int0 - 0.5 * h1);
        }
        row.h1_seminorm = h1;
        row.linf_freq = linf;
        row.energy_margin = margin;
        report.rows[static_cast<std::size_t>(idx)] = row;
    });
    return report;
}

SecondOrderResidualReport second_order_residual(const Trajectory& traj,
                                                const ModelParams& p) {
    if (p.regime() != Regime::subcritical)
        throw std::invalid_argument("second_order_residual: subcritical trajectories only");
    if (traj.samples.size() < 8 || !traj.samples.front().freq)
        throw std::invalid_argument("second_order_residual: needs sampled frequencies");
    SecondOrderResidualReport report;
    ModelParams p0 = p;
    p0.epsilon = 0.0;

    std::vector<double> cuts{traj.samples.front().t};
    for (const auto& e : traj.events)
        if (e.t_event > cuts.back() + 1e-12) cuts.push_back(e.t_event);
    if (traj.samples.back().t > cuts.back() + 1e-12) cuts.push_back(traj.samples.back().t);

    const int n = p.n_osc;
    const double kn = p.coupling_k / static_cast<double>(n);
    for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
        const double a = cuts[w], b = cuts[w + 1];
        std::vector<std::size_t> in_window;
        for (std::size_t k = 0; k < traj.samples.size(); ++k)
            if (traj.samples[k].t > a + 1e-12 && traj.samples[k].t < b - 1e-12)
                in_window.push_back(k);
        if (in_window.size() < 8) continue;
        ++report.windows_checked;
        const ClusterPartition part = partition_at(traj, 0.5 * (a + b));
        std::vector<int> cluster_of(static_cast<std::size_t>(n));
        for (int c = 0; c < part.n_clusters(); ++c)
            for (int i : part.clusters[static_cast<std::size_t>(c)]) cluster_of[static_cast<std::size_t>(i)] = c;

        auto phi = [a, b](double t) {
            const double s = std::sin(kPi * (t - a) / (b - a));
            return s * s;
        };
        auto phi_dot = [a, b](double t) {
            return kPi / (b - a) * std::sin(2.0 * kPi * (t - a) / (b - a));
        };
        // Node list: a, interior samples, b; both integrands vanish at a, b.
        std::vector<double> ts{a};
        for (std::size_t k : in_window) ts.push_back(traj.samples[k].t);
        ts.push_back(b);
        for (int i = 0; i < n; ++i) {
            std::vector<double> g1(ts.size(), 0.0), g2(ts.size(), 0.0);
            for (std::size_t q = 0; q < in_window.size(); ++q) {
                const auto& s = traj.samples[in_window[q]];
                const double t = s.t;
                g1[q + 1] = -(*s.freq)[static_cast<std::size_t>(i)] * phi_dot(t);
                double acc = 0.0;
                for (int j = 0; j < n; ++j) {
                    if (cluster_of[static_cast<std::size_t>(j)] == cluster_of[static_cast<std::size_t>(i)]) continue;
                    acc += h_prime(s.theta[static_cast<std::size_t>(j)] - s.theta[static_cast<std::size_t>(i)], p0) *
                           ((*s.freq)[static_cast<std::size_t>(j)] - (*s.freq)[static_cast<std::size_t>(i)]);
                }
                g2[q + 1] = kn * acc * phi(t);
            }
            double i1 = 0.0, i2 = 0.0;
            for (std::size_t q = 0; q + 1 < ts.size(); ++q) {
                const double dt = ts[q + 1] - ts[q];
                i1 += 0.5 * (g1[q] + g1[q + 1]) * dt;
                i2 += 0.5 * (g2[q] + g2[q + 1]) * dt;
            }
            report.max_residual = std::max(report.max_residual, std::abs(i1 - i2));
        }
    }
    return report;
}

std::vector<EtaSweepRow> eta_sweep(const PhaseState& init,
                                   const NaturalFrequencies& omega_nat,
                                   const ModelParams& p_base,
                                   const std::vector<double>& eta_list,
                                   const IntegratorConfig& cfg, int jobs) {
    const Trajectory reference =
        integrate(init, omega_nat, p_base, cfg, KernelKind::regular_h);
    std::vector<EtaSweepRow> rows(eta_list.size());
    run_jobs(static_cast<int>(eta_list.size()), jobs, [&](int idx) {
        ModelParams pe = p_base;
        pe.eta = eta_list[static_cast<std::size_t>(idx)];
        AdaptiveState a0;
        a0.theta = init.theta;
        a0.a = well_prepared_couplings(init.theta, pe);
        const AdaptiveTrajectory at = integrate_adaptive(a0, omega_nat, pe, cfg);
        double sup = 0.0;
        const std::size_t m = std::min(at.samples.size(), reference.samples.size());
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < at.samples[k].theta.size(); ++i)
                sup = std::max(sup, std::abs(at.samples[k].theta[i] -
                                             reference.samples[k].theta[i]));
        rows[static_cast<std::size_t>(idx)] = {pe.eta, sup};
    });
    return rows;
}

}  // namespace kuramoto
