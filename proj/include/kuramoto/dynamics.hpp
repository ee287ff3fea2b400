#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "kuramoto/filippov.hpp"
#include "kuramoto/params.hpp"
#include "kuramoto/state.hpp"

namespace kuramoto {

struct IntegratorConfig {
    enum class Method { rk45, semi_implicit };
    Method method = Method::rk45;
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double dt_max = 0.05;
    double dt_min = 1e-14;
    double collision_tol = 1e-9;
    double event_bisection_tol = 1e-10;
    double t_end = 1.0;
    double sample_dt = 1e-2;

    void validate() const;
};

// Raised when a singular right-hand side is evaluated on a colliding
// non-merged pair; the caller must localize and handle the event.
struct EventNeededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when more than 50 events accumulate inside one bisection-tolerance
// window (left accumulation of switches).
struct ZenoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full-system field theta_dot_i = Omega_i + (K/N) sum_j h(theta_j - theta_i)
// with the kernel chosen by `kind`; oscillators sharing a cluster contribute
// nothing to each other (merged phases coincide).
std::vector<double> rhs_full(const PhaseState& state,
                             const NaturalFrequencies& omega_nat,
                             const ModelParams& p, KernelKind kind,
                             const ClusterPartition& partition);

// Reduced field on cluster representatives:
//   dot v_k = mean(Omega over E_k) + (K/N) sum_{m != k} n_m h(v_m - v_k).
std::vector<double> rhs_reduced(const std::vector<double>& cluster_phases,
                                const ClusterPartition& partition,
                                const NaturalFrequencies& omega_nat,
                                const ModelParams& p);

// Adaptive-coupling state: phases plus the N x N degrees a_ij in [0,1].
struct AdaptiveState {
    std::vector<double> theta;
    std::vector<double> a;  // row-major N*N

    double a_at(int i, int j, int n) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

// theta_dot_i = Omega_i + (1/N) sum_j K a_ij sin(theta_j - theta_i),
// a_dot_ij = eta (Gamma(theta_j - theta_i) - a_ij).
std::pair<std::vector<double>, std::vector<double>> rhs_adaptive(
    const AdaptiveState& state, const NaturalFrequencies& omega_nat,
    const ModelParams& p);

// a_ij(0) = Gamma(theta_j(0) - theta_i(0)) (the fast-learning slaving).
std::vector<double> well_prepared_couplings(const std::vector<double>& theta0,
                                            const ModelParams& p);

// Integrate the model selected by `kind` on [init.t, init.t + cfg.t_end].
// Smooth kernels run a plain adaptive integration; the singular kernel runs
// the event-driven scheme: collisions are localized by bisection, merges are
// gated by the regime's sticking predicate, non-sticking contacts pass
// through with one-sided kernel selection, and merged clusters continue via
// the reduced system.
Trajectory integrate(const PhaseState& init, const NaturalFrequencies& omega_nat,
                     const ModelParams& p, const IntegratorConfig& cfg,
                     KernelKind kind);

// Convenience: kind deduced from p.epsilon (0 -> singular, else scaled).
Trajectory integrate(const PhaseState& init, const NaturalFrequencies& omega_nat,
                     const ModelParams& p, const IntegratorConfig& cfg);

struct AdaptiveTrajectory {
    std::vector<double> times;
    std::vector<AdaptiveState> samples;
    ModelParams params;
    NaturalFrequencies omega_nat;
};

AdaptiveTrajectory integrate_adaptive(const AdaptiveState& init,
                                      const NaturalFrequencies& omega_nat,
                                      const ModelParams& p,
                                      const IntegratorConfig& cfg);

// Partition in force at time t, reconstructed from the event log.
ClusterPartition partition_at(const Trajectory& traj, double t);

struct EpsilonSweepRow {
    double eps = 0.0;
    double sup_dist = 0.0;       // sup over the grid of max_i |theta^eps - theta^0|
    double h1_seminorm = 0.0;    // int_0^T |dot Theta|^2 dt
    double linf_freq = 0.0;      // max sampled |dot theta_i|
    double energy_margin = 0.0;  // min_t [C^2 t/2 + V_int(0) - (1/2) int_0^t |dot Theta|^2]
};

struct EpsilonSweepReport {
    std::vector<EpsilonSweepRow> rows;
    double reference_membership_residual = 0.0;  // eps = 0 run vs its polytopes
    double linf_bound = 0.0;                     // C_Omega + K
    Trajectory reference;
};

// Integrates the scaled model for each epsilon (strictly decreasing, > 0)
// against the singular reference and reports the convergence/bound columns.
// `jobs` > 1 runs sweep members concurrently.
EpsilonSweepReport epsilon_sweep(const PhaseState& init,
                                 const NaturalFrequencies& omega_nat,
                                 const ModelParams& p_base,
                                 const std::vector<double>& eps_list,
                                 const IntegratorConfig& cfg, int jobs = 1);

struct SecondOrderResidualReport {
    double max_residual = 0.0;
    int windows_checked = 0;
};

// Weak residual of the differentiated system
//   theta_ddot_i = (K/N) sum_{j not stuck to i} h'(theta_j - theta_i)(dot_j - dot_i)
// against bump test functions on each collision-free window of a subcritical
// trajectory. Non-subcritical input throws std::invalid_argument.
SecondOrderResidualReport second_order_residual(const Trajectory& traj,
                                                const ModelParams& p);

struct EtaSweepRow {
    double eta = 0.0;
    double sup_dist = 0.0;  // vs the fast-learning (instantaneous Gamma) run
};

// Adaptive runs with well-prepared couplings compared against the
// weighted-kernel model they relax to as eta grows.
std::vector<EtaSweepRow> eta_sweep(const PhaseState& init,
                                   const NaturalFrequencies& omega_nat,
                                   const ModelParams& p_base,
                                   const std::vector<double>& eta_list,
                                   const IntegratorConfig& cfg, int jobs = 1);

}  // namespace kuramoto
