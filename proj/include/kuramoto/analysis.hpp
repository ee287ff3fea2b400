#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kuramoto/params.hpp"
#include "kuramoto/state.hpp"

namespace kuramoto {

// Verdict of a closed-form bound evaluated against a trajectory. `margin` is
// the minimum slack over the samples (negative = violated), attained at
// `worst_t`.
struct BoundReport {
    std::string bound_name;
    std::string theorem_ref;  // internal bound-family identifier
    bool satisfied = false;
    double margin = 0.0;
    double worst_t = 0.0;
};

enum class StabilityVerdict { stable, unstable, indeterminate };

struct StabilityReport {
    PhaseState equilibrium;
    std::vector<double> matrix_a;  // row-major N*N linearization entries
    std::vector<double> eigenvalues;  // ascending
    int zero_multiplicity = 0;
    StabilityVerdict verdict = StabilityVerdict::indeterminate;
};

// Finite-time collision bracket and pointwise envelopes for two identical
// oscillators confined to a half circle:
//   t_min = |t0|^(2a) / (2Ka),  t_max = |t0|^(2a+1) / (2Ka sin|t0|),
//   |t0|^(2a) - 2Ka t <= |theta(t)|^(2a) <= |t0|^(2a) - 2Ka (sin|t0|/|t0|) t.
struct TwoOscillatorBounds {
    double t_min = 0.0;
    double t_max = 0.0;
    double theta0_pow = 0.0;    // |theta0|^(2 alpha)
    double lower_slope = 0.0;   // 2 K alpha
    double upper_slope = 0.0;   // 2 K alpha sin|theta0| / |theta0|

    double lower_envelope(double t) const { return theta0_pow - lower_slope * t; }
    double upper_envelope(double t) const { return theta0_pow - upper_slope * t; }
};

TwoOscillatorBounds two_oscillator_bounds(double theta0, const ModelParams& p);

// Positive solution of 2 a sin t = t cos t in (0, pi/2); the maximizer of the
// singular kernel for a < 1/2.
double theta_tilde(double alpha);

struct EquilibriumRoot {
    double theta_bar = 0.0;
    bool stable = false;
};

struct TwoOscillatorEquilibria {
    std::vector<EquilibriumRoot> roots;  // in (0, pi)
    bool synchronous = false;  // omega_rel == 0: coincidence is the rest state
    bool exists = false;
};

// Roots of omega_rel = K h(theta) on (0, pi) for the singular kernel, with
// stability tags: below the kernel maximizer the equilibrium is stable
// (a < 1/2 only), beyond it unstable.
TwoOscillatorEquilibria equilibrium_two(double omega_rel, const ModelParams& p);

// Linearization at a collision-less equilibrium: off-diagonal entries
//   a_ij = cos(d_ij)/|d_ij|^(2a) - 2a sin|d_ij|/|d_ij|^(2a+1),
// zero row sums, spectrum via a dense symmetric solve. Stable = one zero
// eigenvalue and the rest strictly negative.
StabilityReport linear_stability(const PhaseState& equilibrium,
                                 const NaturalFrequencies& omega_nat,
                                 const ModelParams& p);

// Damped Newton refinement of H(Theta) = 0 within the zero-mean hyperplane.
struct EquilibriumRefinement {
    PhaseState equilibrium;
    bool converged = false;
    std::vector<double> residual_history;
};

EquilibriumRefinement refine_equilibrium(const PhaseState& seed,
                                         const NaturalFrequencies& omega_nat,
                                         const ModelParams& p,
                                         int max_iter = 100,
                                         double tol = 1e-12);

// Synchronization-time detection threshold: first sample with
// D(Theta) <= 10 * collision_tol.
double measure_sync_time(const Trajectory& traj, double collision_tol = 1e-9);

// Regime-dependent diameter envelopes, sync/collision time bounds for
// identical oscillators with D(Theta_0) < pi. `beta` configures the
// supercritical first-collision bound exponent.
std::vector<BoundReport> check_identical_bounds(const Trajectory& traj,
                                                const ModelParams& p,
                                                double beta = 0.5);

// Subcritical non-identical suite: uniform diameter bound below d_inf,
// frequency-diameter sandwich, collision-freeness, limit ordering.
std::vector<BoundReport> check_nonidentical_bounds(const Trajectory& traj,
                                                   const ModelParams& p,
                                                   double d_inf);

// Regular-kernel model: identical-case diameter sandwich; with d_inf given
// and non-identical frequencies, the frequency sandwich with the
// plasticity-slope rate.
std::vector<BoundReport> check_regular_bounds(
    const Trajectory& traj, const ModelParams& p,
    std::optional<double> d_inf = std::nullopt);

// theta_+ = sigma / sqrt(c (2 alpha + 1)), the minimizer of Gamma'.
double gamma_prime_minimizer(const ModelParams& p);

std::string bound_reports_json(const std::vector<BoundReport>& reports);
std::string stability_report_json(const StabilityReport& report);
const char* to_string(StabilityVerdict v);

}  // namespace kuramoto
