#pragma once

#include <utility>
#include <vector>

#include "kuramoto/params.hpp"

namespace kuramoto {

// Representative of theta mod 2*pi in (-pi, pi]; ties at -pi map to +pi.
double wrap_angle(double theta);

// Orthodromic distance to zero on the unit circle, |wrap_angle(theta)|.
// Throws std::domain_error on non-finite input.
double orthodromic_distance(double theta);

// Hebbian-like plasticity function sigma^(2a) / (sigma^2 + c*|theta|_o^2)^a.
// Equals 1 at theta in 2*pi*Z and decays with orthodromic distance.
double gamma_regular(double theta, const ModelParams& p);

// d/dtheta of gamma_regular on (-pi, pi); odd, vanishes at 0.
double gamma_regular_prime(double theta, const ModelParams& p);

// Regular interaction kernel gamma_regular(theta) * sin(theta).
double h_regular(double theta, const ModelParams& p);

enum class Side { left, right };

// One-sided kernel limit. `unbounded` marks a signed infinite limit
// (supercritical kernel at coincidence); callers must branch on it instead
// of consuming an IEEE infinity.
struct KernelLimit {
    double value = 0.0;
    bool unbounded = false;
    int sign = 0;  // +1 or -1 when unbounded
};

// Singular kernel sin(theta)/|theta|_o^(2a). At theta in 2*pi*Z the
// subcritical kernel extends continuously by 0; the critical and
// supercritical kernels are set-valued there and this throws
// std::domain_error directing the caller to the Filippov machinery.
double h_singular(double theta, double alpha);

// One-sided limit of the singular kernel as theta approaches the given
// point from the requested side. Off 2*pi*Z it agrees with h_singular.
KernelLimit h_singular_onesided(double theta, double alpha, Side side);

// Scaled kernel sin(theta)/(eps^2 + c*|theta|_o^2)^a; requires p.epsilon > 0.
double h_scaled(double theta, const ModelParams& p);

// Kernel of the scaled/singular family selected by p.epsilon (0 = singular).
// = h_scaled for epsilon > 0, else sin(theta)/(c*|theta|_o^2)^a.
double h_eval(double theta, const ModelParams& p);

// Derivative of the scaled/singular kernel,
//   (eps^2 + c|t|^2)^(-a) [cos t - 2 a c (sin|t|/|t|) |t|^2/(eps^2 + c|t|^2)],
// which for eps = 0 reduces to |t|^(-2a) [cos t - 2 a sin|t|/|t|] when c = 1.
// Singular evaluation (eps = 0) at 2*pi*Z throws std::domain_error.
double h_prime(double theta, const ModelParams& p);

// Antiderivative W(theta) = int_0^theta h, W(0) = 0; even and 2*pi-periodic,
// nonnegative on the representative interval. Adaptive quadrature to 1e-12
// absolute; the singular endpoint is handled by a power series.
double w_antiderivative(double theta, const ModelParams& p);

// Potential V = -sum_i Omega_i theta_i + (K/2N) sum_{i != j} W(theta_j - theta_i).
// Returns {V, V_int}; V_int >= 0. Lengths must match p.n_osc.
std::pair<double, double> potential(const std::vector<double>& theta,
                                    const std::vector<double>& omega_nat,
                                    const ModelParams& p);

}  // namespace kuramoto
