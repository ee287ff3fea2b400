#pragma once

#include <stdexcept>
#include <string>

namespace kuramoto {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Singularity regime of the interaction kernel at phase coincidence.
enum class Regime { subcritical, critical, supercritical };

// Which interaction law a right-hand side evaluates.
enum class KernelKind { adaptive_gamma, regular_h, scaled_h_eps, singular_h };

// Parameters of the weighted Kuramoto family. `c_alpha_zeta` is the positive
// constant in the kernel denominators; `derive_c_from_zeta` computes it from
// the connectedness ceiling as zeta^(-1/alpha) - 1 (the decay requirement
// forces the positive sign). The scaled/singular models conventionally use
// c = 1, which is the default.
struct ModelParams {
    double alpha = 0.25;       // singularity exponent, in (0,1)
    double coupling_k = 1.0;   // coupling strength K > 0
    int n_osc = 2;             // number of oscillators N
    double epsilon = 0.0;      // regularization; 0 selects the singular kernel
    double sigma = 1.0;        // effective interaction range, regular model
    double zeta = 0.5;         // connectedness ceiling, regular model
    double eta = 1.0;          // learning rate, adaptive model
    double c_alpha_zeta = 1.0; // kernel denominator constant, > 0

    Regime regime() const {
        if (alpha < 0.5) return Regime::subcritical;
        if (alpha > 0.5) return Regime::supercritical;
        return Regime::critical;
    }

    // Throws std::invalid_argument on any out-of-range field.
    void validate() const;

    static double derive_c_from_zeta(double alpha, double zeta);

    // Params for the regular weighted model: c derived from (alpha, zeta).
    static ModelParams regular(double alpha, double coupling_k, int n_osc,
                               double sigma, double zeta);

    // Params for the scaled (epsilon > 0) or singular (epsilon = 0) model,
    // with c = 1 unless stated otherwise.
    static ModelParams singular_family(double alpha, double coupling_k,
                                       int n_osc, double epsilon = 0.0,
                                       double c = 1.0);
};

const char* to_string(Regime r);
const char* to_string(KernelKind k);
Regime regime_from_string(const std::string& s);

}  // namespace kuramoto
