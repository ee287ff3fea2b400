#include "kuramoto/params.hpp"

#include <cmath>

namespace kuramoto {

void ModelParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1), got " + std::to_string(alpha));
    if (!(coupling_k > 0.0))
        throw std::invalid_argument("coupling_k must be positive");
    if (n_osc < 1)
        throw std::invalid_argument("n_osc must be a positive integer");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be finite and >= 0");
    if (!(sigma > 0.0 && sigma < kPi))
        throw std::invalid_argument("sigma must lie in (0,pi)");
    if (!(zeta > 0.0 && zeta < 1.0))
        throw std::invalid_argument("zeta must lie in (0,1)");
    if (!(eta > 0.0))
        throw std::invalid_argument("eta must be positive");
    if (!(c_alpha_zeta > 0.0))
        throw std::invalid_argument("c_alpha_zeta must be strictly positive");
}

double ModelParams::derive_c_from_zeta(double alpha, double zeta) {
    // zeta in (0,1) makes zeta^(-1/alpha) > 1, so this is strictly positive.
    return std::pow(zeta, -1.0 / alpha) - 1.0;
}

ModelParams ModelParams::regular(double alpha, double coupling_k, int n_osc,
                                 double sigma, double zeta) {
    ModelParams p;
    p.alpha = alpha;
    p.coupling_k = coupling_k;
    p.n_osc = n_osc;
    p.sigma = sigma;
    p.zeta = zeta;
    p.c_alpha_zeta = derive_c_from_zeta(alpha, zeta);
    p.validate();
    return p;
}

ModelParams ModelParams::singular_family(double alpha, double coupling_k,
                                         int n_osc, double epsilon, double c) {
    ModelParams p;
    p.alpha = alpha;
    p.coupling_k = coupling_k;
    p.n_osc = n_osc;
    p.epsilon = epsilon;
    p.c_alpha_zeta = c;
    p.validate();
    return p;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::subcritical: return "subcritical";
        case Regime::critical: return "critical";
        case Regime::supercritical: return "supercritical";
    }
    return "?";
}

const char* to_string(KernelKind k) {
    switch (k) {
        case KernelKind::adaptive_gamma: return "adaptive_gamma";
        case KernelKind::regular_h: return "regular_h";
        case KernelKind::scaled_h_eps: return "scaled_h_eps";
        case KernelKind::singular_h: return "singular_h";
    }
    return "?";
}

Regime regime_from_string(const std::string& s) {
    if (s == "subcritical") return Regime::subcritical;
    if (s == "critical") return Regime::critical;
    if (s == "supercritical") return Regime::supercritical;
    throw std::invalid_argument("unknown regime: " + s);
}

}  // namespace kuramoto
