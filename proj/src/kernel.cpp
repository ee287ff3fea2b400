#include "kuramoto/kernel.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace kuramoto {

double wrap_angle(double theta) {
    if (!std::isfinite(theta)) throw std::domain_error("wrap_angle: non-finite angle");
    double r = std::remainder(theta, kTwoPi);  // in [-pi, pi]
    if (r <= -kPi) r += kTwoPi;                // ties at -pi map to +pi
    return r;
}

double orthodromic_distance(double theta) {
    return std::abs(wrap_angle(theta));
}

double gamma_regular(double theta, const ModelParams& p) {
    const double d = orthodromic_distance(theta);
    return std::pow(p.sigma * p.sigma, p.alpha) /
           std::pow(p.sigma * p.sigma + p.c_alpha_zeta * d * d, p.alpha);
}

double gamma_regular_prime(double theta, const ModelParams& p) {
    const double t = wrap_angle(theta);
    const double s2 = p.sigma * p.sigma;
    const double den = s2 + p.c_alpha_zeta * t * t;
    return -2.0 * std::pow(s2, p.alpha) * p.alpha * p.c_alpha_zeta * t /
           std::pow(den, p.alpha + 1.0);
}

double h_regular(double theta, const ModelParams& p) {
    return gamma_regular(theta, p) * std::sin(theta);
}

double h_singular(double theta, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("h_singular: alpha outside (0,1)");
    const double t = wrap_angle(theta);
    if (t == 0.0) {
        if (alpha < 0.5) return 0.0;  // continuous extension
        throw std::domain_error(
            "h_singular: set-valued point at phase coincidence; "
            "request a one-sided limit or use the filippov module");
    }
    return std::sin(t) / std::pow(std::abs(t), 2.0 * alpha);
}

KernelLimit h_singular_onesided(double theta, double alpha, Side side) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("h_singular_onesided: alpha outside (0,1)");
    const double t = wrap_angle(theta);
    if (t != 0.0) return {h_singular(theta, alpha), false, 0};
    const int s = (side == Side::right) ? +1 : -1;
    if (alpha < 0.5) return {0.0, false, 0};
    if (alpha == 0.5) return {static_cast<double>(s), false, 0};
    return {0.0, true, s};
}

double h_scaled(double theta, const ModelParams& p) {
    if (!(p.epsilon > 0.0))
        throw std::invalid_argument("h_scaled requires epsilon > 0; use h_singular");
    const double t = wrap_angle(theta);
    const double d2 = t * t;
    return std::sin(t) / std::pow(p.epsilon * p.epsilon + p.c_alpha_zeta * d2, p.alpha);
}

double h_eval(double theta, const ModelParams& p) {
    const double t = wrap_angle(theta);
    if (p.epsilon > 0.0)
        return std::sin(t) / std::pow(p.epsilon * p.epsilon + p.c_alpha_zeta * t * t, p.alpha);
    if (t == 0.0) {
        if (p.alpha < 0.5) return 0.0;
        throw std::domain_error("h_eval: singular kernel at phase coincidence");
    }
    return std::sin(t) / std::pow(p.c_alpha_zeta * t * t, p.alpha);
}

double h_prime(double theta, const ModelParams& p) {
    const double t = wrap_angle(theta);
    const double a = p.alpha;
    const double c = p.c_alpha_zeta;
    const double e2 = p.epsilon * p.epsilon;
    if (p.epsilon == 0.0 && t == 0.0)
        throw std::domain_error("h_prime: singular derivative at phase coincidence");
    const double at = std::abs(t);
    const double den = e2 + c * at * at;
    const double sinc = (at == 0.0) ? 1.0 : std::sin(at) / at;
    return (std::cos(t) - 2.0 * a * c * sinc * at * at / den) / std::pow(den, a);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// int_0^delta t^(1-2a) * (sin t / t) dt / c^a by term-wise integration of the
// sine series; removes the endpoint singularity of the singular integrand.
double w_series_near_zero(double delta, double alpha, double c) {
    double sum = 0.0;
    double sign = 1.0;
    double fact = 1.0;  // (2k+1)!
    for (int k = 0; k < 24; ++k) {
        if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
        const double expo = 2.0 * k + 2.0 - 2.0 * alpha;
        const double term = sign * std::pow(delta, expo) / (fact * expo);
        sum += term;
        if (std::abs(term) < 1e-18) break;
        sign = -sign;
    }
    return sum / std::pow(c, alpha);
}

}  // namespace

double w_antiderivative(double theta, const ModelParams& p) {
    // W is even and 2*pi-periodic (h odd, zero circle average), so the
    // representative distance suffices.
    const double x = orthodromic_distance(theta);
    if (x == 0.0) return 0.0;
    const double tol = 1e-12;
    auto f = [&p](double t) { return h_eval(t, p); };
    if (p.epsilon > 0.0) return integrate(f, 0.0, x, tol);
    const double delta = std::min(x, 0.1);
    double w = w_series_near_zero(delta, p.alpha, p.c_alpha_zeta);
    if (x > delta) w += integrate(f, delta, x, tol);
    return w;
}

std::pair<double, double> potential(const std::vector<double>& theta,
                                    const std::vector<double>& omega_nat,
                                    const ModelParams& p) {
    const std::size_t n = static_cast<std::size_t>(p.n_osc);
    if (theta.size() != n || omega_nat.size() != n)
        throw std::invalid_argument("potential: length mismatch with n_osc");
    double drive = 0.0;
    for (std::size_t i = 0; i < n; ++i) drive += omega_nat[i] * theta[i];
    double v_int = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) v_int += w_antiderivative(theta[j] - theta[i], p);
    v_int *= p.coupling_k / (2.0 * static_cast<double>(n));
    return {-drive + v_int, v_int};
}

}  // namespace kuramoto
