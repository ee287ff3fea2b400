#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kuramoto/kernel.hpp"

using namespace kuramoto;

namespace {

// Independent quadrature oracle: composite Simpson at fixed resolution.
double simpson_oracle(double (*f)(double), double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double sinc_kernel(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

}  // namespace

TEST_CASE("orthodromic distance reduces to (-pi, pi]") {
    CHECK(orthodromic_distance(0.0) == doctest::Approx(0.0));
    CHECK(orthodromic_distance(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(orthodromic_distance(-kPi / 2.0) == doctest::Approx(kPi / 2.0));
    CHECK(orthodromic_distance(kTwoPi) == doctest::Approx(0.0));
    // ties at -pi map to +pi
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK_THROWS_AS(orthodromic_distance(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(orthodromic_distance(INFINITY), std::domain_error);
}

TEST_CASE("plasticity function values and ceiling") {
    ModelParams p = ModelParams::singular_family(0.5, 1.0, 2);
    p.sigma = 1.0;
    p.c_alpha_zeta = 1.0;
    CHECK(gamma_regular(0.0, p) == doctest::Approx(1.0));
    CHECK(gamma_regular(kTwoPi, p) == doctest::Approx(1.0));
    const double expected = 1.0 / std::sqrt(1.0 + kPi * kPi);
    CHECK(gamma_regular(kPi, p) == doctest::Approx(expected).epsilon(1e-12));

    // at distance sigma the degree of connectedness is at most zeta
    ModelParams pr = ModelParams::regular(0.3, 1.0, 2, 0.7, 0.4);
    CHECK(gamma_regular(pr.sigma, pr) <= pr.zeta + 1e-12);
    CHECK(gamma_regular(pr.sigma, pr) == doctest::Approx(pr.zeta).epsilon(1e-12));
}

TEST_CASE("singular kernel values, extension, and set-valued point") {
    CHECK(h_singular(0.0, 0.25) == doctest::Approx(0.0));
    CHECK(h_singular(kPi / 2.0, 0.5) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    // jump to +-1 at coincidence in the critical case
    CHECK(h_singular(1e-9, 0.5) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(h_singular(-1e-9, 0.5) == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK_THROWS_AS(h_singular(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(h_singular(kTwoPi, 0.75), std::domain_error);

    const KernelLimit right = h_singular_onesided(0.0, 0.5, Side::right);
    CHECK(right.value == doctest::Approx(1.0));
    CHECK_FALSE(right.unbounded);
    const KernelLimit left = h_singular_onesided(kTwoPi, 0.5, Side::left);
    CHECK(left.value == doctest::Approx(-1.0));
    const KernelLimit sup = h_singular_onesided(0.0, 0.75, Side::right);
    CHECK(sup.unbounded);
    CHECK(sup.sign == 1);
    const KernelLimit sub = h_singular_onesided(0.0, 0.25, Side::left);
    CHECK(sub.value == doctest::Approx(0.0));
    CHECK_FALSE(sub.unbounded);
}

TEST_CASE("scaled kernel values and oddness") {
    ModelParams p = ModelParams::singular_family(0.5, 1.0, 2, 1.0, 1.0);
    CHECK(h_scaled(0.0, p) == doctest::Approx(0.0));
    const double expected = 1.0 / std::sqrt(1.0 + kPi * kPi / 4.0);
    CHECK(h_scaled(kPi / 2.0, p) == doctest::Approx(expected).epsilon(1e-14));
    for (double t : {0.3, 1.1, 2.9, -2.2, 4.0}) {
        CHECK(h_scaled(-t, p) == doctest::Approx(-h_scaled(t, p)).epsilon(1e-14));
        CHECK(h_scaled(t + kTwoPi, p) == doctest::Approx(h_scaled(t, p)).epsilon(1e-12));
    }
    ModelParams p0 = p;
    p0.epsilon = 0.0;
    CHECK_THROWS_AS(h_scaled(1.0, p0), std::invalid_argument);
}

TEST_CASE("kernel oddness, periodicity, critical uniform bound") {
    for (double alpha : {0.1, 0.25, 0.5, 0.6, 0.9}) {
        ModelParams p = ModelParams::singular_family(alpha, 1.0, 2);
        for (int i = 1; i < 60; ++i) {
            const double t = -kPi + (2.0 * kPi * i) / 60.0 + 1e-3;
            if (orthodromic_distance(t) < 1e-6) continue;
            CHECK(h_eval(-t, p) == doctest::Approx(-h_eval(t, p)).epsilon(1e-12));
            CHECK(h_eval(t + kTwoPi, p) == doctest::Approx(h_eval(t, p)).epsilon(1e-10));
        }
    }
    ModelParams pc = ModelParams::singular_family(0.5, 1.0, 2);
    for (int i = 1; i < 2000; ++i) {
        const double t = -kPi + (2.0 * kPi * i) / 2000.0;
        if (orthodromic_distance(t) == 0.0) continue;
        CHECK(std::abs(h_eval(t, pc)) <= 1.0 + 1e-14);
    }
}

TEST_CASE("kernel convergence: scaled to singular, monotone in epsilon") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        ModelParams p0 = ModelParams::singular_family(alpha, 1.0, 2);
        for (int i = 1; i <= 20; ++i) {
            const double t = i * (kPi - 0.05) / 20.0 + 0.02;  // grid avoiding 2 pi Z
            double first_gap = -1.0, prev_gap = -1.0;
            for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025}) {
                ModelParams pe = p0;
                pe.epsilon = eps;
                const double gap = std::abs(h_scaled(t, pe) - h_eval(t, p0));
                if (prev_gap >= 0.0) CHECK(gap <= prev_gap + 1e-15);
                else first_gap = gap;
                prev_gap = gap;
            }
            CHECK(prev_gap <= 0.3 * first_gap + 1e-12);
        }
    }
}

TEST_CASE("derivative formula, finite differences, and near-zero behavior") {
    ModelParams p = ModelParams::singular_family(0.25, 1.0, 2);
    CHECK(h_prime(kPi, p) == doctest::Approx(-1.0 / std::sqrt(kPi)).epsilon(1e-13));
    CHECK_THROWS_AS(h_prime(0.0, p), std::domain_error);

    // second-order finite differences away from the singular set
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (double eps : {0.0, 0.3}) {
            ModelParams q = ModelParams::singular_family(alpha, 1.0, 2, eps);
            for (double t : {0.4, 1.0, 2.0, -1.5}) {
                double prev_err = -1.0;
                for (double d : {1e-3, 5e-4, 2.5e-4}) {
                    const double fd = (h_eval(t + d, q) - h_eval(t - d, q)) / (2.0 * d);
                    const double err = std::abs(fd - h_prime(t, q));
                    if (prev_err >= 0.0) CHECK(err <= prev_err * 0.5 + 1e-11);
                    prev_err = err;
                }
                CHECK(prev_err < 1e-6);
            }
        }
    }

    // h' ~ (1 - 2a)/t^{2a} as t -> 0 in the subcritical singular case
    for (double t : {1e-4, 1e-5, 1e-6}) {
        const double lead = (1.0 - 2.0 * p.alpha) / std::pow(t, 2.0 * p.alpha);
        CHECK(h_prime(t, p) == doctest::Approx(lead).epsilon(1e-4));
    }
}

TEST_CASE("derivative domination by an integrable envelope") {
    // |h'_eps(t)| <= M / |t|^{2a} with one M = c^{-a}(1 + 2a) per (alpha, c)
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (double c : {1.0, 2.5}) {
            const double m_bound = std::pow(c, -alpha) * (1.0 + 2.0 * alpha);
            double m_grid = 0.0;
            for (double eps : {0.0, 0.02, 0.1, 0.5}) {
                ModelParams p = ModelParams::singular_family(alpha, 1.0, 2, eps, c);
                for (int i = 1; i <= 4000; ++i) {
                    const double t = i * kPi / 4001.0;
                    m_grid = std::max(m_grid,
                                      std::abs(h_prime(t, p)) * std::pow(t, 2.0 * alpha));
                }
            }
            CHECK(m_grid <= m_bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("lower kernel bound with the (2a-b)/b cutoff") {
    // h_eps(t) >= h_eps(t*) (t/t*)^b for t in [c(a,b) eps, t*]
    for (double alpha : {0.5, 0.75, 0.9}) {
        for (double beta : {0.3, 1.0, 2.0 * alpha}) {
            if (beta > 2.0 * alpha) continue;
            const double cab = std::sqrt((2.0 * alpha - beta) / beta);
            const double tstar = 2.5;
            for (double eps : {0.05, 0.2}) {
                if (!(eps < tstar / std::max(cab, 1e-12))) continue;
                ModelParams p = ModelParams::singular_family(alpha, 1.0, 2, eps);
                const double ref = h_eval(tstar, p) / std::pow(tstar, beta);
                const double lo = cab * eps;
                for (int i = 0; i <= 3000; ++i) {
                    const double t = lo + (tstar - lo) * i / 3000.0;
                    if (t <= 0.0) continue;
                    CHECK(h_eval(t, p) >= ref * std::pow(t, beta) - 1e-12);
                }
            }
        }
    }
}

TEST_CASE("antiderivative: normalization, symmetry, quadrature oracle") {
    ModelParams p = ModelParams::singular_family(0.5, 1.0, 2);
    CHECK(w_antiderivative(0.0, p) == doctest::Approx(0.0));
    // independent Simpson oracle for int_0^{pi/2} sin t / t dt
    const double oracle = simpson_oracle(&sinc_kernel, 0.0, kPi / 2.0, 200000);
    CHECK(oracle == doctest::Approx(1.3707621681544881).epsilon(1e-12));
    CHECK(w_antiderivative(kPi / 2.0, p) == doctest::Approx(oracle).epsilon(1e-10));

    for (double alpha : {0.25, 0.5, 0.75}) {
        for (double eps : {0.0, 0.15}) {
            ModelParams q = ModelParams::singular_family(alpha, 1.0, 2, eps);
            for (double t : {0.3, 1.0, 2.5, 3.0}) {
                CHECK(w_antiderivative(-t, q) ==
                      doctest::Approx(w_antiderivative(t, q)).epsilon(1e-12));
                CHECK(w_antiderivative(t, q) >= 0.0);
            }
            // 2 pi periodicity via the zero circle average of h
            CHECK(w_antiderivative(1.0 + kTwoPi, q) ==
                  doctest::Approx(w_antiderivative(1.0, q)).epsilon(1e-10));
        }
    }
}

TEST_CASE("supercritical antiderivative against a shifted-origin oracle") {
    // int_0^x t^{1-2a} sinc t dt computed by Simpson on [delta, x] plus the
    // analytic remainder of the leading power on [0, delta]
    ModelParams p = ModelParams::singular_family(0.75, 1.0, 2);
    const double x = 1.2;
    const double delta = 1e-3;
    const auto f = [&](double t) { return std::sin(t) / std::pow(t, 1.5); };
    int n = 400000;
    double s = f(delta) + f(x);
    const double h = (x - delta) / n;
    for (int i = 1; i < n; ++i) s += f(delta + i * h) * (i % 2 ? 4.0 : 2.0);
    const double tail = s * h / 3.0;
    // int_0^delta t^{-1/2}(1 - t^2/6 + t^4/120) dt
    const double head = 2.0 * std::sqrt(delta) - std::pow(delta, 2.5) / 15.0 +
                        std::pow(delta, 4.5) / 540.0;
    CHECK(w_antiderivative(x, p) == doctest::Approx(head + tail).epsilon(1e-9));
}

TEST_CASE("potential: zero state, shift invariance, pair value") {
    ModelParams p = ModelParams::singular_family(0.5, 1.0, 3);
    std::vector<double> omega{0.0, 0.0, 0.0};
    auto [v_tot, v_int] = potential({1.0, 1.0, 1.0}, omega, p);
    CHECK(v_tot == doctest::Approx(0.0));
    CHECK(v_int == doctest::Approx(0.0));

    std::vector<double> theta{0.1, 0.9, 2.0};
    auto [va, via] = potential(theta, omega, p);
    for (double& t : theta) t += 0.77;
    auto [vb, vib] = potential(theta, omega, p);
    CHECK(via == doctest::Approx(vib).epsilon(1e-12));
    CHECK(va == doctest::Approx(vb).epsilon(1e-12));
    CHECK(via >= 0.0);

    ModelParams p2 = ModelParams::singular_family(0.5, 1.0, 2);
    auto [v2, vi2] = potential({0.0, kPi / 2.0}, {0.0, 0.0}, p2);
    (void)v2;
    const double w_half_pi = w_antiderivative(kPi / 2.0, p2);
    CHECK(vi2 == doctest::Approx(0.5 * w_half_pi).epsilon(1e-12));

    CHECK_THROWS_AS(potential({0.0}, {0.0, 0.0}, p2), std::invalid_argument);
}

TEST_CASE("params validation and derived constant") {
    CHECK_THROWS_AS(ModelParams::singular_family(1.5, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::singular_family(0.5, -1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::regular(0.5, 1.0, 2, 4.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::regular(0.5, 1.0, 2, 1.0, 1.5), std::invalid_argument);

    // c = zeta^(-1/alpha) - 1 > 0 for zeta in (0,1)
    const double c = ModelParams::derive_c_from_zeta(0.5, 0.25);
    CHECK(c == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(ModelParams::regular(0.3, 1.0, 4, 1.0, 0.8).c_alpha_zeta > 0.0);

    ModelParams p = ModelParams::singular_family(0.49, 1.0, 2);
    CHECK(p.regime() == Regime::subcritical);
    p.alpha = 0.5;
    CHECK(p.regime() == Regime::critical);
    p.alpha = 0.51;
    CHECK(p.regime() == Regime::supercritical);
}
