#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qvb/mathkit.hpp"

using namespace qvb;
using Catch::Approx;

TEST_CASE("laguerre reproduces the low-order polynomials") {
    CHECK(laguerre(0, 17.3) == 1.0);
    CHECK(laguerre(1, 2.0) == Approx(-1.0));
    CHECK(laguerre(2, 2.0) == Approx(-1.0));  // 1 - 2x + x^2/2 at x = 2

    // recurrence vs the explicit expansion L_p(x) = sum binom(p,m)(-x)^m/m!
    auto direct = [](int p, double x) {
        double sum = 0.0, binom = 1.0, fact = 1.0, pw = 1.0;
        for (int m = 0; m <= p; ++m) {
            sum += binom * pw / fact;
            binom = binom * (p - m) / (m + 1.0);
            fact *= (m + 1.0);
            pw *= -x;
        }
        return sum;
    };
    for (int p = 0; p <= 6; ++p)
        for (int xi = -3; xi <= 3; ++xi) {
            const double x = xi;
            CHECK(laguerre(p, x) == Approx(direct(p, x)).margin(1e-10).epsilon(1e-10));
        }
}

TEST_CASE("scaled_laguerre_pole is the regular combination t^p L_p(-u/t)") {
    CHECK(scaled_laguerre_pole(0, -4.2, 31.0) == 1.0);
    CHECK(scaled_laguerre_pole(1, 0.0, 3.0) == Approx(3.0));
    CHECK(scaled_laguerre_pole(2, 0.5, 1.0) == Approx(1.75));
    CHECK(scaled_laguerre_pole(2, 0.5, 1.0) == Approx(0.25 * laguerre(2, -2.0)));

    // matches the two-factor form away from t = 0
    for (double t : {-2.0, -0.3, -1e-3, 1e-3, 0.7, 1.9})
        for (double u : {0.0, 0.5, 7.0, 55.0, 100.0})
            for (int p : {1, 3, 10, 25, 50}) {
                const double ref = std::pow(t, p) * laguerre(p, -u / t);
                CHECK(scaled_laguerre_pole(p, t, u) ==
                      Approx(ref).epsilon(1e-8).margin(1e-280));
            }
}

TEST_CASE("scaled_laguerre_pole is continuous across t = 0") {
    for (int p : {1, 2, 5, 20, 50})
        for (double u : {0.3, 2.0, 40.0}) {
            double limit = 1.0;
            for (int k = 1; k <= p; ++k) limit *= u / k;  // u^p/p!
            CHECK(scaled_laguerre_pole(p, 1e-9, u) == Approx(limit).epsilon(1e-8));
            CHECK(scaled_laguerre_pole(p, -1e-9, u) == Approx(limit).epsilon(1e-8));
            CHECK(scaled_laguerre_pole(p, 0.0, u) == Approx(limit).epsilon(1e-12));
        }
}

TEST_CASE("scaled_laguerre_all agrees with the per-order evaluation") {
    std::vector<double> s(51);
    for (double t : {-1.5, 0.0, 1e-6, 0.8})
        for (double u : {0.0, 1.0, 30.0}) {
            scaled_laguerre_all(50, t, u, s);
            for (int p : {0, 1, 7, 29, 50})
                CHECK(s[p] == Approx(scaled_laguerre_pole(p, t, u)).epsilon(1e-10).margin(1e-300));
        }
}

TEST_CASE("integrate_1d handles the analytic reference integrals") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;

    auto poly = integrate_1d([](double x) { return x * x; }, 0.0, 1.0, cfg);
    CHECK(poly.converged);
    CHECK(poly.value == Approx(1.0 / 3.0).epsilon(1e-10));

    const double sigma = 0.7;
    auto gauss = integrate_1d([&](double x) { return std::exp(-x * x / (2 * sigma * sigma)); },
                              -8.0 * sigma, 8.0 * sigma, cfg);
    CHECK(gauss.value == Approx(sigma * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-10));

    // oscillatory: int_0^pi cos(40 x) e^{-x} dx = (1 - e^{-pi}) / 1601
    QuadratureConfig osc = cfg;
    osc.initial_panels = 8 * 20;  // 8 panels per period of cos(40x)
    auto o = integrate_1d([](double x) { return std::cos(40.0 * x) * std::exp(-x); }, 0.0,
                          std::numbers::pi, osc);
    CHECK(o.converged);
    CHECK(o.value == Approx((1.0 - std::exp(-std::numbers::pi)) / 1601.0).epsilon(1e-9));
    CHECK(o.value == Approx(5.976177899664133e-4).epsilon(1e-9));
}

TEST_CASE("integrate_1d supports complex integrands") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.initial_panels = 64;
    auto r = integrate_1d(
        [](double x) { return std::complex<double>(std::cos(5.0 * x), std::sin(5.0 * x)); }, 0.0,
        1.0, cfg);
    // int e^{i5x} = (e^{i5} - 1) / (i5)
    const std::complex<double> expect =
        (std::polar(1.0, 5.0) - std::complex<double>(1.0, 0.0)) / std::complex<double>(0.0, 5.0);
    CHECK(std::abs(r.value - expect) < 1e-10);
}

TEST_CASE("integrate_1d flags exhaustion instead of throwing") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-14;
    cfg.initial_panels = 1;
    cfg.max_subdivisions = 2;  // impossible budget for this tolerance
    auto r = integrate_1d([](double x) { return std::exp(-x) * std::sin(20.0 * x) + 1.0; }, 0.0,
                          3.0, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.error_estimate > 0.0);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("integrate_1d validates its inputs") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 1.0, 0.0, cfg),
                    std::invalid_argument);
    QuadratureConfig bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, bad),
                    std::invalid_argument);
    QuadratureConfig bad2;
    bad2.initial_panels = 10;
    bad2.max_subdivisions = 5;
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, bad2),
                    std::invalid_argument);
}

TEST_CASE("find_root solves the classic brackets") {
    CHECK(find_root([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12) ==
          Approx(std::numbers::sqrt2).epsilon(1e-11));
    CHECK(find_root([](double x) { return std::cos(x); }, 1.0, 2.0, 1e-12) ==
          Approx(std::numbers::pi / 2).epsilon(1e-11));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12),
                    std::invalid_argument);
}

TEST_CASE("bessel_j0 meets the 1e-8 absolute accuracy target") {
    CHECK(bessel_j0(0.0) == 1.0);
    struct Ref { double x, j; };
    const Ref refs[] = {
        {0.5, 9.3846980724081297e-01},  {1.0, 7.6519768655796649e-01},
        {2.0, 2.2389077914123562e-01},  {5.0, -1.7759677131433829e-01},
        {12.0, 4.7689310796833348e-02}, {19.5, 1.7885382704017289e-01},
        {20.5, 1.1509696025367488e-01}, {25.0, 9.6266783275958015e-02},
        {50.0, 5.5812327669252086e-02}, {123.456, -7.1030062418370676e-02},
    };
    for (const auto& r : refs) {
        CHECK(bessel_j0(r.x) == Approx(r.j).margin(1e-8));
        CHECK(bessel_j0(-r.x) == bessel_j0(r.x));  // even
    }
    // first zero, located with the root finder on the implementation itself
    const double z1 = find_root([](double x) { return bessel_j0(x); }, 2.0, 3.0, 1e-12);
    CHECK(z1 == Approx(2.404825557695773).margin(1e-8));
}
