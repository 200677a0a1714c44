#include <doctest.h>

#include <cmath>
#include <random>

#include "wittenlab/oscillator.hpp"
#include "wittenlab/quadrature.hpp"

using namespace wittenlab;

namespace {

// independent oracle: physicists' Hermite polynomials by the raw three-term
// recurrence H_{N+1} = 2x H_N - 2N H_{N-1}, then normalized explicitly
double hermite_poly_oracle(int n, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0)
        return h0;
    for (int m = 1; m < n; ++m) {
        const double h2 = 2.0 * x * h1 - 2.0 * m * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

double phi_oracle(int n, double x) {
    double norm = std::pow(M_PI, 0.25);
    for (int m = 1; m <= n; ++m)
        norm *= std::sqrt(2.0 * m);
    return hermite_poly_oracle(n, x) * std::exp(-0.5 * x * x) / norm;
}

} // namespace

TEST_CASE("hermite function pinned values") {
    CHECK(hermite_function(0, 0.0) == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-14));
    CHECK(hermite_function(1, 0.0) == 0.0);
    // (2,1): (4*1^2 - 2) e^{-1/2} / (pi^{1/4} sqrt 8), via the recurrence oracle
    const double expected = (4.0 - 2.0) * std::exp(-0.5) / (std::pow(M_PI, 0.25) * std::sqrt(8.0));
    CHECK(hermite_function(2, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(hermite_function(2, 1.0) == doctest::Approx(phi_oracle(2, 1.0)).epsilon(1e-14));
}

TEST_CASE("hermite recurrence matches the raw-polynomial oracle") {
    for (int n : {3, 7, 15, 24}) // raw H_N overflows long before 200; check the stable range
        for (double x : {-2.5, -0.3, 0.9, 3.1})
            CHECK(hermite_function(n, x) == doctest::Approx(phi_oracle(n, x)).epsilon(1e-11));
}

TEST_CASE("hermite order range errors") {
    CHECK_THROWS_AS(hermite_function(-1, 0.0), std::out_of_range);
    CHECK_THROWS_AS(hermite_function(201, 0.0), std::out_of_range);
    CHECK(std::isfinite(hermite_function(200, 1.0)));
}

TEST_CASE("hermite functions are L2-orthonormal") {
    // quadrature on [-12, 12] per the contract; orders up to 40
    double worst = 0.0;
    for (int m = 0; m <= 40; m += 5)
        for (int n = m; n <= 40; n += 5) {
            const double overlap = integrate(
                [&](double x) {
                    const auto t = hermite_function_table(n, x);
                    return t[m] * t[n];
                },
                -12.0, 12.0, 1e-12, 1e-12);
            worst = std::max(worst, std::abs(overlap - (m == n ? 1.0 : 0.0)));
        }
    // odd/even cross terms with nearby orders too
    for (int m = 38; m <= 40; ++m)
        for (int n = m; n <= 40; ++n) {
            const double overlap = integrate(
                [&](double x) {
                    const auto t = hermite_function_table(n, x);
                    return t[m] * t[n];
                },
                -12.0, 12.0, 1e-12, 1e-12);
            worst = std::max(worst, std::abs(overlap - (m == n ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("mehler closed form pinned cases") {
    // rho = 0: only the N = 0 term survives
    for (double x : {-1.0, 0.4})
        for (double y : {0.0, 2.2})
            CHECK(mehler_closed(0.0, x, y) ==
                  doctest::Approx(std::exp(-(x * x + y * y) / 2) / std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(mehler_closed(0.5, 1.0, 1.0) == doctest::Approx(mehler_closed(0.5, 1.0, 1.0)));
    // symmetry in (x, y)
    CHECK(mehler_closed(0.5, 1.0, -2.0) == doctest::Approx(mehler_closed(0.5, -2.0, 1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(mehler_closed(1.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(mehler_closed(-0.1, 0.0, 0.0), std::domain_error);
}

TEST_CASE("mehler series against the closed form") {
    // truncated Hermite series as oracle at rho = 0.6
    CHECK(std::abs(mehler_series(0.6, 0.3, -0.7, 80) - mehler_closed(0.6, 0.3, -0.7)) < 1e-10);
    // single term and rho = 0 degeneracies
    const double phi0 = [](double x) { return std::pow(M_PI, -0.25) * std::exp(-x * x / 2); }(1.1);
    CHECK(mehler_series(0.3, 1.1, 1.1, 0) == doctest::Approx(phi0 * phi0).epsilon(1e-14));
    CHECK(mehler_series(0.0, 2.0, 3.0, 50) ==
          doctest::Approx(hermite_function(0, 2.0) * hermite_function(0, 3.0)).epsilon(1e-14));
    CHECK(std::abs(mehler_series(0.9, 0.0, 0.0, 80) - mehler_closed(0.9, 0.0, 0.0)) < 1e-9 + 5e-5);
}

TEST_CASE("mehler agreement over the contract grid") {
    // n_max = 80 converges below 1e-9 for rho <= 0.6; rho = 0.9 needs ~200 terms
    double worst_low = 0.0, worst_high = 0.0;
    for (double rho : {0.0, 0.3, 0.6})
        for (double x : {-3.0, -1.0, 0.0, 1.5, 3.0})
            for (double y : {-3.0, -1.0, 0.0, 1.5, 3.0})
                worst_low = std::max(worst_low,
                                     std::abs(mehler_series(rho, x, y, 80) - mehler_closed(rho, x, y)));
    for (double x : {-3.0, 0.0, 3.0})
        for (double y : {-3.0, 0.0, 3.0})
            worst_high = std::max(worst_high,
                                  std::abs(mehler_series(0.9, x, y, 200) - mehler_closed(0.9, x, y)));
    CHECK(worst_low < 1e-9);
    CHECK(worst_high < 1e-9);
}

TEST_CASE("oscillator heat kernel closed form and eigen-series") {
    // (sign=-1, t=1, 0, 0) -> (1/sqrt pi) (1 - e^{-4})^{-1/2}
    const double expected = 1.0 / std::sqrt(M_PI) / std::sqrt(1.0 - std::exp(-4.0));
    CHECK(oscillator_heat_kernel(-1, 1.0, 0.0, 0.0) == doctest::Approx(expected).epsilon(1e-14));
    // eigen-series cross-check: sum e^{-2Nt} Phi_N(0)^2
    double series = 0.0;
    const auto phi = hermite_function_table(120, 0.0);
    for (int n = 120; n >= 0; --n)
        series += std::exp(-2.0 * n) * phi[n] * phi[n];
    CHECK(oscillator_heat_kernel(-1, 1.0, 0.0, 0.0) == doctest::Approx(series).epsilon(1e-12));
    // large-t diagonal limits
    CHECK(oscillator_heat_kernel(-1, 40.0, 0.7, 0.7) ==
          doctest::Approx(std::exp(-0.49) / std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(oscillator_heat_kernel(+1, 40.0, 0.7, 0.7) < 1e-30);
    // positivity, symmetry, domain error
    CHECK(oscillator_heat_kernel(+1, 0.3, -1.0, 2.0) > 0.0);
    CHECK(oscillator_heat_kernel(-1, 0.3, -1.0, 2.0) ==
          doctest::Approx(oscillator_heat_kernel(-1, 0.3, 2.0, -1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(oscillator_heat_kernel(-1, 0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(oscillator_heat_kernel(2, 1.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("oscillator semigroup property under quadrature") {
    for (int sign : {-1, +1}) {
        const double s = 0.4, t = 0.7, x = 0.5, y = -0.3;
        const double conv = integrate_gaussian_tails(
            [&](double z) {
                return oscillator_heat_kernel(sign, s, x, z) * oscillator_heat_kernel(sign, t, z, y);
            },
            0.3, 1e-12, 1e-11);
        CHECK(conv == doctest::Approx(oscillator_heat_kernel(sign, s + t, x, y)).epsilon(1e-6));
    }
}

TEST_CASE("oscillator trace integrals: exact, series and quadrature routes") {
    CHECK(oscillator_trace_integral(-1, 1.0) == doctest::Approx(1.0 / (1.0 - std::exp(-2.0))).epsilon(1e-15));
    // geometric-series oracle
    for (int sign : {-1, +1})
        for (double t : {0.5, 1.0, 2.0}) {
            double series = 0.0;
            for (int n = 400; n >= 0; --n)
                series += std::exp(-t * (sign < 0 ? 2.0 * n : 2.0 * n + 2.0));
            CHECK(oscillator_trace_integral(sign, t) == doctest::Approx(series).epsilon(1e-13));
            CHECK(std::abs(oscillator_trace_integral_quadrature(sign, t) -
                           oscillator_trace_integral(sign, t)) < 1e-8);
        }
    // t -> infinity limits: 1 for the minus sign, 0 for the plus sign
    CHECK(oscillator_trace_integral(-1, 30.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oscillator_trace_integral(+1, 30.0) < 1e-25);
    CHECK_THROWS_AS(oscillator_trace_integral(-1, 0.0), std::domain_error);
}

TEST_CASE("model sign profiles follow eps_i * eps_i^I") {
    const ModelCriticalPoint p21(2, 1);
    CHECK(model_sign_profile(p21, MultiIndex({1}, 2)).s == std::vector<int>{-1, -1});
    CHECK(model_sign_profile(p21, MultiIndex({}, 2)).s == std::vector<int>{+1, -1});
    CHECK(model_sign_profile(p21, MultiIndex({2}, 2)).s == std::vector<int>{+1, +1});
    CHECK(model_sign_profile(p21, MultiIndex({1, 2}, 2)).s == std::vector<int>{-1, +1});
    const ModelCriticalPoint p10(1, 0);
    CHECK(model_sign_profile(p10, MultiIndex({}, 1)).s == std::vector<int>{-1});
    CHECK(model_sign_profile(p10, MultiIndex({1}, 1)).s == std::vector<int>{+1});
}

TEST_CASE("model eigenvalues") {
    const ModelCriticalPoint p21(2, 1);
    const int zeros[] = {0, 0};
    CHECK(model_eigenvalue(p21, MultiIndex({1}, 2), zeros) == 0.0);
    const ModelCriticalPoint p10(1, 0);
    const int zero[] = {0};
    CHECK(model_eigenvalue(p10, MultiIndex({1}, 1), zero) == 2.0);
    const int three[] = {3};
    CHECK(model_eigenvalue(p10, MultiIndex({}, 1), three) == 6.0);
}

TEST_CASE("model kernel component: products of 1D kernels") {
    const ModelCriticalPoint p10(1, 0);
    for (double t : {0.3, 1.0})
        for (double x : {-0.8, 0.5}) {
            const double xs[] = {x}, ys[] = {0.2};
            CHECK(model_kernel_component(p10, MultiIndex({}, 1), t, xs, ys) ==
                  doctest::Approx(oscillator_heat_kernel(-1, t, x, 0.2)).epsilon(1e-15));
        }
    const ModelCriticalPoint p21(2, 1);
    const double origin[] = {0.0, 0.0};
    const double k1 = oscillator_heat_kernel(-1, 1.0, 0.0, 0.0);
    CHECK(model_kernel_component(p21, MultiIndex({1}, 2), 1.0, origin, origin) ==
          doctest::Approx(k1 * k1).epsilon(1e-14));
    // symmetry in (x, y) for random draws
    std::mt19937_64 rng(11);
    auto draw = [&] { return -2.0 + 4.0 * (rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 20; ++trial) {
        const double x[] = {draw(), draw()}, y[] = {draw(), draw()};
        const MultiIndex idx({2}, 2);
        CHECK(model_kernel_component(p21, idx, 0.7, x, y) ==
              doctest::Approx(model_kernel_component(p21, idx, 0.7, y, x)).epsilon(1e-13));
    }
    const double bad[] = {0.0};
    CHECK_THROWS_AS(model_kernel_component(p21, MultiIndex({1}, 2), 1.0, bad, bad),
                    std::invalid_argument);
}

TEST_CASE("eigen-expansion consistency of the model kernel") {
    // sum over N <= 60 of e^{-lambda t} Phi products equals the closed form
    const ModelCriticalPoint p21(2, 1);
    const MultiIndex idx({1}, 2); // all-minus component
    for (double t : {0.5, 1.5}) {
        const double x[] = {0.4, -0.2}, y[] = {-0.1, 0.3};
        double series = 0.0;
        const auto px0 = hermite_function_table(60, x[0]);
        const auto py0 = hermite_function_table(60, y[0]);
        const auto px1 = hermite_function_table(60, x[1]);
        const auto py1 = hermite_function_table(60, y[1]);
        for (int n0 = 60; n0 >= 0; --n0)
            for (int n1 = 60; n1 >= 0; --n1) {
                const int occ[] = {n0, n1};
                series += std::exp(-t * model_eigenvalue(p21, idx, occ)) * px0[n0] * py0[n0] *
                          px1[n1] * py1[n1];
            }
        CHECK(std::abs(series - model_kernel_component(p21, idx, t, x, y)) < 1e-8);
    }
}

TEST_CASE("model trace structure") {
    const ModelCriticalPoint p10(1, 0);
    const double x0[] = {0.0};
    CHECK(model_trace(p10, 0, 0.8, x0) ==
          doctest::Approx(oscillator_heat_kernel(-1, 0.8, 0.0, 0.0)).epsilon(1e-15));
    // n = 2, r = 1: exactly C(2,1) = 2 components
    CHECK(increasing_multi_indices(2, 1).size() == 2);
    const ModelCriticalPoint p21(2, 1);
    const double origin[] = {0.0, 0.0};
    const double total = model_trace(p21, 1, 10.0, origin);
    const double dominant =
        model_kernel_component(p21, MultiIndex({1}, 2), 10.0, origin, origin);
    CHECK(total > 0.0);
    CHECK(dominant / total > 0.999); // all-minus component dominates at large t
    CHECK_THROWS_AS(model_trace(p21, 3, 1.0, origin), std::domain_error);
}

TEST_CASE("model trace integral: indicator of the Morse index") {
    const ModelCriticalPoint p21(2, 1);
    CHECK(std::abs(model_trace_integral(p21, 1, 12.0) - 1.0) < 1e-4);
    CHECK(std::abs(model_trace_integral(p21, 0, 12.0)) < 1e-4);
    CHECK(std::abs(model_trace_integral(p21, 2, 12.0)) < 1e-4);
    const ModelCriticalPoint p10(1, 0);
    CHECK(model_trace_integral(p10, 0, 1.0) ==
          doctest::Approx(1.0 / (1.0 - std::exp(-2.0))).epsilon(1e-14));
}

TEST_CASE("model trace integral monotone toward the indicator") {
    for (int n = 1; n <= 3; ++n)
        for (int l = 0; l <= n; ++l) {
            const ModelCriticalPoint p(n, l);
            for (int r = 0; r <= n; ++r) {
                const double target = (r == l) ? 1.0 : 0.0;
                double prev = std::abs(model_trace_integral(p, r, 1.0) - target);
                for (double t : {2.0, 4.0, 8.0}) {
                    const double dev = std::abs(model_trace_integral(p, r, t) - target);
                    CHECK(dev <= prev + 1e-15);
                    prev = dev;
                }
            }
        }
}

TEST_CASE("trace consistency: quadrature of the component diagonal") {
    // 2D tensor Gauss grid on the diagonal of a component against the product
    // of 1D trace integrals
    const ModelCriticalPoint p21(2, 1);
    const MultiIndex idx({2}, 2); // signs (+1, +1)
    const double t = 0.9;
    const auto profile = model_sign_profile(p21, idx);
    double expected = 1.0;
    for (int s : profile.s)
        expected *= oscillator_trace_integral(s, t);
    const double inner = integrate_gaussian_tails(
        [&](double x1) {
            return integrate_gaussian_tails(
                [&](double x2) {
                    const double x[] = {x1, x2};
                    return model_kernel_component(p21, idx, t, x, x);
                },
                0.2, 1e-13, 1e-12);
        },
        0.2, 1e-11, 1e-10);
    CHECK(std::abs(inner - expected) < 1e-8);
}

TEST_CASE("multi-index validation") {
    CHECK_THROWS_AS(MultiIndex({2, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({4}, 3), std::invalid_argument);
    CHECK_THROWS_AS(ModelCriticalPoint(2, 3), std::invalid_argument);
    CHECK(increasing_multi_indices(4, 2).size() == 6);
    CHECK(increasing_multi_indices(3, 0).size() == 1);
}
