#include "pointctl/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace pointctl;
using std::numbers::pi;

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
    for (int n : {1, 2, 5, 15, 20}) {
        const QuadratureRule r = gauss_legendre(n, 0.0, 2.0);
        REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
            CHECK(s == doctest::Approx(std::pow(2.0, p + 1) / (p + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("adaptive quadrature") {
    const IntegrationResult r = integrate_adaptive([](double x) { return std::exp(-x) * std::sin(40 * x); }, 0, 3, 1e-13);
    const double exact = (40.0 - std::exp(-3.0) * (std::sin(120.0) + 40.0 * std::cos(120.0))) / 1601.0;
    CHECK(r.converged);
    CHECK(std::fabs(r.value - exact) < 1e-12);
}

TEST_CASE("graded quadrature handles non-smooth powers at 0") {
    for (double s : {0.25, 0.5, 0.75, 1.0 / 3.0}) {
        const IntegrationResult r = integrate_graded([s](double x) { return std::pow(x, s) * std::cos(x); }, 1e-13);
        // Oracle: series sum_m (-1)^m / ((2m)! (s + 2m + 1)).
        double exact = 0.0;
        double fact = 1.0;
        for (int m = 0; m < 12; ++m) {
            if (m > 0) fact *= (2.0 * m - 1) * (2.0 * m);
            exact += (m % 2 ? -1.0 : 1.0) / (fact * (s + 2.0 * m + 1.0));
        }
        CHECK(r.converged);
        CHECK(std::fabs(r.value - exact) < 1e-12);
    }
    const QuadratureRule g = graded_rule(40, 20, [](double, double) { return 1; });
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::sqrt(g.nodes[i]);
    CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("composite Newton-Cotes weights") {
    CHECK_THROWS((void)boole_weights(6, 0.1));
    const std::vector<double> b = boole_weights(4, 0.25);
    CHECK(b[0] == doctest::Approx(7.0 / 90.0 * 4 * 0.25));
    CHECK(b[1] == doctest::Approx(32.0 / 90.0 * 4 * 0.25));
    CHECK(b[2] == doctest::Approx(12.0 / 90.0 * 4 * 0.25));
    for (int n : {8, 10, 7, 2000}) {
        const double h = 1.0 / n;
        const std::vector<double> w = composite_weights(n, h);
        REQUIRE(w.size() == static_cast<std::size_t>(n + 1));
        CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(composite_order(8) == 6);
    CHECK(composite_order(10) == 4);
    CHECK(composite_order(7) == 2);
    // Observed order of the Boole rule on e^{-20 t}.
    auto err = [](int n) {
        const std::vector<double> w = composite_weights(n, 1.0 / n);
        double s = 0.0;
        for (int i = 0; i <= n; ++i) s += w[static_cast<std::size_t>(i)] * std::exp(-20.0 * i / n);
        return std::fabs(s - (1.0 - std::exp(-20.0)) / 20.0);
    };
    const double order = std::log2(err(64) / err(128));
    CHECK(order > 5.7);
    CHECK(order < 6.3);
}
