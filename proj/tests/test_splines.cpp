#include "pointctl/errors.hpp"
#include "pointctl/splines.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace pointctl;
using std::numbers::pi;

namespace {

const KnotSet kSets[] = {KnotSet::x1, KnotSet::x2, KnotSet::x3};

std::vector<double> grid(int n) {
    std::vector<double> x;
    for (int i = 0; i <= n; ++i) x.push_back(static_cast<double>(i) / n);
    return x;
}

// Elementary symmetric polynomial e_m of the values.
double elementary(std::span<const double> v, int m) {
    std::vector<double> e(static_cast<std::size_t>(m) + 1, 0.0);
    e[0] = 1.0;
    for (double x : v) {
        for (int j = m; j >= 1; --j) e[j] += x * e[j - 1];
    }
    return e[m];
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("space dimensions and knot vectors") {
    const SplineSpace u = SplineSpace::uniform(2, 10);
    CHECK(u.dimension() == 12);
    CHECK(u.knots().size() == static_cast<std::size_t>(u.dimension() + 3));
    for (int d : {2, 3}) {
        for (KnotSet s : kSets) {
            const SplineSpace sp = knot_set_space(d, s);
            const auto m = sp.smoothness();
            const int N = sp.intervals() * (d + 1) - std::accumulate(m.begin(), m.end(), 0);
            CHECK(sp.dimension() == N);
            CHECK(sp.knots().size() == static_cast<std::size_t>(N + d + 1));
            CHECK(sp.breakpoints().front() == 0.0);
            CHECK(sp.breakpoints().back() == 1.0);
            CHECK(sp.intervals() == 10);
        }
        // Doubling 0.5 lowers the smoothness there by one, so N grows by one.
        CHECK(knot_set_space(d, KnotSet::x2).dimension() == knot_set_space(d, KnotSet::x1).dimension() + 1);
        CHECK(knot_set_space(d, KnotSet::x3).dimension() == knot_set_space(d, KnotSet::x1).dimension() + 2);
    }
    CHECK_THROWS_AS(SplineSpace(2, {0.0, 0.5, 0.5, 1.0}, {1, 1}), DomainError);
    CHECK_THROWS_AS(SplineSpace(2, {0.1, 1.0}, {}), DomainError);
    CHECK_THROWS_AS(SplineSpace(2, {0.0, 0.5, 1.0}, {3}), DomainError);
    CHECK_THROWS_AS((void)u.basis(12, 0.5), IndexError);
}

TEST_CASE("degree zero is the characteristic function of [t_k, t_k+1)") {
    const SplineSpace s = SplineSpace::uniform(0, 4);
    CHECK(s.basis(1, 0.25) == 1.0);
    CHECK(s.basis(1, 0.4999) == 1.0);
    CHECK(s.basis(1, 0.5) == 0.0);
    CHECK(s.basis(2, 0.5) == 1.0);
    CHECK(s.basis(3, 1.0) == 1.0);
}

TEST_CASE("B-spline axioms on all knot sets") {
    for (int d : {2, 3}) {
        for (KnotSet ks : kSets) {
            CAPTURE(d);
            CAPTURE(to_string(ks));
            const SplineSpace s = knot_set_space(d, ks);
            const int N = s.dimension();
            const auto t = s.knots();
            double pou = 0.0;
            bool nonneg = true;
            bool local = true;
            for (double x : grid(2000)) {
                double sum = 0.0;
                for (int k = 0; k < N; ++k) {
                    const double v = s.basis(k, x);
                    sum += v;
                    nonneg = nonneg && v >= 0.0;
                    const bool inside = x >= t[k] && (x < t[k + d + 1] || (x == 1.0 && t[k + d + 1] == 1.0));
                    local = local && (inside || v == 0.0);
                }
                pou = std::max(pou, std::fabs(sum - 1.0));
                const auto [lo, hi] = s.active_range(x);
                for (int k = 0; k < N; ++k) {
                    if (k < lo || k > hi) local = local && s.basis(k, x) == 0.0;
                }
            }
            CHECK(pou < 1e-12);
            CHECK(nonneg);
            CHECK(local);

            // Schoenberg-Whitney points: support midpoints.
            Eigen::MatrixXd C(N, N);
            for (int r = 0; r < N; ++r) {
                const double x = 0.5 * (t[r] + t[r + d + 1]);
                for (int k = 0; k < N; ++k) C(r, k) = s.basis(k, x);
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
            CHECK(lu.rank() == N);
        }
    }
}

TEST_CASE("integrals and Greville points") {
    const SplineSpace s = knot_set_space(3, KnotSet::x2);
    for (int k = 0; k < s.dimension(); ++k) {
        double q = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) q += s.basis(k, (i + 0.5) / n) / n;
        CHECK(s.integral(k) == doctest::Approx(q).epsilon(1e-6));
        const auto t = s.knots();
        CHECK(s.greville(k) == doctest::Approx((t[k + 1] + t[k + 2] + t[k + 3]) / 3.0));
    }
}

TEST_CASE("derivatives") {
    const SplineSpace u2 = SplineSpace::uniform(2, 10);
    for (double x : {0.13, 0.47, 0.88}) {
        double s = 0.0;
        for (int k = 0; k < u2.dimension(); ++k) s += u2.basis_deriv(k, x, 1);
        CHECK(std::fabs(s) < 1e-12);
    }
    for (int d : {2, 3}) {
        for (KnotSet ks : kSets) {
            const SplineSpace s = knot_set_space(d, ks);
            for (int k = 0; k < s.dimension(); ++k) {
                for (double x : {0.033, 0.2571, 0.5312, 0.777, 0.961}) {
                    // five-point stencils are exact on cubics; no knot lies within 2h of x
                    const double h = 1e-3;
                    const double p2 = s.basis(k, x + 2 * h), p1 = s.basis(k, x + h), c = s.basis(k, x);
                    const double m1 = s.basis(k, x - h), m2 = s.basis(k, x - 2 * h);
                    const double fd1 = (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h);
                    CHECK(std::fabs(s.basis_deriv(k, x, 1) - fd1) < 1e-9);
                    const double fd2 = (-p2 + 16 * p1 - 30 * c + 16 * m1 - m2) / (12 * h * h);
                    CHECK(std::fabs(s.basis_deriv(k, x, 2) - fd2) < 1e-6);
                }
            }
        }
    }
    // Interior cubic at its support midpoint: second derivative of B(1/2)... on a uniform grid.
    const SplineSpace u3 = SplineSpace::uniform(3, 10);
    const double h = 0.1;
    CHECK(u3.basis_deriv(5, u3.greville(5), 2) == doctest::Approx(-2.0 / (h * h)).epsilon(1e-12));
    // Order d at a knot: the one-sided value from the right.
    const double right = u2.basis_deriv(4, 0.3, 2);
    CHECK(right == doctest::Approx(u2.basis_deriv(4, 0.3 + 1e-9, 2)).epsilon(1e-9));
    CHECK(u2.basis_deriv(4, 0.35, 3) == 0.0);
    CHECK_THROWS_AS((void)u2.basis_deriv(4, 0.3, -1), DomainError);
}

TEST_CASE("quasi-interpolant tables on uniform partitions") {
    const QuasiInterpolant q2(SplineSpace::uniform(2, 10));
    const Eigen::MatrixXd& L2 = q2.functionals();
    CHECK(q2.site_count() == 12);
    CHECK(q2.sites()[0] == 0.0);
    CHECK(q2.sites()[1] == doctest::Approx(0.05));
    CHECK(q2.sites()[11] == 1.0);
    CHECK(L2(0, 0) == 1.0);
    CHECK(L2(1, 0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(L2(1, 1) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(L2(1, 2) == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
    for (int i = 2; i <= 9; ++i) {
        CHECK(L2(i, i - 1) == doctest::Approx(-0.125).epsilon(1e-14));
        CHECK(L2(i, i) == doctest::Approx(1.25).epsilon(1e-14));
        CHECK(L2(i, i + 1) == doctest::Approx(-0.125).epsilon(1e-14));
        CHECK(L2.row(i).sum() == doctest::Approx(1.0).epsilon(1e-14));
    }

    const QuasiInterpolant q3(SplineSpace::uniform(3, 10));
    const Eigen::MatrixXd& L3 = q3.functionals();
    CHECK(q3.site_count() == 11);
    CHECK(L3(1, 0) == doctest::Approx(7.0 / 18.0).epsilon(1e-14));
    CHECK(L3(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(L3(1, 2) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(L3(1, 3) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    for (int i = 2; i <= 10; ++i) {
        CHECK(L3(i, i - 2) == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
        CHECK(L3(i, i - 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
        CHECK(L3(i, i) == doctest::Approx(-1.0 / 6.0).epsilon(1e-14));
    }
    // Bt_3 = 1/9 B_1 - 1/6 B_3 + 4/3 B_4 - 1/6 B_5.
    const auto t3 = q3.modified_basis_terms(3);
    REQUIRE(t3.size() == 4);
    CHECK(t3[0].first == 1);
    CHECK(t3[0].second == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(t3[1].first == 3);
    CHECK(t3[2].first == 4);
    CHECK(t3[2].second == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(t3[3].first == 5);
    // Right end mirrors the left end.
    for (int r = 0; r < q3.site_count(); ++r) {
        for (int k = 0; k < q3.space().dimension(); ++k) {
            CHECK(L3(k, r) == doctest::Approx(L3(12 - k, 10 - r)).epsilon(1e-13));
        }
    }
}

TEST_CASE("functionals reproduce blossoms and modified bases regroup to the functional form") {
    for (int d : {2, 3}) {
        for (KnotSet ks : kSets) {
            const QuasiInterpolant q(knot_set_space(d, ks));
            const SplineSpace& s = q.space();
            const auto t = s.knots();
            const Eigen::MatrixXd& L = q.functionals();
            for (int k = 0; k < s.dimension(); ++k) {
                for (int m = 0; m <= d; ++m) {
                    double lam = 0.0;
                    for (int r = 0; r < q.site_count(); ++r) lam += L(k, r) * std::pow(q.sites()[r], m);
                    const double blossom = elementary(t.subspan(static_cast<std::size_t>(k) + 1, d), m) / binom(d, m);
                    CHECK(lam == doctest::Approx(blossom).epsilon(1e-11));
                }
            }
            for (int r = 0; r < q.site_count(); ++r) {
                Eigen::VectorXd col = Eigen::VectorXd::Zero(s.dimension());
                for (auto [k, w] : q.modified_basis_terms(r)) col(k) = w;
                CHECK((col - L.col(r)).cwiseAbs().maxCoeff() == 0.0);
                for (double x : {0.21, 0.5, 0.74}) {
                    double v = 0.0;
                    for (auto [k, w] : q.modified_basis_terms(r)) v += w * s.basis(k, x);
                    CHECK(q.modified_basis(r, x) == doctest::Approx(v).epsilon(1e-14));
                }
            }
        }
    }
}

TEST_CASE("polynomial reproduction") {
    for (int d : {2, 3}) {
        for (KnotSet ks : kSets) {
            const QuasiInterpolant q(knot_set_space(d, ks));
            for (int p = 0; p <= d; ++p) {
                const auto f = [p](double x) { return std::pow(x, p) - 0.3 * x; };
                CHECK(sup_error(q, f) < 1e-12);
            }
        }
        const QuasiInterpolant u(SplineSpace::uniform(d, 10));
        CHECK(sup_error(u, [](double x) { return x * x; }) < 1e-12);
    }
    const QuasiInterpolant q3(SplineSpace::uniform(3, 12));
    CHECK(sup_error(q3, [](double x) { return x * x * x - x; }) < 1e-12);
    const QuasiInterpolant q2(SplineSpace::uniform(2, 10));
    const std::vector<double> ones(12, 1.0);
    for (double c : q2.coefficients(ones)) CHECK(c == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)q2.coefficients(std::vector<double>(5, 1.0)), DomainError);
    CHECK_THROWS_AS(QuasiInterpolant(SplineSpace::uniform(1, 5)), DomainError);
}

TEST_CASE("quasi-interpolation orders") {
    const auto f = [](double x) { return std::sin(3 * pi * x); };
    const std::vector<int> ns{8, 16, 32, 64, 128};
    const double o2 = convergence_order(2, f, ns);
    const double o3 = convergence_order(3, f, ns);
    MESSAGE("orders " << o2 << " " << o3);
    CHECK(o2 >= 2.85);
    CHECK(o2 <= 3.15);
    CHECK(o3 >= 3.8);
    CHECK(o3 <= 4.2);
}

TEST_CASE("evaluation of the interpolant and its derivatives") {
    const QuasiInterpolant q(knot_set_space(3, KnotSet::x2));
    const auto f = [](double x) { return 2 * x * x * x - x * x + 0.5; };
    const std::vector<double> c = q.coefficients(f);
    for (double x : {0.12, 0.5, 0.81}) {
        CHECK(q.evaluate(c, x) == doctest::Approx(f(x)).epsilon(1e-12));
        CHECK(q.evaluate(c, x, 1) == doctest::Approx(6 * x * x - 2 * x).epsilon(1e-10));
        CHECK(q.evaluate(c, x, 2) == doctest::Approx(12 * x - 2).epsilon(1e-9));
    }
    for (int r = 0; r < q.site_count(); ++r) {
        double v = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) v += q.modified_basis(r, (i + 0.5) / n) / n;
        CHECK(q.modified_integral(r) == doctest::Approx(v).epsilon(1e-6));
    }
}
