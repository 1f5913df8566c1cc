#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace pointctl {

/// Spline space S_{d,x,m} on [0, 1]: breakpoints 0 = x_0 < ... < x_n = 1 and
/// smoothness m_i (C^(m_i - 1) at x_i), so x_i enters the knot vector
/// d + 1 - m_i times and the ends d + 1 times. dim = n(d+1) - sum m_i.
/// Basis indices are 0-based, k = 0..dimension()-1.
class SplineSpace {
public:
    SplineSpace(int degree, std::vector<double> breakpoints, std::vector<int> smoothness);

    /// n equal intervals, simple interior knots.
    [[nodiscard]] static SplineSpace uniform(int degree, int n);
    /// Interior knot multiplicities 1..d+1 instead of smoothness.
    [[nodiscard]] static SplineSpace with_multiplicities(int degree, std::vector<double> breakpoints,
                                                         const std::vector<int>& multiplicities);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] int dimension() const noexcept { return static_cast<int>(knots_.size()) - degree_ - 1; }
    [[nodiscard]] int intervals() const noexcept { return static_cast<int>(breakpoints_.size()) - 1; }
    [[nodiscard]] std::span<const double> knots() const noexcept { return knots_; }
    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] std::span<const int> smoothness() const noexcept { return smoothness_; }

    /// B_{k,d}(x), k = 0..dimension()-1, by the Cox-de Boor recursion (0/0 = 0). Right-continuous at
    /// knots; at x = 1 the last function is 1.
    [[nodiscard]] double basis(int k, double x) const;
    /// order-th derivative, right limit at knots.
    [[nodiscard]] double basis_deriv(int k, double x, int order) const;

    /// Indices [first, last] of the functions that can be nonzero at x.
    [[nodiscard]] std::pair<int, int> active_range(double x) const;

    /// Knot average (t_{k+1} + ... + t_{k+d}) / d; t_k for d = 0.
    [[nodiscard]] double greville(int k) const;

    /// int_0^1 B_k = (t_{k+d+1} - t_k) / (d + 1).
    [[nodiscard]] double integral(int k) const;

private:
    void check(int k) const;
    [[nodiscard]] double eval(int k, int p, double x, int order) const;
    [[nodiscard]] int last_nonempty() const noexcept { return last_nonempty_; }

    int degree_;
    std::vector<double> breakpoints_;
    std::vector<int> smoothness_;
    std::vector<double> knots_;
    int last_nonempty_ = 0;
};

enum class KnotSet { x1, x2, x3 };

[[nodiscard]] std::string_view to_string(KnotSet s) noexcept;

/// Breakpoints 0, 0.1, ..., 1 with the knot at 0.5 repeated once (x1),
/// twice (x2) or three times (x3).
[[nodiscard]] SplineSpace knot_set_space(int degree, KnotSet set);

/// Discrete quasi-interpolant Q f = sum_i lambda_i(f) B_i of degree 2 or 3.
///
/// Sample sites: 0, the interval midpoints and 1 for d = 2; the breakpoints
/// for d = 3. Each lambda_i combines the d+1 sites closest to the Greville
/// point of B_i and is exact on P_d, so Q reproduces P_d. On uniform simple
/// knots this gives the interior rules (-1/8, 5/4, -1/8) for d = 2 and
/// (-1/6, 4/3, -1/6) for d = 3.
///
/// The quasi-Lagrange functions Bt_r = sum_i L(i, r) B_i, one per site,
/// give Q f = sum_r f(s_r) Bt_r.
class QuasiInterpolant {
public:
    explicit QuasiInterpolant(SplineSpace space);

    [[nodiscard]] const SplineSpace& space() const noexcept { return space_; }
    [[nodiscard]] int degree() const noexcept { return space_.degree(); }
    [[nodiscard]] std::span<const double> sites() const noexcept { return sites_; }
    [[nodiscard]] int site_count() const noexcept { return static_cast<int>(sites_.size()); }

    /// L: dimension() x site_count(), row i holds the weights of lambda_i.
    [[nodiscard]] const Eigen::MatrixXd& functionals() const noexcept { return weights_; }

    /// B-spline coefficients of Q f from f at the sites.
    [[nodiscard]] std::vector<double> coefficients(std::span<const double> samples) const;
    [[nodiscard]] std::vector<double> coefficients(const std::function<double(double)>& f) const;

    /// sum_k c_k B_k(x) (derivative of the given order).
    [[nodiscard]] double evaluate(std::span<const double> coeffs, double x, int order = 0) const;

    /// Bt_r(x) or a derivative of it.
    [[nodiscard]] double modified_basis(int r, double x, int order = 0) const;
    /// (i, L(i, r)) for the nonzero entries of column r.
    [[nodiscard]] std::span<const std::pair<int, double>> modified_basis_terms(int r) const;

    /// int_0^1 Bt_r.
    [[nodiscard]] double modified_integral(int r) const;

private:
    SplineSpace space_;
    std::vector<double> sites_;
    Eigen::MatrixXd weights_;
    std::vector<std::vector<std::pair<int, double>>> columns_;
};

/// sup |f - Q f| on a uniform grid of `samples` points.
[[nodiscard]] double sup_error(const QuasiInterpolant& qi, const std::function<double(double)>& f,
                               int samples = 4001);

/// Least-squares slope of log sup|f - Q_n f| against log(1/n) over uniform spaces.
[[nodiscard]] double convergence_order(int degree, const std::function<double(double)>& f,
                                       std::span<const int> n_list);

}  // namespace pointctl
