#pragma once

#include <functional>
#include <vector>

namespace pointctl {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` nodes mapped to [a, b].
[[nodiscard]] QuadratureRule gauss_legendre(int order, double a = -1.0, double b = 1.0);

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

/// Adaptive bisection with a 15-point Gauss-Legendre pair (panel vs its two
/// halves). `tol` is absolute and is distributed over the panels by width.
[[nodiscard]] IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                                   double b, double tol, int max_depth = 40);

/// Integral over [0, 1] on dyadic panels [2^-(l+1), 2^-l], l < levels, plus
/// [0, 2^-levels], each handled adaptively. Meant for integrands that are
/// continuous but not smooth at 0 (powers x^s with s not an integer).
[[nodiscard]] IntegrationResult integrate_graded(const std::function<double(double)>& f, double tol,
                                                 int levels = 40);

/// Fixed graded rule on [0, 1] with the same dyadic panels. Each panel [a, b]
/// is split into subdivisions(a, b) equal pieces carrying `order` GL nodes.
[[nodiscard]] QuadratureRule graded_rule(int levels, int order,
                                         const std::function<int(double, double)>& subdivisions);

/// Weights of the composite Boole rule on `intervals` equal steps of size h.
/// Requires intervals % 4 == 0.
[[nodiscard]] std::vector<double> boole_weights(int intervals, double h);

/// Boole when intervals % 4 == 0, Simpson when even, trapezoid otherwise.
[[nodiscard]] std::vector<double> composite_weights(int intervals, double h);

/// Power of h in the global error of the rule composite_weights picks:
/// 6 (Boole), 4 (Simpson) or 2 (trapezoid).
[[nodiscard]] int composite_order(int intervals) noexcept;

}  // namespace pointctl
