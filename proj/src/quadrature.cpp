#include "pointctl/quadrature.hpp"

#include "pointctl/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace pointctl {

QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 1) {
        throw DomainError("gauss_legendre: order must be >= 1");
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = order * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(order - 1 - i);
        rule.nodes[lo] = mid - half * z;
        rule.nodes[hi] = mid + half * z;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    return rule;
}

namespace {

const QuadratureRule& gl15() {
    static const QuadratureRule rule = gauss_legendre(15);
    return rule;
}

double apply(const std::function<double(double)>& f, double a, double b) {
    const QuadratureRule& r = gl15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        s += r.weights[i] * f(mid + half * r.nodes[i]);
    }
    return half * s;
}

struct Panel {
    double a;
    double b;
    double whole;
    int depth;
};

}  // namespace

IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     double tol, int max_depth) {
    IntegrationResult res;
    if (a == b) return res;
    const double width = b - a;
    std::vector<Panel> stack{{a, b, apply(f, a, b), 0}};
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double m = 0.5 * (p.a + p.b);
        const double left = apply(f, p.a, m);
        const double right = apply(f, m, p.b);
        const double diff = std::fabs(left + right - p.whole);
        const double local_tol = tol * (p.b - p.a) / width;
        if (diff <= local_tol || p.depth >= max_depth) {
            if (diff > local_tol) res.converged = false;
            res.value += left + right;
            res.error += diff;
        } else {
            stack.push_back({p.a, m, left, p.depth + 1});
            stack.push_back({m, p.b, right, p.depth + 1});
        }
    }
    return res;
}

IntegrationResult integrate_graded(const std::function<double(double)>& f, double tol, int levels) {
    IntegrationResult res;
    const double panel_tol = tol / (levels + 1);
    double hi = 1.0;
    for (int l = 0; l <= levels; ++l) {
        const double lo = (l == levels) ? 0.0 : 0.5 * hi;
        const IntegrationResult part = integrate_adaptive(f, lo, hi, panel_tol);
        res.value += part.value;
        res.error += part.error;
        res.converged = res.converged && part.converged;
        hi = lo;
    }
    return res;
}

QuadratureRule graded_rule(int levels, int order,
                           const std::function<int(double, double)>& subdivisions) {
    const QuadratureRule ref = gauss_legendre(order);
    QuadratureRule rule;
    double hi = 1.0;
    for (int l = 0; l <= levels; ++l) {
        const double lo = (l == levels) ? 0.0 : 0.5 * hi;
        const int pieces = std::max(1, subdivisions(lo, hi));
        const double h = (hi - lo) / pieces;
        for (int p = 0; p < pieces; ++p) {
            const double a = lo + p * h;
            for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
                rule.nodes.push_back(a + 0.5 * h * (ref.nodes[i] + 1.0));
                rule.weights.push_back(0.5 * h * ref.weights[i]);
            }
        }
        hi = lo;
    }
    return rule;
}

std::vector<double> boole_weights(int intervals, double h) {
    if (intervals <= 0 || intervals % 4 != 0) {
        throw DomainError("boole_weights: interval count must be a positive multiple of 4, got " +
                          std::to_string(intervals));
    }
    std::vector<double> w(static_cast<std::size_t>(intervals) + 1, 0.0);
    const double c = 2.0 * h / 45.0;
    for (int i = 0; i < intervals; i += 4) {
        const auto k = static_cast<std::size_t>(i);
        w[k] += 7.0 * c;
        w[k + 1] += 32.0 * c;
        w[k + 2] += 12.0 * c;
        w[k + 3] += 32.0 * c;
        w[k + 4] += 7.0 * c;
    }
    return w;
}

std::vector<double> composite_weights(int intervals, double h) {
    if (intervals <= 0) {
        throw DomainError("composite_weights: need at least one interval");
    }
    if (intervals % 4 == 0) {
        return boole_weights(intervals, h);
    }
    std::vector<double> w(static_cast<std::size_t>(intervals) + 1, 0.0);
    if (intervals % 2 == 0) {
        for (int i = 0; i < intervals; i += 2) {
            const auto k = static_cast<std::size_t>(i);
            w[k] += h / 3.0;
            w[k + 1] += 4.0 * h / 3.0;
            w[k + 2] += h / 3.0;
        }
        return w;
    }
    for (int i = 0; i < intervals; ++i) {
        const auto k = static_cast<std::size_t>(i);
        w[k] += 0.5 * h;
        w[k + 1] += 0.5 * h;
    }
    return w;
}

int composite_order(int intervals) noexcept {
    if (intervals % 4 == 0) return 6;
    if (intervals % 2 == 0) return 4;
    return 2;
}

}  // namespace pointctl
