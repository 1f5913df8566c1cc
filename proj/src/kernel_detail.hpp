#pragma once

#include "pointctl/kernels.hpp"

#include <cmath>

namespace pointctl::kernels::detail {

// Inner loops shared verbatim by the serial and OpenMP kernels.

inline std::optional<RatioHit> scan_row(std::span<const double> zeros, int n, double power,
                                        double target, double tol) {
    const double zn = zeros[static_cast<std::size_t>(n - 1)];
    for (int k = 1; k < n; ++k) {
        const double r = std::pow(zeros[static_cast<std::size_t>(k - 1)] / zn, power);
        const double dist = std::fabs(r - target);
        if (dist <= tol) {
            return RatioHit{k, n, dist};
        }
    }
    return std::nullopt;
}

inline double weighted_dot(const Eigen::MatrixXd& values, std::span<const double> weights,
                           Eigen::Index i, Eigen::Index j) {
    double s = 0.0;
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        s += weights[static_cast<std::size_t>(r)] * values(r, i) * values(r, j);
    }
    return s;
}

}  // namespace pointctl::kernels::detail
