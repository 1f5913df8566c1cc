#include "pointctl/kernels.hpp"

#include "kernel_detail.hpp"

#include <climits>

namespace pointctl::kernels::parallel {

std::optional<RatioHit> first_ratio_hit(std::span<const double> zeros, double power, double target,
                                        double tol) {
    const int count = static_cast<int>(zeros.size());
    int best_n = INT_MAX;
#pragma omp parallel for schedule(dynamic, 8) reduction(min : best_n)
    for (int n = 2; n <= count; ++n) {
        if (n < best_n && detail::scan_row(zeros, n, power, target, tol)) {
            best_n = n;
        }
    }
    if (best_n == INT_MAX) {
        return std::nullopt;
    }
    return detail::scan_row(zeros, best_n, power, target, tol);
}

Eigen::MatrixXd tabulate(const std::function<double(int, double)>& f, int columns,
                         std::span<const double> xs) {
    const auto rows = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd out(rows, columns);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (int c = 0; c < columns; ++c) {
            out(i, c) = f(c, xs[static_cast<std::size_t>(i)]);
        }
    }
    return out;
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& values, std::span<const double> weights) {
    const Eigen::Index m = values.cols();
    Eigen::MatrixXd g(m, m);
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            const double v = detail::weighted_dot(values, weights, i, j);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

std::vector<double> map(const std::function<double(int)>& f, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = f(i);
    }
    return out;
}

}  // namespace pointctl::kernels::parallel
