#include "pointctl/kernels.hpp"

#include "kernel_detail.hpp"

namespace pointctl::kernels::serial {

std::optional<RatioHit> first_ratio_hit(std::span<const double> zeros, double power, double target,
                                        double tol) {
    const int count = static_cast<int>(zeros.size());
    for (int n = 2; n <= count; ++n) {
        if (auto hit = detail::scan_row(zeros, n, power, target, tol)) {
            return hit;
        }
    }
    return std::nullopt;
}

Eigen::MatrixXd tabulate(const std::function<double(int, double)>& f, int columns,
                         std::span<const double> xs) {
    const auto rows = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd out(rows, columns);
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
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            g(i, j) = g(j, i) = detail::weighted_dot(values, weights, i, j);
        }
    }
    return g;
}

std::vector<double> map(const std::function<double(int)>& f, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = f(i);
    }
    return out;
}

}  // namespace pointctl::kernels::serial
