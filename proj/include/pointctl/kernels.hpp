#pragma once

// Data-parallel loops shared by the numerical modules. Every function has a
// serial reference and an OpenMP twin; the parallel version splits the same
// per-element computation across threads, so both produce identical bits.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pointctl::kernels {

/// A pair of 1-based indices k < n with |(z_k / z_n)^p - target| <= tol.
struct RatioHit {
    int k;
    int n;
    double distance;
};

namespace serial {

/// First hit in the order (n ascending, then k ascending) over 1 <= k < n <= zeros.size().
[[nodiscard]] std::optional<RatioHit> first_ratio_hit(std::span<const double> zeros, double power,
                                                      double target, double tol);

/// out(i, c) = f(c, xs[i]).
[[nodiscard]] Eigen::MatrixXd tabulate(const std::function<double(int, double)>& f, int columns,
                                       std::span<const double> xs);

/// values^T diag(weights) values.
[[nodiscard]] Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& values,
                                            std::span<const double> weights);

/// out[i] = f(i) for i < count.
[[nodiscard]] std::vector<double> map(const std::function<double(int)>& f, int count);

}  // namespace serial

namespace parallel {

[[nodiscard]] std::optional<RatioHit> first_ratio_hit(std::span<const double> zeros, double power,
                                                      double target, double tol);
[[nodiscard]] Eigen::MatrixXd tabulate(const std::function<double(int, double)>& f, int columns,
                                       std::span<const double> xs);
[[nodiscard]] Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& values,
                                            std::span<const double> weights);
[[nodiscard]] std::vector<double> map(const std::function<double(int)>& f, int count);

}  // namespace parallel

}  // namespace pointctl::kernels
