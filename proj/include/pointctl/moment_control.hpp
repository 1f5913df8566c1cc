#pragma once

#include "pointctl/spectrum.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace pointctl {

/// G_ij = int_0^T e^{-(lambda_i + lambda_j) t} dt.
[[nodiscard]] Eigen::MatrixXd gram_matrix(std::span<const double> lambdas, double T);

enum class SolverTag { direct, regularized };

/// q_k(t) = sum_j C_kj e^{-lambda_j t}, the minimal-norm family in
/// span{e^{-lambda_j t}} with int_0^T q_k e^{-lambda_j t} dt = delta_kj.
struct BiorthogonalFamily {
    std::vector<double> lambdas;
    double T = 0.0;
    Eigen::MatrixXd coeffs;
    double gram_condition = 0.0;
    SolverTag solver = SolverTag::direct;
    double regularization = 0.0;
    double defect = 0.0;          ///< max |(C G)_kj - delta_kj|
    std::vector<double> q_norms;  ///< ||q_k||_{L2(0,T)} = sqrt((C G C^T)_kk)

    [[nodiscard]] int size() const noexcept { return static_cast<int>(lambdas.size()); }
    /// q_k(t), k 1-based.
    [[nodiscard]] double eval(int k, double t) const;
};

[[nodiscard]] double biorthogonality_defect(const Eigen::MatrixXd& C, const Eigen::MatrixXd& G);

/// reg = 0: direct solve of G C^T = I, retried with (G + r I) for
/// r = 1e-14 trace(G)/K when the defect exceeds max_defect. reg > 0 uses
/// (G + reg I) right away. Throws ConditioningError when the accepted defect
/// cannot be reached.
[[nodiscard]] BiorthogonalFamily biorthogonal_family(std::span<const double> lambdas, double T,
                                                     double reg = 0.0, double max_defect = 1e-6);

/// Least-squares slope of log ||q_k|| against lambda_k.
[[nodiscard]] double norm_growth_slope(const BiorthogonalFamily& family);

/// Uniformly sampled scalar control on [0, T].
struct ControlSignal {
    std::vector<double> time_grid;
    std::vector<double> values;
    int K = 0;
    double T = 0.0;
    std::vector<double> residuals;
    double l2_norm = 0.0;

    [[nodiscard]] static ControlSignal zero(double T, int M);

    [[nodiscard]] int intervals() const noexcept { return static_cast<int>(time_grid.size()) - 1; }
    [[nodiscard]] double step() const noexcept { return T / intervals(); }
    [[nodiscard]] double max_residual() const noexcept;

    /// int_{t0}^{t1} e^{-lambda (t1 - s)} h(s) ds by the composite rule on the
    /// samples. t0 and t1 must be grid instants.
    [[nodiscard]] double integrate_weighted(double t0, double t1, double lambda) const;
};

/// h(t) = sum_k v_k q_k(T - t) sampled on M + 1 points.
[[nodiscard]] ControlSignal control_from_moments(const BiorthogonalFamily& family,
                                                 std::span<const double> v, int M = 2000);

/// Generic truncated moment problem for modes z_k' = -lambda_k z_k + c_k h:
///   c_k int_0^T h(t) e^{-lambda_k (T-t)} dt = -z_k(0) e^{-lambda_k T},  k = 1..K,
/// solved with v_k = -e^{-lambda_k T} z_k(0) / c_k. Residuals are evaluated on
/// the samples. Throws MembershipError if some |c_k| < 1e-300.
[[nodiscard]] ControlSignal solve_moment_problem(const BiorthogonalFamily& family,
                                                 std::span<const double> couplings,
                                                 std::span<const double> initial, int M = 2000);

/// Solves the truncated moment problem
///   Phi_k(b) int_0^T h(t) e^{-lambda_k (T-t)} dt = -u0_k e^{-lambda_k T},  k = 1..K
/// with v_k = -e^{-lambda_k T} u0_k / Phi_k(b). Throws MembershipError if
/// some |Phi_k(b)| < 1e-300.
[[nodiscard]] ControlSignal synthesize_control(const SpectralBasis& basis, const BiorthogonalFamily& family,
                                               std::span<const double> u0_coeffs, double b_bar,
                                               int M = 2000);

struct MomentResiduals {
    std::vector<double> values;
    bool resolved = true;           ///< grid resolves e^{-lambda_K (T-t)} to 1e-9 (relative)
    double quadrature_error = 0.0;  ///< that relative error
};

/// Phi_k(b) int_0^T h(t) e^{-lambda_k (T-t)} dt + u0_k e^{-lambda_k T} for
/// k = 1..u0_coeffs.size(), with the integral taken on the samples of h.
[[nodiscard]] MomentResiduals moment_residuals(const SpectralBasis& basis, const ControlSignal& h,
                                               std::span<const double> u0_coeffs, double b_bar);

}  // namespace pointctl
