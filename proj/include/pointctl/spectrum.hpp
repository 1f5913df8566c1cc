#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace pointctl {

/// mu(alpha) = (1 - alpha)^2 / 4, the Hardy constant for x^alpha weights.
[[nodiscard]] double hardy_constant(double alpha) noexcept;

/// Throws DomainError unless 0 <= alpha < 1 and mu <= hardy_constant(alpha).
void validate_operator(double alpha, double mu);

/// Data of the controlled problem u_t - (x^alpha u_x)_x - mu x^(alpha-2) u = delta_b h(t).
struct ProblemParams {
    double alpha = 0.0;
    double mu = 0.0;
    double b_bar = 0.5;
    double T = 1.0;

    /// Throws DomainError on any violated constraint.
    void validate() const;
};

/// nu = 2/(2-alpha) * sqrt(mu(alpha) - mu); exactly 0 in the critical case.
[[nodiscard]] double nu_param(double alpha, double mu);

/// rho with |lambda_n - lambda_m| >= rho |n^2 - m^2|.
[[nodiscard]] double gap_constant(double alpha, double mu);

/// Dirichlet eigen-system of A u = -(x^alpha u')' - mu x^(alpha-2) u on (0,1):
///   lambda_n = ((2-alpha)/2)^2 j_n^2,
///   Phi_n(x) = sqrt(2-alpha)/|J_nu'(j_n)| x^((1-alpha)/2) J_nu(j_n x^((2-alpha)/2)),
/// where j_n is the n-th zero of J_nu. Indices are 1-based, n = 1..size().
class SpectralBasis {
public:
    SpectralBasis(double alpha, double mu, int modes);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(lambdas_.size()); }

    [[nodiscard]] double eigenvalue(int n) const;
    [[nodiscard]] double zero(int n) const;
    [[nodiscard]] double norm_const(int n) const;
    [[nodiscard]] std::span<const double> eigenvalues() const noexcept { return lambdas_; }
    [[nodiscard]] std::span<const double> zeros() const noexcept { return zeros_; }

    [[nodiscard]] double eigenfunction(int n, double x) const;

private:
    std::size_t check(int n) const;

    double alpha_;
    double mu_;
    double nu_;
    std::vector<double> zeros_;
    std::vector<double> lambdas_;
    std::vector<double> norms_;
};

/// Coefficients of f in the eigenbasis, with the Parseval bookkeeping.
struct CoefficientVector {
    std::vector<double> coeffs;
    double norm_sq = 0.0;                 ///< ||f||^2 by quadrature
    std::vector<double> parseval_defect;  ///< ||f||^2 - sum_{k<=K} c_k^2, K = 1..size
    double quadrature_error = 0.0;        ///< largest reported per-integral error
};

/// c_k = int_0^1 f Phi_k, k = 1..basis.size(), on the graded adaptive rule.
/// f is called concurrently. Throws QuadratureError when an integral misses `tol`.
[[nodiscard]] CoefficientVector expand_initial_data(const SpectralBasis& basis,
                                                    const std::function<double(double)>& f,
                                                    double tol = 1e-12);

/// Quadrature Gram matrix of Phi_1..Phi_K.
[[nodiscard]] Eigen::MatrixXd mode_gram(const SpectralBasis& basis, int K);

/// max |G_ij - delta_ij| of mode_gram.
[[nodiscard]] double orthonormality_defect(const SpectralBasis& basis, int K);

/// Partial sums of sum_n 1/lambda_n over the basis.
[[nodiscard]] std::vector<double> inverse_eigenvalue_partial_sums(const SpectralBasis& basis);

/// 1/lambda_1 + ((2-alpha)/2)^-2 * sum_{n>=2} lower_n^-2 with lower_n the lower
/// end of the zero bracket, summed in closed form through the trigamma function.
[[nodiscard]] double inverse_eigenvalue_bound(const SpectralBasis& basis);

}  // namespace pointctl
