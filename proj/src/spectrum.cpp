#include "pointctl/spectrum.hpp"

#include "pointctl/errors.hpp"
#include "pointctl/kernels.hpp"
#include "pointctl/quadrature.hpp"
#include "pointctl/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pointctl {

namespace {

constexpr double kPi = std::numbers::pi;

// psi'(z) for z > 0: shift to z >= 10 and use the asymptotic series.
double trigamma(double z) {
    double acc = 0.0;
    while (z < 10.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    const double iz = 1.0 / z;
    const double iz2 = iz * iz;
    const double series =
        iz + 0.5 * iz2 +
        iz * iz2 * (1.0 / 6.0 - iz2 * (1.0 / 30.0 - iz2 * (1.0 / 42.0 - iz2 * (1.0 / 30.0))));
    return acc + series;
}

}  // namespace

double hardy_constant(double alpha) noexcept { return (1.0 - alpha) * (1.0 - alpha) / 4.0; }

void validate_operator(double alpha, double mu) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 1.0) {
        throw DomainError("alpha must lie in [0, 1), got " + std::to_string(alpha));
    }
    if (!std::isfinite(mu) || mu > hardy_constant(alpha)) {
        throw DomainError("mu must not exceed (1-alpha)^2/4 = " + std::to_string(hardy_constant(alpha)) +
                          ", got " + std::to_string(mu));
    }
}

void ProblemParams::validate() const {
    validate_operator(alpha, mu);
    if (!(b_bar > 0.0 && b_bar < 1.0)) {
        throw DomainError("b must lie in (0, 1), got " + std::to_string(b_bar));
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw DomainError("T must be positive, got " + std::to_string(T));
    }
}

double nu_param(double alpha, double mu) {
    validate_operator(alpha, mu);
    return 2.0 / (2.0 - alpha) * std::sqrt(hardy_constant(alpha) - mu);
}

double gap_constant(double alpha, double mu) {
    const double nu = nu_param(alpha, mu);
    if (nu < 0.5) {
        return 7.0 / 64.0 * kPi * kPi * (2.0 - alpha) * (2.0 - alpha);
    }
    return (2.0 - alpha) * (2.0 - alpha) / 4.0 * kPi * kPi;
}

SpectralBasis::SpectralBasis(double alpha, double mu, int modes)
    : alpha_(alpha), mu_(mu), nu_(nu_param(alpha, mu)) {
    if (modes < 1) {
        throw DomainError("spectral basis needs at least one mode");
    }
    const BesselOrder order(nu_);
    zeros_ = bessel_zeros(order, modes);
    const double kappa = (2.0 - alpha) / 2.0;
    lambdas_.reserve(zeros_.size());
    norms_.reserve(zeros_.size());
    for (const double j : zeros_) {
        lambdas_.push_back(kappa * kappa * j * j);
        norms_.push_back(std::sqrt(2.0 - alpha) / std::fabs(bessel_j_deriv(order, j)));
    }
}

std::size_t SpectralBasis::check(int n) const {
    if (n < 1 || n > size()) {
        throw IndexError("mode index " + std::to_string(n) + " outside 1.." + std::to_string(size()));
    }
    return static_cast<std::size_t>(n - 1);
}

double SpectralBasis::eigenvalue(int n) const { return lambdas_[check(n)]; }

double SpectralBasis::zero(int n) const { return zeros_[check(n)]; }

double SpectralBasis::norm_const(int n) const { return norms_[check(n)]; }

double SpectralBasis::eigenfunction(int n, double x) const {
    const std::size_t i = check(n);
    if (x <= 0.0) {
        return 0.0;
    }
    const double s = std::pow(x, (2.0 - alpha_) / 2.0);
    return norms_[i] * std::pow(x, (1.0 - alpha_) / 2.0) * bessel_j(BesselOrder(nu_), zeros_[i] * s);
}

CoefficientVector expand_initial_data(const SpectralBasis& basis, const std::function<double(double)>& f,
                                      double tol) {
    const int K = basis.size();
    std::vector<double> errors(static_cast<std::size_t>(K));
    std::vector<char> ok(static_cast<std::size_t>(K));
    CoefficientVector out;
    out.coeffs = kernels::parallel::map(
        [&](int k) {
            const IntegrationResult r = integrate_graded(
                [&](double x) { return f(x) * basis.eigenfunction(k + 1, x); }, tol);
            errors[static_cast<std::size_t>(k)] = r.error;
            ok[static_cast<std::size_t>(k)] = r.converged ? 1 : 0;
            return r.value;
        },
        K);
    const IntegrationResult norm = integrate_graded([&](double x) { return f(x) * f(x); }, tol);
    out.norm_sq = norm.value;
    out.quadrature_error = std::max(norm.error, *std::max_element(errors.begin(), errors.end()));
    if (!norm.converged || std::find(ok.begin(), ok.end(), 0) != ok.end()) {
        throw QuadratureError("expand_initial_data: adaptive quadrature did not reach tolerance",
                              out.quadrature_error);
    }
    double partial = 0.0;
    for (const double c : out.coeffs) {
        partial += c * c;
        out.parseval_defect.push_back(out.norm_sq - partial);
    }
    return out;
}

Eigen::MatrixXd mode_gram(const SpectralBasis& basis, int K) {
    if (K < 1 || K > basis.size()) {
        throw IndexError("mode_gram: K outside 1.." + std::to_string(basis.size()));
    }
    // Products of two modes oscillate with phase at most 2 j_K x^beta.
    const double beta = (2.0 - basis.alpha()) / 2.0;
    const double jk = basis.zero(K);
    const QuadratureRule rule = graded_rule(40, 20, [&](double a, double b) {
        const double phase = 2.0 * jk * (std::pow(b, beta) - std::pow(a, beta));
        return 1 + static_cast<int>(std::ceil(phase / kPi));
    });
    const Eigen::MatrixXd values = kernels::parallel::tabulate(
        [&](int c, double x) { return basis.eigenfunction(c + 1, x); }, K, rule.nodes);
    return kernels::parallel::weighted_gram(values, rule.weights);
}

double orthonormality_defect(const SpectralBasis& basis, int K) {
    const Eigen::MatrixXd g = mode_gram(basis, K);
    return (g - Eigen::MatrixXd::Identity(K, K)).cwiseAbs().maxCoeff();
}

std::vector<double> inverse_eigenvalue_partial_sums(const SpectralBasis& basis) {
    std::vector<double> out;
    double s = 0.0;
    for (const double l : basis.eigenvalues()) {
        s += 1.0 / l;
        out.push_back(s);
    }
    return out;
}

double inverse_eigenvalue_bound(const SpectralBasis& basis) {
    const double nu = basis.nu();
    // lower_n = (n + c) pi, c depending on the regime of the bracket.
    const double c = (nu < 0.5) ? nu / 2.0 - 0.25 : nu / 4.0 - 0.125;
    const double kappa = (2.0 - basis.alpha()) / 2.0;
    // sum_{n>=2} 1/((n+c)pi)^2 = psi'(2+c) / pi^2
    const double tail = trigamma(2.0 + c) / (kPi * kPi);
    return 1.0 / basis.eigenvalue(1) + tail / (kappa * kappa);
}

}  // namespace pointctl
