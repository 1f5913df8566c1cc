#include "pointctl/moment_control.hpp"

#include "pointctl/errors.hpp"
#include "pointctl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pointctl {

namespace {

constexpr double kTinyPhi = 1e-300;

double condition_number(const Eigen::MatrixXd& G) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double lo = ev.minCoeff();
    const double hi = ev.cwiseAbs().maxCoeff();
    if (lo <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return hi / lo;
}

// Inverse of an SPD matrix after symmetric diagonal scaling.
Eigen::MatrixXd scaled_inverse(const Eigen::MatrixXd& M) {
    const Eigen::VectorXd d = M.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd S = d.asDiagonal() * M * d.asDiagonal();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
    const auto K = M.rows();
    Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(K, K));
    inv = d.asDiagonal() * inv * d.asDiagonal();
    return 0.5 * (inv + inv.transpose());
}

void check_lambdas(std::span<const double> lambdas, double T) {
    if (lambdas.empty()) {
        throw DomainError("need at least one exponent");
    }
    if (!(T > 0.0)) {
        throw DomainError("T must be positive");
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0) || (i > 0 && !(lambdas[i] > lambdas[i - 1]))) {
            throw DomainError("exponents must be positive and strictly increasing");
        }
    }
}

}  // namespace

Eigen::MatrixXd gram_matrix(std::span<const double> lambdas, double T) {
    check_lambdas(lambdas, T);
    const auto K = static_cast<Eigen::Index>(lambdas.size());
    Eigen::MatrixXd G(K, K);
    for (Eigen::Index i = 0; i < K; ++i) {
        for (Eigen::Index j = 0; j < K; ++j) {
            const double s = lambdas[static_cast<std::size_t>(i)] + lambdas[static_cast<std::size_t>(j)];
            G(i, j) = -std::expm1(-s * T) / s;
        }
    }
    return G;
}

double biorthogonality_defect(const Eigen::MatrixXd& C, const Eigen::MatrixXd& G) {
    const auto K = C.rows();
    return (C * G - Eigen::MatrixXd::Identity(K, K)).cwiseAbs().maxCoeff();
}

double BiorthogonalFamily::eval(int k, double t) const {
    if (k < 1 || k > size()) {
        throw IndexError("biorthogonal index " + std::to_string(k) + " outside 1.." + std::to_string(size()));
    }
    double s = 0.0;
    for (int j = 0; j < size(); ++j) {
        s += coeffs(k - 1, j) * std::exp(-lambdas[static_cast<std::size_t>(j)] * t);
    }
    return s;
}

BiorthogonalFamily biorthogonal_family(std::span<const double> lambdas, double T, double reg,
                                       double max_defect) {
    if (reg < 0.0) {
        throw DomainError("regularization must be >= 0");
    }
    const Eigen::MatrixXd G = gram_matrix(lambdas, T);
    const auto K = G.rows();
    BiorthogonalFamily fam;
    fam.lambdas.assign(lambdas.begin(), lambdas.end());
    fam.T = T;
    fam.gram_condition = condition_number(G);

    auto attempt = [&](double r) {
        fam.coeffs = scaled_inverse(r > 0.0 ? Eigen::MatrixXd(G + r * Eigen::MatrixXd::Identity(K, K)) : G);
        fam.defect = biorthogonality_defect(fam.coeffs, G);
        fam.regularization = r;
        fam.solver = r > 0.0 ? SolverTag::regularized : SolverTag::direct;
        return std::isfinite(fam.defect) && fam.defect <= max_defect;
    };

    bool ok = false;
    if (reg > 0.0) {
        ok = attempt(reg);
    } else {
        ok = attempt(0.0) || attempt(1e-14 * G.trace() / static_cast<double>(K));
    }
    if (!ok) {
        throw ConditioningError("biorthogonal family: defect " + std::to_string(fam.defect) +
                                    " above " + std::to_string(max_defect) + ", Gram condition number " +
                                    std::to_string(fam.gram_condition),
                                fam.gram_condition, fam.defect);
    }
    const Eigen::MatrixXd N = fam.coeffs * G * fam.coeffs.transpose();
    for (Eigen::Index k = 0; k < K; ++k) {
        fam.q_norms.push_back(std::sqrt(std::max(N(k, k), 0.0)));
    }
    return fam;
}

double norm_growth_slope(const BiorthogonalFamily& family) {
    const auto n = static_cast<double>(family.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int k = 0; k < family.size(); ++k) {
        const double x = family.lambdas[static_cast<std::size_t>(k)];
        const double y = std::log(family.q_norms[static_cast<std::size_t>(k)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ControlSignal ControlSignal::zero(double T, int M) {
    if (M < 1 || !(T > 0.0)) {
        throw DomainError("control grid needs M >= 1 and T > 0");
    }
    ControlSignal h;
    h.T = T;
    h.time_grid.resize(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) {
        h.time_grid[static_cast<std::size_t>(i)] = T * i / M;
    }
    h.values.assign(h.time_grid.size(), 0.0);
    return h;
}

double ControlSignal::max_residual() const noexcept {
    double m = 0.0;
    for (const double r : residuals) m = std::max(m, std::fabs(r));
    return m;
}

double ControlSignal::integrate_weighted(double t0, double t1, double lambda) const {
    const double dt = step();
    const double f0 = t0 / dt;
    const double f1 = t1 / dt;
    const long i0 = std::lround(f0);
    const long i1 = std::lround(f1);
    if (std::fabs(f0 - i0) > 1e-8 || std::fabs(f1 - i1) > 1e-8 || i0 < 0 || i1 > intervals() || i1 < i0) {
        throw DomainError("control integration window [" + std::to_string(t0) + ", " + std::to_string(t1) +
                          "] is not aligned with the control grid");
    }
    if (i1 == i0) return 0.0;
    const std::vector<double> w = composite_weights(static_cast<int>(i1 - i0), dt);
    const double tend = time_grid[static_cast<std::size_t>(i1)];
    double s = 0.0;
    for (long i = i0; i <= i1; ++i) {
        const auto u = static_cast<std::size_t>(i);
        s += w[static_cast<std::size_t>(i - i0)] * std::exp(-lambda * (tend - time_grid[u])) * values[u];
    }
    return s;
}

ControlSignal control_from_moments(const BiorthogonalFamily& family, std::span<const double> v, int M) {
    if (static_cast<int>(v.size()) != family.size()) {
        throw DomainError("moment vector length does not match the family");
    }
    ControlSignal h = ControlSignal::zero(family.T, M);
    h.K = family.size();
    const Eigen::Map<const Eigen::VectorXd> vk(v.data(), static_cast<Eigen::Index>(v.size()));
    // h(t) = sum_j a_j e^{-lambda_j (T - t)} with a = C^T v.
    const Eigen::VectorXd a = family.coeffs.transpose() * vk;
    for (std::size_t i = 0; i < h.time_grid.size(); ++i) {
        const double tau = family.T - h.time_grid[i];
        double s = 0.0;
        for (int j = 0; j < family.size(); ++j) {
            s += a(j) * std::exp(-family.lambdas[static_cast<std::size_t>(j)] * tau);
        }
        h.values[i] = s;
    }
    const Eigen::MatrixXd G = gram_matrix(family.lambdas, family.T);
    h.l2_norm = std::sqrt(std::max(0.0, a.dot(G * a)));
    return h;
}

ControlSignal solve_moment_problem(const BiorthogonalFamily& family, std::span<const double> couplings,
                                   std::span<const double> initial, int M) {
    const int K = family.size();
    if (static_cast<int>(couplings.size()) < K || static_cast<int>(initial.size()) < K) {
        throw DomainError("moment problem: need K couplings and K initial values");
    }
    std::vector<double> v(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (std::fabs(couplings[i]) < kTinyPhi) {
            throw MembershipError("mode " + std::to_string(k + 1) + " is not reached by the actuator", k + 1);
        }
        v[i] = -std::exp(-family.lambdas[i] * family.T) * initial[i] / couplings[i];
    }
    ControlSignal h = control_from_moments(family, v, M);
    for (int k = 0; k < K; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double lambda = family.lambdas[i];
        h.residuals.push_back(couplings[i] * h.integrate_weighted(0.0, h.T, lambda) +
                              initial[i] * std::exp(-lambda * h.T));
    }
    return h;
}

ControlSignal synthesize_control(const SpectralBasis& basis, const BiorthogonalFamily& family,
                                 std::span<const double> u0_coeffs, double b_bar, int M) {
    const int K = family.size();
    if (static_cast<int>(u0_coeffs.size()) < K || basis.size() < K) {
        throw DomainError("synthesize_control: need K initial coefficients and K modes");
    }
    std::vector<double> phi(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        phi[static_cast<std::size_t>(k - 1)] = basis.eigenfunction(k, b_bar);
    }
    return solve_moment_problem(family, phi, u0_coeffs, M);
}

MomentResiduals moment_residuals(const SpectralBasis& basis, const ControlSignal& h,
                                 std::span<const double> u0_coeffs, double b_bar) {
    const int K = static_cast<int>(u0_coeffs.size());
    if (K > basis.size()) {
        throw DomainError("moment_residuals: more coefficients than modes");
    }
    MomentResiduals out;
    if (K == 0) return out;
    for (int k = 1; k <= K; ++k) {
        const double lambda = basis.eigenvalue(k);
        const double integral = h.integrate_weighted(0.0, h.T, lambda);
        out.values.push_back(basis.eigenfunction(k, b_bar) * integral +
                             u0_coeffs[static_cast<std::size_t>(k - 1)] * std::exp(-lambda * h.T));
    }
    // Probe the rule with the fastest exponential, whose integral is known.
    const double lk = basis.eigenvalue(K);
    const std::vector<double> w = composite_weights(h.intervals(), h.step());
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        s += w[i] * std::exp(-lk * (h.T - h.time_grid[i]));
    }
    const double exact = -std::expm1(-lk * h.T) / lk;
    out.quadrature_error = std::fabs(s - exact) / exact;
    out.resolved = out.quadrature_error <= 1e-9;
    return out;
}

}  // namespace pointctl
