#pragma once

#include "pointctl/moment_control.hpp"
#include "pointctl/spectrum.hpp"
#include "pointctl/splines.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

namespace pointctl {

/// Method-of-lines system U' = A U + s h(t) for the nodal values U_r = u(s_r, t)
/// at the interior quasi-interpolation sites, u(x, t) = sum_r U_r Bt_r(x).
///
/// A_ir = x_i^a Bt_r''(x_i) + a x_i^(a-1) Bt_r'(x_i) + mu x_i^(a-2) Bt_r(x_i) over
/// interior sites i, r (right limits at knots). The point load delta_b h is
/// spread as h_j = h B_j(b) / int Bt_j on the Bt_j that do not vanish at b,
/// so s_i = sum_j Bt_j(x_i) Bt_j(b) / int Bt_j.
struct CollocationSystem {
    ProblemParams params;
    std::shared_ptr<const QuasiInterpolant> qi;
    std::vector<double> points;     ///< interior sites s_1..s_{S-2}
    Eigen::MatrixXd A;              ///< interior x interior
    Eigen::MatrixXd B;              ///< B(i, j) = Bt_j(x_i), interior rows, all sites
    int dirac_first = 0;            ///< first / last site index with Bt_j(b) != 0
    int dirac_last = -1;
    Eigen::VectorXd dirac_weights;  ///< per site: Bt_j(b) / int Bt_j, zero off the range
    Eigen::VectorXd source;         ///< B * dirac_weights

    [[nodiscard]] int unknowns() const noexcept { return static_cast<int>(points.size()); }
};

/// Throws DomainError on invalid parameters, SolverError(step 0) when the
/// collocation matrices are rank deficient.
[[nodiscard]] CollocationSystem assemble(const ProblemParams& params, std::shared_ptr<const QuasiInterpolant> qi);

enum class Scheme { implicit_euler, crank_nicolson };

[[nodiscard]] std::string_view to_string(Scheme s) noexcept;

/// Eigen-decomposition of the semi-discrete system, A = -V diag(lambda) V^-1,
/// modes sorted by increasing lambda; couplings = V^-1 source.
struct ModalDecomposition {
    std::vector<double> lambdas;
    Eigen::MatrixXd vectors;
    Eigen::MatrixXd inverse;
    std::vector<double> couplings;
};

/// Throws SolverError when A has complex or non-positive decay rates.
[[nodiscard]] ModalDecomposition modal_decomposition(const CollocationSystem& system);

/// Moment-method control for the semi-discrete system itself: the same
/// construction as synthesize_control with the K slowest discrete modes in
/// place of the exact eigenpairs. Residuals refer to those discrete modes.
[[nodiscard]] ControlSignal synthesize_collocation_control(const CollocationSystem& system,
                                                           std::span<const double> u0_samples, int K,
                                                           int M = 2000);

struct Norms {
    double l2 = 0.0;
    double sup = 0.0;
};

/// Discrete L2 (trapezoid) and sup norms of u on a uniform grid of [0, 1].
[[nodiscard]] Norms grid_norms(const std::function<double(double)>& u, int points = 201);

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;  ///< nodal values at all sites, ends pinned to 0
    std::vector<double> control;          ///< step average of h on (t_{n-1}, t_n]; control[0] = 0
    std::shared_ptr<const QuasiInterpolant> qi;
    Eigen::VectorXd dirac_weights;

    /// u(x, times[step]).
    [[nodiscard]] double eval(std::size_t step, double x) const;
    /// Spatial control field h(x, t) = sum_j h_j(t) Bt_j(x) on the step ending at times[step].
    [[nodiscard]] double control_field(std::size_t step, double x) const;
};

/// u0_samples are the initial values at every site (ends are forced to 0).
/// h may be null for the uncontrolled problem; otherwise its grid must
/// contain every t_n = n dt. Throws SolverError with the step index if a
/// step produces non-finite values.
[[nodiscard]] Trajectory simulate(const CollocationSystem& system, std::span<const double> u0_samples,
                                  const ControlSignal* h, Scheme scheme, double dt);

struct ModalTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> modes;  ///< modes[step][k-1]
    std::shared_ptr<const SpectralBasis> basis;

    [[nodiscard]] double eval(std::size_t step, double x) const;
};

/// Exact per-mode propagation:
/// u_k(t + dt) = e^{-lambda_k dt} u_k(t) + Phi_k(b) int_t^{t+dt} e^{-lambda_k (t+dt-s)} h(s) ds,
/// the integral taken on the samples of h.
[[nodiscard]] ModalTrajectory spectral_simulate(std::shared_ptr<const SpectralBasis> basis,
                                                std::span<const double> u0_coeffs, const ControlSignal* h,
                                                double b_bar, double T, double dt);

[[nodiscard]] Norms final_norms(const Trajectory& traj, int points = 201);
[[nodiscard]] Norms final_norms(const ModalTrajectory& traj, int points = 201);

}  // namespace pointctl
