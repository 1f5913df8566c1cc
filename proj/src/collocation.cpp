#include "pointctl/collocation.hpp"

#include "pointctl/errors.hpp"
#include "pointctl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pointctl {

namespace {

int step_count(double T, double dt) {
    if (!(dt > 0.0) || !(T > 0.0)) {
        throw DomainError("time step and horizon must be positive");
    }
    const double q = T / dt;
    const long steps = std::lround(q);
    if (steps < 1 || std::fabs(steps * dt - T) > 1e-12 * std::max(1.0, T)) {
        throw DomainError("dt = " + std::to_string(dt) + " does not divide T = " + std::to_string(T));
    }
    return static_cast<int>(steps);
}

void check_control(const ControlSignal* h, double T) {
    if (h != nullptr && std::fabs(h->T - T) > 1e-12 * std::max(1.0, T)) {
        throw DomainError("control horizon " + std::to_string(h->T) + " differs from T = " + std::to_string(T));
    }
}

}  // namespace

CollocationSystem assemble(const ProblemParams& params, std::shared_ptr<const QuasiInterpolant> qi) {
    params.validate();
    if (!qi) {
        throw DomainError("assemble: missing quasi-interpolant");
    }
    CollocationSystem sys;
    sys.params = params;
    sys.qi = std::move(qi);
    const QuasiInterpolant& q = *sys.qi;
    const int S = q.site_count();
    const int m = S - 2;
    sys.points.assign(q.sites().begin() + 1, q.sites().end() - 1);
    const double a = params.alpha;
    const double mu = params.mu;

    sys.A = kernels::parallel::tabulate(
        [&](int c, double x) {
            const int r = c + 1;
            return std::pow(x, a) * q.modified_basis(r, x, 2) + a * std::pow(x, a - 1.0) * q.modified_basis(r, x, 1) +
                   mu * std::pow(x, a - 2.0) * q.modified_basis(r, x, 0);
        },
        m, sys.points);
    sys.B = kernels::parallel::tabulate([&](int j, double x) { return q.modified_basis(j, x, 0); }, S, sys.points);

    sys.dirac_weights = Eigen::VectorXd::Zero(S);
    sys.dirac_first = S;
    sys.dirac_last = -1;
    for (int j = 0; j < S; ++j) {
        const double v = q.modified_basis(j, params.b_bar, 0);
        if (std::fabs(v) <= 1e-14) continue;
        const double w = q.modified_integral(j);
        if (!(w > 0.0)) {
            throw DomainError("quasi-Lagrange function " + std::to_string(j) +
                              " has non-positive integral, point load cannot be spread");
        }
        sys.dirac_weights(j) = v / w;
        sys.dirac_first = std::min(sys.dirac_first, j);
        sys.dirac_last = std::max(sys.dirac_last, j);
    }
    sys.source = sys.B * sys.dirac_weights;

    const Eigen::FullPivLU<Eigen::MatrixXd> lu_a(sys.A);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu_b(sys.B.middleCols(1, m));
    if (lu_a.rank() < m || lu_b.rank() < m) {
        throw SolverError("collocation matrix is rank deficient", 0);
    }
    return sys;
}

ModalDecomposition modal_decomposition(const CollocationSystem& system) {
    const Eigen::EigenSolver<Eigen::MatrixXd> es(system.A);
    if (es.info() != Eigen::Success) {
        throw SolverError("eigen-decomposition of the collocation matrix failed", 0);
    }
    const Eigen::VectorXcd ev = es.eigenvalues();
    const auto m = ev.size();
    for (Eigen::Index i = 0; i < m; ++i) {
        if (std::fabs(ev(i).imag()) > 1e-8 * std::abs(ev(i)) || !(ev(i).real() < 0.0)) {
            throw SolverError("collocation matrix has a non-decaying or oscillatory mode", 0);
        }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return ev(a).real() > ev(b).real(); });
    ModalDecomposition md;
    md.vectors.resize(m, m);
    const Eigen::MatrixXd V = es.eigenvectors().real();
    for (Eigen::Index c = 0; c < m; ++c) {
        const Eigen::Index i = order[static_cast<std::size_t>(c)];
        md.lambdas.push_back(-ev(i).real());
        md.vectors.col(c) = V.col(i);
    }
    md.inverse = md.vectors.partialPivLu().inverse();
    const Eigen::VectorXd c = md.inverse * system.source;
    md.couplings.assign(c.data(), c.data() + c.size());
    return md;
}

ControlSignal synthesize_collocation_control(const CollocationSystem& system, std::span<const double> u0_samples,
                                             int K, int M) {
    const int S = system.qi->site_count();
    const int m = system.unknowns();
    if (static_cast<int>(u0_samples.size()) != S) {
        throw DomainError("initial data must be sampled at all " + std::to_string(S) + " sites");
    }
    if (K < 1 || K > m) {
        throw DomainError("K must lie in 1.." + std::to_string(m) + " for this collocation system");
    }
    const ModalDecomposition md = modal_decomposition(system);
    Eigen::VectorXd U(m);
    for (int r = 0; r < m; ++r) U(r) = u0_samples[static_cast<std::size_t>(r) + 1];
    const Eigen::VectorXd z = md.inverse * U;
    const auto k = static_cast<std::size_t>(K);
    const BiorthogonalFamily fam =
        biorthogonal_family(std::span<const double>(md.lambdas).first(k), system.params.T);
    return solve_moment_problem(fam, std::span<const double>(md.couplings).first(k),
                                std::span<const double>(z.data(), k), M);
}

std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::implicit_euler ? "implicit_euler" : "crank_nicolson";
}

Norms grid_norms(const std::function<double(double)>& u, int points) {
    Norms n;
    const double h = 1.0 / (points - 1);
    double s = 0.0;
    for (int i = 0; i < points; ++i) {
        const double v = u(i * h);
        const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        s += w * v * v;
        n.sup = std::max(n.sup, std::fabs(v));
    }
    n.l2 = std::sqrt(s * h);
    return n;
}

double Trajectory::eval(std::size_t step, double x) const {
    const Eigen::VectorXd& u = states.at(step);
    double s = 0.0;
    for (int r = 1; r + 1 < qi->site_count(); ++r) {
        if (u(r) != 0.0) s += u(r) * qi->modified_basis(r, x, 0);
    }
    return s;
}

double Trajectory::control_field(std::size_t step, double x) const {
    const double h = control.at(step);
    if (h == 0.0) return 0.0;
    double s = 0.0;
    for (Eigen::Index j = 0; j < dirac_weights.size(); ++j) {
        if (dirac_weights(j) != 0.0) s += dirac_weights(j) * qi->modified_basis(static_cast<int>(j), x, 0);
    }
    return h * s;
}

Trajectory simulate(const CollocationSystem& system, std::span<const double> u0_samples, const ControlSignal* h,
                    Scheme scheme, double dt) {
    const int S = system.qi->site_count();
    const int m = system.unknowns();
    if (static_cast<int>(u0_samples.size()) != S) {
        throw DomainError("initial data must be sampled at all " + std::to_string(S) + " sites");
    }
    const double T = system.params.T;
    const int steps = step_count(T, dt);
    check_control(h, T);

    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
    const double theta = scheme == Scheme::implicit_euler ? 1.0 : 0.5;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lhs(I - theta * dt * system.A);
    const Eigen::MatrixXd rhs_op = I + (1.0 - theta) * dt * system.A;

    Trajectory traj;
    traj.qi = system.qi;
    traj.dirac_weights = system.dirac_weights;
    Eigen::VectorXd U(m);
    for (int r = 0; r < m; ++r) U(r) = u0_samples[static_cast<std::size_t>(r) + 1];

    auto store = [&](double t, double hbar) {
        Eigen::VectorXd full = Eigen::VectorXd::Zero(S);
        full.segment(1, m) = U;
        traj.times.push_back(t);
        traj.states.push_back(std::move(full));
        traj.control.push_back(hbar);
    };
    store(0.0, 0.0);
    for (int n = 0; n < steps; ++n) {
        const double t0 = n * dt;
        const double t1 = (n + 1 == steps) ? T : (n + 1) * dt;
        const double hbar = h != nullptr ? h->integrate_weighted(t0, t1, 0.0) / (t1 - t0) : 0.0;
        Eigen::VectorXd rhs = rhs_op * U;
        if (hbar != 0.0) rhs += dt * hbar * system.source;
        U = lhs.solve(rhs);
        if (!U.allFinite()) {
            throw SolverError("time step " + std::to_string(n + 1) + " produced non-finite values",
                              static_cast<std::size_t>(n + 1));
        }
        store(t1, hbar);
    }
    return traj;
}

double ModalTrajectory::eval(std::size_t step, double x) const {
    const std::vector<double>& u = modes.at(step);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        s += u[k] * basis->eigenfunction(static_cast<int>(k) + 1, x);
    }
    return s;
}

ModalTrajectory spectral_simulate(std::shared_ptr<const SpectralBasis> basis, std::span<const double> u0_coeffs,
                                  const ControlSignal* h, double b_bar, double T, double dt) {
    if (!basis) {
        throw DomainError("spectral_simulate: missing basis");
    }
    const int K = static_cast<int>(u0_coeffs.size());
    if (K > basis->size()) {
        throw DomainError("spectral_simulate: more coefficients than modes");
    }
    const int steps = step_count(T, dt);
    check_control(h, T);
    std::vector<double> decay(static_cast<std::size_t>(K));
    std::vector<double> phi_b(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        decay[static_cast<std::size_t>(k - 1)] = std::exp(-basis->eigenvalue(k) * dt);
        phi_b[static_cast<std::size_t>(k - 1)] = basis->eigenfunction(k, b_bar);
    }
    ModalTrajectory traj;
    traj.basis = basis;
    std::vector<double> u(u0_coeffs.begin(), u0_coeffs.end());
    traj.times.push_back(0.0);
    traj.modes.push_back(u);
    for (int n = 0; n < steps; ++n) {
        const double t0 = n * dt;
        const double t1 = (n + 1 == steps) ? T : (n + 1) * dt;
        for (int k = 0; k < K; ++k) {
            const auto i = static_cast<std::size_t>(k);
            u[i] *= decay[i];
            if (h != nullptr) {
                u[i] += phi_b[i] * h->integrate_weighted(t0, t1, basis->eigenvalue(k + 1));
            }
        }
        traj.times.push_back(t1);
        traj.modes.push_back(u);
    }
    return traj;
}

Norms final_norms(const Trajectory& traj, int points) {
    const std::size_t last = traj.states.size() - 1;
    return grid_norms([&](double x) { return traj.eval(last, x); }, points);
}

Norms final_norms(const ModalTrajectory& traj, int points) {
    const std::size_t last = traj.modes.size() - 1;
    return grid_norms([&](double x) { return traj.eval(last, x); }, points);
}

}  // namespace pointctl
