#include "pointctl/controllability.hpp"

#include "pointctl/errors.hpp"
#include "pointctl/kernels.hpp"
#include "pointctl/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pointctl {

namespace {

constexpr double kTinyPhi = 1e-300;
// b closer than this to a node of some Phi_k, k <= K, counts as a node.
constexpr double kNodeTol = 1e-12;

}  // namespace

BadSetVerdict bad_set_membership(const ProblemParams& params, int N, double tol) {
    params.validate();
    if (N < 2) {
        throw DomainError("bad_set_membership: scan depth must be >= 2");
    }
    if (!(tol > 0.0)) {
        throw DomainError("bad_set_membership: tolerance must be positive");
    }
    const double nu = nu_param(params.alpha, params.mu);
    const std::vector<double> zeros = bessel_zeros(BesselOrder(nu), N);
    const double power = 2.0 / (2.0 - params.alpha);
    BadSetVerdict v;
    v.scan_limit = N;
    v.tolerance = tol;
    if (const auto hit = kernels::parallel::first_ratio_hit(zeros, power, params.b_bar, tol)) {
        v.in_P = true;
        v.witness = Witness{hit->k, hit->n};
        v.distance = hit->distance;
    }
    return v;
}

double witness_point(double alpha, double mu, const Witness& w) {
    const BesselOrder order(nu_param(alpha, mu));
    return std::pow(bessel_zero(order, w.k) / bessel_zero(order, w.n), 2.0 / (2.0 - alpha));
}

MinimalTimeEstimate minimal_time_estimate(const SpectralBasis& basis, double b_bar, int K) {
    if (K < 1 || K > basis.size()) {
        throw IndexError("minimal_time_estimate: K outside 1.." + std::to_string(basis.size()));
    }
    if (!(b_bar > 0.0 && b_bar < 1.0)) {
        throw DomainError("b must lie in (0, 1)");
    }
    const double power = 2.0 / (2.0 - basis.alpha());
    if (const auto hit = kernels::parallel::first_ratio_hit(basis.zeros().first(static_cast<std::size_t>(K)), power,
                                                            b_bar, kNodeTol)) {
        throw MembershipError("b is a node of Phi_" + std::to_string(hit->n) + " (ratio of zeros " +
                                  std::to_string(hit->k) + ", " + std::to_string(hit->n) + ")",
                              hit->n);
    }
    const std::vector<double> phi =
        kernels::parallel::map([&](int i) { return std::fabs(basis.eigenfunction(i + 1, b_bar)); }, K);
    MinimalTimeEstimate est;
    est.K = K;
    for (int k = 1; k <= K; ++k) {
        const double a = phi[static_cast<std::size_t>(k - 1)];
        if (a < kTinyPhi) {
            throw MembershipError("|Phi_" + std::to_string(k) + "(b)| below 1e-300: b is a node", k);
        }
        const double lambda = basis.eigenvalue(k);
        est.per_k.push_back({k, lambda, a, -std::log(a) / lambda});
        est.xi = std::max(est.xi, a / lambda);
    }
    double run = -INFINITY;
    for (const MinimalTimeRow& row : est.per_k) {
        run = std::max(run, row.ratio);
        est.running_sup.push_back(run);
    }
    est.tail_sup.resize(est.per_k.size());
    run = -INFINITY;
    for (std::size_t i = est.per_k.size(); i-- > 0;) {
        run = std::max(run, est.per_k[i].ratio);
        est.tail_sup[i] = run;
    }
    const int first = (K + 1) / 2;
    est.estimate = est.tail_sup[static_cast<std::size_t>(first - 1)];
    return est;
}

std::string_view to_string(NullVerdict v) noexcept {
    switch (v) {
        case NullVerdict::controllable:
            return "controllable";
        case NullVerdict::not_controllable:
            return "not_controllable";
        case NullVerdict::indeterminate:
            break;
    }
    return "indeterminate";
}

NullVerdict null_controllability_verdict(double T, const MinimalTimeEstimate& estimate, double margin) {
    if (T > estimate.estimate * (1.0 + margin)) {
        return NullVerdict::controllable;
    }
    if (T < estimate.estimate * (1.0 - margin)) {
        return NullVerdict::not_controllable;
    }
    return NullVerdict::indeterminate;
}

double observability_quotient(const SpectralBasis& basis, int k, double b_bar, double T) {
    const double power = 2.0 / (2.0 - basis.alpha());
    const double zk = basis.zero(k);
    for (int m = 1; m < k; ++m) {
        if (std::fabs(std::pow(basis.zero(m) / zk, power) - b_bar) <= kNodeTol) {
            throw MembershipError("b is a node of Phi_" + std::to_string(k), k);
        }
    }
    const double phi = basis.eigenfunction(k, b_bar);
    if (std::fabs(phi) < kTinyPhi) {
        throw MembershipError("|Phi_" + std::to_string(k) + "(b)| below 1e-300: b is a node", k);
    }
    const double lambda = basis.eigenvalue(k);
    return 2.0 * lambda / (phi * phi * std::expm1(2.0 * lambda * T));
}

}  // namespace pointctl
