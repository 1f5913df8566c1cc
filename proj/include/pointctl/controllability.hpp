#pragma once

#include "pointctl/spectrum.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace pointctl {

struct Witness {
    int k;  ///< 1-based, k < n
    int n;
};

/// Scan-bounded answer to "is b = (j_k/j_n)^(2/(2-alpha)) for some k < n <= N".
struct BadSetVerdict {
    bool in_P = false;
    std::optional<Witness> witness;
    int scan_limit = 0;
    double tolerance = 0.0;
    double distance = 0.0;  ///< |b - ratio| at the witness, 0 when none
};

/// Pairs are visited by increasing n, then increasing k; the first one within
/// `tol` is the witness.
[[nodiscard]] BadSetVerdict bad_set_membership(const ProblemParams& params, int N, double tol);

/// (k_0/n_0 ratio)^(2/(2-alpha)) of a witness, for round-trip checks.
[[nodiscard]] double witness_point(double alpha, double mu, const Witness& w);

struct MinimalTimeRow {
    int k;
    double lambda;
    double abs_phi;
    double ratio;  ///< -log|Phi_k(b)| / lambda_k
};

struct MinimalTimeEstimate {
    std::vector<MinimalTimeRow> per_k;
    std::vector<double> running_sup;  ///< max of ratio_1..ratio_k, nondecreasing
    std::vector<double> tail_sup;     ///< max of ratio_k..ratio_K, nonincreasing
    double estimate = 0.0;            ///< max of ratio_k over ceil(K/2) <= k <= K
    double xi = 0.0;                  ///< max_k |Phi_k(b)| / lambda_k
    int K = 0;
};

/// Truncated limsup of -log|Phi_k(b)|/lambda_k. Throws MembershipError if b
/// is within 1e-12 of a node of some Phi_k, k <= K, or some |Phi_k(b)| < 1e-300.
[[nodiscard]] MinimalTimeEstimate minimal_time_estimate(const SpectralBasis& basis, double b_bar, int K);

enum class NullVerdict { controllable, not_controllable, indeterminate };

[[nodiscard]] std::string_view to_string(NullVerdict v) noexcept;

/// controllable above estimate*(1+margin), not controllable below
/// estimate*(1-margin), indeterminate in between.
[[nodiscard]] NullVerdict null_controllability_verdict(double T, const MinimalTimeEstimate& estimate,
                                                       double margin = 0.05);

/// e^(-2 lambda_k T) / (Phi_k(b)^2 (1 - e^(-2 lambda_k T)) / (2 lambda_k)): the
/// ratio ||phi(0)||^2 / int_0^T phi(t,b)^2 dt for the adjoint state started at Phi_k.
/// Throws MembershipError when b lies within 1e-12 of a node of Phi_k.
[[nodiscard]] double observability_quotient(const SpectralBasis& basis, int k, double b_bar, double T);

}  // namespace pointctl
