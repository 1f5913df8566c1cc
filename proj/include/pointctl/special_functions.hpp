#pragma once

#include <vector>

namespace pointctl {

/// Order of a Bessel function of the first kind, nu >= 0 and finite.
class BesselOrder {
public:
    explicit BesselOrder(double nu);
    [[nodiscard]] double value() const noexcept { return nu_; }

private:
    double nu_;
};

/// A-priori enclosure of the n-th positive zero of J_nu (n >= 1).
///
/// For nu in [0, 1/2): (n + nu/2 - 1/4) pi <= j <= (n + nu/4 - 1/8) pi.
/// For nu >= 1/2 the two ends swap roles. At nu = 1/2 both ends coincide
/// with n pi.
struct ZeroBracket {
    int n;
    double lower;
    double upper;
};

struct BesselValue {
    double value;
    double deriv;
};

/// J_nu(x) for x >= 0.
[[nodiscard]] double bessel_j(BesselOrder order, double x);

/// J_nu'(x). x = 0 is rejected for nu < 1 (unbounded or one-sided there).
[[nodiscard]] double bessel_j_deriv(BesselOrder order, double x);

/// J_nu and J_nu' from one evaluation.
[[nodiscard]] BesselValue bessel_j_pair(BesselOrder order, double x);

[[nodiscard]] ZeroBracket zero_bracket(BesselOrder order, int n);

/// n-th positive zero of J_nu, absolute accuracy about 1e-12, always inside
/// zero_bracket(order, n).
[[nodiscard]] double bessel_zero(BesselOrder order, int n);

/// The first `count` positive zeros.
[[nodiscard]] std::vector<double> bessel_zeros(BesselOrder order, int count);

}  // namespace pointctl
