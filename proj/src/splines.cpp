#include "pointctl/splines.hpp"

#include "pointctl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pointctl {

SplineSpace::SplineSpace(int degree, std::vector<double> breakpoints, std::vector<int> smoothness)
    : degree_(degree), breakpoints_(std::move(breakpoints)), smoothness_(std::move(smoothness)) {
    if (degree_ < 0) {
        throw DomainError("spline degree must be >= 0");
    }
    if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
        throw DomainError("breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] > breakpoints_[i - 1])) {
            throw DomainError("breakpoints must be strictly increasing");
        }
    }
    if (smoothness_.size() != breakpoints_.size() - 2) {
        throw DomainError("need one smoothness value per interior breakpoint");
    }
    knots_.assign(static_cast<std::size_t>(degree_) + 1, 0.0);
    for (std::size_t i = 0; i < smoothness_.size(); ++i) {
        const int m = smoothness_[i];
        if (m < 0 || m > degree_) {
            throw DomainError("smoothness at breakpoint " + std::to_string(i + 1) + " must lie in [0, " +
                              std::to_string(degree_) + "]");
        }
        knots_.insert(knots_.end(), static_cast<std::size_t>(degree_ + 1 - m), breakpoints_[i + 1]);
    }
    knots_.insert(knots_.end(), static_cast<std::size_t>(degree_) + 1, 1.0);
    for (int k = 0; k + 1 < static_cast<int>(knots_.size()); ++k) {
        if (knots_[static_cast<std::size_t>(k)] < knots_[static_cast<std::size_t>(k) + 1]) {
            last_nonempty_ = k;
        }
    }
}

SplineSpace SplineSpace::uniform(int degree, int n) {
    if (n < 1) {
        throw DomainError("uniform spline space needs n >= 1");
    }
    std::vector<double> bp(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        bp[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    }
    bp.back() = 1.0;
    return SplineSpace(degree, std::move(bp), std::vector<int>(static_cast<std::size_t>(n) - 1, degree));
}

SplineSpace SplineSpace::with_multiplicities(int degree, std::vector<double> breakpoints,
                                             const std::vector<int>& multiplicities) {
    std::vector<int> m;
    m.reserve(multiplicities.size());
    for (const int r : multiplicities) {
        if (r < 1 || r > degree + 1) {
            throw DomainError("knot multiplicity must lie in [1, degree+1]");
        }
        m.push_back(degree + 1 - r);
    }
    return SplineSpace(degree, std::move(breakpoints), std::move(m));
}

void SplineSpace::check(int k) const {
    if (k < 0 || k >= dimension()) {
        throw IndexError("basis index " + std::to_string(k) + " outside 0.." + std::to_string(dimension() - 1));
    }
}

double SplineSpace::eval(int k, int p, double x, int order) const {
    if (order > p) {
        return 0.0;
    }
    const auto t = [this](int i) { return knots_[static_cast<std::size_t>(i)]; };
    if (p == 0) {
        if (t(k) <= x && x < t(k + 1)) return 1.0;
        return (x == knots_.back() && k == last_nonempty_) ? 1.0 : 0.0;
    }
    const double d1 = t(k + p) - t(k);
    const double d2 = t(k + p + 1) - t(k + 1);
    if (order == 0) {
        double v = 0.0;
        if (d1 > 0.0) v += (x - t(k)) / d1 * eval(k, p - 1, x, 0);
        if (d2 > 0.0) v += (t(k + p + 1) - x) / d2 * eval(k + 1, p - 1, x, 0);
        return v;
    }
    double v = 0.0;
    if (d1 > 0.0) v += eval(k, p - 1, x, order - 1) / d1;
    if (d2 > 0.0) v -= eval(k + 1, p - 1, x, order - 1) / d2;
    return p * v;
}

double SplineSpace::basis(int k, double x) const {
    check(k);
    return eval(k, degree_, x, 0);
}

double SplineSpace::basis_deriv(int k, double x, int order) const {
    check(k);
    if (order < 0) {
        throw DomainError("derivative order must be >= 0");
    }
    return eval(k, degree_, x, order);
}

std::pair<int, int> SplineSpace::active_range(double x) const {
    int mu = 0;
    if (x >= knots_.back()) {
        mu = last_nonempty_;
    } else {
        mu = static_cast<int>(std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin()) - 1;
        mu = std::clamp(mu, 0, last_nonempty_);
    }
    return {std::max(0, mu - degree_), std::min(dimension() - 1, mu)};
}

double SplineSpace::greville(int k) const {
    check(k);
    if (degree_ == 0) return knots_[static_cast<std::size_t>(k)];
    double s = 0.0;
    for (int l = 1; l <= degree_; ++l) s += knots_[static_cast<std::size_t>(k + l)];
    return s / degree_;
}

double SplineSpace::integral(int k) const {
    check(k);
    return (knots_[static_cast<std::size_t>(k + degree_ + 1)] - knots_[static_cast<std::size_t>(k)]) /
           (degree_ + 1);
}

std::string_view to_string(KnotSet s) noexcept {
    switch (s) {
        case KnotSet::x1:
            return "x1";
        case KnotSet::x2:
            return "x2";
        case KnotSet::x3:
            break;
    }
    return "x3";
}

SplineSpace knot_set_space(int degree, KnotSet set) {
    std::vector<double> bp;
    for (int i = 0; i <= 10; ++i) bp.push_back(i / 10.0);
    bp.back() = 1.0;
    std::vector<int> mult(9, 1);
    mult[4] = set == KnotSet::x1 ? 1 : (set == KnotSet::x2 ? 2 : 3);
    return SplineSpace::with_multiplicities(degree, std::move(bp), mult);
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

QuasiInterpolant::QuasiInterpolant(SplineSpace space) : space_(std::move(space)) {
    const int d = space_.degree();
    if (d != 2 && d != 3) {
        throw DomainError("quasi-interpolants are provided for degree 2 and 3");
    }
    const auto bp = space_.breakpoints();
    if (d == 2) {
        sites_.push_back(0.0);
        for (std::size_t i = 1; i < bp.size(); ++i) sites_.push_back(0.5 * (bp[i - 1] + bp[i]));
        sites_.push_back(1.0);
    } else {
        sites_.assign(bp.begin(), bp.end());
    }
    const int S = site_count();
    if (S < d + 1) {
        throw DomainError("too few intervals for a quasi-interpolant of degree " + std::to_string(d));
    }
    const int N = space_.dimension();
    const auto t = space_.knots();
    weights_ = Eigen::MatrixXd::Zero(N, S);

    std::vector<int> order(static_cast<std::size_t>(S));
    for (int i = 0; i < N; ++i) {
        const double theta = space_.greville(i);
        // Distances are quantized so that symmetric ties go to the lower index.
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const long long da = std::llround(std::fabs(sites_[static_cast<std::size_t>(a)] - theta) * 1e9);
            const long long db = std::llround(std::fabs(sites_[static_cast<std::size_t>(b)] - theta) * 1e9);
            return da < db;
        });
        std::vector<int> chosen(order.begin(), order.begin() + d + 1);
        std::sort(chosen.begin(), chosen.end());
        const double lo = sites_[static_cast<std::size_t>(chosen.front())];
        const double scale = sites_[static_cast<std::size_t>(chosen.back())] - lo;

        // Match the blossom of ((x - theta)/scale)^m at the d inner knots.
        Eigen::MatrixXd V(d + 1, d + 1);
        Eigen::VectorXd rhs(d + 1);
        for (int c = 0; c <= d; ++c) {
            const double y = (sites_[static_cast<std::size_t>(chosen[static_cast<std::size_t>(c)])] - theta) / scale;
            double pw = 1.0;
            for (int m = 0; m <= d; ++m) {
                V(m, c) = pw;
                pw *= y;
            }
        }
        std::vector<double> e(static_cast<std::size_t>(d) + 1, 0.0);
        e[0] = 1.0;
        for (int l = 1; l <= d; ++l) {
            const double y = (t[static_cast<std::size_t>(i + l)] - theta) / scale;
            for (int m = l; m >= 1; --m) e[static_cast<std::size_t>(m)] += y * e[static_cast<std::size_t>(m - 1)];
        }
        for (int m = 0; m <= d; ++m) rhs(m) = e[static_cast<std::size_t>(m)] / binomial(d, m);
        const Eigen::VectorXd w = V.fullPivLu().solve(rhs);
        const double wmax = w.cwiseAbs().maxCoeff();
        for (int c = 0; c <= d; ++c) {
            if (std::fabs(w(c)) > 1e-12 * wmax) {
                weights_(i, chosen[static_cast<std::size_t>(c)]) = w(c);
            }
        }
    }
    columns_.resize(static_cast<std::size_t>(S));
    for (int r = 0; r < S; ++r) {
        for (int i = 0; i < N; ++i) {
            if (weights_(i, r) != 0.0) columns_[static_cast<std::size_t>(r)].emplace_back(i, weights_(i, r));
        }
    }
}

std::vector<double> QuasiInterpolant::coefficients(std::span<const double> samples) const {
    if (static_cast<int>(samples.size()) != site_count()) {
        throw DomainError("expected " + std::to_string(site_count()) + " samples, got " +
                          std::to_string(samples.size()));
    }
    const Eigen::Map<const Eigen::VectorXd> f(samples.data(), static_cast<Eigen::Index>(samples.size()));
    const Eigen::VectorXd c = weights_ * f;
    return {c.data(), c.data() + c.size()};
}

std::vector<double> QuasiInterpolant::coefficients(const std::function<double(double)>& f) const {
    std::vector<double> s;
    s.reserve(sites_.size());
    for (const double x : sites_) s.push_back(f(x));
    return coefficients(s);
}

double QuasiInterpolant::evaluate(std::span<const double> coeffs, double x, int order) const {
    if (static_cast<int>(coeffs.size()) != space_.dimension()) {
        throw DomainError("coefficient vector does not match the spline dimension");
    }
    const auto [first, last] = space_.active_range(x);
    double s = 0.0;
    for (int k = first; k <= last; ++k) {
        s += coeffs[static_cast<std::size_t>(k)] * space_.basis_deriv(k, x, order);
    }
    return s;
}

std::span<const std::pair<int, double>> QuasiInterpolant::modified_basis_terms(int r) const {
    if (r < 0 || r >= site_count()) {
        throw IndexError("quasi-Lagrange index " + std::to_string(r) + " outside 0.." +
                         std::to_string(site_count() - 1));
    }
    return columns_[static_cast<std::size_t>(r)];
}

double QuasiInterpolant::modified_basis(int r, double x, int order) const {
    double s = 0.0;
    for (const auto& [i, w] : modified_basis_terms(r)) {
        s += w * space_.basis_deriv(i, x, order);
    }
    return s;
}

double QuasiInterpolant::modified_integral(int r) const {
    double s = 0.0;
    for (const auto& [i, w] : modified_basis_terms(r)) {
        s += w * space_.integral(i);
    }
    return s;
}

double sup_error(const QuasiInterpolant& qi, const std::function<double(double)>& f, int samples) {
    const std::vector<double> c = qi.coefficients(f);
    double err = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double x = static_cast<double>(j) / (samples - 1);
        err = std::max(err, std::fabs(f(x) - qi.evaluate(c, x)));
    }
    return err;
}

double convergence_order(int degree, const std::function<double(double)>& f, std::span<const int> n_list) {
    if (n_list.size() < 2) {
        throw DomainError("convergence_order needs at least two grids");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const int n : n_list) {
        const QuasiInterpolant qi(SplineSpace::uniform(degree, n));
        const double x = std::log(1.0 / n);
        const double y = std::log(sup_error(qi, f));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const auto m = static_cast<double>(n_list.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace pointctl
