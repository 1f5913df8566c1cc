#include "pointctl/special_functions.hpp"

#include "pointctl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pointctl {

namespace {

constexpr double kPi = std::numbers::pi;

// Ascending series, summed in extended precision. Used where it is either
// short (x <= 12) or has monotonically shrinking terms (x^2 < 4(nu+1)).
BesselValue series(double nu, double x) {
    if (x == 0.0) {
        const double v = (nu == 0.0) ? 1.0 : 0.0;
        const double d = (nu == 1.0) ? 0.5 : 0.0;
        return {v, d};
    }
    const long double lnu = nu;
    const long double lx = x;
    const long double q = lx * lx / 4.0L;
    long double term = std::exp(lnu * std::log(lx / 2.0L) - std::lgamma(lnu + 1.0L));
    long double sum = term;
    long double dsum = term * lnu;
    for (int k = 1; k < 1000; ++k) {
        term *= -q / (static_cast<long double>(k) * (k + lnu));
        sum += term;
        dsum += term * (2.0L * k + lnu);
        if (k > x && std::fabs(term) <= 1e-21L * std::fabs(sum)) {
            break;
        }
    }
    return {static_cast<double>(sum), static_cast<double>(dsum / lx)};
}

// Steed's method in extended precision. CF1 gives J'/J at order nu, downward
// recurrence brings it to mu in [-1/2, 1/2), CF2 gives (p + iq) at mu, and
// the Wronskian fixes the scale.
BesselValue steed(double nu_in, double x_in) {
    using real = long double;
    const real nu = nu_in;
    const real x = x_in;
    constexpr int kMaxIter = 200000;
    constexpr real kEps = 1e-19L;
    constexpr real kFpMin = std::numeric_limits<real>::min() / kEps;

    const int nl = std::max(0, static_cast<int>(nu_in - x_in + 1.5));
    const real xmu = nu - nl;
    const real xi = 1.0 / x;
    const real xi2 = 2.0 * xi;
    const real w = xi2 / std::numbers::pi_v<real>;

    int isign = 1;
    real h = std::max<real>(nu * xi, kFpMin);
    real b = xi2 * nu;
    real d = 0.0;
    real c = h;
    int i = 0;
    for (; i < kMaxIter; ++i) {
        b += xi2;
        d = b - d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const real del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    if (i == kMaxIter) {
        throw DomainError("bessel_j: continued fraction did not converge for x=" + std::to_string(x_in));
    }

    real rjl = isign * kFpMin;
    real rjpl = h * rjl;
    const real rjl1 = rjl;
    const real rjp1 = rjpl;
    real fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const real rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    const real f = rjpl / rjl;

    real a = 0.25L - xmu * xmu;
    real p = -0.5 * xi;
    real q = 1.0;
    const real br = 2.0 * x;
    real bi = 2.0;
    fact = a * xi / (p * p + q * q);
    real cr = br + q * fact;
    real ci = bi + p * fact;
    real den = br * br + bi * bi;
    real dr = br / den;
    real di = -bi / den;
    real dlr = cr * dr - ci * di;
    real dli = cr * di + ci * dr;
    real temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (i = 1; i < kMaxIter; ++i) {
        a += 2.0 * i;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if (std::fabs(dr) + std::fabs(di) < kFpMin) dr = kFpMin;
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if (std::fabs(cr) + std::fabs(ci) < kFpMin) cr = kFpMin;
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (std::fabs(dlr - 1.0) + std::fabs(dli) < kEps) break;
    }
    if (i == kMaxIter) {
        throw DomainError("bessel_j: CF2 did not converge for x=" + std::to_string(x_in));
    }
    const real gam = (p - f) / q;
    const real rjmu = std::copysign(std::sqrt(w / ((p - f) * gam + q)), rjl);
    fact = rjmu / rjl;
    return {static_cast<double>(rjl1 * fact), static_cast<double>(rjp1 * fact)};
}

// Hankel expansion, x >= 25 and x >= nu^2 so the terms shrink fast. The phase
// is expanded as cos(x)cos(phi) + sin(x)sin(phi) to avoid cancelling x.
double hankel(double nu, double x) {
    const double m = 4.0 * nu * nu;
    double p_sum = 1.0;
    double q_sum = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= (m - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        const double mag = std::fabs(term);
        if (mag > last) break;
        last = mag;
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p_sum += sign * term;
        } else {
            q_sum += sign * term;
        }
        if (mag < 1e-18) break;
    }
    const double phi = (nu / 2.0 + 0.25) * kPi;
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    const double cchi = cx * cp + sx * sp;
    const double schi = sx * cp - cx * sp;
    return std::sqrt(2.0 / (kPi * x)) * (p_sum * cchi - q_sum * schi);
}

void check_x(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
    }
}

BesselValue evaluate(double nu, double x) {
    if (x <= 12.0 || x * x < 4.0 * (nu + 1.0)) {
        return series(nu, x);
    }
    if (x >= 25.0 && x >= (nu + 1.0) * (nu + 1.0)) {
        const double j = hankel(nu, x);
        return {j, nu / x * j - hankel(nu + 1.0, x)};
    }
    return steed(nu, x);
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw DomainError("Bessel order must be finite and >= 0, got " + std::to_string(nu));
    }
}

double bessel_j(BesselOrder order, double x) {
    check_x(x);
    return evaluate(order.value(), x).value;
}

BesselValue bessel_j_pair(BesselOrder order, double x) {
    check_x(x);
    if (x == 0.0 && order.value() < 1.0 && order.value() != 0.0) {
        throw DomainError("bessel_j_deriv: J_nu' is unbounded at x=0 for 0 < nu < 1");
    }
    return evaluate(order.value(), x);
}

double bessel_j_deriv(BesselOrder order, double x) {
    check_x(x);
    if (x == 0.0 && order.value() < 1.0) {
        throw DomainError("bessel_j_deriv: x=0 not admitted for nu < 1");
    }
    return evaluate(order.value(), x).deriv;
}

ZeroBracket zero_bracket(BesselOrder order, int n) {
    if (n < 1) {
        throw IndexError("zero index must be >= 1, got " + std::to_string(n));
    }
    const double nu = order.value();
    const double a = (n + nu / 2.0 - 0.25) * kPi;
    const double b = (n + nu / 4.0 - 0.125) * kPi;
    if (nu < 0.5) {
        return {n, a, b};
    }
    return {n, b, a};
}

double bessel_zero(BesselOrder order, int n) {
    const ZeroBracket br = zero_bracket(order, n);
    const double nu = order.value();
    if (br.lower == br.upper) {
        // nu = 1/2: J is a multiple of sin, the bracket is the zero itself.
        return br.lower;
    }
    const double pad = 1e-12 * br.upper;
    double a = br.lower - pad;
    double b = br.upper + pad;
    double fa = bessel_j(order, a);
    const double fb = bessel_j(order, b);
    if (fa == 0.0) return br.lower;
    if (fb == 0.0) return br.upper;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketError("no sign change of J_" + std::to_string(nu) + " in bracket of zero " +
                           std::to_string(n));
    }
    while (b - a > 1e-6) {
        const double m = 0.5 * (a + b);
        const double fm = bessel_j(order, m);
        if (fm == 0.0) {
            a = b = m;
            break;
        }
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    double z = 0.5 * (a + b);
    for (int it = 0; it < 50 && a < b; ++it) {
        const BesselValue v = evaluate(nu, z);
        if (v.value == 0.0) break;
        const double step = v.value / v.deriv;
        double next = z - step;
        if (!(next > a && next < b)) {
            next = 0.5 * (a + b);
        }
        if ((v.value > 0.0) == (fa > 0.0)) {
            a = std::max(a, z);
        } else {
            b = std::min(b, z);
        }
        const bool done = std::fabs(next - z) <= 1e-15 * z;
        z = next;
        if (done) break;
    }
    return std::clamp(z, br.lower, br.upper);
}

std::vector<double> bessel_zeros(BesselOrder order, int count) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int n = 1; n <= count; ++n) {
        out.push_back(bessel_zero(order, n));
    }
    return out;
}

}  // namespace pointctl
