#include "ut/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ut {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Legendre continued fraction for e^b b^{-a} Gamma(a,b), evaluated with the
// modified Lentz algorithm. Valid for b >= 1 at any real a (and for a > 0
// whenever b >= a+1); converges in < 100 iterations over that range.
double gamma_cf_factor(double a, double b) {
    double b0 = b + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b0;
    double h = d;
    for (int i = 1; i <= 20000; ++i) {
        double an = -i * (i - a);
        b0 += 2.0;
        d = an * d + b0;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b0 + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) break;
    }
    return h;
}

// sum_{n>=0} b^n / (a (a+1) ... (a+n)); gamma_lower(a,b) = e^{-b} b^a * sum.
double gamma_series_sum(double a, double b) {
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 1; n <= 10000; ++n) {
        del *= b / (a + n);
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum;
}

double e1_series(double b) {
    constexpr double egamma = 0.57721566490153286060651209008240243;
    double sum = 0.0, term = 1.0;
    for (int k = 1; k <= 100; ++k) {
        term *= -b / k;
        double add = -term / k;
        sum += add;
        if (std::fabs(add) < std::fabs(sum) * kEps) break;
    }
    return -egamma - std::log(b) + sum;
}

// Core evaluation; `scaled` selects e^b Gamma(a,b) instead of Gamma(a,b).
double gamma_upper_core(double a, double b, bool scaled) {
    double escale = scaled ? 0.0 : b;  // subtracted inside the exponent
    if (a == 0.0) {
        if (b <= 1.0) {
            double v = e1_series(b);
            return scaled ? std::exp(b) * v : v;
        }
        return std::exp(-escale) * gamma_cf_factor(0.0, b);
    }
    if (a > 0.0) {
        if (b < a + 1.0) {
            double sum = gamma_series_sum(a, b);
            if (scaled)
                return std::exp(b) * std::tgamma(a) - std::exp(a * std::log(b)) * sum;
            return std::tgamma(a) - std::exp(a * std::log(b) - b) * sum;
        }
        return std::exp(a * std::log(b) - escale) * gamma_cf_factor(a, b);
    }
    // a < 0
    if (b >= 1.0)
        return std::exp(a * std::log(b) - escale) * gamma_cf_factor(a, b);
    // b < 1: downward recurrence Gamma(s-1,b) = (Gamma(s,b) - b^{s-1}e^{-b})/(s-1),
    // started from E1 when a is an exact integer, else from s in [1,2).
    double s, g;
    if (a == std::floor(a)) {
        s = 0.0;
        g = e1_series(b);
    } else {
        int m = static_cast<int>(std::ceil(1.0 - a));
        s = a + m;
        g = std::tgamma(s) - std::exp(s * std::log(b) - b) * gamma_series_sum(s, b);
    }
    double eb = std::exp(-b);
    while (s > a + 0.5) {
        s -= 1.0;
        g = (g - std::pow(b, s) * eb) / s;
    }
    return scaled ? std::exp(b) * g : g;
}

void check_gamma_args(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > 0.0))
        throw std::domain_error("upper_incomplete_gamma: requires finite a and b > 0");
}

}  // namespace

double upper_incomplete_gamma(double a, double b) {
    check_gamma_args(a, b);
    return gamma_upper_core(a, b, false);
}

double expint_e1(double b) {
    if (!std::isfinite(b) || !(b > 0.0))
        throw std::domain_error("expint_e1: requires b > 0");
    return b <= 1.0 ? e1_series(b) : std::exp(-b) * gamma_cf_factor(0.0, b);
}

double detail::upper_incomplete_gamma_scaled(double a, double b) {
    check_gamma_args(a, b);
    return gamma_upper_core(a, b, true);
}

double lambert_w_m1(double z) {
    const double neg_inv_e = -std::exp(-1.0);
    if (!std::isfinite(z) || z >= 0.0 || z < neg_inv_e - 1e-14)
        throw std::domain_error("lambert_w_m1: requires -1/e <= z < 0");
    if (std::fabs(z - neg_inv_e) <= 1e-14) return -1.0;

    double w;
    if (z < neg_inv_e + 1e-3) {
        // branch-point series in p = -sqrt(2(1+ez)); the negative root selects
        // the lower branch (Corless et al. 1996, eq. 4.22)
        double p = -std::sqrt(std::fmax(0.0, 2.0 * (1.0 + std::exp(1.0) * z)));
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0
            + p * (769.0 / 17280.0 - p * 221.0 / 8505.0)))));
    } else {
        double l1 = std::log(-z);
        double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1 + l2 * (l2 - 2.0) / (2.0 * l1 * l1);
    }
    // Halley refinement on f(w) = w e^w - z
    double dw_prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 40; ++it) {
        double ew = std::exp(w);
        double f = w * ew - z;
        if (f == 0.0) break;
        double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
        double dw = f / denom;
        w -= dw;
        if (std::fabs(dw) <= 2.0 * kEps * std::fabs(w)) break;
        if (it > 2 && std::fabs(dw) >= std::fabs(dw_prev)) break;
        dw_prev = dw;
    }
    return w;
}

}  // namespace ut
