#include "ut/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ut/special_functions.hpp"

namespace ut {

UnitTeissier::UnitTeissier(double th) : theta(th) {
    if (!std::isfinite(th) || !(th > 0.0))
        throw std::domain_error("UnitTeissier: theta must be positive and finite");
}

Probability::Probability(double v) : p(v) {
    if (!(v >= 0.0) || !(v <= 1.0))
        throw std::domain_error("Probability: p must lie in [0,1]");
}

double pdf(const UnitTeissier& d, double x) {
    if (!(x > 0.0) || x >= 1.0) return 0.0;
    double lx = std::log(x);
    double s = -d.theta * lx;  // so x^{-theta} = e^s, s > 0
    if (s > 709.0) return 0.0;
    double t = std::exp(s);
    // theta (t - 1) x^{-(1+theta)} e^{1-t}, with t - 1 = expm1(s)
    return d.theta * std::expm1(s) * std::exp(1.0 - t - (1.0 + d.theta) * lx);
}

double log_pdf(const UnitTeissier& d, double x) {
    if (!(x > 0.0) || !(x < 1.0))
        throw std::domain_error("log_pdf: x must lie in (0,1)");
    double lx = std::log(x);
    double s = -d.theta * lx;
    double tm1 = std::expm1(s);  // x^{-theta} - 1; +inf when s > ~709
    double log_tm1 = (s > 40.0) ? s : std::log(tm1);
    return std::log(d.theta) - (1.0 + d.theta) * lx + log_tm1 - tm1;
}

Probability cdf(const UnitTeissier& d, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double s = -d.theta * std::log(x);
    if (s > 709.0) return 0.0;
    double g = s + 1.0 - std::exp(s);  // <= 0
    return std::fmin(1.0, std::exp(g));
}

double detail::survival(const UnitTeissier& d, double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    double s = -d.theta * std::log(x);
    if (s > 709.0) return 1.0;
    return -std::expm1(s + 1.0 - std::exp(s));
}

double quantile(const UnitTeissier& d, Probability p) {
    if (!(p.p > 0.0) || !(p.p < 1.0))
        throw std::domain_error("quantile: p must lie strictly in (0,1)");
    double dt;  // t - 1 where t = -W_{-1}(-p/e) >= 1
    if (1.0 - p.p <= 1e-10) {
        // branch-point series; keeps x strictly below 1 where the W snap cannot
        double q = std::sqrt(2.0 * (1.0 - p.p));
        dt = q * (1.0 + q * (1.0 / 3.0 + q * (11.0 / 72.0)));
    } else {
        double t = -lambert_w_m1(-p.p * std::exp(-1.0));
        dt = t - 1.0;
    }
    double x = std::exp(-std::log1p(dt) / d.theta);
    if (x >= 1.0) x = std::nextafter(1.0, 0.0);
    return x;
}

std::uint64_t detail::mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

double detail::uniform_at(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = mix64(seed + (i + 1) * 0x9E3779B97F4A7C15ULL);
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;  // in (0,1)
}

std::vector<double> sample(const UnitTeissier& d, std::int64_t n, std::uint64_t seed) {
    if (n < 0) throw std::domain_error("sample: n must be >= 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        out.push_back(quantile(d, detail::uniform_at(seed, static_cast<std::uint64_t>(i))));
    return out;
}

double hazard(const UnitTeissier& d, double x) {
    if (!(x > 0.0) || !(x < 1.0))
        throw std::domain_error("hazard: x must lie in (0,1)");
    double sf = detail::survival(d, x);
    if (sf == 0.0)
        throw std::domain_error("hazard: survival underflows to 0 at this x");
    return pdf(d, x) / sf;
}

}  // namespace ut
