#include "ut/estimation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ut/distribution.hpp"
#include "ut/moments.hpp"
#include "ut/numerics.hpp"

namespace ut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogLo = std::log(1e-3);
const double kLogHi = std::log(1e3);

double guard(double v) { return std::isfinite(v) ? v : kInf; }

// Exact duplicates get a deterministic relative nudge so MPSE spacings stay
// positive; first member of each run is left untouched.
std::vector<double> jittered(const Sample& s) {
    std::vector<double> x = s.sorted;
    std::size_t i = 0;
    while (i < x.size()) {
        std::size_t j = i + 1;
        while (j < x.size() && x[j] == x[i]) {
            x[j] *= 1.0 + 1e-12 * (j - i);
            ++j;
        }
        i = j;
    }
    return x;
}

double mle_obj(const UnitTeissier& d, const Sample& s) {
    double ll = 0.0;
    for (double x : s.sorted) ll += log_pdf(d, x);
    return guard(-ll);
}

double lse_obj(const UnitTeissier& d, const Sample& s, bool weighted) {
    double n = static_cast<double>(s.n), acc = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        double resid = cdf(d, s.sorted[i]) - (i + 1.0) / (n + 1.0);
        double w = weighted
                       ? (n + 1.0) * (n + 1.0) * (n + 2.0) / ((i + 1.0) * (n - i))
                       : 1.0;
        acc += w * resid * resid;
    }
    return guard(acc);
}

double mpse_obj(const UnitTeissier& d, const Sample& s) {
    std::vector<double> x = jittered(s);
    double prev = 0.0, acc = 0.0;
    for (double xi : x) {
        double fi = cdf(d, xi);
        double tau = fi - prev;
        if (!(tau > 0.0)) return kInf;
        acc += std::log(tau);
        prev = fi;
    }
    double tail = 1.0 - prev;
    if (!(tail > 0.0)) return kInf;
    acc += std::log(tail);
    return guard(-acc / (x.size() + 1.0));
}

double crvme_obj(const UnitTeissier& d, const Sample& s) {
    double n = static_cast<double>(s.n);
    double acc = 1.0 / (12.0 * n);
    for (std::size_t i = 0; i < s.n; ++i) {
        double resid = cdf(d, s.sorted[i]) - (2.0 * i + 1.0) / (2.0 * n);
        acc += resid * resid;
    }
    return guard(acc);
}

double ade_obj(const UnitTeissier& d, const Sample& s) {
    double n = static_cast<double>(s.n), acc = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        double fi = cdf(d, s.sorted[i]);
        double srev = detail::survival(d, s.sorted[s.n - 1 - i]);
        if (!(fi > 0.0) || !(srev > 0.0)) return kInf;
        acc += (2.0 * i + 1.0) * (std::log(fi) + std::log(srev));
    }
    return guard(-n - acc / n);
}

double rade_obj(const UnitTeissier& d, const Sample& s) {
    double n = static_cast<double>(s.n), acc_f = 0.0, acc_s = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        acc_f += cdf(d, s.sorted[i]);
        double srev = detail::survival(d, s.sorted[s.n - 1 - i]);
        if (!(srev > 0.0)) return kInf;
        acc_s += (2.0 * i + 1.0) * std::log(srev);
    }
    return guard(n / 2.0 - 2.0 * acc_f - acc_s / n);
}

double pce_obj(const UnitTeissier& d, const Sample& s) {
    double n = static_cast<double>(s.n), acc = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        double resid = s.sorted[i] - quantile(d, (i + 1.0) / (n + 1.0));
        acc += resid * resid;
    }
    return guard(acc);
}

double sample_mean(const Sample& s) {
    double acc = 0.0;
    for (double x : s.sorted) acc += x;
    return acc / static_cast<double>(s.n);
}

double lme_obj(const UnitTeissier& d, const Sample& s) {
    double r = raw_moment(d, 1) - sample_mean(s);
    return guard(r * r);
}

bool interior(double u) { return u > kLogLo + 1e-6 && u < kLogHi - 1e-6; }

}  // namespace

Sample::Sample(std::vector<double> values) : sorted(std::move(values)), n(0) {
    if (sorted.empty())
        throw std::domain_error("Sample: needs at least one observation");
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.front() > 0.0) || !(sorted.back() < 1.0))
        throw std::domain_error("Sample: observations must lie strictly in (0,1)");
    n = sorted.size();
}

const char* method_name(Method m) {
    switch (m) {
        case Method::MLE: return "MLE";
        case Method::LSE: return "LSE";
        case Method::WLSE: return "WLSE";
        case Method::MPSE: return "MPSE";
        case Method::CRVME: return "CRVME";
        case Method::ADE: return "ADE";
        case Method::RADE: return "RADE";
        case Method::PCE: return "PCE";
        case Method::LME: return "LME";
    }
    return "?";
}

Method method_from_string(const std::string& name) {
    std::string up;
    for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "RTADE") up = "RADE";  // the right-tail AD estimator under its long name
    for (Method m : kAllMethods)
        if (up == method_name(m)) return m;
    throw std::invalid_argument("unknown method: " + name);
}

double objective(Method m, double theta, const Sample& s) {
    UnitTeissier d(theta);
    switch (m) {
        case Method::MLE: return mle_obj(d, s);
        case Method::LSE: return lse_obj(d, s, false);
        case Method::WLSE: return lse_obj(d, s, true);
        case Method::MPSE: return mpse_obj(d, s);
        case Method::CRVME: return crvme_obj(d, s);
        case Method::ADE: return ade_obj(d, s);
        case Method::RADE: return rade_obj(d, s);
        case Method::PCE: return pce_obj(d, s);
        case Method::LME: return lme_obj(d, s);
    }
    throw std::logic_error("objective: unreachable");
}

FitResult fit(Method m, const Sample& s) {
    if (m != Method::MLE && m != Method::MPSE && s.n < 2)
        throw std::domain_error(std::string(method_name(m)) + " fit: requires n >= 2");
    FitResult out{m, 1.0, std::nullopt, 0.0, false, 0};
    Bracket br{kLogLo, kLogHi};

    if (m == Method::LME) {
        double l1 = sample_mean(s);
        auto g = [&](double u) { return raw_moment(UnitTeissier(std::exp(u)), 1) - l1; };
        double glo = g(br.lo), ghi = g(br.hi);
        if ((glo > 0.0) != (ghi > 0.0)) {
            SolverReport rep = find_root(g, br, 1e-12);
            out.theta_hat = std::exp(rep.argmin_or_root);
            out.objective_at_opt = rep.value * rep.value;
            out.iterations = rep.iterations;
            out.converged = rep.converged && interior(rep.argmin_or_root);
            return out;
        }
        // l1 outside the bracket's moment range; fall through to minimization
    }

    auto obj = [&](double u) { return objective(m, std::exp(u), s); };
    SolverReport rep = minimize_scalar(obj, br, 1e-10);
    out.theta_hat = std::exp(rep.argmin_or_root);
    out.objective_at_opt = rep.value;
    out.iterations = rep.iterations;
    out.converged = rep.converged && interior(rep.argmin_or_root);
    if (m == Method::MLE && out.converged) {
        try {
            out.std_error = mle_std_error(s, out.theta_hat);
        } catch (const std::exception&) {
            // boundary-flavored curvature; leave the SE empty
        }
    }
    return out;
}

double mle_std_error(const Sample& s, double theta_hat) {
    if (!std::isfinite(theta_hat) || !(theta_hat > 0.0))
        throw std::domain_error("mle_std_error: theta_hat must be positive");
    auto ll = [&](double th) {
        UnitTeissier d(th);
        double acc = 0.0;
        for (double x : s.sorted) acc += log_pdf(d, x);
        return acc;
    };
    double h = 1e-4 * std::fmax(1.0, theta_hat);
    double info = -second_derivative(ll, theta_hat, h);
    if (!(info > 0.0))
        throw std::runtime_error(
            "mle_std_error: observed information not positive (boundary or non-maximum)");
    return 1.0 / std::sqrt(info);
}

}  // namespace ut
