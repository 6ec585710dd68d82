#include "ut/gof.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ut {
namespace {

double kolmogorov_pvalue(double lambda) {
    if (lambda < 0.02) return 1.0;
    double acc = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * lambda * lambda);
        acc += (j % 2 == 1) ? term : -term;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

}  // namespace

GofReport gof_report(const Sample& s, double theta_hat) {
    if (s.n < 2) throw std::domain_error("gof_report: requires n >= 2");
    UnitTeissier d(theta_hat);
    double n = static_cast<double>(s.n);
    int k = 1;

    double ell = 0.0;
    for (double x : s.sorted) ell += log_pdf(d, x);

    std::vector<double> u(s.n);
    for (std::size_t i = 0; i < s.n; ++i) u[i] = cdf(d, s.sorted[i]);

    double w2 = 1.0 / (12.0 * n);
    double ks = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        double resid = u[i] - (2.0 * i + 1.0) / (2.0 * n);
        w2 += resid * resid;
        ks = std::fmax(ks, std::fmax((i + 1.0) / n - u[i], u[i] - i / n));
    }

    bool clamped = false;
    double a2 = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        double lo = u[i], hi = u[s.n - 1 - i];
        if (lo < 1e-300 || lo > 1.0 - 1e-16 || hi < 1e-300 || hi > 1.0 - 1e-16)
            clamped = true;
        lo = std::clamp(lo, 1e-300, 1.0 - 1e-16);
        hi = std::clamp(hi, 1e-300, 1.0 - 1e-16);
        a2 += (2.0 * i + 1.0) * (std::log(lo) + std::log1p(-hi));
    }
    a2 = -n - a2 / n;

    GofReport r;
    r.neg_loglik = -ell;
    r.aic = 2.0 * k - 2.0 * ell;
    r.caic = r.aic + 2.0 * k * (k + 1.0) / (n - k - 1.0);
    r.bic = k * std::log(n) - 2.0 * ell;
    r.hqic = 2.0 * k * std::log(std::log(n)) - 2.0 * ell;
    r.w2 = w2;
    r.a2 = a2;
    r.ks = ks;
    r.ks_pvalue = kolmogorov_pvalue(std::sqrt(n) * ks);
    r.n = static_cast<std::int64_t>(s.n);
    r.k_params = k;
    r.clamp_warning = clamped;
    return r;
}

std::vector<std::pair<Probability, Probability>> pp_points(const Sample& s,
                                                           double theta_hat) {
    UnitTeissier d(theta_hat);
    std::vector<std::pair<Probability, Probability>> out;
    out.reserve(s.n);
    double n = static_cast<double>(s.n);
    for (std::size_t i = 0; i < s.n; ++i)
        out.emplace_back((i + 0.5) / n, cdf(d, s.sorted[i]));
    return out;
}

std::string to_json(const GofReport& r) {
    nlohmann::json j{{"neg_loglik", r.neg_loglik}, {"aic", r.aic},
                     {"caic", r.caic},             {"bic", r.bic},
                     {"hqic", r.hqic},             {"w2", r.w2},
                     {"a2", r.a2},                 {"ks", r.ks},
                     {"ks_pvalue", r.ks_pvalue},   {"n", r.n},
                     {"k_params", r.k_params},     {"clamp_warning", r.clamp_warning}};
    return j.dump();
}

std::string to_text(const GofReport& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    auto row = [&os](const char* label, double v) {
        os << label;
        for (std::size_t i = std::string(label).size(); i < 12; ++i) os << ' ';
        os << v << '\n';
    };
    row("-loglik", r.neg_loglik);
    row("AIC", r.aic);
    row("CAIC", r.caic);
    row("BIC", r.bic);
    row("HQIC", r.hqic);
    row("W2", r.w2);
    row("A2", r.a2);
    row("KS", r.ks);
    row("KS p-value", r.ks_pvalue);
    os << "n           " << r.n << "\n";
    if (r.clamp_warning)
        os << "warning: fitted probabilities clamped inside the A2 logs\n";
    return os.str();
}

}  // namespace ut
