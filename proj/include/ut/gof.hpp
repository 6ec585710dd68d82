#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ut/distribution.hpp"
#include "ut/sample.hpp"

namespace ut {

struct GofReport {
    double neg_loglik;  // -(maximized log-likelihood)
    double aic, caic, bic, hqic;
    double w2;  // Cramer-von Mises
    double a2;  // Anderson-Darling
    double ks;
    double ks_pvalue;
    std::int64_t n;
    int k_params;
    bool clamp_warning;  // set when a fitted probability had to be clamped in the A2 logs
};

GofReport gof_report(const Sample& s, double theta_hat);
std::vector<std::pair<Probability, Probability>> pp_points(const Sample& s,
                                                           double theta_hat);

std::string to_json(const GofReport& r);
std::string to_text(const GofReport& r);

}  // namespace ut
