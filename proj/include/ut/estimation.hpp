#pragma once

#include <array>
#include <optional>
#include <string>

#include "ut/sample.hpp"

namespace ut {

enum class Method { MLE, LSE, WLSE, MPSE, CRVME, ADE, RADE, PCE, LME };

inline constexpr std::array<Method, 9> kAllMethods = {
    Method::MLE,   Method::LSE, Method::WLSE, Method::MPSE, Method::CRVME,
    Method::ADE,   Method::RADE, Method::PCE, Method::LME};

const char* method_name(Method m);
Method method_from_string(const std::string& name);

struct FitResult {
    Method method;
    double theta_hat;
    std::optional<double> std_error;  // MLE only
    double objective_at_opt;
    bool converged;
    int iterations;
};

// Smaller is better for every method; maximized criteria are negated inside.
double objective(Method m, double theta, const Sample& s);
FitResult fit(Method m, const Sample& s);
double mle_std_error(const Sample& s, double theta_hat);

}  // namespace ut
