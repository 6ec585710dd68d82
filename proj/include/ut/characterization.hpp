#pragma once

#include <vector>

#include "ut/distribution.hpp"

namespace ut {

struct TruncatedMomentCheck {
    double x;
    double lhs;
    double rhs;
    double abs_gap;
};

double g_fn(const UnitTeissier& d, double x);
double h_fn(const UnitTeissier& d, double x);

// For each grid point: first the lower check g(x)f(x) vs the integral of t f(t)
// over (0,x), then the upper check h(x)f(x) vs the integral over (x,1).
std::vector<TruncatedMomentCheck> verify_characterization(
    const UnitTeissier& d, const std::vector<double>& grid);

}  // namespace ut
