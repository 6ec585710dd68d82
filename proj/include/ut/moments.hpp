#pragma once

#include <utility>

#include "ut/distribution.hpp"
#include "ut/sample.hpp"

namespace ut {

struct OrderStatIndex {
    int n;  // sample size >= 1
    int r;  // rank, 1 <= r <= n
    int k;  // moment order >= 1
};

struct LMomentSet {
    double lambda1, lambda2, lambda3, lambda4;
    double l_cv, tau3, tau4;
};

double raw_moment(const UnitTeissier& d, int k);
double os_moment_t21(const UnitTeissier& d, OrderStatIndex idx);
double os_moment_t22(const UnitTeissier& d, OrderStatIndex idx);
double os_variance(const UnitTeissier& d, OrderStatIndex idx);  // idx.k ignored
LMomentSet l_moments(const UnitTeissier& d);
std::pair<double, double> sample_l_moments(const Sample& s);  // (l1, l2)

}  // namespace ut
