#include "ut/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ut/special_functions.hpp"

namespace ut {
namespace {

void check_index(OrderStatIndex idx) {
    if (idx.n < 1 || idx.r < 1 || idx.r > idx.n || idx.k < 1)
        throw std::domain_error("OrderStatIndex: requires 1 <= r <= n and k >= 1");
}

double lchoose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// e^i / i^{i - k/theta} [Gamma(i - k/theta + 1, i) - i Gamma(i - k/theta, i)]
double mu_max(int i, double k_over_theta) {
    double a = i - k_over_theta;
    double bracket = upper_incomplete_gamma(a + 1.0, i) -
                     i * upper_incomplete_gamma(a, i);
    return std::exp(i - a * std::log(static_cast<double>(i))) * bracket;
}

// Alternating series summed largest-first with Neumaier compensation.
double compensated_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::fabs(a) > std::fabs(b); });
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        double next = sum + t;
        if (std::fabs(sum) >= std::fabs(t))
            comp += (sum - next) + t;
        else
            comp += (t - next) + sum;
        sum = next;
    }
    return sum + comp;
}

}  // namespace

double raw_moment(const UnitTeissier& d, int k) {
    if (k < 1) throw std::domain_error("raw_moment: k must be a positive integer");
    double a = 1.0 - k / d.theta;
    return std::exp(1.0) *
           (upper_incomplete_gamma(a + 1.0, 1.0) - upper_incomplete_gamma(a, 1.0));
}

double os_moment_t21(const UnitTeissier& d, OrderStatIndex idx) {
    check_index(idx);
    double kt = idx.k / d.theta;
    std::vector<double> terms;
    terms.reserve(idx.n - idx.r + 1);
    for (int i = idx.r; i <= idx.n; ++i) {
        double lc = lchoose(i - 1, idx.r - 1) + lchoose(idx.n, i);
        double sign = ((i - idx.r) % 2 == 0) ? 1.0 : -1.0;
        terms.push_back(sign * std::exp(lc) * mu_max(i, kt));
    }
    return compensated_sum(terms);
}

double os_moment_t22(const UnitTeissier& d, OrderStatIndex idx) {
    check_index(idx);
    double kt = idx.k / d.theta;
    double lead = std::log(static_cast<double>(idx.n)) + lchoose(idx.n - 1, idx.r - 1);
    std::vector<double> terms;
    terms.reserve(idx.n - idx.r + 1);
    for (int i = 0; i <= idx.n - idx.r; ++i) {
        int j = i + idx.r;
        double a = j - kt;
        double bracket = upper_incomplete_gamma(a + 1.0, j) -
                         j * upper_incomplete_gamma(a, j);
        double lc = lead + lchoose(idx.n - idx.r, i) + j -
                    (a + 1.0) * std::log(static_cast<double>(j));
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        terms.push_back(sign * std::exp(lc) * bracket);
    }
    return compensated_sum(terms);
}

double os_variance(const UnitTeissier& d, OrderStatIndex idx) {
    idx.k = 1;
    check_index(idx);
    double m1 = os_moment_t21(d, idx);
    idx.k = 2;
    double m2 = os_moment_t21(d, idx);
    return std::fmax(0.0, m2 - m1 * m1);
}

LMomentSet l_moments(const UnitTeissier& d) {
    double kt = 1.0 / d.theta;
    double m1 = mu_max(1, kt), m2 = mu_max(2, kt);
    double m3 = mu_max(3, kt), m4 = mu_max(4, kt);
    LMomentSet out;
    out.lambda1 = m1;
    out.lambda2 = m2 - m1;
    out.lambda3 = 2.0 * m3 - 3.0 * m2 + m1;
    out.lambda4 = 5.0 * m4 - 10.0 * m3 + 6.0 * m2 - m1;
    out.l_cv = out.lambda2 / out.lambda1;
    out.tau3 = out.lambda3 / out.lambda2;
    out.tau4 = out.lambda4 / out.lambda2;
    return out;
}

std::pair<double, double> sample_l_moments(const Sample& s) {
    if (s.n < 2)
        throw std::domain_error("sample_l_moments: l2 requires n >= 2");
    double b0 = 0.0, b1 = 0.0;
    for (std::size_t i = 0; i < s.n; ++i) {
        b0 += s.sorted[i];
        b1 += i * s.sorted[i];
    }
    b0 /= s.n;
    b1 /= static_cast<double>(s.n) * (s.n - 1.0);
    return {b0, 2.0 * b1 - b0};
}

}  // namespace ut
