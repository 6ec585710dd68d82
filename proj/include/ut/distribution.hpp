#pragma once

#include <cstdint>
#include <vector>

namespace ut {

struct UnitTeissier {
    double theta;
    explicit UnitTeissier(double th);
};

struct Probability {
    double p;
    Probability(double v);
    operator double() const noexcept { return p; }
};

double pdf(const UnitTeissier& d, double x);
double log_pdf(const UnitTeissier& d, double x);
Probability cdf(const UnitTeissier& d, double x);
double quantile(const UnitTeissier& d, Probability p);
std::vector<double> sample(const UnitTeissier& d, std::int64_t n, std::uint64_t seed);
double hazard(const UnitTeissier& d, double x);

namespace detail {
// 1 - cdf computed without cancellation near x = 1
double survival(const UnitTeissier& d, double x);
// counter-based uniform stream: value i of the stream keyed by `seed`
double uniform_at(std::uint64_t seed, std::uint64_t i);
std::uint64_t mix64(std::uint64_t z);
}  // namespace detail

}  // namespace ut
