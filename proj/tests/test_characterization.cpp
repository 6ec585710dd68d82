#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracle_quad.hpp"
#include "ut/characterization.hpp"
#include "ut/moments.hpp"

using ut::g_fn;
using ut::h_fn;
using ut::UnitTeissier;
using ut::verify_characterization;

namespace {

std::vector<double> grid50() {
    std::vector<double> g;
    for (int i = 0; i < 50; ++i) g.push_back(0.02 + i * (0.96 / 49.0));
    return g;
}

}  // namespace

TEST_CASE("g and h products match frozen reference values") {
    UnitTeissier d(1.0);
    CHECK(g_fn(d, 0.5) * ut::pdf(d, 0.5) ==
          doctest::Approx(0.23495407151135281).epsilon(1e-11));
    CHECK(h_fn(d, 0.5) * ut::pdf(d, 0.5) ==
          doctest::Approx(0.16869856616545312).epsilon(1e-11));
}

TEST_CASE("g f equals the lower partial moment integral") {
    for (double theta : {0.5, 1.0, 2.0}) {
        UnitTeissier d(theta);
        auto checks = verify_characterization(d, grid50());
        REQUIRE(checks.size() == 100);
        double worst = 0.0;
        for (const auto& c : checks) {
            CHECK(c.abs_gap <= 1e-7);
            CHECK(c.abs_gap == doctest::Approx(std::fabs(c.lhs - c.rhs)).epsilon(1e-12));
            worst = std::fmax(worst, c.abs_gap);
        }
        CHECK(worst <= 1e-7);
    }
}

TEST_CASE("lower and upper pieces decompose the full first moment") {
    for (double theta : {0.5, 1.0, 2.0}) {
        UnitTeissier d(theta);
        double mu = ut::raw_moment(d, 1);
        auto checks = verify_characterization(d, grid50());
        for (std::size_t i = 0; i < checks.size(); i += 2) {
            double total = checks[i].lhs + checks[i + 1].lhs;
            CHECK(std::fabs(total - mu) <= 1e-9);
        }
    }
}

TEST_CASE("a perturbed candidate is rejected by the same checks") {
    UnitTeissier d(1.0);
    double worst = 0.0;
    for (double x : grid50()) {
        double fake = 1.01 * g_fn(d, x) * ut::pdf(d, x);
        double ref = oracle::integrate([&](double t) { return t * ut::pdf(d, t); },
                                       1e-12, x, 1e-12);
        worst = std::fmax(worst, std::fabs(fake - ref));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("g and h stay positive and respect conditional-mean bounds") {
    for (double theta : {0.5, 1.0, 2.0, 4.0}) {
        UnitTeissier d(theta);
        for (double x : grid50()) {
            // Skip the deep left tail where the quotient forms degenerate to
            // their 0 and +inf limits.
            if (std::exp(-theta * std::log(x)) > 700.0) continue;
            double g = g_fn(d, x);
            double h = h_fn(d, x);
            CHECK(g > 0.0);
            CHECK(h > 0.0);
            // g f / F is the mean of X given X <= x, so it lies in (0, x).
            double lower_mean = g * ut::pdf(d, x) / ut::cdf(d, x);
            CHECK(lower_mean > 0.0);
            CHECK(lower_mean < x);
            // h f / S is the mean of X given X > x, so it lies in (x, 1).
            double upper_mean =
                h * ut::pdf(d, x) / ut::detail::survival(d, x);
            CHECK(upper_mean > x);
            CHECK(upper_mean < 1.0);
        }
    }
}

TEST_CASE("conditional means approach the unconditional mean at the ends") {
    UnitTeissier d(1.0);
    double mu = ut::raw_moment(d, 1);
    double lower = g_fn(d, 0.98) * ut::pdf(d, 0.98) / ut::cdf(d, 0.98);
    CHECK(std::fabs(lower - mu) <= 1e-3);
    double upper = h_fn(d, 0.02) * ut::pdf(d, 0.02) / ut::detail::survival(d, 0.02);
    CHECK(std::fabs(upper - mu) <= 1e-6);
}

TEST_CASE("domain validation") {
    UnitTeissier d(1.0);
    CHECK_THROWS_AS(g_fn(d, 0.0), std::domain_error);
    CHECK_THROWS_AS(g_fn(d, 1.0), std::domain_error);
    CHECK_THROWS_AS(h_fn(d, -0.2), std::domain_error);
    CHECK_THROWS_AS(verify_characterization(d, {0.005}), std::domain_error);
    CHECK_THROWS_AS(verify_characterization(d, {0.995}), std::domain_error);
}
