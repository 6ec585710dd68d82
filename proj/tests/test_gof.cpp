#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "ut/dataset.hpp"
#include "ut/distribution.hpp"
#include "ut/estimation.hpp"
#include "ut/gof.hpp"

using ut::gof_report;
using ut::pp_points;
using ut::Sample;
using ut::UnitTeissier;

namespace {

Sample risk_sample() { return Sample(ut::parse_dataset("risk73").values); }
constexpr double kThetaHat = 0.349321432359;

}  // namespace

TEST_CASE("report on the insurance data matches frozen reference values") {
    auto r = gof_report(risk_sample(), kThetaHat);
    CHECK(r.n == 73);
    CHECK(r.k_params == 1);
    CHECK(r.neg_loglik == doctest::Approx(-88.5397029695).epsilon(1e-9));
    CHECK(std::fabs(r.aic - (-175.079406)) <= 1e-5);
    CHECK(std::fabs(r.caic - (-175.023068)) <= 1e-5);
    CHECK(std::fabs(r.bic - (-172.788946)) <= 1e-5);
    CHECK(std::fabs(r.hqic - (-174.166618)) <= 1e-5);
    CHECK(r.w2 == doctest::Approx(0.1796597583).epsilon(1e-8));
    CHECK(r.a2 == doctest::Approx(1.2190421516).epsilon(1e-8));
    CHECK(r.ks == doctest::Approx(0.1033005438).epsilon(1e-8));
    CHECK(r.ks_pvalue == doctest::Approx(0.4171977657).epsilon(1e-8));
    CHECK(!r.clamp_warning);
}

TEST_CASE("information criteria satisfy their exact offsets") {
    auto r = gof_report(risk_sample(), kThetaHat);
    // CAIC - AIC = 2k(k+1)/(n-k-1) with k=1, n=73.
    CHECK(r.caic - r.aic == doctest::Approx(4.0 / 71.0).epsilon(1e-12));
    CHECK(r.aic == doctest::Approx(2.0 + 2.0 * r.neg_loglik).epsilon(1e-12));
    CHECK(r.bic == doctest::Approx(std::log(73.0) + 2.0 * r.neg_loglik).epsilon(1e-12));
    CHECK(r.hqic ==
          doctest::Approx(2.0 * std::log(std::log(73.0)) + 2.0 * r.neg_loglik)
              .epsilon(1e-12));
}

TEST_CASE("w2 agrees with a direct recomputation from the PIT values") {
    Sample s = risk_sample();
    auto r = gof_report(s, kThetaHat);
    UnitTeissier d(kThetaHat);
    double acc = 1.0 / (12.0 * s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        double u = ut::cdf(d, s.sorted[i]);
        double c = (2.0 * (i + 1.0) - 1.0) / (2.0 * s.n);
        acc += (u - c) * (u - c);
    }
    CHECK(r.w2 == doctest::Approx(acc).epsilon(1e-12));
}

TEST_CASE("a worse theta scores worse on distance and p-value") {
    Sample s = risk_sample();
    auto good = gof_report(s, kThetaHat);
    auto bad = gof_report(s, 0.6);
    CHECK(bad.ks > good.ks);
    CHECK(bad.ks_pvalue < good.ks_pvalue);
    CHECK(bad.w2 > good.w2);
    CHECK(bad.a2 > good.a2);
}

TEST_CASE("plug-in plotting positions give a near-zero KS distance") {
    UnitTeissier d(1.0);
    const int n = 100;
    std::vector<double> xs;
    for (int i = 1; i <= n; ++i)
        xs.push_back(ut::quantile(d, (i - 0.5) / n));
    auto r = gof_report(Sample(xs), 1.0);
    CHECK(r.ks <= 0.5 / n + 1e-9);
    CHECK(r.ks_pvalue > 0.999);
}

TEST_CASE("pp_points pairs empirical and fitted probabilities") {
    UnitTeissier d(1.0);
    auto single = pp_points(Sample({ut::quantile(d, 0.5)}), 1.0);
    REQUIRE(single.size() == 1);
    CHECK(static_cast<double>(single[0].first) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(static_cast<double>(single[0].second) == doctest::Approx(0.5).epsilon(1e-9));

    auto pts = pp_points(risk_sample(), kThetaHat);
    REQUIRE(pts.size() == 73);
    double prev = -1.0;
    for (const auto& pr : pts) {
        double emp = pr.first, fitted = pr.second;
        CHECK(emp >= 0.0);
        CHECK(emp <= 1.0);
        CHECK(fitted >= 0.0);
        CHECK(fitted <= 1.0);
        CHECK(emp > prev);
        prev = emp;
    }
}

TEST_CASE("extreme observations raise the clamp warning but keep a2 finite") {
    auto r = gof_report(Sample({1e-300, 0.5}), 2.0);
    CHECK(r.clamp_warning);
    CHECK(std::isfinite(r.a2));
}

TEST_CASE("report validation") {
    CHECK_THROWS_AS(gof_report(Sample({0.5}), 1.0), std::domain_error);
    CHECK_THROWS_AS(gof_report(risk_sample(), 0.0), std::domain_error);
    CHECK_THROWS_AS(gof_report(risk_sample(), -2.0), std::domain_error);
}

TEST_CASE("json serialization round trips every field") {
    auto r = gof_report(risk_sample(), kThetaHat);
    auto j = nlohmann::json::parse(ut::to_json(r));
    CHECK(j["neg_loglik"].get<double>() == r.neg_loglik);
    CHECK(j["aic"].get<double>() == r.aic);
    CHECK(j["caic"].get<double>() == r.caic);
    CHECK(j["bic"].get<double>() == r.bic);
    CHECK(j["hqic"].get<double>() == r.hqic);
    CHECK(j["w2"].get<double>() == r.w2);
    CHECK(j["a2"].get<double>() == r.a2);
    CHECK(j["ks"].get<double>() == r.ks);
    CHECK(j["ks_pvalue"].get<double>() == r.ks_pvalue);
    CHECK(j["n"].get<std::int64_t>() == r.n);
    CHECK(j["k_params"].get<int>() == r.k_params);
    CHECK(j["clamp_warning"].get<bool>() == r.clamp_warning);
}

TEST_CASE("text rendering carries the headline numbers") {
    auto r = gof_report(risk_sample(), kThetaHat);
    auto txt = ut::to_text(r);
    CHECK(txt.find("KS") != std::string::npos);
    CHECK(txt.find("AIC") != std::string::npos);
    CHECK(txt.find("0.1033") != std::string::npos);
    CHECK(txt.find("-175.0794") != std::string::npos);
}
