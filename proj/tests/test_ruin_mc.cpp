#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ruinlab/ruin_mc.hpp"
#include "ruinlab/stats.hpp"

using namespace ruinlab;

namespace {

RiskParams params_with(double u, double c) {
    return make_risk_params(u, PremiumSpec::constant(c), 1.0, ClaimLaw::exponential(1.0));
}

const InvestmentModel kNoInvest = InvestmentModel::deterministic(0.0);

}  // namespace

TEST_CASE("huge initial capital never ruins at desk scale") {
    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.stop_at_ruin = true;
    const MonteCarloEstimate e =
        estimate_ruin(params_with(1e6, 1.2), kNoInvest, cfg, 50.0, 1000, 7);
    CHECK(e.estimate == 0.0);
    CHECK(e.ci_high < 0.01);
}

TEST_CASE("zero capital, zero premium: ruin iff a claim arrives") {
    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.stop_at_ruin = true;
    const double T = 1.0;
    const MonteCarloEstimate e =
        estimate_ruin(params_with(0.0, 0.0), kNoInvest, cfg, T, 10000, 8);
    const double expected = 1.0 - std::exp(-T);  // P(N_T >= 1)
    CHECK(e.ci_low <= expected);
    CHECK(expected <= e.ci_high);
}

TEST_CASE("classical ruin matches the Cramer-Lundberg closed form") {
    // Psi(u) = (1/(1+rho)) exp(-rho u / ((1+rho) mu)) for Exponential(mu)
    const double rho = 0.2, u = 5.0, mu = 1.0;
    SchemeConfig cfg;
    cfg.dt = 0.25;  // ruin can only happen at claim nodes, detection is exact
    cfg.stop_at_ruin = true;
    const MonteCarloEstimate e =
        estimate_ruin(params_with(u, (1.0 + rho) * mu), kNoInvest, cfg, 400.0, 10000, 9);
    const double psi = (1.0 / (1.0 + rho)) * std::exp(-rho * u / ((1.0 + rho) * mu));
    CHECK(e.ci_low <= psi);
    CHECK(psi <= e.ci_high);
}

TEST_CASE("MonteCarloEstimate invariants and CI shrinkage") {
    SchemeConfig cfg;
    cfg.dt = 0.25;
    cfg.stop_at_ruin = true;
    const MonteCarloEstimate small =
        estimate_ruin(params_with(5.0, 1.2), kNoInvest, cfg, 100.0, 400, 10);
    const MonteCarloEstimate big =
        estimate_ruin(params_with(5.0, 1.2), kNoInvest, cfg, 100.0, 6400, 10);
    for (const auto& e : {small, big}) {
        CHECK(e.ci_low >= 0.0);
        CHECK(e.ci_low <= e.estimate);
        CHECK(e.estimate <= e.ci_high);
        CHECK(e.ci_high <= 1.0);
    }
    // width ~ 1/sqrt(n): factor-16 more paths shrinks by ~4
    const double ratio = (small.ci_high - small.ci_low) / (big.ci_high - big.ci_low);
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);
    CHECK_THROWS(estimate_ruin(params_with(5.0, 1.2), kNoInvest, cfg, 100.0, 99, 10));
}

TEST_CASE("Wilson interval calibration on a synthetic Bernoulli") {
    const double p = 0.3;
    int covered = 0;
    for (int rep = 0; rep < 500; ++rep) {
        Rng rng(SeedSpec{500 + static_cast<std::uint64_t>(rep), 0}, Stream::generic);
        std::size_t hits = 0;
        for (int i = 0; i < 1000; ++i) hits += rng.uniform() < p;
        const Interval ci = wilson_interval(hits, 1000);
        covered += ci.low <= p && p <= ci.high;
    }
    CHECK(covered >= 465);  // >= 93% of 500
}

TEST_CASE("determinism across repeated evaluation") {
    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.stop_at_ruin = true;
    const auto a = estimate_ruin(params_with(5.0, 1.1), InvestmentModel::gbm(0.01, 0.2), cfg,
                                 50.0, 500, 77);
    const auto b = estimate_ruin(params_with(5.0, 1.1), InvestmentModel::gbm(0.01, 0.2), cfg,
                                 50.0, 500, 77);
    CHECK(a.estimate == b.estimate);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);
}

TEST_CASE("ruin frequency is monotone in capital and horizon") {
    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.stop_at_ruin = true;
    // shared seed: the sde_exact capital is increasing in u pathwise
    double prev = 1.1;
    for (const double u : {2.0, 5.0, 10.0, 20.0}) {
        const double f = estimate_ruin(params_with(u, 1.1), InvestmentModel::gbm(0.01, 0.2),
                                       cfg, 200.0, 2000, 21)
                             .estimate;
        CHECK(f <= prev);
        prev = f;
    }

    const CertainRuinReport report =
        certain_ruin_experiment(params_with(10.0, 1.1), InvestmentModel::gbm(0.01, 0.2), cfg,
                                {50.0, 100.0, 200.0, 400.0}, 2000, 22, nullptr, 50);
    for (std::size_t i = 1; i < report.frequencies.size(); ++i)
        CHECK(report.frequencies[i].estimate >= report.frequencies[i - 1].estimate);
    CHECK(report.regime == RuinRegime::certain);
    CHECK(report.claims_unbounded);
}

TEST_CASE("crossing the certain-ruin boundary raises the ruin frequency") {
    SchemeConfig cfg;
    cfg.dt = 0.05;
    cfg.stop_at_ruin = true;
    const double a = 0.02;  // boundary at sigma = 0.2
    double prev = -1.0;
    for (const double sigma : {0.15, 0.25, 0.35}) {
        const double f = estimate_ruin(params_with(10.0, 1.1), InvestmentModel::gbm(a, sigma),
                                       cfg, 500.0, 2000, 23)
                             .estimate;
        CHECK(f > prev);
        prev = f;
    }
    CHECK(InvestmentModel::gbm(a, 0.15).regime() == RuinRegime::not_certain);
    CHECK(InvestmentModel::gbm(a, 0.25).regime() == RuinRegime::certain);
}

TEST_CASE("deterministic positive drift keeps ruin incomplete and flat") {
    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.stop_at_ruin = true;
    const CertainRuinReport report = certain_ruin_experiment(
        params_with(20.0, 1.2), InvestmentModel::deterministic(0.02), cfg,
        {100.0, 200.0, 400.0}, 2000, 24, nullptr, 50);
    CHECK(report.regime == RuinRegime::not_certain);
    const double last = report.frequencies.back().estimate;
    CHECK(last < 0.5);
    // roughly flat: the ladder gains little once compounding dominates
    CHECK(last - report.frequencies.front().estimate < 0.05);
}

TEST_CASE("a variant identical to the base reproduces the base report") {
    SchemeConfig cfg;
    cfg.dt = 0.1;
    cfg.stop_at_ruin = true;
    const RiskParams params = params_with(5.0, 1.1);
    const InvestmentModel inv = InvestmentModel::gbm(0.01, 0.2);
    const std::vector<double> ladder = {50.0, 100.0};
    const CertainRuinReport base =
        certain_ruin_experiment(params, inv, cfg, ladder, 500, 25, nullptr, 50);
    CorollaryVariant noop;
    noop.name = "base";
    const auto cases = corollary_matrix(params, inv, cfg, ladder, {noop}, 500, 25);
    REQUIRE(cases.size() == 1);
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        CHECK(cases[0].report.frequencies[i].estimate == base.frequencies[i].estimate);
        CHECK(cases[0].report.frequencies[i].ci_low == base.frequencies[i].ci_low);
    }
}

TEST_CASE("pure-diffusion ruin matches the closed form") {
    // drift rho lambda mu = 0.1, variance rate lambda m = 2
    const double expected = std::exp(-2.0 * 0.1 * 2.0 / 2.0);  // u = 2
    const MonteCarloEstimate e = diffusion_ruin_mc(2.0, 0.1, 2.0, 2000.0, 0.5, 20000, 26);
    CHECK(std::abs(e.estimate - expected) < 0.015);
}
