#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "ruinlab/stats.hpp"
#include "ruinlab/yor.hpp"

using namespace ruinlab;

TEST_CASE("theta domain and refusal") {
    CHECK_THROWS_AS(theta(1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(theta(0.0, 1.0), std::domain_error);
    CHECK_NOTHROW(theta(1.0, kThetaMinTime));
}

TEST_CASE("theta is crushed for large r") {
    const ThetaEval e = theta(50.0, 1.0);
    CHECK(std::abs(e.value) < 1e-15);
}

TEST_CASE("theta is nonnegative within its error estimate and vanishes far in r") {
    // theta_r(t) is not monotone in r (for small t the peak sits at large
    // r), but it is nonnegative and the e^{-r cosh y} damping eventually
    // beats the e^{pi^2/(2t)} prefactor
    for (const double t : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (const double r : {0.05, 0.2, 1.0, 5.0, 20.0}) {
            const ThetaEval e = theta(r, t);
            CHECK(e.value >= -e.error);
        }
        CHECK(theta(120.0, t).value < 1e-10);
    }
}

TEST_CASE("doubling the subdivision stays within the reported error") {
    for (const double t : {0.3, 0.7, 1.5, 4.0})
        for (const double r : {0.1, 0.8, 3.0}) {
            const ThetaEval coarse = theta(r, t, 1);
            const ThetaEval fine = theta(r, t, 2);
            // both error estimates plus rounding slack: the compensated sum
            // itself carries a few ulps of noise at the e^{pi^2/(2t)} scale
            CHECK(std::abs(fine.value - coarse.value) <=
                  coarse.error + fine.error + 1e-12 * std::abs(coarse.value) + 1e-15);
        }
}

TEST_CASE("yor density vanishes at the essential singularity") {
    CHECK(yor_density(1.0, 0.0, 1e-4) < 1e-10);
    CHECK_THROWS_AS(yor_density(1.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("yor density normalizes") {
    CHECK(yor_normalization(1.0, 0.0) < 0.01);
    for (const double t : {0.5, 1.0, 4.0})
        for (const double x : {-2.0, -0.5, 1.0, 2.0}) CHECK(yor_normalization(t, x) < 0.01);
}

TEST_CASE("conditional mean matches the Brownian-bridge closed form") {
    for (const auto& [t, x] : std::vector<std::pair<double, double>>{
             {1.0, 0.0}, {2.0, 1.0}, {0.5, -1.0}, {1.0, 1.5}}) {
        const double quad = yor_conditional_mean(t, x);
        const double closed = bridge_conditional_mean(t, x);
        CHECK(quad == doctest::Approx(closed).epsilon(0.03));
    }
}

TEST_CASE("scaled density: sigma = 1 is the identity, alpha drops out") {
    for (const double u : {0.3, 1.0, 3.0}) {
        const double base = yor_density(1.0, 0.5, u);
        CHECK(yor_density_scaled(1.0, 0.0, 1.0, 0.5, u) == base);
        CHECK(yor_density_scaled(1.0, -0.2, 1.0, 0.5, u) == base);
        CHECK(yor_density_scaled(1.0, 0.2, 1.0, 0.5, u) == base);
    }
    CHECK_THROWS_AS(yor_density_scaled(0.0, 0.0, 1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("scaled density normalizes for sigma != 1") {
    // integrate sigma^2 a_{sigma^2 t}(x, sigma^2 u) du by substitution
    const double sigma = 0.7, t = 2.0, x = 0.3;
    const double s2 = sigma * sigma;
    const double defect = yor_normalization(s2 * t, x);
    CHECK(defect < 0.01);
}

TEST_CASE("scaled conditional mean agrees with the MC oracle at sigma = 0.5") {
    const double sigma = 0.5, t = 1.0, x = 0.2, delta = 0.05;
    // E[A | sigma B_t = x] from the density
    const double s2 = sigma * sigma;
    const double mean_scaled = yor_conditional_mean(s2 * t, x) / s2;
    RunningStat cond;
    mc_oracle_joint_samples(sigma, 0.0, t, 200000, 1e-3, 314,
                            [&](double a, double b) {
                                if (std::abs(b - x) < delta) cond.add(a);
                            });
    REQUIRE(cond.count() > 1000);
    CHECK(std::abs(cond.mean() - mean_scaled) <
          0.05 * mean_scaled + 3.0 * cond.stderr_mean());
}

TEST_CASE("MC oracle: deterministic limit as sigma vanishes") {
    const double t = 1.0;
    std::size_t in_bin = 0;
    mc_oracle_joint_samples(1e-8, 0.0, t, 10000, 1e-3, 99, [&](double a, double) {
        if (std::abs(a - t) < 0.01) ++in_bin;
    });
    CHECK(static_cast<double>(in_bin) / 10000.0 > 0.999);
}

TEST_CASE("MC oracle mean of the functional") {
    const double t = 1.0;
    RunningStat stat;
    mc_oracle_joint_samples(1.0, 0.0, t, 100000, 1e-3, 123,
                            [&](double a, double) { stat.add(a); });
    const double expected = (std::exp(2.0 * t) - 1.0) / 2.0;  // int e^{2s} ds
    CHECK(std::abs(stat.mean() - expected) < 3.0 * stat.stderr_mean());
}

TEST_CASE("MC oracle: terminal exponent is Gaussian") {
    const double sigma = 0.8, alpha = 0.2, t = 2.0;
    std::vector<double> samples;
    samples.reserve(100000);
    mc_oracle_joint_samples(sigma, alpha, t, 100000, 1e-2, 321,
                            [&](double, double b) { samples.push_back(b); });
    std::sort(samples.begin(), samples.end());
    std::vector<double> cdf(samples.size());
    const double sd = sigma * std::sqrt(t);
    for (std::size_t i = 0; i < samples.size(); ++i)
        cdf[i] = 0.5 * std::erfc(-(samples[i] - alpha * t) / (sd * std::sqrt(2.0)));
    CHECK(ks_test_pvalue(cdf) > 0.001);
}

TEST_CASE("grid construction and defects") {
    const YorDensityGrid grid = make_yor_grid(1.0, {-1.0, 0.0, 1.0},
                                              {0.1, 0.3, 1.0, 3.0, 10.0});
    REQUIRE(grid.values.size() == 15);
    REQUIRE(grid.defect.size() == 3);
    for (const double v : grid.values) CHECK(v >= 0.0);
    for (const double d : grid.defect) CHECK(d < 0.01);
}
