#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ruinlab/processes.hpp"
#include "ruinlab/stats.hpp"

using namespace ruinlab;

TEST_CASE("deterministic schedules truncate at the horizon") {
    Rng rng(SeedSpec{1, 0}, Stream::claim_arrivals);
    const auto none = CountingProcess::schedule({}).sample_arrivals(10.0, rng);
    CHECK(none.empty());
    const auto some = CountingProcess::schedule({1.0, 2.0, 3.0}).sample_arrivals(2.5, rng);
    REQUIRE(some.size() == 2);
    CHECK(some[0] == 1.0);
    CHECK(some[1] == 2.0);
}

TEST_CASE("Poisson counts have the right mean") {
    const CountingProcess proc = CountingProcess::poisson(2.0);
    double total = 0.0;
    const int streams = 200;
    for (int i = 0; i < streams; ++i) {
        Rng rng(SeedSpec{42, static_cast<std::uint64_t>(i)}, Stream::claim_arrivals);
        const auto arrivals = proc.sample_arrivals(1000.0, rng);
        for (std::size_t k = 1; k < arrivals.size(); ++k)
            CHECK(arrivals[k] > arrivals[k - 1]);
        total += static_cast<double>(arrivals.size());
    }
    const double mean = total / streams;
    CHECK(std::abs(mean - 2000.0) < 3.0 * std::sqrt(2000.0 / streams));
}

TEST_CASE("Poisson superposition") {
    // two independent rate-1 streams merged vs the Poisson(2) count law
    Histogram1D counts(0.0, 12.0, 12);
    std::vector<std::size_t> observed(13, 0);
    const CountingProcess half = CountingProcess::poisson(1.0);
    for (int i = 0; i < 10000; ++i) {
        Rng a(SeedSpec{77, static_cast<std::uint64_t>(i)}, Stream::claim_arrivals);
        Rng b(SeedSpec{78, static_cast<std::uint64_t>(i)}, Stream::claim_arrivals);
        const std::size_t n =
            half.sample_arrivals(1.0, a).size() + half.sample_arrivals(1.0, b).size();
        ++observed[std::min<std::size_t>(n, 12)];
    }
    std::vector<double> expected(13);
    double pmf = std::exp(-2.0);
    double tail = 1.0;
    for (int k = 0; k < 12; ++k) {
        expected[k] = pmf;
        tail -= pmf;
        pmf *= 2.0 / (k + 1);
    }
    expected[12] = tail;
    CHECK(chi_square_gof_pvalue(observed, expected) > 0.001);
}

TEST_CASE("renewal arrivals are strictly increasing") {
    const CountingProcess proc = CountingProcess::renewal(ClaimLaw::log_normal(0.0, 0.5));
    Rng rng(SeedSpec{3, 0}, Stream::claim_arrivals);
    const auto arrivals = proc.sample_arrivals(200.0, rng);
    CHECK(arrivals.size() > 50);
    for (std::size_t k = 1; k < arrivals.size(); ++k) CHECK(arrivals[k] > arrivals[k - 1]);
    CHECK(arrivals.back() <= 200.0);
}

TEST_CASE("Brownian grid: deterministic drift when sigma is zero") {
    const std::vector<double> grid = uniform_grid(2.0, 0.25);
    Rng rng(SeedSpec{5, 0}, Stream::brownian);
    const auto path = sample_brownian_grid(0.0, 0.3, grid, rng);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(path[i] == doctest::Approx(0.3 * grid[i]).epsilon(1e-15));
}

TEST_CASE("Brownian terminal variance") {
    const std::vector<double> grid = {0.0, 3.0};
    RunningStat stat;
    for (int i = 0; i < 100000; ++i) {
        Rng rng(SeedSpec{99, static_cast<std::uint64_t>(i)}, Stream::brownian);
        stat.add(sample_brownian_grid(1.0, 0.0, grid, rng).back());
    }
    CHECK(std::abs(stat.mean()) < 3.0 * stat.stderr_mean());
    CHECK(stat.variance() == doctest::Approx(3.0).epsilon(0.03));
}

TEST_CASE("Brownian scaling in sigma is bit-exact") {
    const std::vector<double> grid = uniform_grid(5.0, 0.5);
    Rng r1(SeedSpec{8, 3}, Stream::brownian);
    Rng r2(SeedSpec{8, 3}, Stream::brownian);
    const auto unit = sample_brownian_grid(1.0, 0.0, grid, r1);
    const auto scaled = sample_brownian_grid(2.5, 0.0, grid, r2);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(scaled[i] == 2.5 * unit[i]);
}

TEST_CASE("bridge refinement preserves coarse nodes exactly") {
    const std::vector<double> grid = uniform_grid(1.0, 0.125);
    Rng rng(SeedSpec{12, 0}, Stream::brownian);
    const auto coarse = sample_standard_path(grid, rng);
    const auto [fine_grid, fine] = bridge_refine(grid, coarse, rng);
    REQUIRE(fine_grid.size() == 2 * grid.size() - 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(fine_grid[2 * i] == grid[i]);
        CHECK(fine[2 * i] == coarse[i]);
    }
}

TEST_CASE("reproducibility: same stream, same path") {
    const std::vector<double> grid = uniform_grid(1.0, 0.01);
    Rng a(SeedSpec{123, 45}, Stream::brownian);
    Rng b(SeedSpec{123, 45}, Stream::brownian);
    const auto p1 = sample_brownian_grid(1.0, 0.1, grid, a);
    const auto p2 = sample_brownian_grid(1.0, 0.1, grid, b);
    CHECK(p1 == p2);
    Rng c(SeedSpec{123, 46}, Stream::brownian);
    CHECK(sample_brownian_grid(1.0, 0.1, grid, c) != p1);
}

TEST_CASE("Levy grid with zero intensity reduces to the Brownian grid") {
    const std::vector<double> grid = uniform_grid(2.0, 0.1);
    LevyJumpSpec none;
    Rng jt(SeedSpec{9, 0}, Stream::levy_jump_times);
    Rng js(SeedSpec{9, 0}, Stream::levy_jump_sizes);
    Rng br(SeedSpec{9, 0}, Stream::brownian);
    const auto levy = sample_levy_grid(none, 0.7, -0.05, grid, jt, js, br);
    Rng br2(SeedSpec{9, 0}, Stream::brownian);
    const auto gbm = sample_brownian_grid(0.7, -0.05, grid, br2);
    CHECK(levy.grid == grid);
    CHECK(levy.values == gbm);
    CHECK(levy.jumps.empty());
}

TEST_CASE("compensated jumps are mean zero") {
    LevyJumpSpec spec;
    spec.intensity = 1.0;
    spec.size_law = ClaimLaw::exponential(0.5);
    const std::vector<double> grid = {0.0, 1.0};
    RunningStat stat;
    for (int i = 0; i < 100000; ++i) {
        const SeedSpec seed{31, static_cast<std::uint64_t>(i)};
        Rng jt(seed, Stream::levy_jump_times);
        Rng js(seed, Stream::levy_jump_sizes);
        Rng br(seed, Stream::brownian);
        // sigma = 1, alpha = 0: terminal value is L_1 itself
        stat.add(sample_levy_grid(spec, 1.0, 0.0, grid, jt, js, br).values.back());
    }
    CHECK(std::abs(stat.mean()) < 3.0 * stat.stderr_mean());
}

TEST_CASE("SLLN: L_t / t vanishes at long horizons") {
    LevyJumpSpec spec;
    spec.intensity = 1.0;
    spec.size_law = ClaimLaw::exponential(0.5);
    const std::vector<double> grid = {0.0, 500.0};
    RunningStat stat;
    for (int i = 0; i < 1000; ++i) {
        const SeedSpec seed{32, static_cast<std::uint64_t>(i)};
        Rng jt(seed, Stream::levy_jump_times);
        Rng js(seed, Stream::levy_jump_sizes);
        Rng br(seed, Stream::brownian);
        stat.add(sample_levy_grid(spec, 1.0, 0.0, grid, jt, js, br).values.back() / 500.0);
    }
    CHECK(std::abs(stat.mean()) < 0.05);
}

TEST_CASE("grid helpers") {
    const auto g = uniform_grid(1.0, 0.3);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

    const auto merged = merge_grid({0.0, 1.0, 2.0}, {0.5, 1.0, 1.5});
    CHECK(merged == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
}
