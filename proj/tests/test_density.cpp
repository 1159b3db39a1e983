#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ruinlab/csvio.hpp"
#include "ruinlab/density.hpp"
#include "ruinlab/specfun.hpp"
#include "ruinlab/stats.hpp"

using namespace ruinlab;

namespace {

DiffusionRiskParams standard_params(double u = 2.0) {
    // sigma = 1, alpha = -0.1, drift rho lambda mu = 0.1, var rate lambda m = 1
    return make_diffusion_params(u, 0.1, 1.0, 1.0, 1.0, 1.0, -0.1);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    return v;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_diffusion_params(2.0, 0.1, 0.0, 1.0, 1.0, 1.0, -0.1),
                    std::domain_error);
    CHECK_THROWS_AS(make_diffusion_params(2.0, 0.1, 1.0, 1.0, 1.0, 0.0, -0.1),
                    std::domain_error);
    CHECK_THROWS_AS(make_diffusion_params(2.0, -0.1, 1.0, 1.0, 1.0, 1.0, -0.1),
                    std::domain_error);
    const DiffusionRiskParams p = standard_params();
    CHECK(p.drift() == doctest::Approx(0.1));
    CHECK(p.var_rate() == doctest::Approx(1.0));
}

TEST_CASE("small sigma^2 t delegates to the oracle by refusing") {
    const DiffusionRiskParams p = make_diffusion_params(2.0, 0.1, 1.0, 1.0, 1.0, 0.3, -0.1);
    // sigma^2 t = 0.09 < 0.25
    CHECK_THROWS_AS(transition_density(p, 1.0, 2.0, 0.0), std::domain_error);
}

TEST_CASE("grid mass is close to one in the oracle-validated convention") {
    const DiffusionRiskParams p = standard_params(10.0);
    const TransitionDensityGrid grid = make_density_grid(
        p, 1.0, linspace(10.0 + 0.3 - 14.0, 10.0 + 0.3 + 14.0, 24), linspace(-5.1, 4.9, 20));
    CHECK(grid.total_mass > 0.98);
    CHECK(grid.total_mass < 1.02);
    for (const double m : grid.cell_mass) CHECK(m >= 0.0);
}

TEST_CASE("printed kernel documents its mass defect") {
    // the literal kernel integrates to 1/sqrt(2) in z, so the grid cannot
    // normalize; this is the recorded discrepancy, not a bug
    const DiffusionRiskParams p = standard_params(10.0);
    const TransitionDensityGrid grid =
        make_density_grid(p, 1.0, linspace(-4.0, 24.0, 16), linspace(-5.0, 5.0, 12),
                          KernelConvention::printed_form);
    CHECK(grid.total_mass < 0.80);
    CHECK(grid.total_mass > 0.60);
}

TEST_CASE("x-marginal reproduces the Gaussian factor") {
    const DiffusionRiskParams p = standard_params(5.0);
    const double t = 1.0;
    const std::vector<double> x_edges = linspace(-3.1, 2.9, 12);
    const TransitionDensityGrid grid =
        make_density_grid(p, t, linspace(5.1 - 14.0, 5.1 + 14.0, 20), x_edges);
    const std::size_t nx = x_edges.size() - 1;
    const std::size_t nz = grid.z_edges.size() - 1;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        double col = 0.0;
        for (std::size_t iz = 0; iz < nz; ++iz) col += grid.cell_mass[iz * nx + ix];
        const double sd = p.sigma * std::sqrt(t);
        const double expected = norm_cdf((x_edges[ix + 1] - p.alpha * t) / sd) -
                                norm_cdf((x_edges[ix] - p.alpha * t) / sd);
        CHECK(col == doctest::Approx(expected).epsilon(0.02));
    }
}

TEST_CASE("pointwise density is consistent with cell masses") {
    const DiffusionRiskParams p = standard_params();
    const double t = 1.0, z = 2.0, x = -0.1;
    const double val = transition_density(p, t, z, x);
    CHECK(val > 0.0);
    // integrate the pointwise density over a small cell and compare
    const double hz = 0.05, hx = 0.05;
    double cell = 0.0;
    for (const double dz : {-hz / 2.0, hz / 2.0})
        for (const double dx : {-hx / 2.0, hx / 2.0})
            cell += 0.25 * transition_density(p, t, z + dz, x + dx);
    const TransitionDensityGrid grid = make_density_grid(
        p, t, {z - hz / 2.0, z + hz / 2.0}, {x - hx / 2.0, x + hx / 2.0});
    CHECK(grid.total_mass == doctest::Approx(cell * hz * hx).epsilon(0.01));
}

TEST_CASE("ruin probability at a review date") {
    // far-from-ruin capital
    const DiffusionRiskParams far = standard_params(20.0 * std::sqrt(1.0) + 0.1);
    CHECK(ruin_probability_at(far, 1.0) < 1e-3);

    // monotone decreasing in u
    double prev = 1.1;
    for (const double u : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double p = ruin_probability_at(standard_params(u), 1.0);
        CHECK(p < prev);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
    }
}

TEST_CASE("ruin probability equals the z <= 0 grid mass") {
    const DiffusionRiskParams p = standard_params();
    const double t = 1.0;
    // grid whose z-cells cover (-30, 0] exactly at the ruin boundary
    const TransitionDensityGrid grid =
        make_density_grid(p, t, linspace(-30.0, 0.0, 30), linspace(-8.1, 7.9, 32));
    const double direct = ruin_probability_at(p, t);
    double err = 0.0;
    for (const double e : grid.cell_err) err += e;
    CHECK(std::abs(grid.total_mass - direct) < err + 2e-3);
}

TEST_CASE("MC oracle collapses to a Gaussian when sigma vanishes") {
    const DiffusionRiskParams p = make_diffusion_params(2.0, 0.1, 1.0, 1.0, 1.0, 1e-8, 0.0);
    const double t = 1.0;
    std::vector<double> z;
    z.reserve(10000);
    mc_density_oracle_samples(p, t, 10000, 1e-3, 404, OracleRoute::time_change,
                              [&](double zz, double) { z.push_back(zz); });
    std::sort(z.begin(), z.end());
    std::vector<double> cdf(z.size());
    const double mean = 2.0 + p.drift() * t;
    const double sd = std::sqrt(p.var_rate() * t);
    for (std::size_t i = 0; i < z.size(); ++i)
        cdf[i] = norm_cdf((z[i] - mean) / sd);
    CHECK(ks_test_pvalue(cdf) > 0.001);
}

TEST_CASE("both oracle routes accrue the expected mean") {
    const DiffusionRiskParams p = standard_params();
    const double t = 1.0;
    const double rate2 = 2.0 * p.alpha + 2.0 * p.sigma * p.sigma;  // E e^{2 theta_s}
    const double rate1 = p.alpha + 0.5 * p.sigma * p.sigma;        // E e^{theta_s}
    const double ea = (std::exp(rate2 * t) - 1.0) / rate2;
    const double ei = (std::exp(rate1 * t) - 1.0) / rate1;
    RunningStat tc, si;
    mc_density_oracle_samples(p, t, 200000, 1e-3, 405, OracleRoute::time_change,
                              [&](double z, double) { tc.add(z); });
    mc_density_oracle_samples(p, t, 200000, 1e-3, 406, OracleRoute::stochastic_integral,
                              [&](double z, double) { si.add(z); });
    CHECK(std::abs(tc.mean() - (2.0 + p.drift() * ea)) < 3.0 * tc.stderr_mean());
    CHECK(std::abs(si.mean() - (2.0 + p.drift() * ei)) < 3.0 * si.stderr_mean());
}

TEST_CASE("CF discrepancy is exact at the origin and shrinks with n") {
    const DiffusionRiskParams p = standard_params();
    const double at_origin = cf_crosscheck(p, 1.0, {0.0}, {0.0}, 20000, 1e-3, 407);
    CHECK(at_origin < 5e-3);  // both CFs are 1 up to quadrature defect

    const double coarse = cf_crosscheck(p, 1.0, {0.0, 1.0}, {0.0, 1.0}, 5000, 2e-3, 408);
    const double fine = cf_crosscheck(p, 1.0, {0.0, 1.0}, {0.0, 1.0}, 50000, 2e-3, 408);
    CHECK(fine < coarse + 5e-3);  // stochastic error dominates
}

TEST_CASE("grid round-trips through CSV and the binary tabulation") {
    const DiffusionRiskParams p = standard_params();
    const TransitionDensityGrid grid =
        make_density_grid(p, 1.0, linspace(-6.0, 10.0, 8), linspace(-3.0, 3.0, 6));
    const std::string bin = "density_roundtrip.bin";
    write_density_grid_binary(grid, bin);
    const TransitionDensityGrid back = read_density_grid_binary(bin);
    CHECK(back.t == grid.t);
    CHECK(back.z_edges == grid.z_edges);
    CHECK(back.x_edges == grid.x_edges);
    CHECK(back.cell_mass == grid.cell_mass);
    CHECK(back.cell_err == grid.cell_err);
    CHECK(back.total_mass == grid.total_mass);
    std::remove(bin.c_str());

    const YorDensityGrid yg = make_yor_grid(1.0, {0.0, 1.0}, {0.5, 1.0, 2.0});
    const std::string ybin = "yor_roundtrip.bin";
    write_yor_grid_binary(yg, ybin);
    const YorDensityGrid yback = read_yor_grid_binary(ybin);
    CHECK(yback.values == yg.values);
    CHECK(yback.defect == yg.defect);
    std::remove(ybin.c_str());
}

TEST_CASE("format_double round-trips") {
    for (const double v : {0.1, 1.0 / 3.0, 1e-300, 12345.6789, -0.0, 2.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}
