#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ruinlab/stats.hpp"

namespace ruinlab {

// Below this t the oscillatory integral loses all relative accuracy in
// double precision (the e^{pi^2/(2t)} prefactor amplifies cancellation);
// the evaluator refuses rather than return noise. Use the Monte Carlo
// oracle in that regime.
inline constexpr double kThetaMinTime = 0.25;

struct ThetaEval {
    double value = 0.0;
    double error = 0.0;  // quadrature + cancellation estimate, same scale as value
};

// Hartman-Watson kernel
//   theta_r(t) = r e^{pi^2/(2t)} / sqrt(2 pi^3 t)
//                * int_0^inf e^{-y^2/(2t)} e^{-r cosh y} sinh y sin(pi y/t) dy
// evaluated by 32-point Gauss-Legendre on each half-period [k t, (k+1) t]
// of the sine (subdivisions panels per half-period), compensated summation
// of the alternating half-period terms, truncation once the cosh damping
// makes the contributions negligible.
ThetaEval theta(double r, double t, std::size_t subdivisions = 1);

// Conditional density a_t(x,u) of A_t = int_0^t e^{2 B_s} ds given B_t = x.
double yor_density(double t, double x, double u);

// Density at u of int_0^t e^{2(sigma B_s + alpha s)} ds given
// sigma B_t + alpha t = x. Equals sigma^2 a_{sigma^2 t}(x, sigma^2 u);
// the drift alpha drops out once the terminal value is pinned (Girsanov
// tilts only the terminal law). The scaling convention is pinned by the
// Monte Carlo oracle tests.
double yor_density_scaled(double sigma, double alpha, double t, double x, double u);

// int f(u) a_t(x,u) du over u in [u_lo, u_hi], log-spaced composite
// Gauss-Legendre with panel doubling until the relative change is below
// tol. f == nullptr integrates the density itself.
double yor_integral(double t, double x, double u_lo, double u_hi,
                    const std::function<double(double)>& f = nullptr,
                    double tol = 1e-8);

// Normalization defect |int a_t(x,u) du - 1| over the standard window.
double yor_normalization(double t, double x);

// E[A_t | B_t = x] from the density.
double yor_conditional_mean(double t, double x);

// Independent closed form for E[A_t | B_t = x] via the Brownian bridge:
// int_0^t exp(2 s x / t + 2 s (t - s) / t) ds (test oracle).
double bridge_conditional_mean(double t, double x);

struct YorDensityGrid {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> u;              // log-spaced
    std::vector<double> values;         // row-major [x][u]
    std::vector<double> defect;         // per-x normalization defect
};

YorDensityGrid make_yor_grid(double t, std::vector<double> x_grid, std::vector<double> u_grid);

// Trapezoid discretization of (A^{(alpha)}_{sigma^2 t}, sigma B_t + alpha t);
// calls sink once per path with (functional, terminal exponent).
void mc_oracle_joint_samples(double sigma, double alpha, double t, std::size_t n_paths,
                             double dt, std::uint64_t master_seed,
                             const std::function<void(double, double)>& sink);

// Binned joint law of (A, sigma B_t + alpha t).
Histogram2D mc_oracle_joint(double sigma, double alpha, double t, std::size_t n_paths,
                            double dt, std::uint64_t master_seed, double a_lo, double a_hi,
                            std::size_t a_bins, double b_lo, double b_hi, std::size_t b_bins);

}  // namespace ruinlab
