#include "ruinlab/density.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ruinlab/rng.hpp"
#include "ruinlab/specfun.hpp"
#include "ruinlab/yor.hpp"

namespace ruinlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Tabulated conditional density of the exponential functional
// A = int_0^t e^{2(sigma B_s + alpha s)} ds given sigma B_t + alpha t = x,
// with log-axis Gauss-Legendre weights ready for mixture integrals.
struct ConditionalSlice {
    std::vector<double> y;
    std::vector<double> w;  // quadrature weight including the Jacobian
    std::vector<double> f;  // density value at y
    double mass = 0.0;      // should be 1 up to the window defect
};

ConditionalSlice make_slice(double sigma, double t, double x, std::size_t panels = 48) {
    const double s2 = sigma * sigma;
    // window of the unit-parameter functional, mapped through u = s2 * y
    const double scale = s2 * t * std::exp(x);
    const double u_lo = 1e-4 * std::min(scale, s2 * t);
    const double u_hi = 1e4 * std::max(scale, s2 * t);
    const double v_lo = std::log(u_lo / s2), v_hi = std::log(u_hi / s2);

    static const QuadratureRule rule = gauss_legendre(8);
    ConditionalSlice slice;
    const std::size_t n = panels * rule.nodes.size();
    slice.y.reserve(n);
    slice.w.reserve(n);
    slice.f.reserve(n);
    const double width = (v_hi - v_lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = v_lo + width * (static_cast<double>(p) + 0.5);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double v = mid + 0.5 * width * rule.nodes[i];
            const double y = std::exp(v);
            const double w = 0.5 * width * rule.weights[i] * y;  // dy = y dv
            const double f = yor_density_scaled(sigma, 0.0, t, x, y);
            slice.y.push_back(y);
            slice.w.push_back(w);
            slice.f.push_back(f);
            slice.mass += w * f;
        }
    }
    return slice;
}

double x_prefactor(const DiffusionRiskParams& params, double t, double x,
                   KernelConvention convention) {
    const double sd = params.sigma * std::sqrt(t);
    const double center = convention == KernelConvention::time_changed ? params.alpha * t : 0.0;
    return norm_pdf((x - center) / sd) / sd;
}

}  // namespace

DiffusionRiskParams make_diffusion_params(double u, double rho, double lambda, double mu,
                                          double m, double sigma, double alpha) {
    if (!(lambda > 0.0) || !(mu > 0.0) || !(m > 0.0))
        throw std::domain_error("make_diffusion_params: lambda, mu, m must be positive");
    if (!(sigma > 0.0))
        throw std::domain_error("make_diffusion_params: sigma must be positive");
    if (rho < 0.0) throw std::domain_error("make_diffusion_params: negative loading");
    return DiffusionRiskParams{u, rho, lambda, mu, m, sigma, alpha};
}

double transition_density(const DiffusionRiskParams& params, double t, double z, double x,
                          KernelConvention convention) {
    const ConditionalSlice slice = make_slice(params.sigma, t, x);
    const double drift = params.drift();
    const double var = params.var_rate();
    double integral = 0.0;
    if (convention == KernelConvention::time_changed) {
        for (std::size_t j = 0; j < slice.y.size(); ++j) {
            const double s = std::sqrt(var * slice.y[j]);
            integral += slice.w[j] * slice.f[j] *
                        norm_pdf((z - params.initial_capital - drift * slice.y[j]) / s) / s;
        }
    } else {
        // literal printed kernel; note the z-integral of the kernel is
        // 1/sqrt(2), so this density does not normalize
        const double lm = params.lambda * params.mu;
        const double s2t = params.sigma * params.sigma * t;
        for (std::size_t j = 0; j < slice.y.size(); ++j) {
            const double y = slice.y[j];
            const double d = z - drift * t - params.initial_capital;
            const double kernel =
                std::exp(-d * d / (lm * y * y)) / std::sqrt(2.0 * kPi * lm * y * y);
            // the printed formula pairs the kernel with a_{sigma^2 t}(x, y)
            const double a = yor_density(s2t, x, y);
            integral += slice.w[j] * a * kernel;
        }
    }
    return x_prefactor(params, t, x, convention) * integral;
}

TransitionDensityGrid make_density_grid(const DiffusionRiskParams& params, double t,
                                        const std::vector<double>& z_edges,
                                        const std::vector<double>& x_edges,
                                        KernelConvention convention) {
    if (z_edges.size() < 2 || x_edges.size() < 2)
        throw std::invalid_argument("make_density_grid: need at least one cell");
    TransitionDensityGrid grid;
    grid.t = t;
    grid.z_edges = z_edges;
    grid.x_edges = x_edges;
    grid.convention = convention;
    const std::size_t nz = z_edges.size() - 1;
    const std::size_t nx = x_edges.size() - 1;
    grid.cell_mass.assign(nz * nx, 0.0);
    grid.cell_err.assign(nz * nx, 0.0);

    static const QuadratureRule xrule = gauss_legendre(3);
    const double drift = params.drift();
    const double var = params.var_rate();
    const double lm = params.lambda * params.mu;
    const double s2t = params.sigma * params.sigma * t;

    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double xa = x_edges[ix], xb = x_edges[ix + 1];
        const double half = 0.5 * (xb - xa);
        for (std::size_t q = 0; q < xrule.nodes.size(); ++q) {
            const double x = 0.5 * (xa + xb) + half * xrule.nodes[q];
            const double wx = half * xrule.weights[q];
            const ConditionalSlice slice = make_slice(params.sigma, t, x);
            const double pre = x_prefactor(params, t, x, convention);
            const double defect = std::abs(slice.mass - 1.0);
            for (std::size_t iz = 0; iz < nz; ++iz) {
                const double za = z_edges[iz], zb = z_edges[iz + 1];
                double mass = 0.0;
                for (std::size_t j = 0; j < slice.y.size(); ++j) {
                    const double y = slice.y[j];
                    double dphi, weight;
                    if (convention == KernelConvention::time_changed) {
                        const double mean = params.initial_capital + drift * y;
                        const double s = std::sqrt(var * y);
                        dphi = norm_cdf((zb - mean) / s) - norm_cdf((za - mean) / s);
                        weight = slice.f[j];
                    } else {
                        const double mean = params.initial_capital + drift * t;
                        const double s = y * std::sqrt(0.5 * lm);
                        dphi = (norm_cdf((zb - mean) / s) - norm_cdf((za - mean) / s)) /
                               std::sqrt(2.0);
                        weight = yor_density(s2t, x, y);
                    }
                    mass += slice.w[j] * weight * dphi;
                }
                grid.cell_mass[iz * nx + ix] += wx * pre * mass;
                grid.cell_err[iz * nx + ix] += wx * pre * mass * defect;
            }
        }
    }
    for (double m : grid.cell_mass) grid.total_mass += m;
    return grid;
}

double ruin_probability_at(const DiffusionRiskParams& params, double t,
                           KernelConvention convention) {
    const double sd = params.sigma * std::sqrt(t);
    const double x_lo = params.alpha * t - 8.0 * sd;
    const double x_hi = params.alpha * t + 8.0 * sd;
    static const QuadratureRule rule = gauss_legendre(8);
    const std::size_t panels = 24;
    const double width = (x_hi - x_lo) / static_cast<double>(panels);
    const double drift = params.drift();
    const double var = params.var_rate();
    const double lm = params.lambda * params.mu;
    const double s2t = params.sigma * params.sigma * t;

    double prob = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = x_lo + width * (static_cast<double>(p) + 0.5);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = mid + 0.5 * width * rule.nodes[q];
            const double wx = 0.5 * width * rule.weights[q];
            const ConditionalSlice slice = make_slice(params.sigma, t, x);
            double inner = 0.0;
            for (std::size_t j = 0; j < slice.y.size(); ++j) {
                const double y = slice.y[j];
                if (convention == KernelConvention::time_changed) {
                    const double mean = params.initial_capital + drift * y;
                    inner += slice.w[j] * slice.f[j] * norm_cdf(-mean / std::sqrt(var * y));
                } else {
                    const double mean = params.initial_capital + drift * t;
                    inner += slice.w[j] * yor_density(s2t, x, y) *
                             norm_cdf(-mean / (y * std::sqrt(0.5 * lm))) / std::sqrt(2.0);
                }
            }
            prob += wx * x_prefactor(params, t, x, convention) * inner;
        }
    }
    if (prob < 0.0) prob = 0.0;
    if (prob > 1.0) prob = 1.0;
    return prob;
}

void mc_density_oracle_samples(const DiffusionRiskParams& params, double t,
                               std::size_t n_paths, double dt, std::uint64_t master_seed,
                               OracleRoute route,
                               const std::function<void(double, double)>& sink) {
    if (!(t > 0.0) || !(dt > 0.0))
        throw std::domain_error("mc_density_oracle_samples: t and dt must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(t / dt));
    const double step = t / static_cast<double>(steps);
    const double sdt = params.sigma * std::sqrt(step);
    const double adt = params.alpha * step;
    const double sqdt = std::sqrt(step);
    const double drift = params.drift();
    const double var = params.var_rate();
    const double sq_var = std::sqrt(var);

    for (std::size_t i = 0; i < n_paths; ++i) {
        Rng env_rng(SeedSpec{master_seed, i}, Stream::brownian);
        Rng risk_rng(SeedSpec{master_seed, i}, Stream::risk_noise);
        double th = 0.0;
        double a = 0.0;       // trapezoid of e^{2 th}
        double e2_prev = 1.0;
        double ith = 0.0;     // trapezoid of e^{th}
        double e1_prev = 1.0;
        double mart = 0.0;    // Ito integral int e^{th} dW (left endpoint)
        for (std::size_t k = 0; k < steps; ++k) {
            if (route == OracleRoute::stochastic_integral)
                mart += e1_prev * sqdt * risk_rng.normal();
            th += sdt * env_rng.normal() + adt;
            const double e1 = std::exp(th);
            const double e2 = e1 * e1;
            a += 0.5 * (e2_prev + e2) * step;
            ith += 0.5 * (e1_prev + e1) * step;
            e2_prev = e2;
            e1_prev = e1;
        }
        double capital;
        if (route == OracleRoute::time_change) {
            // given A the capital is exactly Gaussian
            capital = params.initial_capital + drift * a + std::sqrt(var * a) * risk_rng.normal();
        } else {
            capital = params.initial_capital + drift * ith + sq_var * mart;
        }
        sink(capital, th);
    }
}

Histogram2D mc_density_oracle(const DiffusionRiskParams& params, double t,
                              std::size_t n_paths, double dt, std::uint64_t master_seed,
                              OracleRoute route, double z_lo, double z_hi,
                              std::size_t z_bins, double x_lo, double x_hi,
                              std::size_t x_bins) {
    Histogram2D hist(z_lo, z_hi, z_bins, x_lo, x_hi, x_bins);
    mc_density_oracle_samples(params, t, n_paths, dt, master_seed, route,
                              [&](double z, double x) { hist.add(z, x); });
    return hist;
}

double cf_crosscheck(const DiffusionRiskParams& params, double t,
                     const std::vector<double>& xi_grid,
                     const std::vector<double>& zeta_grid, std::size_t n_paths, double dt,
                     std::uint64_t master_seed) {
    using complexd = std::complex<double>;
    const complexd im(0.0, 1.0);
    const double drift = params.drift();
    const double var = params.var_rate();

    // quadrature route: integrate e^{i xi z} analytically against the
    // Gaussian kernel, then x and y numerically
    const double sd = params.sigma * std::sqrt(t);
    const double x_lo = params.alpha * t - 8.0 * sd;
    const double x_hi = params.alpha * t + 8.0 * sd;
    static const QuadratureRule rule = gauss_legendre(8);
    const std::size_t panels = 24;
    const double width = (x_hi - x_lo) / static_cast<double>(panels);

    std::vector<complexd> analytic(xi_grid.size() * zeta_grid.size(), complexd(0.0, 0.0));
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = x_lo + width * (static_cast<double>(p) + 0.5);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double x = mid + 0.5 * width * rule.nodes[q];
            const double wx = 0.5 * width * rule.weights[q] *
                              x_prefactor(params, t, x, KernelConvention::time_changed);
            const ConditionalSlice slice = make_slice(params.sigma, t, x);
            const double ex = std::exp(x);
            for (std::size_t a = 0; a < xi_grid.size(); ++a) {
                const double xi = xi_grid[a];
                complexd inner(0.0, 0.0);
                for (std::size_t j = 0; j < slice.y.size(); ++j) {
                    const double y = slice.y[j];
                    inner += slice.w[j] * slice.f[j] *
                             std::exp(im * xi * (params.initial_capital + drift * y) -
                                      0.5 * xi * xi * var * y);
                }
                for (std::size_t b = 0; b < zeta_grid.size(); ++b)
                    analytic[a * zeta_grid.size() + b] +=
                        wx * inner * std::exp(im * zeta_grid[b] * ex);
            }
        }
    }

    // empirical route from the simulated pairs
    std::vector<double> zs, xs;
    zs.reserve(n_paths);
    xs.reserve(n_paths);
    mc_density_oracle_samples(params, t, n_paths, dt, master_seed, OracleRoute::time_change,
                              [&](double z, double x) {
                                  zs.push_back(z);
                                  xs.push_back(x);
                              });
    double sup = 0.0;
    for (std::size_t a = 0; a < xi_grid.size(); ++a) {
        for (std::size_t b = 0; b < zeta_grid.size(); ++b) {
            complexd emp(0.0, 0.0);
            for (std::size_t i = 0; i < zs.size(); ++i)
                emp += std::exp(im * (xi_grid[a] * zs[i] + zeta_grid[b] * std::exp(xs[i])));
            emp /= static_cast<double>(zs.size());
            sup = std::max(sup, std::abs(analytic[a * zeta_grid.size() + b] - emp));
        }
    }
    return sup;
}

}  // namespace ruinlab
