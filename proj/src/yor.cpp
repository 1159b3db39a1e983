#include "ruinlab/yor.hpp"

#include <cmath>
#include <stdexcept>

#include "ruinlab/rng.hpp"
#include "ruinlab/specfun.hpp"

namespace ruinlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

const QuadratureRule& gl32() {
    static const QuadratureRule rule = gauss_legendre(32);
    return rule;
}

// integral of e^{-y^2/(2t)} e^{-r cosh y} sinh y sin(pi y / t) over [a, b]
double panel_integral(double r, double t, double a, double b) {
    const QuadratureRule& rule = gl32();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = mid + half * rule.nodes[i];
        const double expo = -y * y / (2.0 * t) - r * std::cosh(y);
        if (expo < -745.0) continue;  // underflows to zero anyway
        sum += rule.weights[i] * std::exp(expo) * std::sinh(y) * std::sin(kPi * y / t);
    }
    return half * sum;
}

}  // namespace

ThetaEval theta(double r, double t, std::size_t subdivisions) {
    if (!(r > 0.0)) throw std::domain_error("theta: r must be positive");
    if (!(t >= kThetaMinTime))
        throw std::domain_error(
            "theta: t below the oscillatory-quadrature floor (0.25); use the Monte Carlo oracle");
    if (subdivisions == 0) subdivisions = 1;

    const double prefactor =
        r * std::exp(kPi * kPi / (2.0 * t)) / std::sqrt(2.0 * kPi * kPi * kPi * t);

    // half-periods of sin(pi y / t) are [k t, (k+1) t]; the integrand sign
    // alternates with k while the envelope decays like e^{-r cosh y}.
    // Kahan-compensated summation: beyond t >= 0.25 the cosh damping is
    // superexponential and the raw alternating sum already converges.
    double sum = 0.0, comp = 0.0;
    double abs_sum = 0.0;
    double last_term = 0.0;
    for (std::size_t k = 0;; ++k) {
        const double a = static_cast<double>(k) * t;
        const double b = a + t;
        double term = 0.0;
        for (std::size_t j = 0; j < subdivisions; ++j) {
            const double step = (b - a) / static_cast<double>(subdivisions);
            term += panel_integral(r, t, a + step * static_cast<double>(j),
                                   a + step * static_cast<double>(j + 1));
        }
        const double y = term - comp;
        const double s_new = sum + y;
        comp = (s_new - sum) - y;
        sum = s_new;
        abs_sum += std::abs(term);
        last_term = term;
        if (k >= 4 && std::abs(term) < 1e-18 * std::max(abs_sum, 1e-300)) break;
        if (a > 2.0 + std::acosh(745.0 / std::min(r, 745.0))) break;
        if (k > 4096) break;
    }

    ThetaEval out;
    out.value = prefactor * sum;
    // first neglected half-period is below the last computed one; the
    // dominant error is roundoff amplified by the alternating cancellation
    out.error = prefactor * (std::abs(last_term) + 2e-16 * abs_sum) + 1e-300;
    return out;
}

double yor_density(double t, double x, double u) {
    if (!(u > 0.0)) throw std::domain_error("yor_density: u must be positive");
    const double r = std::exp(x) / u;
    const double expo = x * x / (2.0 * t) - (1.0 + std::exp(2.0 * x)) / (2.0 * u);
    if (expo < -745.0) return 0.0;
    return std::sqrt(2.0 * kPi * t) * std::exp(expo) / u * theta(r, t).value;
}

double yor_density_scaled(double sigma, double alpha, double t, double x, double u) {
    (void)alpha;  // conditioning on the terminal value removes the drift
    if (!(sigma > 0.0)) throw std::domain_error("yor_density_scaled: sigma must be positive");
    const double s2 = sigma * sigma;
    return s2 * yor_density(s2 * t, x, s2 * u);
}

double yor_integral(double t, double x, double u_lo, double u_hi,
                    const std::function<double(double)>& f, double tol) {
    if (!(u_hi > u_lo) || !(u_lo > 0.0))
        throw std::domain_error("yor_integral: need 0 < u_lo < u_hi");
    const QuadratureRule rule = gauss_legendre(8);
    const double v_lo = std::log(u_lo), v_hi = std::log(u_hi);

    auto evaluate = [&](std::size_t panels) {
        double total = 0.0;
        const double width = (v_hi - v_lo) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            const double a = v_lo + width * static_cast<double>(p);
            const double mid = a + 0.5 * width;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double v = mid + 0.5 * width * rule.nodes[i];
                const double u = std::exp(v);
                double g = yor_density(t, x, u) * u;  // du = u dv
                if (f) g *= f(u);
                total += 0.5 * width * rule.weights[i] * g;
            }
        }
        return total;
    };

    std::size_t panels = 16;
    double value = evaluate(panels);
    for (int depth = 0; depth < 5; ++depth) {
        panels *= 2;
        const double refined = evaluate(panels);
        const double change = std::abs(refined - value);
        value = refined;
        if (change <= tol * std::max(std::abs(refined), 1e-12)) break;
    }
    return value;
}

namespace {
// standard integration window: the conditional law of A_t lives on a few
// decades around t e^x
void yor_window(double t, double x, double& u_lo, double& u_hi) {
    const double scale = t * std::exp(x);
    u_lo = 1e-4 * std::min(scale, t);
    u_hi = 1e4 * std::max(scale, t);
}
}  // namespace

double yor_normalization(double t, double x) {
    double lo, hi;
    yor_window(t, x, lo, hi);
    return std::abs(yor_integral(t, x, lo, hi) - 1.0);
}

double yor_conditional_mean(double t, double x) {
    double lo, hi;
    yor_window(t, x, lo, hi);
    return yor_integral(t, x, lo, hi, [](double u) { return u; });
}

double bridge_conditional_mean(double t, double x) {
    // int_0^t exp(2 s x / t + 2 s (t - s) / t) ds by fine Gauss-Legendre
    const QuadratureRule rule = gauss_legendre(64);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = 0.5 * t * (1.0 + rule.nodes[i]);
        sum += rule.weights[i] * std::exp(2.0 * s * x / t + 2.0 * s * (t - s) / t);
    }
    return 0.5 * t * sum;
}

YorDensityGrid make_yor_grid(double t, std::vector<double> x_grid, std::vector<double> u_grid) {
    YorDensityGrid grid;
    grid.t = t;
    grid.x = std::move(x_grid);
    grid.u = std::move(u_grid);
    grid.values.resize(grid.x.size() * grid.u.size());
    grid.defect.resize(grid.x.size());
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        for (std::size_t j = 0; j < grid.u.size(); ++j)
            grid.values[i * grid.u.size() + j] = yor_density(t, grid.x[i], grid.u[j]);
        grid.defect[i] = yor_normalization(t, grid.x[i]);
    }
    return grid;
}

void mc_oracle_joint_samples(double sigma, double alpha, double t, std::size_t n_paths,
                             double dt, std::uint64_t master_seed,
                             const std::function<void(double, double)>& sink) {
    if (!(t > 0.0) || !(dt > 0.0))
        throw std::domain_error("mc_oracle_joint_samples: t and dt must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(t / dt));
    const double step = t / static_cast<double>(steps);
    const double sdt = sigma * std::sqrt(step);
    const double adt = alpha * step;
    for (std::size_t i = 0; i < n_paths; ++i) {
        Rng rng(SeedSpec{master_seed, i}, Stream::brownian);
        double th = 0.0;
        double a = 0.0;
        double e2_prev = 1.0;
        for (std::size_t k = 0; k < steps; ++k) {
            th += sdt * rng.normal() + adt;
            const double e2 = std::exp(2.0 * th);
            a += 0.5 * (e2_prev + e2) * step;
            e2_prev = e2;
        }
        sink(a, th);
    }
}

Histogram2D mc_oracle_joint(double sigma, double alpha, double t, std::size_t n_paths,
                            double dt, std::uint64_t master_seed, double a_lo, double a_hi,
                            std::size_t a_bins, double b_lo, double b_hi, std::size_t b_bins) {
    Histogram2D hist(a_lo, a_hi, a_bins, b_lo, b_hi, b_bins);
    mc_oracle_joint_samples(sigma, alpha, t, n_paths, dt, master_seed,
                            [&](double a, double b) { hist.add(a, b); });
    return hist;
}

}  // namespace ruinlab
