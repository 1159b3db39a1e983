#include "ruinlab/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ruinlab {

namespace {

std::vector<Claim> sample_claims(const RiskParams& params, const CountingProcess* counting,
                                 double horizon, SeedSpec seed) {
    Rng arrival_rng(seed, Stream::claim_arrivals);
    Rng size_rng(seed, Stream::claim_sizes);
    std::vector<double> times;
    if (counting) {
        times = counting->sample_arrivals(horizon, arrival_rng);
    } else {
        times = CountingProcess::poisson(params.claim_rate).sample_arrivals(horizon, arrival_rng);
    }
    std::vector<Claim> claims;
    claims.reserve(times.size());
    for (double t : times) claims.push_back({t, params.claims.sample(size_rng)});
    return claims;
}

}  // namespace

SimulatedPath simulate_classical(const RiskParams& params, double horizon,
                                 SeedSpec seed, double dt) {
    if (!(horizon > 0.0)) throw std::domain_error("simulate_classical: horizon must be positive");
    if (!(dt > 0.0)) throw std::domain_error("simulate_classical: dt must be positive");

    SimulatedPath path;
    path.claims = sample_claims(params, nullptr, horizon, seed);
    std::vector<double> claim_times(path.claims.size());
    for (std::size_t i = 0; i < path.claims.size(); ++i) claim_times[i] = path.claims[i].time;
    path.grid = merge_grid(uniform_grid(horizon, dt), claim_times);

    const std::size_t n = path.grid.size();
    path.env.assign(n, 0.0);
    path.x.resize(n);
    path.xp.resize(n);
    path.premium_integral.resize(n);

    const bool const_premium = params.premium.is_constant();
    double integral = 0.0;
    double c_prev = params.premium.rate(0.0);
    double claim_sum = 0.0;
    std::size_t k = 0;
    path.x[0] = path.xp[0] = params.initial_capital;
    path.premium_integral[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double t = path.grid[i];
        const double step = t - path.grid[i - 1];
        const double c = const_premium ? c_prev : params.premium.rate(t);
        integral += 0.5 * (c_prev + c) * step;
        c_prev = c;
        while (k < path.claims.size() && path.claims[k].time <= t) {
            claim_sum += path.claims[k].size;
            ++k;
        }
        const double x = params.initial_capital + integral - claim_sum;
        path.x[i] = x;
        path.xp[i] = x;
        path.premium_integral[i] = integral;
        if (!path.ruined_at && x < 0.0) path.ruined_at = t;
    }
    return path;
}

SimulatedPath simulate_invested(const RiskParams& params, const InvestmentModel& inv,
                                const SchemeConfig& cfg, double horizon, SeedSpec seed,
                                const CountingProcess* counting) {
    if (!(horizon > 0.0)) throw std::domain_error("simulate_invested: horizon must be positive");
    if (!(cfg.dt > 0.0)) throw std::domain_error("simulate_invested: step size must be positive");
    if (cfg.scheme == Scheme::euler_sde && inv.kind() == InvestmentModel::Kind::exp_levy)
        throw std::invalid_argument("simulate_invested: euler_sde supports GBM investment only");

    SimulatedPath path;
    path.claims = sample_claims(params, counting, horizon, seed);
    std::vector<double> claim_times(path.claims.size());
    for (std::size_t i = 0; i < path.claims.size(); ++i) claim_times[i] = path.claims[i].time;

    // Levy jump layer of the investment exponent (empty for GBM)
    std::vector<std::pair<double, double>> env_jumps;
    double comp = 0.0;
    if (inv.kind() == InvestmentModel::Kind::exp_levy && inv.jumps().intensity > 0.0) {
        Rng jt(seed, Stream::levy_jump_times);
        Rng js(seed, Stream::levy_jump_sizes);
        auto times = CountingProcess::poisson(inv.jumps().intensity).sample_arrivals(horizon, jt);
        env_jumps.reserve(times.size());
        for (double t : times) env_jumps.emplace_back(t, inv.jumps().size_law->sample(js));
        comp = inv.jumps().compensation();
    }
    std::vector<double> env_jump_times(env_jumps.size());
    for (std::size_t i = 0; i < env_jumps.size(); ++i) env_jump_times[i] = env_jumps[i].first;

    path.grid = merge_grid(merge_grid(uniform_grid(horizon, cfg.dt), claim_times), env_jump_times);
    const std::size_t n = path.grid.size();
    path.env.resize(n);
    path.x.resize(n);
    path.xp.resize(n);
    path.premium_integral.resize(n);

    Rng brownian(seed, Stream::brownian);
    const double sigma = inv.sigma();
    const double alpha = inv.alpha();
    const double a = inv.drift();
    const bool trapezoid = cfg.quadrature == PremiumQuadrature::trapezoid;
    const bool const_premium = params.premium.is_constant();
    const double u = params.initial_capital;

    // state
    double b = 0.0;       // standard Brownian value
    double jsum = 0.0;    // accumulated Levy jumps
    double env = 0.0;
    double e_pos = 1.0;   // e^{env}
    double e_neg = 1.0;   // e^{-env}
    double c_val = params.premium.rate(0.0);
    double classical_integral = 0.0;
    double scheme_integral = 0.0;  // in the scheme's measure, see header
    double claim_sum = 0.0;        // dilated / discounted / plain claim total
    double classical_claims = 0.0;
    double euler_v = u;
    std::size_t k = 0;   // claim cursor
    std::size_t jj = 0;  // env jump cursor

    path.env[0] = 0.0;
    path.x[0] = u;
    path.xp[0] = u;
    path.premium_integral[0] = 0.0;
    std::size_t last = n - 1;
    for (std::size_t i = 1; i < n; ++i) {
        const double t = path.grid[i];
        const double step = t - path.grid[i - 1];
        b += std::sqrt(step) * brownian.normal();
        while (jj < env_jumps.size() && env_jumps[jj].first <= t) {
            jsum += env_jumps[jj].second;
            ++jj;
        }
        const double env_prev = env;
        const double e_pos_prev = e_pos;
        const double e_neg_prev = e_neg;
        env = (inv.kind() == InvestmentModel::Kind::exp_levy)
                  ? sigma * (b + (jsum - comp * t)) + alpha * t
                  : sigma * b + alpha * t;
        e_pos = std::exp(env);
        e_neg = std::exp(-env);
        path.env[i] = env;

        const double c_prev = c_val;
        c_val = const_premium ? c_val : params.premium.rate(t);
        classical_integral += 0.5 * (c_prev + c_val) * step;

        // premium accrual in the scheme's measure
        switch (cfg.scheme) {
            case Scheme::dilation_exact:
                scheme_integral += trapezoid
                                       ? 0.5 * (e_pos_prev * c_prev + e_pos * c_val) * step
                                       : e_pos_prev * c_prev * step;
                break;
            case Scheme::sde_exact:
                scheme_integral += trapezoid
                                       ? 0.5 * (e_neg_prev * c_prev + e_neg * c_val) * step
                                       : e_neg_prev * c_prev * step;
                break;
            case Scheme::euler_sde: {
                const double db = (env - env_prev - alpha * step);
                // db here is sigma * (Brownian increment)
                euler_v += euler_v * (a * step) + (sigma > 0.0 ? euler_v * db : 0.0) +
                           c_prev * step;
                scheme_integral += c_prev * step;
                break;
            }
        }

        // claims hitting at this node
        while (k < path.claims.size() && path.claims[k].time <= t) {
            const double y = path.claims[k].size;
            classical_claims += y;
            switch (cfg.scheme) {
                case Scheme::dilation_exact: claim_sum += e_pos * y; break;
                case Scheme::sde_exact: claim_sum += e_neg * y; break;
                case Scheme::euler_sde: euler_v -= y; break;
            }
            ++k;
        }

        path.x[i] = u + classical_integral - classical_claims;
        double xp = 0.0;
        switch (cfg.scheme) {
            case Scheme::dilation_exact:
                xp = e_pos * u + scheme_integral - claim_sum;
                break;
            case Scheme::sde_exact:
                xp = e_pos * (u + scheme_integral - claim_sum);
                break;
            case Scheme::euler_sde:
                xp = euler_v;
                break;
        }
        path.xp[i] = xp;
        path.premium_integral[i] = scheme_integral;
        if (!path.ruined_at && xp < 0.0) {
            path.ruined_at = t;
            if (cfg.stop_at_ruin) {
                last = i;
                break;
            }
        }
    }
    if (last + 1 < n) {
        path.grid.resize(last + 1);
        path.env.resize(last + 1);
        path.x.resize(last + 1);
        path.xp.resize(last + 1);
        path.premium_integral.resize(last + 1);
        // drop claims after the truncation point
        auto it = std::upper_bound(path.claims.begin(), path.claims.end(), path.grid.back(),
                                   [](double t, const Claim& c) { return t < c.time; });
        path.claims.erase(it, path.claims.end());
    }
    return path;
}

BoundednessResult check_boundedness(const SimulatedPath& path, double premium_bound,
                                    double tolerance) {
    if (path.grid.empty()) throw std::invalid_argument("check_boundedness: empty path");
    double worst = -std::numeric_limits<double>::infinity();
    double q = 0.0;  // trapezoid of e^{env}
    double e_prev = std::exp(path.env[0]);
    const double u = path.xp[0];
    worst = path.xp[0] - e_prev * u;
    for (std::size_t i = 1; i < path.grid.size(); ++i) {
        const double e = std::exp(path.env[i]);
        q += 0.5 * (e_prev + e) * (path.grid[i] - path.grid[i - 1]);
        e_prev = e;
        const double bound = e * u + premium_bound * q;
        worst = std::max(worst, path.xp[i] - bound);
    }
    return {worst <= tolerance, worst};
}

EnvelopeResult envelope_supremum(const InvestmentModel& inv, double premium_bound,
                                 double initial_capital, double horizon, double dt,
                                 SeedSpec seed) {
    if (!(horizon > 0.0) || !(dt > 0.0))
        throw std::domain_error("envelope_supremum: horizon and dt must be positive");

    std::vector<std::pair<double, double>> env_jumps;
    double comp = 0.0;
    std::vector<double> grid = uniform_grid(horizon, dt);
    if (inv.kind() == InvestmentModel::Kind::exp_levy && inv.jumps().intensity > 0.0) {
        Rng jt(seed, Stream::levy_jump_times);
        Rng js(seed, Stream::levy_jump_sizes);
        auto times = CountingProcess::poisson(inv.jumps().intensity).sample_arrivals(horizon, jt);
        for (double t : times) env_jumps.emplace_back(t, inv.jumps().size_law->sample(js));
        comp = inv.jumps().compensation();
        std::vector<double> jt_only(env_jumps.size());
        for (std::size_t i = 0; i < env_jumps.size(); ++i) jt_only[i] = env_jumps[i].first;
        grid = merge_grid(grid, jt_only);
    }

    Rng brownian(seed, Stream::brownian);
    const double sigma = inv.sigma();
    const double alpha = inv.alpha();
    double b = 0.0, jsum = 0.0, q = 0.0;
    double e_prev = 1.0;
    double sup = initial_capital;  // node 0 envelope: u + 0
    std::size_t jj = 0;
    double e = 1.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double t = grid[i];
        const double step = t - grid[i - 1];
        b += std::sqrt(step) * brownian.normal();
        while (jj < env_jumps.size() && env_jumps[jj].first <= t) {
            jsum += env_jumps[jj].second;
            ++jj;
        }
        const double env = (inv.kind() == InvestmentModel::Kind::exp_levy)
                               ? sigma * (b + (jsum - comp * t)) + alpha * t
                               : sigma * b + alpha * t;
        e = std::exp(env);
        q += 0.5 * (e_prev + e) * step;
        e_prev = e;
        sup = std::max(sup, e * initial_capital + premium_bound * q);
    }
    return {sup, e * initial_capital};
}

}  // namespace ruinlab
