#include "ruinlab/ruin_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ruinlab/stats.hpp"

namespace ruinlab {

namespace {

MonteCarloEstimate make_estimate(std::size_t ruined, std::size_t n, double horizon,
                                 std::uint64_t seed) {
    MonteCarloEstimate est;
    est.estimate = static_cast<double>(ruined) / static_cast<double>(n);
    const Interval ci = wilson_interval(ruined, n);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    est.n_paths = n;
    est.horizon = horizon;
    est.seed = seed;
    return est;
}

double percentile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    const auto idx = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
    return v[idx];
}

}  // namespace

MonteCarloEstimate estimate_ruin(const RiskParams& params, const InvestmentModel& inv,
                                 const SchemeConfig& cfg, double horizon,
                                 std::size_t n_paths, std::uint64_t master_seed,
                                 const CountingProcess* counting) {
    if (n_paths < 100) throw std::invalid_argument("estimate_ruin: need at least 100 paths");
    SchemeConfig run_cfg = cfg;
    run_cfg.stop_at_ruin = true;
    std::size_t ruined = 0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        const SimulatedPath p =
            simulate_invested(params, inv, run_cfg, horizon, SeedSpec{master_seed, i}, counting);
        if (p.ruined_at) ++ruined;
    }
    return make_estimate(ruined, n_paths, horizon, master_seed);
}

CertainRuinReport certain_ruin_experiment(const RiskParams& params, const InvestmentModel& inv,
                                          const SchemeConfig& cfg,
                                          const std::vector<double>& horizon_ladder,
                                          std::size_t n_paths, std::uint64_t master_seed,
                                          const CountingProcess* counting,
                                          std::size_t n_envelope) {
    if (horizon_ladder.empty() || !std::is_sorted(horizon_ladder.begin(), horizon_ladder.end()))
        throw std::invalid_argument("certain_ruin_experiment: ladder must be sorted and nonempty");

    CertainRuinReport report;
    report.horizons = horizon_ladder;
    report.regime = inv.regime();
    // unbounded support warning: all ClaimLaw families qualify, but a
    // degenerate schedule-based variant might not; recorded, not fatal
    // probe far into the tail but not so far that exponential survival
    // underflows double precision (e^{-64} is still representable)
    report.claims_unbounded = params.claims.survival(64.0 * params.claims.mean()) > 0.0;

    const double final_horizon = horizon_ladder.back();
    SchemeConfig run_cfg = cfg;
    run_cfg.stop_at_ruin = true;
    std::vector<std::size_t> ruined(horizon_ladder.size(), 0);
    for (std::size_t i = 0; i < n_paths; ++i) {
        const SimulatedPath p = simulate_invested(params, inv, run_cfg, final_horizon,
                                                  SeedSpec{master_seed, i}, counting);
        if (p.ruined_at) {
            for (std::size_t h = 0; h < horizon_ladder.size(); ++h)
                if (*p.ruined_at <= horizon_ladder[h]) ++ruined[h];
        }
    }
    report.frequencies.reserve(horizon_ladder.size());
    for (std::size_t h = 0; h < horizon_ladder.size(); ++h)
        report.frequencies.push_back(
            make_estimate(ruined[h], n_paths, horizon_ladder[h], master_seed));

    n_envelope = std::min(n_envelope, n_paths);
    report.n_envelope = n_envelope;
    if (n_envelope > 0) {
        std::vector<double> terminal(n_envelope), sup(n_envelope);
        for (std::size_t i = 0; i < n_envelope; ++i) {
            const EnvelopeResult env =
                envelope_supremum(inv, params.premium.bound(), params.initial_capital,
                                  final_horizon, cfg.dt, SeedSpec{master_seed, i});
            terminal[i] = env.terminal_dilation;
            sup[i] = env.sup_envelope;
        }
        report.median_terminal_dilation = percentile(terminal, 0.5);
        report.envelope_sup_p99 = percentile(sup, 0.99);
    }
    return report;
}

std::vector<CorollaryCase> corollary_matrix(const RiskParams& base,
                                            const InvestmentModel& base_inv,
                                            const SchemeConfig& cfg,
                                            const std::vector<double>& horizon_ladder,
                                            const std::vector<CorollaryVariant>& variants,
                                            std::size_t n_paths, std::uint64_t master_seed) {
    std::vector<CorollaryCase> cases;
    cases.reserve(variants.size());
    for (const auto& v : variants) {
        RiskParams params = base;
        if (v.premium) params.premium = *v.premium;
        const InvestmentModel& inv = v.investment ? *v.investment : base_inv;
        const CountingProcess* counting = v.counting ? &*v.counting : nullptr;
        cases.push_back({v.name, certain_ruin_experiment(params, inv, cfg, horizon_ladder,
                                                         n_paths, master_seed, counting)});
    }
    return cases;
}

MonteCarloEstimate diffusion_ruin_mc(double initial_capital, double drift, double var_rate,
                                     double horizon, double dt, std::size_t n_paths,
                                     std::uint64_t master_seed) {
    if (!(var_rate > 0.0)) throw std::domain_error("diffusion_ruin_mc: var_rate must be positive");
    if (!(horizon > 0.0) || !(dt > 0.0))
        throw std::domain_error("diffusion_ruin_mc: horizon and dt must be positive");
    if (n_paths < 100) throw std::invalid_argument("diffusion_ruin_mc: need at least 100 paths");

    const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
    const double sd = std::sqrt(var_rate * dt);
    // beyond this level the residual ruin probability e^{-2 drift x / var}
    // is below 1e-12 and the path can be abandoned as survived
    const double barrier = drift > 0.0
                               ? var_rate * 27.7 / (2.0 * drift)
                               : std::numeric_limits<double>::infinity();

    std::size_t ruined = 0;
    for (std::size_t i = 0; i < n_paths; ++i) {
        Rng noise(SeedSpec{master_seed, i}, Stream::risk_noise);
        Rng cross(SeedSpec{master_seed, i}, Stream::crossing);
        double x = initial_capital;
        if (x <= 0.0) {
            ++ruined;
            continue;
        }
        for (std::size_t k = 0; k < steps; ++k) {
            const double x_next = x + drift * dt + sd * noise.normal();
            if (x_next <= 0.0) {
                ++ruined;
                break;
            }
            // exact conditional probability that the bridge dips below 0
            const double p_cross = std::exp(-2.0 * x * x_next / (var_rate * dt));
            if (cross.uniform() < p_cross) {
                ++ruined;
                break;
            }
            x = x_next;
            if (x > barrier) break;
        }
    }
    return make_estimate(ruined, n_paths, horizon, master_seed);
}

}  // namespace ruinlab
