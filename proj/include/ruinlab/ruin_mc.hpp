#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ruinlab/paths.hpp"

namespace ruinlab {

struct MonteCarloEstimate {
    double estimate = 0.0;
    double ci_low = 0.0;   // Wilson 95%
    double ci_high = 1.0;
    std::size_t n_paths = 0;
    double horizon = 0.0;
    std::uint64_t seed = 0;
};

// Fraction of paths ruined by the horizon. Deterministic given the master
// seed; path i always uses stream (seed, i) so the result is independent
// of evaluation order.
MonteCarloEstimate estimate_ruin(const RiskParams& params, const InvestmentModel& inv,
                                 const SchemeConfig& cfg, double horizon,
                                 std::size_t n_paths, std::uint64_t master_seed,
                                 const CountingProcess* counting = nullptr);

struct CertainRuinReport {
    std::vector<double> horizons;
    std::vector<MonteCarloEstimate> frequencies;  // one per horizon, shared paths
    RuinRegime regime = RuinRegime::not_certain;
    bool claims_unbounded = true;
    // envelope statistics over n_envelope full-horizon paths
    std::size_t n_envelope = 0;
    double median_terminal_dilation = 0.0;
    double envelope_sup_p99 = 0.0;
};

// One simulation pass at the final ladder horizon; the per-horizon
// frequencies share paths (common random numbers), so they are monotone in
// the horizon by construction. Envelope statistics come from the first
// n_envelope paths simulated without early stopping.
CertainRuinReport certain_ruin_experiment(const RiskParams& params, const InvestmentModel& inv,
                                          const SchemeConfig& cfg,
                                          const std::vector<double>& horizon_ladder,
                                          std::size_t n_paths, std::uint64_t master_seed,
                                          const CountingProcess* counting = nullptr,
                                          std::size_t n_envelope = 500);

// One generalization of the certain-ruin experiment: a bounded premium
// function, a non-Poisson counting process, or an exponential-Levy
// investment index. Unset fields fall back to the base configuration.
struct CorollaryVariant {
    std::string name;
    std::optional<PremiumSpec> premium;
    std::optional<CountingProcess> counting;
    std::optional<InvestmentModel> investment;
};

struct CorollaryCase {
    std::string name;
    CertainRuinReport report;
};

std::vector<CorollaryCase> corollary_matrix(const RiskParams& base,
                                            const InvestmentModel& base_inv,
                                            const SchemeConfig& cfg,
                                            const std::vector<double>& horizon_ladder,
                                            const std::vector<CorollaryVariant>& variants,
                                            std::size_t n_paths, std::uint64_t master_seed);

// Ruin probability of the pure-diffusion risk process
// X_t = u + drift t + sqrt(var_rate) W_t over [0, horizon]. Between grid
// nodes the hitting indicator is resolved with the exact Brownian-bridge
// crossing probability, so the estimator has no time-discretization bias.
MonteCarloEstimate diffusion_ruin_mc(double initial_capital, double drift, double var_rate,
                                     double horizon, double dt, std::size_t n_paths,
                                     std::uint64_t master_seed);

}  // namespace ruinlab
