#pragma once

#include <optional>
#include <vector>

#include "ruinlab/model.hpp"
#include "ruinlab/processes.hpp"
#include "ruinlab/rng.hpp"

namespace ruinlab {

// Which invested-capital dynamics to integrate.
//
//  dilation_exact : Xp_t = e^{th_t} u + int_0^t e^{th_s} c_s ds
//                          - sum_{T_k <= t} e^{th_{T_k}} Y_k
//                   (the semi-direct-product action on the classical path;
//                   this is the form whose capital envelope is bounded for
//                   alpha < 0, see check_boundedness)
//  sde_exact      : Xp_t = e^{th_t} (u + int_0^t e^{-th_s} c_s ds
//                          - sum e^{-th_{T_k}} Y_k)
//                   (integrating-factor solution of the continuously
//                   invested model dXp = Xp dR + dX; this is the form with
//                   certain ruin for alpha < 0 and the default for the
//                   ruin experiments)
//  euler_sde      : Euler-Maruyama on dXp = Xp (a dt + sigma dB) + dX,
//                   GBM investment only; kept as a convergence cross-check
//
// The two exact forms agree in law at any fixed t (time reversal of the
// exponent) but are different processes pathwise; their ruin events
// differ. See README for the numerical comparison.
enum class Scheme { dilation_exact, sde_exact, euler_sde };

enum class PremiumQuadrature { trapezoid, left_point };

struct SchemeConfig {
    double dt = 0.01;
    Scheme scheme = Scheme::sde_exact;
    PremiumQuadrature quadrature = PremiumQuadrature::trapezoid;
    bool stop_at_ruin = false;  // truncate the path at the first ruin node
};

struct Claim {
    double time;
    double size;
};

struct SimulatedPath {
    std::vector<double> grid;  // includes every claim time as a node
    std::vector<double> env;   // sigma B_t + alpha t (or sigma L_t + alpha t)
    std::vector<double> x;     // classical capital
    std::vector<double> xp;    // invested capital
    // running premium integral in the scheme's own measure:
    // int e^{th} c ds (dilation), int e^{-th} c ds (sde_exact),
    // int c ds (euler / classical)
    std::vector<double> premium_integral;
    std::vector<Claim> claims;
    std::optional<double> ruined_at;  // first node with xp strictly below 0
};

// Classical Cramer-Lundberg path (no investment); xp == x.
SimulatedPath simulate_classical(const RiskParams& params, double horizon,
                                 SeedSpec seed, double dt = 0.01);

// Joint classical / invested path on a shared grid. The optional counting
// process overrides the default Poisson(params.claim_rate) arrivals.
SimulatedPath simulate_invested(const RiskParams& params, const InvestmentModel& inv,
                                const SchemeConfig& cfg, double horizon, SeedSpec seed,
                                const CountingProcess* counting = nullptr);

struct BoundednessResult {
    bool ok;
    double max_violation;  // max over nodes of xp - (e^{th} u + c_bar int e^{th} ds)
};

// Pathwise capital-envelope inequality for a dilation_exact path:
// xp_t <= e^{th_t} u + c_bar int_0^t e^{th_s} ds at every node, up to
// the supplied quadrature tolerance.
BoundednessResult check_boundedness(const SimulatedPath& path, double premium_bound,
                                    double tolerance = 0.0);

struct EnvelopeResult {
    double sup_envelope;       // running sup of e^{th} u + c_bar int e^{th} ds
    double terminal_dilation;  // e^{th_T} u
};

// Envelope statistics for the certain-ruin demonstration: for alpha < 0 the
// envelope supremum is tight and the terminal dilation term vanishes.
EnvelopeResult envelope_supremum(const InvestmentModel& inv, double premium_bound,
                                 double initial_capital, double horizon, double dt,
                                 SeedSpec seed);

}  // namespace ruinlab
