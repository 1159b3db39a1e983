#pragma once

#include <functional>
#include <optional>

#include "ruinlab/rng.hpp"

namespace ruinlab {

// Claim-size law. All three families have unbounded support: the survival
// function is strictly positive on (0, inf), which is the hypothesis the
// certain-ruin theorem needs. Pareto is parameterized in survival form
// (scale/(scale+y))^shape, i.e. a Lomax law supported on (0, inf).
class ClaimLaw {
public:
    enum class Kind { exponential, pareto, log_normal };

    static ClaimLaw exponential(double mean);
    static ClaimLaw pareto(double shape, double scale);
    static ClaimLaw log_normal(double location, double scale);

    Kind kind() const { return kind_; }
    double mean() const;
    double second_moment() const;  // E[Y^2]; requires Pareto shape > 2
    double survival(double y) const;
    double sample(Rng& rng) const;

private:
    ClaimLaw(Kind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}
    Kind kind_;
    double p1_, p2_;
};

// Premium rate: constant, or a bounded function of time with a declared
// supremum.
class PremiumSpec {
public:
    static PremiumSpec constant(double rate);
    static PremiumSpec function(std::function<double(double)> rate, double supremum);

    double rate(double t) const;
    double bound() const { return bound_; }
    bool is_constant() const { return !fn_; }

private:
    PremiumSpec(std::function<double(double)> fn, double bound)
        : fn_(std::move(fn)), bound_(bound) {}
    std::function<double(double)> fn_;  // empty for constant premiums
    double bound_;
};

struct RiskParams {
    double initial_capital;  // u
    PremiumSpec premium;
    double claim_rate;  // lambda
    ClaimLaw claims;
};

RiskParams make_risk_params(double initial_capital, PremiumSpec premium,
                            double claim_rate, ClaimLaw claims);

// Compound Poisson jump part of an exponential-Levy investment index.
// The compensation drift is intensity * mean jump, so the compensated
// process Sum J_k - compensation * t has mean zero.
struct LevyJumpSpec {
    double intensity = 0.0;
    std::optional<ClaimLaw> size_law;  // nullopt only when intensity == 0

    double compensation() const;
};

enum class RuinRegime { certain, boundary, not_certain };

// Investment dynamics: the index is e^{sigma B_t + alpha t} (GBM),
// e^{sigma L_t + alpha t} (exponential Levy), or e^{a t} (deterministic
// force of interest, the sigma = 0 case).
class InvestmentModel {
public:
    enum class Kind { gbm, exp_levy, deterministic };

    static InvestmentModel gbm(double a, double sigma);
    static InvestmentModel deterministic(double a);
    static InvestmentModel exp_levy(double sigma, double alpha, LevyJumpSpec jumps);

    Kind kind() const { return kind_; }
    double drift() const { return a_; }          // a (GBM/deterministic)
    double sigma() const { return sigma_; }
    double alpha() const { return alpha_; }      // a - sigma^2/2 for GBM
    const LevyJumpSpec& jumps() const { return jumps_; }
    RuinRegime regime() const;

private:
    InvestmentModel(Kind kind, double a, double sigma, double alpha, LevyJumpSpec jumps)
        : kind_(kind), a_(a), sigma_(sigma), alpha_(alpha), jumps_(std::move(jumps)) {}
    Kind kind_;
    double a_;
    double sigma_;
    double alpha_;
    LevyJumpSpec jumps_;
};

// Point of the semi-direct product R x R+ (real hyperbolic space).
struct HyperbolicPoint {
    double x;
    double y;
};

HyperbolicPoint hyperbolic_mul(HyperbolicPoint p, HyperbolicPoint q);
HyperbolicPoint hyperbolic_inverse(HyperbolicPoint p);
inline HyperbolicPoint hyperbolic_identity() { return {0.0, 1.0}; }

// rho = (c - lambda mu) / (lambda mu)
double safety_loading(double premium_rate, double claim_rate, double claim_mean);
// c = (1 + rho) lambda mu
double premium_for_loading(double rho, double claim_rate, double claim_mean);

// exp(-2 rho mu u / m); the diffusion approximation of the ruin
// probability with safety loading rho and claim moments (mu, m).
double diffusion_limit_ruin(double rho, double claim_mean, double claim_second_moment,
                            double initial_capital);

// alpha = a - sigma^2 / 2
double gbm_exponent(double a, double sigma);

}  // namespace ruinlab
