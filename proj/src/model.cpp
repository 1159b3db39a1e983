#include "ruinlab/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ruinlab {

ClaimLaw ClaimLaw::exponential(double mean) {
    if (!(mean > 0.0)) throw std::domain_error("ClaimLaw::exponential: mean must be positive");
    return ClaimLaw(Kind::exponential, mean, 0.0);
}

ClaimLaw ClaimLaw::pareto(double shape, double scale) {
    if (!(shape > 1.0)) throw std::domain_error("ClaimLaw::pareto: shape must exceed 1 for a finite mean");
    if (!(scale > 0.0)) throw std::domain_error("ClaimLaw::pareto: scale must be positive");
    return ClaimLaw(Kind::pareto, shape, scale);
}

ClaimLaw ClaimLaw::log_normal(double location, double scale) {
    if (!(scale > 0.0)) throw std::domain_error("ClaimLaw::log_normal: scale must be positive");
    return ClaimLaw(Kind::log_normal, location, scale);
}

double ClaimLaw::mean() const {
    switch (kind_) {
        case Kind::exponential: return p1_;
        case Kind::pareto: return p2_ / (p1_ - 1.0);
        case Kind::log_normal: return std::exp(p1_ + 0.5 * p2_ * p2_);
    }
    return 0.0;
}

double ClaimLaw::second_moment() const {
    switch (kind_) {
        case Kind::exponential: return 2.0 * p1_ * p1_;
        case Kind::pareto:
            if (!(p1_ > 2.0))
                throw std::domain_error("ClaimLaw::second_moment: Pareto shape must exceed 2");
            return 2.0 * p2_ * p2_ / ((p1_ - 1.0) * (p1_ - 2.0));
        case Kind::log_normal: return std::exp(2.0 * p1_ + 2.0 * p2_ * p2_);
    }
    return 0.0;
}

double ClaimLaw::survival(double y) const {
    if (y <= 0.0) return 1.0;
    switch (kind_) {
        case Kind::exponential: return std::exp(-y / p1_);
        case Kind::pareto: return std::pow(p2_ / (p2_ + y), p1_);
        case Kind::log_normal:
            return 0.5 * std::erfc((std::log(y) - p1_) / (p2_ * std::sqrt(2.0)));
    }
    return 0.0;
}

double ClaimLaw::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::exponential: return rng.exponential(p1_);
        case Kind::pareto: return p2_ * (std::pow(rng.uniform(), -1.0 / p1_) - 1.0);
        case Kind::log_normal: return std::exp(p1_ + p2_ * rng.normal());
    }
    return 0.0;
}

PremiumSpec PremiumSpec::constant(double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw std::domain_error("PremiumSpec::constant: rate must be finite and nonnegative");
    return PremiumSpec(nullptr, rate);
}

PremiumSpec PremiumSpec::function(std::function<double(double)> rate, double supremum) {
    if (!rate) throw std::invalid_argument("PremiumSpec::function: empty function");
    if (!(supremum >= 0.0) || !std::isfinite(supremum))
        throw std::domain_error("PremiumSpec::function: supremum must be finite and nonnegative");
    return PremiumSpec(std::move(rate), supremum);
}

double PremiumSpec::rate(double t) const { return fn_ ? fn_(t) : bound_; }

RiskParams make_risk_params(double initial_capital, PremiumSpec premium,
                            double claim_rate, ClaimLaw claims) {
    if (!(initial_capital >= 0.0))
        throw std::domain_error("RiskParams: initial capital must be nonnegative");
    if (!(claim_rate > 0.0)) throw std::domain_error("RiskParams: claim rate must be positive");
    return RiskParams{initial_capital, std::move(premium), claim_rate, std::move(claims)};
}

double LevyJumpSpec::compensation() const {
    if (intensity == 0.0) return 0.0;
    if (!size_law) throw std::logic_error("LevyJumpSpec: positive intensity needs a size law");
    return intensity * size_law->mean();
}

InvestmentModel InvestmentModel::gbm(double a, double sigma) {
    if (!(sigma >= 0.0)) throw std::domain_error("InvestmentModel::gbm: sigma must be nonnegative");
    return InvestmentModel(Kind::gbm, a, sigma, gbm_exponent(a, sigma), {});
}

InvestmentModel InvestmentModel::deterministic(double a) {
    return InvestmentModel(Kind::deterministic, a, 0.0, a, {});
}

InvestmentModel InvestmentModel::exp_levy(double sigma, double alpha, LevyJumpSpec jumps) {
    if (!(sigma >= 0.0))
        throw std::domain_error("InvestmentModel::exp_levy: sigma must be nonnegative");
    if (jumps.intensity < 0.0)
        throw std::domain_error("InvestmentModel::exp_levy: jump intensity must be nonnegative");
    if (jumps.intensity > 0.0 && !jumps.size_law)
        throw std::invalid_argument("InvestmentModel::exp_levy: missing jump size law");
    return InvestmentModel(Kind::exp_levy, alpha, sigma, alpha, std::move(jumps));
}

RuinRegime InvestmentModel::regime() const {
    if (alpha_ < 0.0) return RuinRegime::certain;
    if (alpha_ == 0.0) return RuinRegime::boundary;
    return RuinRegime::not_certain;
}

HyperbolicPoint hyperbolic_mul(HyperbolicPoint p, HyperbolicPoint q) {
    return {p.x + q.x * p.y, p.y * q.y};
}

HyperbolicPoint hyperbolic_inverse(HyperbolicPoint p) {
    return {-p.x / p.y, 1.0 / p.y};
}

double safety_loading(double premium_rate, double claim_rate, double claim_mean) {
    const double lm = claim_rate * claim_mean;
    if (!(lm > 0.0)) throw std::domain_error("safety_loading: lambda * mu must be positive");
    return (premium_rate - lm) / lm;
}

double premium_for_loading(double rho, double claim_rate, double claim_mean) {
    return (1.0 + rho) * claim_rate * claim_mean;
}

double diffusion_limit_ruin(double rho, double claim_mean, double claim_second_moment,
                            double initial_capital) {
    if (!(claim_second_moment > 0.0))
        throw std::domain_error("diffusion_limit_ruin: m must be positive");
    if (rho < 0.0)
        throw std::domain_error("diffusion_limit_ruin: negative loading makes ruin certain");
    if (initial_capital < 0.0)
        throw std::domain_error("diffusion_limit_ruin: u must be nonnegative");
    return std::exp(-2.0 * rho * claim_mean * initial_capital / claim_second_moment);
}

double gbm_exponent(double a, double sigma) {
    if (!(sigma >= 0.0)) throw std::domain_error("gbm_exponent: sigma must be nonnegative");
    return a - 0.5 * sigma * sigma;
}

}  // namespace ruinlab
