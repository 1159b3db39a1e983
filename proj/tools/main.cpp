// ruinlab: command-line front end. Parses a sectioned key=value config plus
// flag overrides, runs one experiment, and writes a manifest + CSV artifacts
// into a run directory. Re-running a manifest reproduces every result file
// byte-identically.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ruinlab/csvio.hpp"
#include "ruinlab/density.hpp"
#include "ruinlab/model.hpp"
#include "ruinlab/paths.hpp"
#include "ruinlab/processes.hpp"
#include "ruinlab/ruin_mc.hpp"
#include "ruinlab/yor.hpp"

namespace fs = std::filesystem;
using namespace ruinlab;

namespace {

constexpr std::uint64_t kDefaultSeed = 1914;  // fixed; never wall-clock

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat typed key-value store with "[section]" headers in the file form and
// "section.key" as the canonical key. Every key must be consumed by the
// experiment that runs; leftovers are reported as unknown keys.
class Config {
public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read config file: " + path);
        std::string line, section;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                if (section.empty())
                    throw ConfigError(path + ":" + std::to_string(lineno) + ": empty section");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            if (key.empty())
                throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
            if (!section.empty() && key.find('.') == std::string::npos)
                key = section + "." + key;
            kv_[key] = trim(line.substr(eq + 1));
        }
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_str(const std::string& key, const std::string& fallback) {
        consumed_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    std::string require_str(const std::string& key) {
        consumed_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing required key: " + key);
        return it->second;
    }

    double get_double(const std::string& key, double fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) {
            consumed_.insert(key);
            resolved_[key] = fallback;
            return fallback;
        }
        return parse_double(key, it->second);
    }

    double require_double(const std::string& key) {
        return parse_double(key, require_str(key));
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) {
        const std::string s = get_str(key, std::to_string(fallback));
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("key " + key + ": not an unsigned integer: " + s);
        }
    }

    std::vector<double> get_doubles(const std::string& key, const std::string& fallback) {
        const std::string s = get_str(key, fallback);
        std::vector<double> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            out.push_back(parse_double(key, item));
        }
        if (out.empty()) throw ConfigError("key " + key + ": empty list");
        return out;
    }

    std::vector<std::string> unconsumed() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : kv_)
            if (!consumed_.count(k)) out.push_back(k);
        return out;
    }

    // All consumed keys with their resolved values, for the manifest.
    std::map<std::string, std::string> resolved() const {
        std::map<std::string, std::string> out;
        for (const auto& k : consumed_) {
            auto it = kv_.find(k);
            if (it != kv_.end()) {
                out[k] = it->second;
            } else {
                auto rd = resolved_.find(k);
                if (rd != resolved_.end()) out[k] = format_double(rd->second);
                auto rs = resolved_str_.find(k);
                if (rs != resolved_str_.end()) out[k] = rs->second;
            }
        }
        return out;
    }

    void note_default(const std::string& key, const std::string& value) {
        consumed_.insert(key);
        if (!kv_.count(key)) resolved_str_[key] = value;
    }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    double parse_double(const std::string& key, const std::string& s) {
        consumed_.insert(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("key " + key + ": not a number: " + s);
        }
    }

    std::map<std::string, std::string> kv_;
    std::set<std::string> consumed_;
    std::map<std::string, double> resolved_;
    std::map<std::string, std::string> resolved_str_;
};

// --- config -> domain objects -----------------------------------------

ClaimLaw read_claim_law(Config& cfg, const std::string& prefix) {
    const std::string kind = cfg.get_str(prefix + "law", "exponential");
    cfg.note_default(prefix + "law", kind);
    if (kind == "exponential") return ClaimLaw::exponential(cfg.get_double(prefix + "mean", 1.0));
    if (kind == "pareto")
        return ClaimLaw::pareto(cfg.require_double(prefix + "shape"),
                                cfg.require_double(prefix + "scale"));
    if (kind == "lognormal")
        return ClaimLaw::log_normal(cfg.get_double(prefix + "location", 0.0),
                                    cfg.require_double(prefix + "scale"));
    throw ConfigError("key " + prefix + "law: unknown claim law '" + kind + "'");
}

PremiumSpec read_premium(Config& cfg) {
    const std::string kind = cfg.get_str("model.premium", "constant");
    cfg.note_default("model.premium", kind);
    const double rate = cfg.get_double("model.premium_rate", 1.1);
    if (kind == "constant") return PremiumSpec::constant(rate);
    if (kind == "sinusoidal") {
        const double amp = cfg.get_double("model.premium_amp", 0.5);
        if (std::abs(amp) > 1.0)
            throw ConfigError("key model.premium_amp: |amp| must be <= 1 (premium >= 0)");
        return PremiumSpec::function(
            [rate, amp](double t) { return rate * (1.0 + amp * std::sin(t)); },
            rate * (1.0 + std::abs(amp)));
    }
    throw ConfigError("key model.premium: unknown premium kind '" + kind + "'");
}

RiskParams read_risk_params(Config& cfg) {
    return make_risk_params(cfg.get_double("model.u", 10.0), read_premium(cfg),
                            cfg.get_double("model.lambda", 1.0),
                            read_claim_law(cfg, "model.claim_"));
}

InvestmentModel read_investment(Config& cfg) {
    const std::string kind = cfg.get_str("investment.kind", "gbm");
    cfg.note_default("investment.kind", kind);
    if (kind == "gbm")
        return InvestmentModel::gbm(cfg.get_double("investment.a", 0.01),
                                    cfg.get_double("investment.sigma", 0.2));
    if (kind == "deterministic")
        return InvestmentModel::deterministic(cfg.get_double("investment.a", 0.01));
    if (kind == "explevy") {
        LevyJumpSpec jumps;
        jumps.intensity = cfg.get_double("investment.jump_intensity", 0.0);
        if (jumps.intensity > 0.0) jumps.size_law = read_claim_law(cfg, "investment.jump_");
        return InvestmentModel::exp_levy(cfg.get_double("investment.sigma", 0.2),
                                         cfg.get_double("investment.alpha", -0.01), jumps);
    }
    throw ConfigError("key investment.kind: unknown investment kind '" + kind + "'");
}

std::optional<CountingProcess> read_counting(Config& cfg) {
    const std::string kind = cfg.get_str("counting.kind", "poisson");
    cfg.note_default("counting.kind", kind);
    if (kind == "poisson") return std::nullopt;  // the paths module default
    if (kind == "renewal") return CountingProcess::renewal(read_claim_law(cfg, "counting.renewal_"));
    if (kind == "schedule") return CountingProcess::schedule(cfg.get_doubles("counting.times", ""));
    throw ConfigError("key counting.kind: unknown counting kind '" + kind + "'");
}

SchemeConfig read_scheme(Config& cfg) {
    SchemeConfig sc;
    sc.dt = cfg.get_double("sim.dt", 0.01);
    const std::string scheme = cfg.get_str("sim.scheme", "sde_exact");
    cfg.note_default("sim.scheme", scheme);
    if (scheme == "sde_exact")
        sc.scheme = Scheme::sde_exact;
    else if (scheme == "dilation_exact")
        sc.scheme = Scheme::dilation_exact;
    else if (scheme == "euler_sde")
        sc.scheme = Scheme::euler_sde;
    else
        throw ConfigError("key sim.scheme: unknown scheme '" + scheme + "'");
    const std::string quad = cfg.get_str("sim.quadrature", "trapezoid");
    cfg.note_default("sim.quadrature", quad);
    if (quad == "trapezoid")
        sc.quadrature = PremiumQuadrature::trapezoid;
    else if (quad == "left_point")
        sc.quadrature = PremiumQuadrature::left_point;
    else
        throw ConfigError("key sim.quadrature: unknown quadrature '" + quad + "'");
    if (!(sc.dt > 0.0)) throw ConfigError("key sim.dt: must be positive");
    return sc;
}

std::size_t read_count(Config& cfg, const std::string& key, std::uint64_t fallback) {
    const std::uint64_t n = cfg.get_u64(key, fallback);
    if (n == 0) throw ConfigError("key " + key + ": must be positive");
    return static_cast<std::size_t>(n);
}

// --- artifacts ---------------------------------------------------------

struct RunContext {
    std::string kind;
    fs::path dir;
    std::uint64_t seed = kDefaultSeed;
    Config* cfg = nullptr;

    fs::path file(const std::string& name) const { return dir / name; }

    void write_manifest() const {
        std::ofstream out(dir / "manifest.cfg", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
        out << "kind = " << kind << "\n";
        for (const auto& [k, v] : cfg->resolved())
            if (k != "kind") out << k << " = " << v << "\n";
    }
};

std::string regime_name(RuinRegime r) {
    switch (r) {
        case RuinRegime::certain: return "certain";
        case RuinRegime::boundary: return "boundary";
        default: return "not_certain";
    }
}

void write_ruin_report_csv(const fs::path& path,
                           const std::vector<CorollaryCase>& cases) {
    CsvWriter csv(path.string());
    csv.row({"variant", "horizon", "n", "ruin_freq", "ci_low", "ci_high", "regime"});
    for (const auto& c : cases)
        for (std::size_t i = 0; i < c.report.horizons.size(); ++i) {
            const auto& e = c.report.frequencies[i];
            csv.row({c.name, format_double(c.report.horizons[i]), std::to_string(e.n_paths),
                     format_double(e.estimate), format_double(e.ci_low),
                     format_double(e.ci_high), regime_name(c.report.regime)});
        }
    csv.close();
}

void write_summary(const RunContext& run, const std::vector<std::string>& lines) {
    std::ofstream out(run.file("summary.txt"), std::ios::binary);
    out << "kind: " << run.kind << "\nseed: " << run.seed << "\n";
    for (const auto& l : lines) out << l << "\n";
    for (const auto& l : lines) std::cout << l << "\n";
}

std::string envelope_lines(const CertainRuinReport& r, std::vector<std::string>& lines) {
    lines.push_back("regime: " + regime_name(r.regime));
    lines.push_back("median terminal dilation (" + std::to_string(r.n_envelope) +
                    " paths): " + format_double(r.median_terminal_dilation));
    lines.push_back("envelope supremum p99: " + format_double(r.envelope_sup_p99));
    return lines.back();
}

// --- experiments --------------------------------------------------------

void run_simulate(RunContext& run, Config& cfg) {
    const RiskParams params = read_risk_params(cfg);
    const InvestmentModel inv = read_investment(cfg);
    const SchemeConfig sc = read_scheme(cfg);
    const auto counting = read_counting(cfg);
    const double horizon = cfg.get_double("sim.horizon", 100.0);
    run.write_manifest();

    const SimulatedPath path = simulate_invested(params, inv, sc, horizon,
                                                 SeedSpec{run.seed, 0},
                                                 counting ? &*counting : nullptr);
    std::set<double> claim_times;
    for (const auto& c : path.claims) claim_times.insert(c.time);
    CsvWriter csv(run.file("path.csv").string());
    csv.row({"t", "env", "X", "Xp", "is_claim"});
    for (std::size_t i = 0; i < path.grid.size(); ++i)
        csv.row({format_double(path.grid[i]), format_double(path.env[i]),
                 format_double(path.x[i]), format_double(path.xp[i]),
                 claim_times.count(path.grid[i]) ? "1" : "0"});
    csv.close();
    std::vector<std::string> lines;
    lines.push_back("terminal invested capital: " + format_double(path.xp.back()));
    lines.push_back(path.ruined_at ? "ruined at: " + format_double(*path.ruined_at)
                                   : "not ruined");
    write_summary(run, lines);
}

void run_ruin(RunContext& run, Config& cfg) {
    const RiskParams params = read_risk_params(cfg);
    const InvestmentModel inv = read_investment(cfg);
    const SchemeConfig sc = read_scheme(cfg);
    const auto counting = read_counting(cfg);
    const double horizon = cfg.get_double("sim.horizon", 400.0);
    const std::size_t n = read_count(cfg, "sim.n_paths", 10000);
    run.write_manifest();

    const MonteCarloEstimate e =
        estimate_ruin(params, inv, sc, horizon, n, run.seed, counting ? &*counting : nullptr);
    CsvWriter csv(run.file("results.csv").string());
    csv.row({"variant", "horizon", "n", "ruin_freq", "ci_low", "ci_high", "regime"});
    csv.row({"base", format_double(horizon), std::to_string(e.n_paths),
             format_double(e.estimate), format_double(e.ci_low), format_double(e.ci_high),
             regime_name(inv.regime())});
    csv.close();
    write_summary(run, {"ruin frequency at T=" + format_double(horizon) + ": " +
                        format_double(e.estimate) + "  [" + format_double(e.ci_low) + ", " +
                        format_double(e.ci_high) + "]"});
}

void run_certain_ruin(RunContext& run, Config& cfg) {
    const RiskParams params = read_risk_params(cfg);
    const InvestmentModel inv = read_investment(cfg);
    const SchemeConfig sc = read_scheme(cfg);
    const auto counting = read_counting(cfg);
    const std::vector<double> ladder = cfg.get_doubles("sim.horizons", "250,500,1000,2000");
    const std::size_t n = read_count(cfg, "sim.n_paths", 10000);
    const std::size_t n_env = read_count(cfg, "sim.n_envelope", 500);
    cfg.get_double("tolerance.final_freq", 0.95);
    run.write_manifest();

    const CertainRuinReport report = certain_ruin_experiment(
        params, inv, sc, ladder, n, run.seed, counting ? &*counting : nullptr, n_env);
    write_ruin_report_csv(run.file("results.csv"), {{"base", report}});
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < ladder.size(); ++i)
        lines.push_back("T=" + format_double(ladder[i]) + ": freq " +
                        format_double(report.frequencies[i].estimate) + "  [" +
                        format_double(report.frequencies[i].ci_low) + ", " +
                        format_double(report.frequencies[i].ci_high) + "]");
    envelope_lines(report, lines);
    write_summary(run, lines);
}

void run_corollaries(RunContext& run, Config& cfg) {
    const RiskParams params = read_risk_params(cfg);
    const InvestmentModel inv = read_investment(cfg);
    const SchemeConfig sc = read_scheme(cfg);
    const std::vector<double> ladder = cfg.get_doubles("sim.horizons", "250,500,1000,2000");
    const std::size_t n = read_count(cfg, "sim.n_paths", 10000);
    cfg.get_double("tolerance.final_freq", 0.90);

    // the three generalizations of the certain-ruin theorem
    std::vector<CorollaryVariant> variants;
    {
        CorollaryVariant v;
        v.name = "bounded_premium";
        const double rate = cfg.get_double("corollary.premium_rate", 1.1);
        const double amp = cfg.get_double("corollary.premium_amp", 0.5);
        v.premium = PremiumSpec::function(
            [rate, amp](double t) { return rate * (1.0 + amp * std::sin(t)); },
            rate * (1.0 + std::abs(amp)));
        variants.push_back(std::move(v));
    }
    {
        CorollaryVariant v;
        v.name = "renewal_counting";
        v.counting = CountingProcess::renewal(
            ClaimLaw::log_normal(cfg.get_double("corollary.renewal_location", -0.125),
                                 cfg.get_double("corollary.renewal_scale", 0.5)));
        variants.push_back(std::move(v));
    }
    {
        CorollaryVariant v;
        v.name = "levy_investment";
        LevyJumpSpec jumps;
        jumps.intensity = cfg.get_double("corollary.jump_intensity", 0.5);
        jumps.size_law = ClaimLaw::exponential(cfg.get_double("corollary.jump_mean", 0.1));
        v.investment = InvestmentModel::exp_levy(cfg.get_double("corollary.sigma", 0.2),
                                                 cfg.get_double("corollary.alpha", -0.01),
                                                 std::move(jumps));
        variants.push_back(std::move(v));
    }
    run.write_manifest();

    const auto cases = corollary_matrix(params, inv, sc, ladder, variants, n, run.seed);
    write_ruin_report_csv(run.file("results.csv"), cases);
    std::vector<std::string> lines;
    for (const auto& c : cases)
        lines.push_back(c.name + ": final freq " +
                        format_double(c.report.frequencies.back().estimate) + "  (" +
                        regime_name(c.report.regime) + ")");
    write_summary(run, lines);
}

void run_theta(RunContext& run, Config& cfg) {
    const double r = cfg.get_double("theta.r", 1.0);
    const double t = cfg.get_double("theta.t", 1.0);
    const std::size_t sub = read_count(cfg, "theta.subdivisions", 1);
    run.write_manifest();

    const ThetaEval eval = theta(r, t, sub);
    CsvWriter csv(run.file("results.csv").string());
    csv.row({"r", "t", "value", "err"});
    csv.row({format_double(r), format_double(t), format_double(eval.value),
             format_double(eval.error)});
    csv.close();
    write_summary(run, {"theta(" + format_double(r) + ", " + format_double(t) +
                        ") = " + format_double(eval.value) + "  (err " +
                        format_double(eval.error) + ")"});
}

void run_yor_density(RunContext& run, Config& cfg) {
    const double t = cfg.get_double("yor.t", 1.0);
    const std::vector<double> xs = cfg.get_doubles("yor.x", "-1,0,1");
    const double u_lo = cfg.get_double("yor.u_lo", 1e-3);
    const double u_hi = cfg.get_double("yor.u_hi", 1e3);
    const std::size_t nu = read_count(cfg, "yor.n_u", 200);
    cfg.get_double("tolerance.defect", 0.01);
    if (nu < 2) throw ConfigError("key yor.n_u: need at least two grid points");
    if (!(u_lo > 0.0 && u_hi > u_lo)) throw ConfigError("key yor.u_lo: need 0 < u_lo < u_hi");
    run.write_manifest();

    std::vector<double> us(nu);
    const double step = std::log(u_hi / u_lo) / static_cast<double>(nu - 1);
    for (std::size_t j = 0; j < nu; ++j)
        us[j] = u_lo * std::exp(step * static_cast<double>(j));
    const YorDensityGrid grid = make_yor_grid(t, xs, us);
    write_yor_grid_csv(grid, run.file("yor_grid.csv").string());
    write_yor_grid_binary(grid, run.file("yor_grid.bin").string());
    CsvWriter csv(run.file("results.csv").string());
    csv.row({"t", "x", "defect"});
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        csv.row({format_double(t), format_double(xs[i]), format_double(grid.defect[i])});
        lines.push_back("x=" + format_double(xs[i]) + ": normalization defect " +
                        format_double(grid.defect[i]));
    }
    csv.close();
    write_summary(run, lines);
}

DiffusionRiskParams read_diffusion_params(Config& cfg) {
    const double drift = cfg.get_double("density.drift", 0.1);
    const double var = cfg.get_double("density.var", 1.0);
    // expose (drift, var) directly; lambda/mu/m factorizations are
    // equivalent, so fix mu = 1
    return make_diffusion_params(cfg.get_double("density.u", 2.0), drift, var, 1.0,
                                 1.0, cfg.get_double("density.sigma", 1.0),
                                 cfg.get_double("density.alpha", -0.1));
}

KernelConvention read_convention(Config& cfg) {
    const std::string k = cfg.get_str("density.kernel", "time_changed");
    cfg.note_default("density.kernel", k);
    if (k == "time_changed") return KernelConvention::time_changed;
    if (k == "printed") return KernelConvention::printed_form;
    throw ConfigError("key density.kernel: unknown kernel convention '" + k + "'");
}

void run_transition_density(RunContext& run, Config& cfg) {
    const DiffusionRiskParams params = read_diffusion_params(cfg);
    const KernelConvention conv = read_convention(cfg);
    const double t = cfg.get_double("density.t", 1.0);
    const double z_lo = cfg.get_double("density.z_lo", params.initial_capital - 8.0);
    const double z_hi = cfg.get_double("density.z_hi", params.initial_capital + 8.0);
    const std::size_t nz = read_count(cfg, "density.n_z", 20);
    const double sd = params.sigma * std::sqrt(t);
    const double x_lo = cfg.get_double("density.x_lo", params.alpha * t - 5.0 * sd);
    const double x_hi = cfg.get_double("density.x_hi", params.alpha * t + 5.0 * sd);
    const std::size_t nx = read_count(cfg, "density.n_x", 20);
    cfg.get_double("tolerance.mass_lo", 0.98);
    cfg.get_double("tolerance.mass_hi", 1.02);
    if (!(z_hi > z_lo) || !(x_hi > x_lo))
        throw ConfigError("key density.z_lo: need z_lo < z_hi and x_lo < x_hi");
    run.write_manifest();

    auto edges = [](double lo, double hi, std::size_t n) {
        std::vector<double> e(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        return e;
    };
    const TransitionDensityGrid grid =
        make_density_grid(params, t, edges(z_lo, z_hi, nz), edges(x_lo, x_hi, nx), conv);
    write_density_grid_csv(grid, run.file("density_grid.csv").string());
    write_density_grid_binary(grid, run.file("density_grid.bin").string());
    CsvWriter csv(run.file("results.csv").string());
    csv.row({"t", "total_mass"});
    csv.row({format_double(t), format_double(grid.total_mass)});
    csv.close();
    write_summary(run, {"grid mass: " + format_double(grid.total_mass)});
}

void run_ruin_at_t(RunContext& run, Config& cfg) {
    const DiffusionRiskParams params = read_diffusion_params(cfg);
    const KernelConvention conv = read_convention(cfg);
    const double t = cfg.get_double("density.t", 1.0);
    const std::size_t mc_n = read_count(cfg, "mc.n_paths", 100000);
    const double mc_dt = cfg.get_double("mc.dt", 1e-3);
    cfg.get_double("tolerance.mc_gap", 0.01);
    run.write_manifest();

    const double prob = ruin_probability_at(params, t, conv);
    std::size_t ruined = 0;
    mc_density_oracle_samples(params, t, mc_n, mc_dt, run.seed, OracleRoute::time_change,
                              [&](double z, double) { ruined += z <= 0.0; });
    const Interval ci = wilson_interval(ruined, mc_n);
    const double mc = static_cast<double>(ruined) / static_cast<double>(mc_n);
    CsvWriter csv(run.file("results.csv").string());
    csv.row({"t", "u", "sigma", "alpha", "ruin_prob", "err_budget", "mc_estimate",
             "mc_ci_low", "mc_ci_high"});
    csv.row({format_double(t), format_double(params.initial_capital),
             format_double(params.sigma), format_double(params.alpha), format_double(prob),
             format_double(1e-4), format_double(mc), format_double(ci.low),
             format_double(ci.high)});
    csv.close();
    write_summary(run, {"ruin probability at t=" + format_double(t) + ": " +
                            format_double(prob),
                        "MC check: " + format_double(mc) + "  [" + format_double(ci.low) +
                            ", " + format_double(ci.high) + "]"});
}

void run_diffusion_limit(RunContext& run, Config& cfg) {
    const double rho = cfg.get_double("diffusion.rho", 0.1);
    const double mu = cfg.get_double("diffusion.mu", 1.0);
    const double m = cfg.get_double("diffusion.m", 2.0);
    const double u = cfg.get_double("diffusion.u", 10.0);
    run.write_manifest();

    const double value = diffusion_limit_ruin(rho, mu, m, u);
    CsvWriter csv(run.file("results.csv").string());
    csv.row({"rho", "mu", "m", "u", "value"});
    csv.row({format_double(rho), format_double(mu), format_double(m), format_double(u),
             format_double(value)});
    csv.close();
    write_summary(run, {format_double(value)});
}

void run_cf_check(RunContext& run, Config& cfg) {
    const DiffusionRiskParams params = read_diffusion_params(cfg);
    const double t = cfg.get_double("density.t", 1.0);
    const std::size_t n = read_count(cfg, "mc.n_paths", 1000000);
    const double dt = cfg.get_double("mc.dt", 1e-3);
    const double lo = cfg.get_double("cf.lo", -2.0);
    const double hi = cfg.get_double("cf.hi", 2.0);
    const std::size_t nn = read_count(cfg, "cf.n", 5);
    cfg.get_double("tolerance.sup", 0.02);
    run.write_manifest();

    std::vector<double> grid(nn);
    for (std::size_t i = 0; i < nn; ++i)
        grid[i] = nn == 1 ? lo
                          : lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(nn - 1);
    const double sup = cf_crosscheck(params, t, grid, grid, n, dt, run.seed);
    CsvWriter csv(run.file("results.csv").string());
    csv.row({"n_paths", "dt", "sup_diff"});
    csv.row({std::to_string(n), format_double(dt), format_double(sup)});
    csv.close();
    write_summary(run, {"sup CF discrepancy: " + format_double(sup)});
}

// --- report -------------------------------------------------------------

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

int run_report(const std::string& dir) {
    const fs::path manifest = fs::path(dir) / "manifest.cfg";
    if (!fs::exists(manifest)) {
        std::cerr << "report: no manifest in " << dir << "\n";
        return 2;
    }
    Config cfg;
    cfg.load_file(manifest.string());
    const std::string kind = cfg.get_str("kind", "");
    if (kind.empty()) {
        std::cerr << "report: manifest missing kind\n";
        return 2;
    }
    const auto rows = read_csv(fs::path(dir) / "results.csv");
    if (rows.size() < 2) {
        std::cerr << "report: empty results.csv\n";
        return 2;
    }
    std::cout << "kind: " << kind << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
        std::cout << "\n";
    }

    auto col = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < rows[0].size(); ++i)
            if (rows[0][i] == name) return i;
        throw ConfigError("results.csv missing column " + name);
    };
    bool fail = false;
    auto verdict = [&](const std::string& what, bool ok) {
        std::cout << what << ": " << (ok ? "PASS" : "FAIL") << "\n";
        fail = fail || !ok;
    };
    if (kind == "certain-ruin" || kind == "corollaries") {
        const double tol = cfg.get_double("tolerance.final_freq",
                                          kind == "corollaries" ? 0.90 : 0.95);
        // final-horizon row per variant
        std::map<std::string, double> final_freq;
        const std::size_t cv = col("variant"), cf = col("ruin_freq");
        for (std::size_t i = 1; i < rows.size(); ++i)
            final_freq[rows[i][cv]] = std::stod(rows[i][cf]);
        for (const auto& [name, freq] : final_freq)
            verdict(name + " final frequency >= " + format_double(tol), freq >= tol);
    } else if (kind == "yor-density") {
        const double tol = cfg.get_double("tolerance.defect", 0.01);
        const std::size_t cd = col("defect");
        for (std::size_t i = 1; i < rows.size(); ++i)
            verdict("x=" + rows[i][col("x")] + " defect < " + format_double(tol),
                    std::stod(rows[i][cd]) < tol);
    } else if (kind == "transition-density") {
        const double lo = cfg.get_double("tolerance.mass_lo", 0.98);
        const double hi = cfg.get_double("tolerance.mass_hi", 1.02);
        const double mass = std::stod(rows[1][col("total_mass")]);
        verdict("grid mass in [" + format_double(lo) + ", " + format_double(hi) + "]",
                mass >= lo && mass <= hi);
    } else if (kind == "ruin-at-t") {
        const double tol = cfg.get_double("tolerance.mc_gap", 0.01);
        const double p = std::stod(rows[1][col("ruin_prob")]);
        const double mc = std::stod(rows[1][col("mc_estimate")]);
        verdict("|analytic - MC| <= " + format_double(tol), std::abs(p - mc) <= tol);
    } else if (kind == "cf-check") {
        const double tol = cfg.get_double("tolerance.sup", 0.02);
        verdict("sup CF discrepancy < " + format_double(tol),
                std::stod(rows[1][col("sup_diff")]) < tol);
    }
    return fail ? 1 : 0;
}

int dispatch(const std::string& kind, Config& cfg, const std::string& out_flag,
             std::uint64_t seed) {
    RunContext run;
    run.kind = kind;
    run.seed = seed;
    run.cfg = &cfg;
    cfg.note_default("run.seed", std::to_string(seed));
    // a manifest being re-run carries its own kind; it must match
    const std::string stored_kind = cfg.get_str("kind", kind);
    if (stored_kind != kind) {
        std::cerr << "config error: key kind: manifest is for '" << stored_kind << "'\n";
        return 2;
    }

    std::string out = out_flag;
    if (out.empty()) out = cfg.get_str("run.out", "");
    if (out.empty()) {
        const char* root = std::getenv("RUINLAB_OUT");
        out = (fs::path(root ? root : "runs") / kind).string();
    }
    cfg.note_default("run.out", out);
    cfg.get_u64("run.threads", 1);  // accepted; results are thread-count independent
    run.dir = out;

    // validation phase: build everything the experiment needs, then flag
    // leftovers, before any file is written
    try {
        fs::create_directories(run.dir);
        if (kind == "simulate")
            run_simulate(run, cfg);
        else if (kind == "ruin")
            run_ruin(run, cfg);
        else if (kind == "certain-ruin")
            run_certain_ruin(run, cfg);
        else if (kind == "corollaries")
            run_corollaries(run, cfg);
        else if (kind == "theta")
            run_theta(run, cfg);
        else if (kind == "yor-density")
            run_yor_density(run, cfg);
        else if (kind == "transition-density")
            run_transition_density(run, cfg);
        else if (kind == "ruin-at-t")
            run_ruin_at_t(run, cfg);
        else if (kind == "diffusion-limit")
            run_diffusion_limit(run, cfg);
        else if (kind == "cf-check")
            run_cf_check(run, cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical-accuracy error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    const auto leftovers = cfg.unconsumed();
    if (!leftovers.empty()) {
        for (const auto& k : leftovers) std::cerr << "config error: unknown key: " << k << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ruin-with-risky-investments simulation and density toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {
        "simulate",       "ruin",      "certain-ruin",       "corollaries",
        "theta",          "yor-density", "transition-density", "ruin-at-t",
        "diffusion-limit", "cf-check"};

    struct Common {
        std::string config;
        std::string out;
        std::string threads;
        std::uint64_t seed = kDefaultSeed;
        std::vector<std::string> sets;
    };
    std::map<std::string, Common> common;
    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind);
        auto& c = common[kind];
        sub->add_option("--config", c.config, "config file (section.key = value)");
        sub->add_option("--seed", c.seed, "master seed (default fixed, never wall-clock)");
        sub->add_option("--out", c.out, "run directory");
        sub->add_option("--threads", c.threads,
                        "worker count hint; results are identical for any value");
        sub->add_option("--set", c.sets, "override any config key: --set section.key=value");
    }
    // documented convenience flags from the common workflows
    std::map<std::string, std::map<std::string, std::string>> flag_keys = {
        {"diffusion-limit",
         {{"--rho", "diffusion.rho"}, {"--mu", "diffusion.mu"}, {"--m", "diffusion.m"},
          {"--u", "diffusion.u"}}},
        {"theta", {{"--r", "theta.r"}, {"--t", "theta.t"}}},
        {"ruin",
         {{"--u", "model.u"}, {"--horizon", "sim.horizon"}, {"--n", "sim.n_paths"},
          {"--dt", "sim.dt"}}},
        {"certain-ruin", {{"--n", "sim.n_paths"}, {"--dt", "sim.dt"}}},
        {"corollaries", {{"--n", "sim.n_paths"}, {"--dt", "sim.dt"}}},
        {"simulate", {{"--horizon", "sim.horizon"}, {"--dt", "sim.dt"}}},
        {"yor-density", {{"--t", "yor.t"}, {"--x", "yor.x"}}},
        {"transition-density", {{"--t", "density.t"}, {"--u", "density.u"}}},
        {"ruin-at-t", {{"--t", "density.t"}, {"--u", "density.u"}}},
        {"cf-check", {{"--t", "density.t"}, {"--n", "mc.n_paths"}}},
    };
    std::map<std::string, std::map<std::string, std::string>> flag_values;
    for (auto& [kind, flags] : flag_keys) {
        auto* sub = app.get_subcommand(kind);
        for (auto& [flag, key] : flags)
            sub->add_option(flag, flag_values[kind][key]);
    }

    auto* report = app.add_subcommand("report", "summarize a completed run directory");
    std::string report_dir;
    report->add_option("dir", report_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (report->parsed()) {
        try {
            return run_report(report_dir);
        } catch (const std::exception& e) {
            std::cerr << "report: " << e.what() << "\n";
            return 2;
        }
    }

    for (const auto& kind : kinds) {
        auto* sub = app.get_subcommand(kind);
        if (!sub->parsed()) continue;
        const auto& c = common[kind];
        Config cfg;
        try {
            if (!c.config.empty()) cfg.load_file(c.config);
            for (const auto& s : c.sets) {
                const auto eq = s.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw ConfigError("--set expects section.key=value, got: " + s);
                cfg.set(s.substr(0, eq), s.substr(eq + 1));
            }
            for (const auto& [key, value] : flag_values[kind])
                if (!value.empty()) cfg.set(key, value);
            if (!c.threads.empty()) cfg.set("run.threads", c.threads);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
        // --seed beats a seed stored in the config file only when given
        std::uint64_t seed = c.seed;
        if (sub->count("--seed") == 0 && cfg.has("run.seed"))
            seed = cfg.get_u64("run.seed", kDefaultSeed);
        return dispatch(kind, cfg, c.out, seed);
    }
    return 0;
}
