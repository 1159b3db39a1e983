#include "ruinlab/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ruinlab {

CountingProcess CountingProcess::poisson(double rate) {
    if (!(rate >= 0.0)) throw std::domain_error("CountingProcess::poisson: negative rate");
    return CountingProcess(Kind::poisson, rate, std::nullopt, {});
}

CountingProcess CountingProcess::renewal(ClaimLaw inter_arrival) {
    return CountingProcess(Kind::renewal, 1.0 / inter_arrival.mean(), inter_arrival, {});
}

CountingProcess CountingProcess::schedule(std::vector<double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= 0.0 || (i > 0 && times[i] <= times[i - 1]))
            throw std::invalid_argument(
                "CountingProcess::schedule: times must be positive and strictly increasing");
    }
    return CountingProcess(Kind::schedule, 0.0, std::nullopt, std::move(times));
}

std::vector<double> CountingProcess::sample_arrivals(double horizon, Rng& rng) const {
    if (!(horizon > 0.0)) throw std::domain_error("sample_arrivals: horizon must be positive");
    std::vector<double> out;
    switch (kind_) {
        case Kind::poisson: {
            if (rate_ == 0.0) return out;
            double t = rng.exponential(1.0 / rate_);
            while (t <= horizon) {
                out.push_back(t);
                t += rng.exponential(1.0 / rate_);
            }
            break;
        }
        case Kind::renewal: {
            double t = inter_->sample(rng);
            while (t <= horizon) {
                out.push_back(t);
                t += inter_->sample(rng);
            }
            break;
        }
        case Kind::schedule:
            for (double t : times_) {
                if (t > horizon) break;
                out.push_back(t);
            }
            break;
    }
    return out;
}

std::vector<double> sample_standard_path(const std::vector<double>& grid, Rng& rng) {
    if (grid.empty() || grid.front() != 0.0)
        throw std::invalid_argument("sample_standard_path: grid must start at 0");
    std::vector<double> path(grid.size());
    path[0] = 0.0;
    double b = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double dt = grid[i] - grid[i - 1];
        if (!(dt > 0.0))
            throw std::invalid_argument("sample_standard_path: grid must be strictly increasing");
        b += std::sqrt(dt) * rng.normal();
        path[i] = b;
    }
    return path;
}

std::vector<double> sample_brownian_grid(double sigma, double alpha,
                                         const std::vector<double>& grid, Rng& rng) {
    std::vector<double> path = sample_standard_path(grid, rng);
    for (std::size_t i = 0; i < grid.size(); ++i)
        path[i] = sigma * path[i] + alpha * grid[i];
    return path;
}

std::pair<std::vector<double>, std::vector<double>>
bridge_refine(const std::vector<double>& grid, const std::vector<double>& standard_path,
              Rng& rng) {
    if (grid.size() != standard_path.size() || grid.size() < 2)
        throw std::invalid_argument("bridge_refine: bad input sizes");
    std::vector<double> g, p;
    g.reserve(2 * grid.size() - 1);
    p.reserve(2 * grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double t0 = grid[i], t1 = grid[i + 1];
        const double mid = 0.5 * (t0 + t1);
        // conditional law at the midpoint: mean of the endpoints plus
        // N(0, dt/4) for a symmetric split
        const double m = 0.5 * (standard_path[i] + standard_path[i + 1]);
        const double s = 0.5 * std::sqrt(t1 - t0);
        g.push_back(t0);
        p.push_back(standard_path[i]);
        g.push_back(mid);
        p.push_back(m + s * rng.normal());
    }
    g.push_back(grid.back());
    p.push_back(standard_path.back());
    return {std::move(g), std::move(p)};
}

LevyGridPath sample_levy_grid(const LevyJumpSpec& spec, double sigma, double alpha,
                              const std::vector<double>& grid, Rng& jump_time_rng,
                              Rng& jump_size_rng, Rng& brownian_rng) {
    LevyGridPath out;
    const double horizon = grid.back();
    if (spec.intensity > 0.0) {
        auto times = CountingProcess::poisson(spec.intensity).sample_arrivals(horizon, jump_time_rng);
        out.jumps.reserve(times.size());
        for (double t : times) out.jumps.emplace_back(t, spec.size_law->sample(jump_size_rng));
    }
    std::vector<double> jump_times(out.jumps.size());
    for (std::size_t i = 0; i < out.jumps.size(); ++i) jump_times[i] = out.jumps[i].first;
    out.grid = merge_grid(grid, jump_times);

    const std::vector<double> b = sample_standard_path(out.grid, brownian_rng);
    const double comp = spec.compensation();
    out.values.resize(out.grid.size());
    double jsum = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        while (j < out.jumps.size() && out.jumps[j].first <= out.grid[i]) {
            jsum += out.jumps[j].second;
            ++j;
        }
        const double l = b[i] + (jsum - comp * out.grid[i]);
        out.values[i] = sigma * l + alpha * out.grid[i];
    }
    return out;
}

std::vector<double> uniform_grid(double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("uniform_grid: horizon and dt must be positive");
    const auto n = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = dt * static_cast<double>(i);
    g.back() = horizon;
    if (g.size() >= 2 && g[g.size() - 2] >= horizon) g.erase(g.end() - 2);
    return g;
}

std::vector<double> merge_grid(const std::vector<double>& grid,
                               const std::vector<double>& extra) {
    if (extra.empty()) return grid;
    std::vector<double> b = extra;
    if (!std::is_sorted(b.begin(), b.end())) std::sort(b.begin(), b.end());
    std::vector<double> g;
    g.reserve(grid.size() + b.size());
    std::merge(grid.begin(), grid.end(), b.begin(), b.end(), std::back_inserter(g));
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace ruinlab
