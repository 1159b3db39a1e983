#pragma once

#include <utility>
#include <vector>

#include "ruinlab/model.hpp"
#include "ruinlab/rng.hpp"

namespace ruinlab {

// Claim arrival process: Poisson, renewal with i.i.d. inter-arrivals from
// a ClaimLaw, or a fixed deterministic schedule.
class CountingProcess {
public:
    enum class Kind { poisson, renewal, schedule };

    static CountingProcess poisson(double rate);
    static CountingProcess renewal(ClaimLaw inter_arrival);
    static CountingProcess schedule(std::vector<double> times);

    Kind kind() const { return kind_; }
    double rate() const { return rate_; }

    // Strictly increasing arrival times in (0, horizon].
    std::vector<double> sample_arrivals(double horizon, Rng& rng) const;

private:
    CountingProcess(Kind kind, double rate, std::optional<ClaimLaw> law,
                    std::vector<double> times)
        : kind_(kind), rate_(rate), inter_(std::move(law)), times_(std::move(times)) {}
    Kind kind_;
    double rate_;
    std::optional<ClaimLaw> inter_;
    std::vector<double> times_;
};

// Standard Brownian path at the grid nodes (grid[0] must be 0, value 0).
std::vector<double> sample_standard_path(const std::vector<double>& grid, Rng& rng);

// Values of sigma B_t + alpha t at the grid nodes. Computed as
// sigma * S + alpha * t from a standard path S, so scaling in sigma is
// bit-exact on a shared stream.
std::vector<double> sample_brownian_grid(double sigma, double alpha,
                                         const std::vector<double>& grid, Rng& rng);

// Brownian-bridge midpoint refinement: returns the 2x-refined grid and a
// path that agrees with the input bit-exactly at the coarse nodes.
std::pair<std::vector<double>, std::vector<double>>
bridge_refine(const std::vector<double>& grid, const std::vector<double>& standard_path,
              Rng& rng);

struct LevyGridPath {
    std::vector<double> grid;    // input grid with jump times inserted
    std::vector<double> values;  // sigma L_t + alpha t at the nodes
    std::vector<std::pair<double, double>> jumps;  // (time, size) of the L jumps
};

// Discretized sigma L_t + alpha t where L = B + compensated compound
// Poisson. Jump times are inserted as grid nodes; node values include the
// jump (cadlag). Uses three independent substreams so that intensity 0
// reproduces sample_brownian_grid bit-exactly on the Brownian substream.
LevyGridPath sample_levy_grid(const LevyJumpSpec& spec, double sigma, double alpha,
                              const std::vector<double>& grid, Rng& jump_time_rng,
                              Rng& jump_size_rng, Rng& brownian_rng);

// Uniform grid 0, dt, 2dt, ..., horizon (last node exactly horizon).
std::vector<double> uniform_grid(double horizon, double dt);

// Sorted union of a grid and extra nodes, duplicates removed.
std::vector<double> merge_grid(const std::vector<double>& grid,
                               const std::vector<double>& extra);

}  // namespace ruinlab
