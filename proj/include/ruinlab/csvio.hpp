#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "ruinlab/density.hpp"
#include "ruinlab/yor.hpp"

namespace ruinlab {

// Shortest round-trip decimal representation (up to 17 significant digits).
std::string format_double(double v);

// Minimal CSV emitter: comma separator, '.' decimal point, LF endings,
// doubles via format_double. Fields are written verbatim; callers must not
// pass fields containing commas or newlines.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void row(const std::vector<std::string>& fields);
    void close();

private:
    std::ofstream out_;
    std::string path_;
};

// columns: t, x, u, value, err (err = per-x normalization defect)
void write_yor_grid_csv(const YorDensityGrid& grid, const std::string& path);

// columns: t, z_lo, z_hi, x_lo, x_hi, mass, err
void write_density_grid_csv(const TransitionDensityGrid& grid, const std::string& path);

// Binary tabulation, little-endian throughout:
//   magic "RLT1" (4 bytes), kind u32 (1 = Yor grid, 2 = transition grid),
//   t as f64, two axis lengths as u64, the two axes as f64 arrays,
//   row-major f64 values, then the f64 error array (per-x defects for kind 1,
//   per-cell errors for kind 2; kind 2 appends total_mass and the kernel
//   convention as a trailing f64 pair).
void write_yor_grid_binary(const YorDensityGrid& grid, const std::string& path);
YorDensityGrid read_yor_grid_binary(const std::string& path);

void write_density_grid_binary(const TransitionDensityGrid& grid, const std::string& path);
TransitionDensityGrid read_density_grid_binary(const std::string& path);

}  // namespace ruinlab
