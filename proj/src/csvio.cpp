#include "ruinlab/csvio.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace ruinlab {

std::string format_double(double v) {
    char buf[32];
    // shortest representation that round-trips
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back;
        std::sscanf(buf, "%lf", &back);
        if (back == v || (v != v && back != back)) break;
    }
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("write failed: " + path_);
}

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) throw std::runtime_error("close failed: " + path_);
}

void write_yor_grid_csv(const YorDensityGrid& grid, const std::string& path) {
    CsvWriter csv(path);
    csv.row({"t", "x", "u", "value", "err"});
    for (std::size_t i = 0; i < grid.x.size(); ++i)
        for (std::size_t j = 0; j < grid.u.size(); ++j)
            csv.row({format_double(grid.t), format_double(grid.x[i]),
                     format_double(grid.u[j]),
                     format_double(grid.values[i * grid.u.size() + j]),
                     format_double(grid.defect[i])});
    csv.close();
}

void write_density_grid_csv(const TransitionDensityGrid& grid, const std::string& path) {
    CsvWriter csv(path);
    csv.row({"t", "z_lo", "z_hi", "x_lo", "x_hi", "mass", "err"});
    const std::size_t nx = grid.x_edges.size() - 1;
    const std::size_t nz = grid.z_edges.size() - 1;
    for (std::size_t iz = 0; iz < nz; ++iz)
        for (std::size_t ix = 0; ix < nx; ++ix)
            csv.row({format_double(grid.t), format_double(grid.z_edges[iz]),
                     format_double(grid.z_edges[iz + 1]), format_double(grid.x_edges[ix]),
                     format_double(grid.x_edges[ix + 1]),
                     format_double(grid.cell_mass[iz * nx + ix]),
                     format_double(grid.cell_err[iz * nx + ix])});
    csv.close();
}

namespace {

// The layout is declared little-endian; the supported targets are
// little-endian, so plain writes suffice.
static_assert(sizeof(double) == 8, "binary tabulation assumes 64-bit doubles");

void put_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ofstream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64s(std::ofstream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::uint32_t get_u32(std::ifstream& in) {
    std::uint32_t v;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::uint64_t get_u64(std::ifstream& in) {
    std::uint64_t v;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double get_f64(std::ifstream& in) {
    double v;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::vector<double> get_f64s(std::ifstream& in, std::size_t n) {
    std::vector<double> v(n);
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write("RLT1", 4);
    return out;
}

std::ifstream open_in(const std::string& path, std::uint32_t expect_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "RLT1", 4) != 0)
        throw std::runtime_error("bad tabulation magic in " + path);
    if (get_u32(in) != expect_kind)
        throw std::runtime_error("wrong tabulation kind in " + path);
    return in;
}

}  // namespace

void write_yor_grid_binary(const YorDensityGrid& grid, const std::string& path) {
    std::ofstream out = open_out(path);
    put_u32(out, 1);
    put_f64(out, grid.t);
    put_u64(out, grid.x.size());
    put_u64(out, grid.u.size());
    put_f64s(out, grid.x);
    put_f64s(out, grid.u);
    put_f64s(out, grid.values);
    put_f64s(out, grid.defect);
    if (!out) throw std::runtime_error("write failed: " + path);
}

YorDensityGrid read_yor_grid_binary(const std::string& path) {
    std::ifstream in = open_in(path, 1);
    YorDensityGrid grid;
    grid.t = get_f64(in);
    const auto nx = static_cast<std::size_t>(get_u64(in));
    const auto nu = static_cast<std::size_t>(get_u64(in));
    grid.x = get_f64s(in, nx);
    grid.u = get_f64s(in, nu);
    grid.values = get_f64s(in, nx * nu);
    grid.defect = get_f64s(in, nx);
    if (!in) throw std::runtime_error("truncated tabulation: " + path);
    return grid;
}

void write_density_grid_binary(const TransitionDensityGrid& grid, const std::string& path) {
    std::ofstream out = open_out(path);
    put_u32(out, 2);
    put_f64(out, grid.t);
    put_u64(out, grid.z_edges.size());
    put_u64(out, grid.x_edges.size());
    put_f64s(out, grid.z_edges);
    put_f64s(out, grid.x_edges);
    put_f64s(out, grid.cell_mass);
    put_f64s(out, grid.cell_err);
    put_f64(out, grid.total_mass);
    put_f64(out, grid.convention == KernelConvention::time_changed ? 0.0 : 1.0);
    if (!out) throw std::runtime_error("write failed: " + path);
}

TransitionDensityGrid read_density_grid_binary(const std::string& path) {
    std::ifstream in = open_in(path, 2);
    TransitionDensityGrid grid;
    grid.t = get_f64(in);
    const auto nze = static_cast<std::size_t>(get_u64(in));
    const auto nxe = static_cast<std::size_t>(get_u64(in));
    if (nze < 2 || nxe < 2) throw std::runtime_error("degenerate tabulation: " + path);
    grid.z_edges = get_f64s(in, nze);
    grid.x_edges = get_f64s(in, nxe);
    grid.cell_mass = get_f64s(in, (nze - 1) * (nxe - 1));
    grid.cell_err = get_f64s(in, (nze - 1) * (nxe - 1));
    grid.total_mass = get_f64(in);
    grid.convention = get_f64(in) == 0.0 ? KernelConvention::time_changed
                                         : KernelConvention::printed_form;
    if (!in) throw std::runtime_error("truncated tabulation: " + path);
    return grid;
}

}  // namespace ruinlab
