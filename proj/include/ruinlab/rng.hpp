#pragma once

#include <cmath>
#include <cstdint>

namespace ruinlab {

// Identifies one reproducible random stream: a master seed plus a path
// index. Every (master, path, component) triple maps to an independent
// generator state, so results do not depend on execution order or
// thread count.
struct SeedSpec {
    std::uint64_t master = 0;
    std::uint64_t path = 0;
};

// Substream components. Claim arrivals, claim sizes, Brownian increments
// etc. each draw from their own generator, so adding Levy jumps (say)
// never shifts the Brownian stream.
enum class Stream : std::uint32_t {
    claim_arrivals = 1,
    claim_sizes = 2,
    levy_jump_times = 3,
    levy_jump_sizes = 4,
    brownian = 5,
    risk_noise = 6,
    crossing = 7,
    generic = 8,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with counter-based seeding. Distribution transforms are
// hand-rolled (Box-Muller, inverse CDF for exponentials) so streams are
// bit-reproducible across standard library versions.
class Rng {
public:
    Rng(SeedSpec seed, Stream component) {
        std::uint64_t s = seed.master;
        s ^= splitmix64(s) + 0x632be59bd9b4e019ULL * (seed.path + 1);
        s ^= splitmix64(s) + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(component) + 1);
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on the open interval (0,1); never returns 0 or 1, so it is
    // safe under log()
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double exponential(double mean) { return -mean * std::log(uniform()); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ruinlab
