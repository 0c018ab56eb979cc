#pragma once

#include <cmath>
#include <cstdint>

namespace polclone {

/// Deterministic, seedable, splittable random stream (xoshiro256++ seeded via
/// splitmix64). A run is reproducible from (seed, stream id) alone, so shard
/// results do not depend on thread scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
        std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1));
        for (auto& s : state_) s = splitmix64(x);
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

    /// Uniform in (0, 1]; never returns 0 so logarithms are safe.
    double uniform_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller with a cached spare.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_pos();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * pi() * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Exp(1) draw.
    double exponential() { return -std::log(uniform_pos()); }

    /// Gamma(2, 1) draw (sum of two unit exponentials).
    double gamma2() { return exponential() + exponential(); }

    static constexpr double pi() { return 3.14159265358979323846; }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace polclone
