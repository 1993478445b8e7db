#pragma once

#include <cmath>
#include <cstdint>

namespace svjmle {

// SplitMix64 step: advances the state and returns a mixed output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ with per-trajectory substreams. A stream is a pure function
// of (master_seed, stream_index): the index is hashed into the seeding
// chain, so Monte Carlo results do not depend on execution order or thread
// count. Sampling helpers are hand-rolled (no std::distribution) so the
// produced sequences are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { seed_state(seed, 0); }

    Rng(std::uint64_t master_seed, std::uint64_t stream_index) {
        seed_state(master_seed, stream_index);
    }

    static Rng substream(std::uint64_t master_seed, std::uint64_t stream_index) {
        return Rng(master_seed, stream_index);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0, 1]; never returns 0 so log() is always finite.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Marsaglia polar method with a cached spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Knuth multiplication method; adequate for the small per-step means used
    // here (jump intensities times dt, Poisson mixing in the exact CIR draw).
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        int k = 0;
        double p = uniform();
        while (p > limit) {
            ++k;
            p *= uniform();
        }
        return k;
    }

    // Marsaglia-Tsang Gamma(shape, scale 1). Shapes below one use the
    // boosting trick Gamma(a) = Gamma(a+1) * U^(1/a).
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    void seed_state(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t h = stream_index;
        std::uint64_t key = master_seed ^ splitmix64(h);
        bool all_zero = true;
        for (auto& w : s_) {
            w = splitmix64(key);
            all_zero = all_zero && (w == 0);
        }
        if (all_zero) s_[0] = 1;
    }

    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace svjmle
