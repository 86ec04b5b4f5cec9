#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace msfft {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seeded generator used by every stochastic operation. The engine is
// mt19937_64 (output sequence pinned by the standard); the samplers are
// hand-rolled so results are identical across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    // Independent child stream, e.g. one per trial or per iteration.
    static Rng stream(uint64_t master, uint64_t tag) {
        return Rng(splitmix64(master ^ splitmix64(tag)));
    }

    uint64_t u64() { return eng_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) via 128-bit multiply-shift.
    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(u64()) * bound) >> 64);
    }

    // Standard normal (Box-Muller); second variate is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace msfft
