#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace qmc {

// Generator recorded in every report so a run can be replayed.
inline constexpr const char* kRngName = "mt19937_64+splitmix64";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for the k-th parallel trial stream of a master seed (splitmix64 walk).
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t k) {
    return splitmix64(master + k * 0x9E3779B97F4A7C15ULL);
}

// All sampling goes through explicit inverse-CDF formulas so that replays are
// byte-identical regardless of standard-library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // uniform on [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        int span = hi - lo + 1;
        int v = lo + static_cast<int>(uniform01() * span);
        return std::min(v, hi);
    }

    // cumulative[i] = sum of weights 0..i; returns sampled index
    std::size_t categorical(const std::vector<double>& cumulative) {
        double u = uniform01() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
        return std::min(i, cumulative.size() - 1);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace qmc
