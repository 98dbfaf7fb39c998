#pragma once

#include <cstdint>
#include <span>

namespace karelgs {

// Deterministic seeded random stream (splitmix64). We roll our own instead
// of <random> distributions because libstdc++/libc++ disagree on the exact
// draw sequences, and frozen test values must not depend on the standard
// library build.
class RngStream {
public:
    RngStream() = default;
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    bool coin() { return (next_u64() & 1ULL) != 0; }

    // Categorical draw over non-negative weights; weights need not sum to 1.
    // Returns the chosen index.
    int pick_weighted(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double x = uniform() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            x -= weights[i];
            if (x < 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    // Derive an independent stream (e.g. one per task variant).
    RngStream split() { return RngStream(next_u64() ^ 0xd1b54a32d192ed03ULL); }

    bool operator==(const RngStream&) const = default;

private:
    std::uint64_t state_ = 0x853c49e6748fea9bULL;
};

} // namespace karelgs
