#pragma once

#include <cstdint>
#include <random>

namespace pir {

// Uniform randomness source for query generation and store synthesis.
// Default construction seeds from the OS; the seeded form exists for
// reproducible runs and test fixtures. Draws are rejection-sampled so a
// fixed seed produces the same stream on every platform.
class Entropy {
public:
    Entropy() : rng_(std::random_device{}()) {}
    explicit Entropy(std::uint64_t seed) : rng_(seed) {}

    // Uniform value in [0, bound); bound must be > 0.
    std::uint64_t uniform(std::uint64_t bound) {
        // Reject the top partial range so every residue is equally likely.
        std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
        std::uint64_t x;
        do {
            x = rng_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace pir
