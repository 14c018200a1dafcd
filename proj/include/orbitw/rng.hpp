#pragma once

#include <cstdint>

namespace orbitw {

/// Deterministic 64-bit generator (splitmix64). All randomized subroutines
/// (polynomial splitting) draw from one of these, seeded from the run config,
/// so identical configs replay identical random streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Derive an independent child stream (used where an op needs internal
    /// randomness but its result is canonical regardless of the draw).
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (salt * 0xd1342543de82ef95ULL));
        child.next();
        return child;
    }

private:
    std::uint64_t state_;
};

}  // namespace orbitw
