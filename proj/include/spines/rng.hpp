#pragma once

#include <cstdint>
#include <random>

namespace spines {

/**
 * Seeded generator used everywhere randomness appears.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard; the integer and real helpers below are written out here rather
 * than taken from <random> distributions, whose algorithms are
 * implementation-defined. Together they make runs reproducible across
 * platforms.
 */
class Rng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64 + rejection-sampled integers + 53-bit reals";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Independent stream for (seed, stream) via std::seed_seq.
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n) without modulo bias; n > 0.
    std::uint64_t below(std::uint64_t n);

    /// Uniform real in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace spines
