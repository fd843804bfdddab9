#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sirdx {

// All randomness flows through this header. std::mt19937_64 output is fully
// specified by the standard, and the uniform/bounded mappings below avoid
// std::uniform_*_distribution, whose algorithm is implementation-defined.
// Identical seeds therefore give bit-identical streams on any toolchain.

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent child seed from a master seed and a stream index.
/// Used to give every dataset row, CV fold, and subsystem its own stream so
/// parallel evaluation reproduces the sequential result exactly.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
}

// Fixed stream offsets for the subsystems hanging off one user-facing seed.
namespace seed_stream {
constexpr std::uint64_t dataset = 1;
constexpr std::uint64_t split = 2;
constexpr std::uint64_t mlp_init = 3;
constexpr std::uint64_t train = 4;
constexpr std::uint64_t kfold = 5;
constexpr std::uint64_t svm = 6;
constexpr std::uint64_t sobol_a = 7;
constexpr std::uint64_t sobol_b = 8;
constexpr std::uint64_t cv = 9;
} // namespace seed_stream

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Uniform integer in [0, n). Lemire multiply-shift; tiny bias is
    /// irrelevant at the sizes used here and the result is deterministic.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    /// In-place Fisher-Yates shuffle (std::shuffle is implementation-defined).
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace sirdx
