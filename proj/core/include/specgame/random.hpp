#pragma once

#include <cstdint>
#include <random>

namespace specgame {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// Portable random stream. std::mt19937_64 output is fixed by the standard;
/// the distributions below are written out so that draws are identical
/// across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (no cached second draw).
    double normal();

    /// Sample an index with probability proportional to weights[i].
    /// Weights must be nonnegative with a positive sum.
    template <typename Weights>
    std::size_t categorical(const Weights& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double target = uniform() * total;
        std::size_t last_positive = 0;
        std::size_t i = 0;
        for (double w : weights) {
            if (w > 0.0) {
                if (target < w) return i;
                target -= w;
                last_positive = i;
            }
            ++i;
        }
        return last_positive;
    }

    std::uint64_t next_u64() { return engine_(); }

    friend bool operator==(const Rng&, const Rng&) = default;

  private:
    std::mt19937_64 engine_;
};

}  // namespace specgame
