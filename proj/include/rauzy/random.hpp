#ifndef RAUZY_RANDOM_HPP
#define RAUZY_RANDOM_HPP

#include <cstdint>
#include <limits>

namespace rauzy {

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stateful SplitMix64. Same seed, same stream on every platform.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    static constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += golden_gamma;
        return splitmix64_mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return double((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n); n > 0. Slight modulo bias is irrelevant at these sizes.
    std::uint64_t below(std::uint64_t n) noexcept { return (*this)() % n; }

    /// Stateless access to the n-th output of the stream started at `seed`.
    static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t n) noexcept {
        return splitmix64_mix(seed + (n + 1) * golden_gamma);
    }

private:
    std::uint64_t state_;
};

} // namespace rauzy

#endif // RAUZY_RANDOM_HPP
