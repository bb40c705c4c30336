// Seedable random source shared by every randomized module.
//
// Gaussian and bounded-integer draws are implemented here rather than with
// the <random> distributions, whose output is implementation-defined.

#ifndef PWE_RNG_HPP
#define PWE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace pwe {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent per-item seed from (seed, stream, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) noexcept
{
    return mix64(mix64(mix64(seed) ^ stream) + index);
}

// Stream tags keep seed families of different consumers disjoint.
inline constexpr std::uint64_t stream_harvest = 0x6861727665737431ULL;
inline constexpr std::uint64_t stream_sampler = 0x73616d706c657231ULL;
inline constexpr std::uint64_t stream_estimate = 0x657374696d617431ULL;
inline constexpr std::uint64_t stream_simulate = 0x73696d756c617431ULL;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Standard normal variate (Marsaglia polar method).
    double gaussian()
    {
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
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace pwe

#endif  // PWE_RNG_HPP
