#pragma once

#include <cmath>
#include <cstdint>

namespace cskct {

/// Splittable counter-keyed random stream.  A stream is derived from a
/// (seed, slot, substream) key by SplitMix64 finalizer mixing, so any
/// (round, slot, contribution) draw can be regenerated independently of
/// execution order or thread assignment.  Within a stream, successive draws
/// follow the SplitMix64 sequence, which tolerates the variable uniform
/// consumption of rejection samplers.
class SplitRng {
public:
    SplitRng(std::uint64_t seed, std::uint64_t slot, std::uint64_t substream) {
        state_ = mix(mix(mix(seed + kGolden) ^ slot) + substream);
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(bound));
    }

    /// Standard normal via Box-Muller (uses two uniforms).
    double next_normal() {
        double u1 = 1.0 - next_double(); // (0, 1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_ = 0;
};

/// Binomial(n, p) sample.  Exact CDF inversion when n*p is small; the
/// transformed-rejection method with squeeze (BTRS) otherwise.  p > 1/2 is
/// handled by complement symmetry.  Exact-distribution sampler; safe for
/// n up to well past 1e6.
std::int64_t sample_binomial(SplitRng& rng, std::int64_t n, double p);

/// Gaussian surrogate for the binomial arrival count: round a normal with
/// the binomial's mean and variance, clamped to [0, n].
std::int64_t sample_binomial_gaussian(SplitRng& rng, std::int64_t n, double p);

} // namespace cskct
