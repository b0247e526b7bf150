#pragma once

#include <cstdint>
#include <limits>

namespace bbtv {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
///
/// Cheap to construct, so every independent task (prior draw, forecast
/// replicate, MCMC chain) gets its own engine derived from
/// (master seed, task index). Results therefore never depend on which
/// worker thread ran the task.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed = 0) { reseed(seed); }

    /// Engine for task `index` under `master_seed`.
    static RandomStream derive(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t sm = master_seed;
        const std::uint64_t a = splitmix64(sm);
        std::uint64_t sm2 = index ^ 0xd1b54a32d192ed03ULL;
        const std::uint64_t b = splitmix64(sm2);
        return RandomStream(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
    }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift, unbiased).
    std::uint64_t below(std::uint64_t n);

    /// Standard normal via Marsaglia's polar method. Implemented here rather
    /// than with std::normal_distribution so outputs do not depend on the
    /// standard library vendor.
    double normal();

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4]{};
    double spare_{0.0};
    bool has_spare_{false};
};

}  // namespace bbtv
