#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace phaseseed {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The output for a given (key, counter) pair is a pure function, so any
/// integration step can regenerate its random draws from the step index
/// alone.  This is what makes trajectories reproducible independently of
/// how a batch of them is scheduled across threads.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;

    explicit constexpr Philox4x32(std::uint64_t seed) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    constexpr Block operator()(std::uint64_t counter_lo, std::uint64_t counter_hi = 0) const noexcept {
        Block ctr{static_cast<std::uint32_t>(counter_lo), static_cast<std::uint32_t>(counter_lo >> 32),
                  static_cast<std::uint32_t>(counter_hi), static_cast<std::uint32_t>(counter_hi >> 32)};
        std::uint32_t k0 = key_[0];
        std::uint32_t k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0, static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1, static_cast<std::uint32_t>(p0)};
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::array<std::uint32_t, 2> key_;
};

/// Uniform double in (0, 1) from 64 random bits; never returns 0.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = (std::uint64_t{hi} << 32 | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Two independent standard normals (Box-Muller) from one Philox block.
inline std::array<double, 2> normal_pair(const Philox4x32::Block& b) noexcept {
    const double u1 = to_open_unit(b[0], b[1]);
    const double u2 = to_open_unit(b[2], b[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

/// Sequential view over a Philox stream: draws come from counters
/// (0, stream), (1, stream), ... in order.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : gen_(seed), stream_(stream) {}

    double uniform() noexcept {
        if (cached_ == 0) refill();
        const double u = to_open_unit(block_[4 - 2 * cached_], block_[5 - 2 * cached_]);
        --cached_;
        return u;
    }

    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const auto pair = normal_pair(gen_(counter_++, stream_));
        spare_ = pair[1];
        has_spare_ = true;
        return pair[0];
    }

    std::uint32_t bits32() noexcept {
        if (cached_ == 0) refill();
        const std::uint32_t v = block_[4 - 2 * cached_];
        --cached_;
        return v;
    }

private:
    void refill() noexcept {
        block_ = gen_(counter_++, stream_);
        cached_ = 2;
    }

    Philox4x32 gen_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    Philox4x32::Block block_{};
    int cached_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Per-component seed: FNV-1a hash of `component` mixed with the run seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view component) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const char c : component) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return mix64(seed ^ mix64(h));
}

}  // namespace phaseseed
