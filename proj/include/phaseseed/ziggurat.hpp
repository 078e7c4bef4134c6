#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "phaseseed/rng.hpp"

namespace phaseseed {

/// 128-layer ziggurat tables for the standard normal (Marsaglia & Tsang 2000).
struct ZigguratTables {
    std::array<std::uint32_t, 128> k{};
    std::array<double, 128> w{};
    std::array<double, 128> f{};

    static constexpr double kTailStart = 3.442619855899;

    ZigguratTables() {
        constexpr double m1 = 2147483648.0;
        constexpr double vn = 9.91256303526217e-3;
        double dn = kTailStart;
        double tn = dn;
        const double q = vn / std::exp(-0.5 * dn * dn);
        k[0] = static_cast<std::uint32_t>((dn / q) * m1);
        k[1] = 0;
        w[0] = q / m1;
        w[127] = dn / m1;
        f[0] = 1.0;
        f[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            k[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
            tn = dn;
            f[i] = std::exp(-0.5 * dn * dn);
            w[i] = dn / m1;
        }
    }

    static const ZigguratTables& instance() {
        static const ZigguratTables tables;
        return tables;
    }
};

/// 32-bit words drawn from Philox counters (step, 0), (step, 1), ...
class StepWords {
public:
    StepWords(const Philox4x32& gen, std::uint64_t step) noexcept : gen_(gen), step_(step) {}

    std::uint32_t next() noexcept {
        if (idx_ == 4) {
            block_ = gen_(step_, hi_++);
            idx_ = 0;
        }
        return block_[idx_++];
    }

    double uniform() noexcept { return (next() + 0.5) * 0x1.0p-32; }

private:
    const Philox4x32& gen_;
    std::uint64_t step_;
    std::uint64_t hi_ = 0;
    Philox4x32::Block block_{};
    int idx_ = 4;
};

/// Standard normal from a signed 32-bit value and a layer index; falls back
/// to rejection sampling with further words from `src` (about 1.2% of calls).
inline double ziggurat_normal(std::int32_t hz, std::uint32_t iz, StepWords& src) noexcept {
    const auto& t = ZigguratTables::instance();
    for (;;) {
        const double x = hz * t.w[iz];
        const std::uint32_t mag = hz < 0 ? 0u - static_cast<std::uint32_t>(hz) : static_cast<std::uint32_t>(hz);
        if (mag < t.k[iz]) return x;
        if (iz == 0) {
            double xt;
            double yt;
            do {
                xt = -std::log(src.uniform()) / ZigguratTables::kTailStart;
                yt = -std::log(src.uniform());
            } while (yt + yt < xt * xt);
            return hz > 0 ? ZigguratTables::kTailStart + xt : -ZigguratTables::kTailStart - xt;
        }
        if (t.f[iz] + src.uniform() * (t.f[iz - 1] - t.f[iz]) < std::exp(-0.5 * x * x)) return x;
        const std::uint32_t word = src.next();
        hz = static_cast<std::int32_t>(word);
        iz = src.next() & 127u;
    }
}

}  // namespace phaseseed
