#include "phaseseed/qrng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>

#include "phaseseed/errors.hpp"

namespace phaseseed {

namespace {

double combine(Complex a, Complex b) { return 0.25 * std::norm(a + b); }

std::uint16_t quantize(double I, const AdcConfig& cfg) {
    const double scaled = std::floor((I - cfg.offset) / cfg.full_scale * std::ldexp(1.0, cfg.bits));
    if (!(scaled > 0.0)) return 0;
    return static_cast<std::uint16_t>(std::min(scaled, static_cast<double>(cfg.max_code())));
}

void check_delayed(std::span<const Complex> amps, std::size_t delay) {
    if (delay == 0) throw DomainError("interfere_delayed: delay must be >= 1");
    if (amps.size() < delay + 1) throw DomainError("interfere_delayed: needs at least delay + 1 pulses");
}

}  // namespace

std::vector<Complex> amplitudes_of(std::span<const PulseAmplitude> amps) {
    std::vector<Complex> out(amps.size());
    std::transform(amps.begin(), amps.end(), out.begin(), [](const PulseAmplitude& a) { return a.amplitude; });
    return out;
}

std::vector<double> interfere_delayed(std::span<const Complex> amps, std::size_t delay) {
    check_delayed(amps, delay);
    std::vector<double> out(amps.size() - delay);
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i) + delay;
        out[static_cast<std::size_t>(i)] = combine(amps[k], amps[k - delay]);
    }
    return out;
}

std::vector<double> interfere_two_sources(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw DomainError("interfere_two_sources: length mismatch");
    std::vector<double> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = combine(a[k], b[k]);
    return out;
}

std::vector<double> normalized_interference(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw DomainError("normalized_interference: length mismatch");
    std::vector<double> out;
    out.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double ma = std::abs(a[k]);
        const double mb = std::abs(b[k]);
        if (ma <= 0.0 || mb <= 0.0) continue;
        const double x = (combine(a[k], b[k]) - 0.25 * (ma - mb) * (ma - mb)) / (ma * mb);
        out.push_back(std::clamp(x, 0.0, 1.0));
    }
    return out;
}

double arcsine_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
}

void AdcConfig::validate() const {
    if (bits < 1 || bits > 16) throw ConfigError("adc: bits must be in [1, 16]");
    if (!(full_scale > 0.0) || !std::isfinite(full_scale)) throw ConfigError("adc: full_scale must be > 0");
    if (!std::isfinite(offset)) throw ConfigError("adc: offset must be finite");
    if (output_bits < 0 || output_bits > bits) throw ConfigError("adc: output_bits must be in [0, bits]");
}

std::vector<std::uint16_t> adc_sample(std::span<const double> intensities, const AdcConfig& cfg) {
    cfg.validate();
    std::vector<std::uint16_t> out(intensities.size());
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = quantize(intensities[static_cast<std::size_t>(i)], cfg);
    }
    return out;
}

double calibrate_full_scale(std::span<const double> intensities) {
    if (intensities.empty()) throw DomainError("calibrate_full_scale: empty calibration run");
    const double m = *std::max_element(intensities.begin(), intensities.end());
    if (!(m > 0.0)) throw DomainError("calibrate_full_scale: calibration run has no signal");
    return m;
}

EntropyReport min_entropy(std::span<const std::uint16_t> codes, int bits) {
    if (bits < 1 || bits > 16) throw DomainError("min_entropy: bits must be in [1, 16]");
    if (codes.size() < 1000) throw DomainError("min_entropy: needs at least 1000 samples");
    EntropyReport r;
    r.samples = codes.size();
    r.bits = bits;
    r.histogram.assign(std::size_t{1} << bits, 0);
    for (const auto c : codes) {
        if (c >= r.histogram.size()) throw DomainError("min_entropy: code exceeds the ADC range");
        ++r.histogram[c];
    }
    const auto top = *std::max_element(r.histogram.begin(), r.histogram.end());
    r.min_entropy = -std::log2(static_cast<double>(top) / static_cast<double>(r.samples));
    return r;
}

std::vector<std::uint8_t> pack_codes(std::span<const std::uint16_t> codes, int bits) {
    if (bits < 1 || bits > 16) throw DomainError("pack_codes: bits must be in [1, 16]");
    const std::size_t total = codes.size() * static_cast<std::size_t>(bits);
    std::vector<std::uint8_t> out((total + 7) / 8, 0);
    std::size_t pos = 0;
    for (const auto c : codes) {
        for (int b = 0; b < bits; ++b, ++pos) {
            if ((c >> b) & 1u) out[pos / 8] |= static_cast<std::uint8_t>(1u << (pos % 8));
        }
    }
    return out;
}

MonobitResult monobit(std::span<const std::uint8_t> bytes) {
    MonobitResult r;
    for (const auto b : bytes) r.ones += static_cast<std::size_t>(std::popcount(b));
    r.total = bytes.size() * 8;
    r.bias = r.total ? static_cast<double>(r.ones) / static_cast<double>(r.total) - 0.5 : 0.0;
    return r;
}

void write_histogram_csv(std::ostream& os, const EntropyReport& r) {
    os << "code,count\n";
    for (std::size_t c = 0; c < r.histogram.size(); ++c) os << c << ',' << r.histogram[c] << '\n';
}

namespace serial {

std::vector<double> interfere_delayed(std::span<const Complex> amps, std::size_t delay) {
    check_delayed(amps, delay);
    std::vector<double> out;
    out.reserve(amps.size() - delay);
    for (std::size_t k = delay; k < amps.size(); ++k) out.push_back(combine(amps[k], amps[k - delay]));
    return out;
}

std::vector<std::uint16_t> adc_sample(std::span<const double> intensities, const AdcConfig& cfg) {
    cfg.validate();
    std::vector<std::uint16_t> out;
    out.reserve(intensities.size());
    for (const double I : intensities) out.push_back(quantize(I, cfg));
    return out;
}

}  // namespace serial

}  // namespace phaseseed
