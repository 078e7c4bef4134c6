#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "phaseseed/measurement.hpp"

namespace phaseseed {

std::vector<Complex> amplitudes_of(std::span<const PulseAmplitude> amps);

/// I_k = |a_k + a_{k-delay}|^2 / 4 for k >= delay.
std::vector<double> interfere_delayed(std::span<const Complex> amps, std::size_t delay = 1);

/// I_k = |a_k + b_k|^2 / 4.
std::vector<double> interfere_two_sources(std::span<const Complex> a, std::span<const Complex> b);

/// (1 + cos dphi) / 2 recovered from the combiner output of a and b:
/// (I - (|a| - |b|)^2 / 4) / (|a| |b|).  Equals I / |a|^2 when |a| = |b|.
/// Pairs with a zero amplitude are skipped.
std::vector<double> normalized_interference(std::span<const Complex> a, std::span<const Complex> b);

/// CDF of (1 + cos dphi) / 2 for uniform dphi: (2 / pi) asin(sqrt(x)).
double arcsine_cdf(double x);

struct AdcConfig {
    int bits = 8;
    double full_scale = 1.0;
    double offset = 0.0;
    /// Low-order bits of each code kept in the packed output; 0 keeps all.
    int output_bits = 0;

    void validate() const;
    std::uint32_t max_code() const noexcept { return (1u << bits) - 1u; }
    int packed_bits() const noexcept { return output_bits > 0 ? output_bits : bits; }
};

/// clamp(floor((I - offset) / full_scale 2^bits), 0, 2^bits - 1).
std::vector<std::uint16_t> adc_sample(std::span<const double> intensities, const AdcConfig& cfg);

/// Largest intensity of a calibration run.
double calibrate_full_scale(std::span<const double> intensities);

struct EntropyReport {
    std::size_t samples = 0;
    int bits = 0;
    std::vector<std::size_t> histogram;
    double min_entropy = 0.0;  ///< [bits per sample]
};

/// -log2 of the largest empirical code probability.
EntropyReport min_entropy(std::span<const std::uint16_t> codes, int bits);

/// The low `bits` bits of each code packed LSB first into a little-endian bit stream.
std::vector<std::uint8_t> pack_codes(std::span<const std::uint16_t> codes, int bits);

struct MonobitResult {
    std::size_t ones = 0;
    std::size_t total = 0;
    double bias = 0.0;  ///< ones / total - 1/2
};

MonobitResult monobit(std::span<const std::uint8_t> bytes);

void write_histogram_csv(std::ostream& os, const EntropyReport& r);

namespace serial {

std::vector<double> interfere_delayed(std::span<const Complex> amps, std::size_t delay = 1);
std::vector<std::uint16_t> adc_sample(std::span<const double> intensities, const AdcConfig& cfg);

}  // namespace serial

}  // namespace phaseseed
