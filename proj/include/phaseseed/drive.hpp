#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaseseed/params.hpp"
#include "phaseseed/waveform.hpp"

namespace phaseseed {

/// Timing grid shared by the primary and secondary drives.  One symbol spans
/// pulses_per_symbol() secondary pulses.
struct ClockConfig {
    double symbol_rate = 1e9;           ///< [Hz]
    double secondary_pulse_rate = 2e9;  ///< [Hz]
    double dt = 1e-13;                  ///< [s]

    void validate() const;
    std::size_t samples_per_pulse() const;
    std::size_t samples_per_symbol() const;
    std::size_t pulses_per_symbol() const;
    double pulse_period() const noexcept { return 1.0 / secondary_pulse_rate; }
    double symbol_period() const noexcept { return 1.0 / symbol_rate; }
};

/// Current levels and timing fractions for the primary and secondary drives.
struct ModulationSpec {
    double base_current = 0.0;          ///< primary CW level, or its off level when pulsed [A]
    double high_current = 0.0;          ///< primary on level when pulsed [A]
    /// Calibrated perturbation amplitude per phase index [A].  When empty the
    /// amplitude is derived from the adiabatic-chirp relation.
    std::vector<double> perturbation_currents;
    double perturbation_duty = 0.2;     ///< perturbation length as a fraction of the symbol
    double pulse_duty = 0.8;            ///< primary on-time fraction when pulsed

    double secondary_low = 0.0;         ///< secondary off level [A]
    double secondary_high = 0.0;        ///< secondary on level [A]
    double secondary_duty = 0.5;        ///< secondary on-time fraction of its pulse period
    /// How far the primary on-window is advanced ahead of the symbol's
    /// perturbation center when pulsed [s].
    double primary_lead = 0.0;

    void validate() const;
    double perturbation_length(const ClockConfig& clock) const noexcept {
        return perturbation_duty * clock.symbol_period();
    }
};

enum class Protocol { COW, DPS, BB84, MDPSK, RAW };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& s);

/// Per-symbol encoded values.  COW: 0 = bit 0, 1 = bit 1, 2 = decoy.
/// DPS: bit.  BB84: phase index into {0, pi, pi/2, 3pi/2}.  MDPSK: k for 2 pi k / M.
struct SymbolPattern {
    Protocol protocol = Protocol::RAW;
    int alphabet = 0;  ///< M for MDPSK; alphabet size otherwise
    std::vector<int> values;
    std::uint64_t seed = 0;

    void validate() const;
    /// Intended intra-symbol differential phase of symbol i.
    double target_phase(std::size_t i) const;
    /// "X"/"Y" for BB84, empty otherwise.
    std::string basis(std::size_t i) const;
    /// Distinct target phases, indexed like the encoded values.
    std::vector<double> targets() const;
};

void write_symbol_pattern_csv(std::ostream& os, const SymbolPattern& pattern);

/// Perturbation amplitude giving differential phase `dphi` for a square
/// modulation of length t_m: dI = dphi 2 q V / (t_m Gamma alpha eps).
double phase_to_current(double dphi, double t_m, const LaserParams& p);

/// dphi folded into [0, 2 pi): negative phases are realised as 2 pi - |dphi|.
double fold_phase(double dphi);

/// Square wave at the secondary pulse rate, on for the first `duty` of each period.
DriveWaveform gain_switch_wave(const ClockConfig& clock, double I_off, double I_on, double duty,
                               std::size_t n_pulses);

/// Warnings for a gain-switching drive that does not straddle threshold.
std::vector<std::string> gain_switch_warnings(const LaserParams& p, double I_off, double I_on);

/// Secondary pulse on-windows of one symbol, as [begin, end) sample offsets.
std::vector<std::pair<std::size_t, std::size_t>> secondary_windows(const ClockConfig& clock,
                                                                    const ModulationSpec& spec);

/// Perturbation window of one symbol as [begin, end) sample offsets, centered
/// midway between the first two secondary pulse centers.  Throws ConfigError
/// if it overlaps a secondary on-window.
std::pair<std::size_t, std::size_t> perturbation_window(const ClockConfig& clock, const ModulationSpec& spec);

/// Perturbation amplitude for a target phase (calibrated table or derived).
double perturbation_amplitude(const ModulationSpec& spec, const ClockConfig& clock, const LaserParams& primary,
                              double dphi, std::optional<std::size_t> level_index = {});

/// Primary drive: CW base current with one square perturbation per symbol.
DriveWaveform phase_seed_pattern(const ClockConfig& clock, const ModulationSpec& spec, const LaserParams& primary,
                                 std::span<const double> phases,
                                 std::span<const std::size_t> level_indices = {});

/// Primary drive: square pulses at the symbol rate (duty pulse_duty), each
/// carrying one centered perturbation.  Requires two secondary pulses per symbol.
DriveWaveform pulsed_seeding_pattern(const ClockConfig& clock, const ModulationSpec& spec,
                                     const LaserParams& primary, std::span<const double> phases,
                                     std::span<const std::size_t> level_indices = {});

/// Secondary drive: regular gain switching over n_symbols symbols.
DriveWaveform secondary_gain_switch(const ClockConfig& clock, const ModulationSpec& spec, std::size_t n_symbols);

struct ProtocolDrives {
    DriveWaveform primary;
    DriveWaveform secondary;
    SymbolPattern pattern;
};

/// Drives for COW, DPS or BB84.  `data` supplies the per-symbol values; when
/// empty, `n_symbols` values are drawn from `seed`.  COW draws a decoy with
/// probability `decoy_fraction`.
ProtocolDrives protocol_pattern(Protocol protocol, const ClockConfig& clock, const ModulationSpec& spec,
                                const LaserParams& primary, std::span<const int> data, std::size_t n_symbols,
                                std::uint64_t seed, double decoy_fraction = 0.1);

/// M-DPSK over the phase alphabet {2 pi k / M}; M in {2, 4, 8, 16}.
ProtocolDrives mdpsk_pattern(int M, const ClockConfig& clock, const ModulationSpec& spec,
                             const LaserParams& primary, std::span<const int> data, std::size_t n_symbols,
                             std::uint64_t seed);

/// log2(M) bits per symbol times the symbol rate.
double mdpsk_bit_rate(int M, double symbol_rate);

}  // namespace phaseseed
