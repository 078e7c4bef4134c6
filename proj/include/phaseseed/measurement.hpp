#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaseseed/drive.hpp"
#include "phaseseed/trajectory.hpp"

namespace phaseseed {

using Complex = std::complex<double>;

struct PulseAmplitude {
    std::size_t symbol_index = 0;
    int slot_index = 0;  ///< 0 = early, 1 = late
    Complex amplitude;   ///< [sqrt(m^-3)]
};

/// Detection gates.  Pulse j is integrated over a window of width
/// window_fraction * period centered on origin + (j + 1/2) period + gate_delay.
struct PulseGrid {
    double period = 0.5e-9;       ///< [s]
    std::size_t slots_per_symbol = 2;
    double window_fraction = 0.5;
    double gate_delay = 0.0;      ///< [s]
    double origin = 0.0;          ///< time of the first slot boundary [s]

    static PulseGrid from_clock(const ClockConfig& clock, double window_fraction = 0.5, double gate_delay = 0.0);
    void validate() const;
};

struct IQPoint {
    std::size_t symbol_index = 0;
    int slot_index = 0;  ///< slot of the later pulse of the pair
    double I = 0.0;
    double Q = 0.0;
    double phase = 0.0;  ///< atan2(Q, I) [rad]
    bool click = false;  ///< false when either pulse of the pair is empty
};

struct Demodulation {
    std::vector<IQPoint> points;
    double empty_threshold = 0.0;  ///< magnitude below which a slot counts as empty
    std::size_t no_clicks = 0;
};

struct ClusterStats {
    double target = 0.0;      ///< [rad]
    std::size_t count = 0;
    double mean_angle = 0.0;  ///< [rad]
    double std = 0.0;         ///< circular std [rad]
};

struct ConstellationReport {
    std::vector<ClusterStats> clusters;
    std::vector<int> assignment;  ///< per input point; -1 for no-click points
    std::size_t points = 0;       ///< demodulated (click) points
    std::size_t symbol_errors = 0;
    bool errors_counted = false;
};

struct JitterReport {
    std::vector<double> delays;  ///< [s]
    double mean = 0.0;
    double std = 0.0;
    std::size_t excluded = 0;
};

struct UniformityResult {
    double chi2 = 0.0;
    double critical = 0.0;
    double p_value = 0.0;
    bool pass = false;
};

/// sqrt(S) exp(i phi) per trajectory row.
std::vector<Complex> complex_field(const Trajectory& traj);

/// Complex mean of the field over each detection gate that fits inside the record.
std::vector<PulseAmplitude> pulse_amplitudes(std::span<const Complex> field, double dt, double t0,
                                             const PulseGrid& grid);

/// Streaming form of pulse_amplitudes: feed field samples in order and
/// collect the same amplitudes without holding the record.
class PulseAccumulator {
public:
    PulseAccumulator(const PulseGrid& grid, double dt, double t0 = 0.0);

    void add(std::size_t k, Complex z);
    void add(std::size_t k, double S, double phi);
    const std::vector<PulseAmplitude>& amplitudes() const noexcept { return out_; }
    std::vector<PulseAmplitude> take() { return std::move(out_); }

private:
    void seek();

    PulseGrid grid_;
    double dt_;
    double t0_;
    std::size_t j_ = 0;
    std::ptrdiff_t begin_ = 0;
    std::size_t length_ = 0;
    Complex acc_{0.0, 0.0};
    std::vector<PulseAmplitude> out_;
};

/// 0.01 x the median magnitude of the slots that are not empty; slots below
/// 1% of the largest magnitude are treated as empty while calibrating.
double empty_slot_threshold(std::span<const PulseAmplitude> amps);

/// Normalized delay-line demodulation of a_k against a_{k - delay}.  A pair
/// with an empty member yields a no-click point.  `threshold` overrides the
/// per-run calibration.
Demodulation demodulate(std::span<const PulseAmplitude> amps, std::size_t delay = 1,
                        std::optional<double> threshold = {});

/// Points whose later pulse sits in `slot`: the intra-symbol pairs for slot 1,
/// the inter-symbol pairs for slot 0.
std::vector<IQPoint> select_slot(std::span<const IQPoint> points, int slot);

/// Nearest-target assignment by angular distance, ties to the lower index.
/// When `intended` is given, entry symbol_index is the expected target index.
ConstellationReport constellation(std::span<const IQPoint> points, std::span<const double> targets,
                                  std::span<const int> intended = {});

/// (Imax - Imin) / (Imax + Imin).
double visibility(double I_max, double I_min);

/// Fringe visibility of a_k interfered with a_{k - delay} under a swept
/// relative phase: 2 |sum a_k conj(a_{k-d})| / sum (|a_k|^2 + |a_{k-d}|^2).
double fringe_visibility(std::span<const PulseAmplitude> amps, std::size_t delay = 1);

/// Turn-on delay of each gain-switched pulse measured from its electrical
/// rising edge at edge_origin + j period.  The delay is the first upward
/// crossing of threshold_fraction x the pulse's peak power, linearly
/// interpolated.  Pulses without a crossing or below min_peak are excluded.
JitterReport jitter_stats(std::span<const double> P, double dt, double t0, double period, double edge_origin = 0.0,
                          double threshold_fraction = 0.5, double min_peak = 0.0);
JitterReport jitter_stats(const Trajectory& traj, double period, double edge_origin = 0.0,
                          double threshold_fraction = 0.5, double min_peak = 0.0);

/// Chi-square goodness of fit of wrapped phases against uniform on (-pi, pi].
UniformityResult phase_uniformity_test(std::span<const double> phases, std::size_t n_bins = 16,
                                       double significance = 0.01);

std::vector<double> phases_of(std::span<const IQPoint> points);

/// symbol_index,I,Q,phase_rad,assigned_target_index for click points.
void write_iq_csv(std::ostream& os, std::span<const IQPoint> points, std::span<const int> assignment = {});

/// Ordered "key: value" report lines.
class Report {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, std::size_t value);
    void add(const std::string& key, bool value);
    void write(std::ostream& os) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

void append_constellation(Report& r, const ConstellationReport& c);
void append_jitter(Report& r, const JitterReport& j);
void append_uniformity(Report& r, const std::string& prefix, const UniformityResult& u);

namespace serial {

std::vector<Complex> complex_field(const Trajectory& traj);
std::vector<PulseAmplitude> pulse_amplitudes(std::span<const Complex> field, double dt, double t0,
                                             const PulseGrid& grid);
Demodulation demodulate(std::span<const PulseAmplitude> amps, std::size_t delay = 1,
                        std::optional<double> threshold = {});

}  // namespace serial

}  // namespace phaseseed
