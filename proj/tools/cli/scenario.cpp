#include "cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "phaseseed/checksum.hpp"
#include "phaseseed/ensemble.hpp"
#include "phaseseed/injection.hpp"
#include "phaseseed/qrng.hpp"
#include "phaseseed/rng.hpp"
#include "phaseseed/stats.hpp"

namespace phaseseed::cli {

namespace {

constexpr double kMilli = 1e3;

NoiseConfig noise_for(const RunConfig& cfg, std::string_view component) {
    NoiseConfig n = cfg.noise;
    n.seed = derive_seed(cfg.seed, component);
    return n;
}

/// Decimated copy of the leading part of a run.
class Capture {
public:
    Capture(const DriveWaveform& d, const LaserParams& p, std::uint64_t seed, const RunSpec& r)
        : dec_(r.trajectory_decimation),
          limit_(r.write_trajectory
                     ? std::min(d.size(), static_cast<std::size_t>(std::llround(r.trajectory_window / d.dt())))
                     : 0) {
        traj_.dt = d.dt() * static_cast<double>(dec_);
        traj_.t0 = d.t0();
        traj_.params = p;
        traj_.rng_seed = seed;
    }
    void operator()(std::size_t k, double current, const SimState& s) {
        if (k < limit_ && k % dec_ == 0) traj_.push(current, s);
    }
    Trajectory take() { return std::move(traj_); }

private:
    std::size_t dec_;
    std::size_t limit_;
    Trajectory traj_;
};

/// Range of the unwrapped primary/secondary relative phase after `begin`.
class SlipTracker {
public:
    SlipTracker(std::size_t begin, double detuning, double dt, double t0)
        : begin_(begin), detuning_(detuning), dt_(dt), t0_(t0) {}
    void operator()(std::size_t k, const SimState& s, const SimState& ps) {
        if (k < begin_) return;
        const double rel = s.phi - ps.phi - detuning_ * (t0_ + dt_ * static_cast<double>(k));
        lo_ = std::min(lo_, rel);
        hi_ = std::max(hi_, rel);
    }
    std::size_t slips() const {
        return hi_ >= lo_ ? static_cast<std::size_t>(std::floor((hi_ - lo_) / constants::two_pi)) : 0;
    }

private:
    std::size_t begin_;
    double detuning_, dt_, t0_;
    double lo_ = std::numeric_limits<double>::infinity();
    double hi_ = -std::numeric_limits<double>::infinity();
};

struct LaserRun {
    Trajectory recorded;
    std::vector<PulseAmplitude> amps;
    std::vector<double> P;
};

struct PairRun {
    Trajectory secondary;
    Trajectory primary;
    std::vector<PulseAmplitude> amps;
    std::vector<double> P;
    std::size_t slips = 0;
};

LaserRun run_laser(const DriveWaveform& drive, const LaserParams& p, const NoiseConfig& noise, const PulseGrid& grid,
                   const RunSpec& spec, bool keep_power) {
    LaserRun out;
    Capture capture(drive, p, noise.seed, spec);
    PulseAccumulator acc(grid, drive.dt(), drive.t0());
    if (keep_power) out.P.reserve(drive.size());
    integrate(drive, p, resolve_initial({}, drive, p, noise), noise,
              [&](std::size_t k, double current, const SimState& s) {
                  capture(k, current, s);
                  acc.add(k, s.S, s.phi);
                  if (keep_power) out.P.push_back(output_power(s.S, p));
              });
    out.recorded = capture.take();
    out.amps = acc.take();
    return out;
}

PairRun run_pair(const RunConfig& cfg, const DriveWaveform& primary_drive, const DriveWaveform& secondary_drive,
                 const InjectionConfig& inj, bool keep_power, std::size_t settle_samples) {
    PairRun out;
    const NoiseConfig pn = noise_for(cfg, "primary");
    const NoiseConfig sn = noise_for(cfg, "secondary");
    Capture cap_s(secondary_drive, cfg.secondary, sn.seed, cfg.run);
    Capture cap_p(primary_drive, cfg.primary, pn.seed, cfg.run);
    PulseAccumulator acc(cfg.grid(), secondary_drive.dt(), secondary_drive.t0());
    SlipTracker slips(settle_samples, inj.detuning, secondary_drive.dt(), secondary_drive.t0());
    if (keep_power) out.P.reserve(secondary_drive.size());
    integrate_pair(primary_drive, cfg.primary, pn, secondary_drive, cfg.secondary, inj, sn,
                   [&](std::size_t k, double current, const SimState& s, const SimState& ps) {
                       cap_s(k, current, s);
                       cap_p(k, primary_drive[k], ps);
                       acc.add(k, s.S, s.phi);
                       slips(k, s, ps);
                       if (keep_power) out.P.push_back(output_power(s.S, cfg.secondary));
                   });
    out.secondary = cap_s.take();
    out.primary = cap_p.take();
    out.amps = acc.take();
    out.slips = slips.slips();
    return out;
}

std::vector<PulseAmplitude> after_settle(const std::vector<PulseAmplitude>& amps, const RunConfig& cfg) {
    const std::size_t slots = cfg.clock.pulses_per_symbol();
    std::vector<PulseAmplitude> out;
    for (const auto& a : amps) {
        if (a.symbol_index * slots + static_cast<std::size_t>(a.slot_index) >= cfg.measurement.settle_pulses) {
            out.push_back(a);
        }
    }
    return out;
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    write_trajectory_csv(os, t);
    return os.str();
}

std::string iq_csv(std::span<const IQPoint> points, std::span<const int> assignment = {}) {
    std::ostringstream os;
    write_iq_csv(os, points, assignment);
    return os.str();
}

std::string pulses_csv(std::span<const PulseAmplitude> amps, std::size_t slots) {
    std::ostringstream os;
    os << "pulse_index,re,im,phase_rad\n";
    char buf[160];
    for (const auto& a : amps) {
        std::snprintf(buf, sizeof buf, "%zu,%.12e,%.12e,%.12e\n", a.symbol_index * slots + a.slot_index,
                      a.amplitude.real(), a.amplitude.imag(), std::arg(a.amplitude));
        os << buf;
    }
    return os.str();
}

void add_common(Report& r, const RunConfig& cfg) {
    r.add("scenario", cfg.scenario.text);
    r.add("seed", static_cast<std::size_t>(cfg.seed));
    r.add("config_sha256", config_hash(cfg.source));
    r.add("noise_enabled", cfg.noise.enabled);
    r.add("threshold_current_primary_mA", threshold_current(cfg.primary) * kMilli);
    r.add("threshold_current_secondary_mA", threshold_current(cfg.secondary) * kMilli);
}

void add_injection(Report& r, const RunConfig& cfg, const InjectionConfig& inj) {
    r.add("injection_efficiency", inj.efficiency);
    r.add("injection_kappa_per_s", inj.kappa);
    r.add("injection_detuning_rad_per_s", inj.detuning);
    const double ratio = injection_ratio(inj, cfg.primary, cfg.primary_emitting_current(), cfg.secondary,
                                         cfg.modulation.secondary_high);
    const auto range = locking_range(cfg.secondary, inj, ratio);
    r.add("injection_ratio", ratio);
    r.add("locking_range_min_rad_per_s", range.omega_min);
    r.add("locking_range_max_rad_per_s", range.omega_max);
    r.add("detuning_offset_in_range", range.contains(cfg.detuning_offset));
}

double largest_std(const ConstellationReport& c) {
    double s = 0.0;
    for (const auto& cl : c.clusters) s = std::max(s, cl.std);
    return s;
}

/// Uniformity test that reports why it was skipped instead of throwing.
void add_uniformity(Report& r, const std::string& prefix, std::span<const double> phases, const RunConfig& cfg) {
    const auto& m = cfg.measurement;
    if (phases.size() < 10 * m.uniformity_bins) {
        r.add(prefix + "_uniform", std::string("skipped (too few samples)"));
        return;
    }
    append_uniformity(r, prefix, phase_uniformity_test(phases, m.uniformity_bins, m.significance));
}

void add_jitter(Report& r, Metrics& metrics, std::span<const double> P, const RunConfig& cfg,
                const std::string& prefix = {}) {
    const double period = cfg.clock.pulse_period();
    const auto j = jitter_stats(P, cfg.clock.dt, 0.0, period, static_cast<double>(cfg.measurement.settle_pulses) * period,
                                cfg.measurement.jitter_threshold_fraction);
    if (prefix.empty()) {
        append_jitter(r, j);
        metrics.jitter_std = j.std;
    } else {
        r.add(prefix + "jitter_mean_s", j.mean);
        r.add(prefix + "jitter_std_s", j.std);
        r.add(prefix + "jitter_excluded", j.excluded);
    }
}

void finish(RunResult& out) {
    std::ostringstream os;
    out.report.write(os);
    out.files.push_back({"report.txt", os.str()});
}

RunResult run_gain_switch(const RunConfig& cfg) {
    RunResult out;
    const auto& m = cfg.modulation;
    out.warnings = gain_switch_warnings(cfg.secondary, m.secondary_low, m.secondary_high);
    const auto drive = gain_switch_wave(cfg.clock, m.secondary_low, m.secondary_high, m.secondary_duty,
                                        cfg.run.pulses + cfg.measurement.settle_pulses);
    auto run = run_laser(drive, cfg.secondary, noise_for(cfg, "secondary"), cfg.grid(), cfg.run, true);
    const auto amps = after_settle(run.amps, cfg);

    Report& r = out.report;
    add_common(r, cfg);
    r.add("drive_sha256", waveform_hash(drive));
    r.add("pulses", amps.size());
    add_jitter(r, out.metrics, run.P, cfg);
    std::vector<double> phases;
    for (const auto& a : amps) phases.push_back(std::arg(a.amplitude));
    add_uniformity(r, "pulse_phase", phases, cfg);
    out.metrics.visibility = fringe_visibility(amps);
    r.add("fringe_visibility", out.metrics.visibility);
    for (const auto& w : out.warnings) r.add("warning", w);

    if (cfg.run.write_trajectory) out.files.push_back({"trajectory.csv", trajectory_csv(run.recorded)});
    out.files.push_back({"pulses.csv", pulses_csv(amps, cfg.clock.pulses_per_symbol())});
    finish(out);
    return out;
}

RunResult run_cw_seed(const RunConfig& cfg) {
    RunResult out;
    const auto& m = cfg.modulation;
    out.warnings = gain_switch_warnings(cfg.secondary, m.secondary_low, m.secondary_high);
    const std::size_t total = cfg.run.pulses + cfg.measurement.settle_pulses;
    const auto secondary = gain_switch_wave(cfg.clock, m.secondary_low, m.secondary_high, m.secondary_duty, total);
    const DriveWaveform primary(cfg.clock.dt, std::vector<double>(secondary.size(), m.base_current));
    const std::size_t settle_samples = cfg.measurement.settle_pulses * cfg.clock.samples_per_pulse();

    InjectionConfig off = cfg.injection;
    off.efficiency = 0.0;
    const bool compare = cfg.run.compare_free_running;
    // The injected and free-running runs share seeds and are independent.
    auto runs = parallel_map(compare ? 2 : 1, [&](std::size_t i) {
        return run_pair(cfg, primary, secondary, i == 0 ? cfg.injection : off, true, settle_samples);
    });
    const PairRun& run = runs[0];
    const auto amps = after_settle(run.amps, cfg);
    const auto dm = demodulate(amps);
    const std::vector<double> targets{0.0};
    const auto c = constellation(dm.points, targets);

    Report& r = out.report;
    add_common(r, cfg);
    add_injection(r, cfg, cfg.injection);
    r.add("pulses", amps.size());
    r.add("no_clicks", dm.no_clicks);
    append_constellation(r, c);
    out.metrics.cluster_std = largest_std(c);
    out.metrics.visibility = fringe_visibility(amps);
    r.add("fringe_visibility", out.metrics.visibility);
    add_uniformity(r, "demodulated_phase", phases_of(dm.points), cfg);
    add_jitter(r, out.metrics, run.P, cfg);
    out.metrics.phase_slips = static_cast<double>(run.slips);
    r.add("phase_slips", run.slips);
    if (compare) {
        const auto free_amps = after_settle(runs[1].amps, cfg);
        const auto free_dm = demodulate(free_amps);
        r.add("free_running.fringe_visibility", fringe_visibility(free_amps));
        add_uniformity(r, "free_running.demodulated_phase", phases_of(free_dm.points), cfg);
        add_jitter(r, out.metrics, runs[1].P, cfg, "free_running.");
    }
    for (const auto& w : out.warnings) r.add("warning", w);

    if (cfg.run.write_trajectory) {
        out.files.push_back({"trajectory.csv", trajectory_csv(run.secondary)});
        out.files.push_back({"primary_trajectory.csv", trajectory_csv(run.primary)});
    }
    out.files.push_back({"iq.csv", iq_csv(dm.points, c.assignment)});
    finish(out);
    return out;
}

/// Constellation of the intra-symbol pairs, with intended values mapped by symbol.
ConstellationReport intra_constellation(std::span<const IQPoint> intra, std::span<const double> targets,
                                        std::span<const int> values) {
    std::vector<int> intended;
    intended.reserve(intra.size());
    for (const auto& p : intra) intended.push_back(p.symbol_index < values.size() ? values[p.symbol_index] : -1);
    return constellation(intra, targets, intended);
}

struct SeededRun {
    DriveWaveform primary;
    DriveWaveform secondary;
    std::vector<double> targets;
    std::vector<int> values;
};

RunResult run_seeded(const RunConfig& cfg, const SeededRun& s, const SymbolPattern* pattern) {
    RunResult out;
    const auto run = run_pair(cfg, s.primary, s.secondary, cfg.injection, false, 0);
    const auto dm = demodulate(run.amps);
    const auto intra = select_slot(dm.points, 1);
    const auto inter = select_slot(dm.points, 0);

    Report& r = out.report;
    add_common(r, cfg);
    add_injection(r, cfg, cfg.injection);
    r.add("primary_drive_sha256", waveform_hash(s.primary));
    r.add("secondary_drive_sha256", waveform_hash(s.secondary));
    r.add("symbols", s.values.size());
    r.add("no_clicks", dm.no_clicks);
    r.add("empty_threshold", dm.empty_threshold);
    out.metrics.visibility = fringe_visibility(run.amps);
    r.add("fringe_visibility", out.metrics.visibility);

    const bool cow = pattern && pattern->protocol == Protocol::COW;
    std::vector<int> assignment;
    if (cow) {
        // Bits 0 and 1 leave one slot dark; decoys fill both.
        const double thr = dm.empty_threshold;
        std::size_t expected_empty = 0;
        std::size_t below = 0;
        for (const auto& a : run.amps) {
            if (a.symbol_index >= s.values.size()) continue;
            const int v = s.values[a.symbol_index];
            const bool dark = (v == 0 && a.slot_index == 1) || (v == 1 && a.slot_index == 0);
            if (!dark) continue;
            ++expected_empty;
            if (std::abs(a.amplitude) < thr) ++below;
        }
        r.add("cow_empty_slots", expected_empty);
        r.add("cow_empty_below_threshold", below);
    } else {
        const auto c = intra_constellation(intra, s.targets, s.values);
        append_constellation(r, c);
        out.metrics.cluster_std = largest_std(c);
        assignment = c.assignment;
    }
    add_uniformity(r, "inter_symbol_phase", phases_of(inter), cfg);
    if (pattern && pattern->protocol == Protocol::MDPSK) {
        r.add("bit_rate_bps", mdpsk_bit_rate(pattern->alphabet, cfg.clock.symbol_rate));
    }

    if (cfg.run.write_trajectory) {
        out.files.push_back({"trajectory.csv", trajectory_csv(run.secondary)});
        out.files.push_back({"primary_trajectory.csv", trajectory_csv(run.primary)});
    }
    if (pattern) {
        std::ostringstream os;
        write_symbol_pattern_csv(os, *pattern);
        out.files.push_back({"pattern.csv", os.str()});
    }
    out.files.push_back({"iq.csv", iq_csv(cow ? std::span<const IQPoint>(dm.points) : std::span<const IQPoint>(intra),
                                          assignment)});
    finish(out);
    return out;
}

RunResult run_phase_seed(const RunConfig& cfg, bool pulsed) {
    const auto levels = cfg.phase_levels();
    std::vector<int> idx = cfg.run.data;
    if (idx.empty()) {
        RandomStream rng(derive_seed(cfg.seed, "pattern"));
        for (std::size_t i = 0; i < cfg.run.symbols; ++i) {
            idx.push_back(static_cast<int>(rng.bits32() % static_cast<std::uint32_t>(levels.size())));
        }
    }
    std::vector<double> phases;
    std::vector<std::size_t> level_indices;
    for (const int v : idx) {
        phases.push_back(levels[static_cast<std::size_t>(v)]);
        level_indices.push_back(static_cast<std::size_t>(v));
    }
    SeededRun s{pulsed ? pulsed_seeding_pattern(cfg.clock, cfg.modulation, cfg.primary, phases, level_indices)
                       : phase_seed_pattern(cfg.clock, cfg.modulation, cfg.primary, phases, level_indices),
                secondary_gain_switch(cfg.clock, cfg.modulation, idx.size()), levels, idx};
    return run_seeded(cfg, s, nullptr);
}

RunResult run_pattern(const RunConfig& cfg) {
    const auto seed = derive_seed(cfg.seed, "pattern");
    auto drives = cfg.scenario.kind == Scenario::Mdpsk
                      ? mdpsk_pattern(cfg.scenario.M, cfg.clock, cfg.modulation, cfg.primary, cfg.run.data,
                                      cfg.run.symbols, seed)
                      : protocol_pattern(cfg.scenario.protocol, cfg.clock, cfg.modulation, cfg.primary, cfg.run.data,
                                         cfg.run.symbols, seed, cfg.run.decoy_fraction);
    SeededRun s{std::move(drives.primary), std::move(drives.secondary), drives.pattern.targets(),
                drives.pattern.values};
    return run_seeded(cfg, s, &drives.pattern);
}

RunResult run_qrng(const RunConfig& cfg, bool two_laser) {
    RunResult out;
    const auto& m = cfg.modulation;
    const auto& q = cfg.qrng;
    out.warnings = gain_switch_warnings(cfg.secondary, m.secondary_low, m.secondary_high);
    const std::size_t lag = two_laser ? 0 : q.delay;
    const std::size_t needed = q.calibration_pulses + q.samples + lag;
    const auto drive = gain_switch_wave(cfg.clock, m.secondary_low, m.secondary_high, m.secondary_duty,
                                        needed + cfg.measurement.settle_pulses);
    const bool cw_b = q.two_laser == TwoLaserMode::Cw;
    const DriveWaveform drive_b =
        cw_b ? DriveWaveform(cfg.clock.dt, std::vector<double>(drive.size(), m.base_current)) : drive;
    RunSpec spec = cfg.run;
    spec.write_trajectory = false;
    // The two sources are independent lasers.
    auto runs = parallel_map(two_laser ? 2 : 1, [&](std::size_t i) {
        return i == 0 ? run_laser(drive, cfg.secondary, noise_for(cfg, "secondary"), cfg.grid(), spec, false)
                      : run_laser(drive_b, cfg.primary, noise_for(cfg, "primary"), cfg.grid(), spec, false);
    });
    const auto a = amplitudes_of(after_settle(runs[0].amps, cfg));
    if (a.size() < needed) throw DomainError("qrng: record holds fewer pulses than requested");

    std::vector<double> intensity;
    std::vector<double> x;
    if (two_laser) {
        const auto b = amplitudes_of(after_settle(runs[1].amps, cfg));
        const std::span<const Complex> sa(a.data(), needed);
        const std::span<const Complex> sb(b.data(), needed);
        intensity = interfere_two_sources(sa, sb);
        x = normalized_interference(sa, sb);
    } else {
        const std::span<const Complex> all(a.data(), needed);
        intensity = interfere_delayed(all, lag);
        x = normalized_interference(all.subspan(lag), all.first(needed - lag));
    }
    const std::span<const double> cal(intensity.data(), q.calibration_pulses);
    const std::span<const double> data(intensity.data() + q.calibration_pulses, q.samples);
    AdcConfig adc = q.adc;
    adc.full_scale = calibrate_full_scale(cal);
    const auto codes = adc_sample(data, adc);
    const auto entropy = min_entropy(codes, adc.bits);
    const auto bytes = pack_codes(codes, adc.packed_bits());
    const auto bias = monobit(bytes);
    const std::vector<double> x_data(x.begin() + static_cast<std::ptrdiff_t>(q.calibration_pulses),
                                     x.begin() + static_cast<std::ptrdiff_t>(q.calibration_pulses + q.samples));
    const double ks = ks_distance(x_data, arcsine_cdf);

    Report& r = out.report;
    add_common(r, cfg);
    r.add("scheme", std::string(two_laser ? (cw_b ? "two_laser_cw" : "two_laser_gain_switched") : "delayed"));
    r.add("samples", q.samples);
    r.add("calibration_pulses", q.calibration_pulses);
    r.add("adc_bits", static_cast<std::size_t>(adc.bits));
    r.add("adc_output_bits", static_cast<std::size_t>(adc.packed_bits()));
    r.add("adc_full_scale", adc.full_scale);
    r.add("adc_offset", adc.offset);
    r.add("min_entropy_bits", entropy.min_entropy);
    r.add("ks_distance_arcsine", ks);
    r.add("packed_bits", bias.total);
    r.add("monobit_ones", bias.ones);
    r.add("monobit_bias", bias.bias);
    out.metrics.min_entropy = entropy.min_entropy;
    for (const auto& w : out.warnings) r.add("warning", w);

    std::ostringstream hist;
    write_histogram_csv(hist, entropy);
    std::ostringstream samples;
    samples << "index,intensity,normalized,code\n";
    char buf[160];
    for (std::size_t i = 0; i < codes.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.12e,%.12e,%u\n", i, data[i], x_data[i], unsigned{codes[i]});
        samples << buf;
    }
    out.files.push_back({"bits.bin", std::string(bytes.begin(), bytes.end())});
    out.files.push_back({"histogram.csv", hist.str()});
    out.files.push_back({"samples.csv", samples.str()});
    finish(out);
    return out;
}

}  // namespace

RunResult run_scenario(const RunConfig& cfg) {
    switch (cfg.scenario.kind) {
        case Scenario::GainSwitch: return run_gain_switch(cfg);
        case Scenario::CwSeed: return run_cw_seed(cfg);
        case Scenario::PhaseSeed: return run_phase_seed(cfg, false);
        case Scenario::PulsedSeed: return run_phase_seed(cfg, true);
        case Scenario::Protocol:
        case Scenario::Mdpsk: return run_pattern(cfg);
        case Scenario::QrngDelayed: return run_qrng(cfg, false);
        case Scenario::QrngTwoLaser: return run_qrng(cfg, true);
    }
    throw ConfigError("unhandled scenario");
}

void describe(const RunConfig& cfg, std::ostream& os) {
    char buf[200];
    const auto line = [&](const char* fmt, auto... v) {
        std::snprintf(buf, sizeof buf, fmt, v...);
        os << buf << '\n';
    };
    line("scenario: %s", cfg.scenario.text.c_str());
    line("seed: %llu", static_cast<unsigned long long>(cfg.seed));
    line("config_sha256: %s", config_hash(cfg.source).c_str());
    line("threshold_current_primary_mA: %.6f", threshold_current(cfg.primary) * kMilli);
    line("threshold_current_secondary_mA: %.6f", threshold_current(cfg.secondary) * kMilli);
    line("samples_per_pulse: %zu", cfg.clock.samples_per_pulse());
    line("pulses_per_symbol: %zu", cfg.clock.pulses_per_symbol());
    for (const auto& w : gain_switch_warnings(cfg.secondary, cfg.modulation.secondary_low,
                                              cfg.modulation.secondary_high)) {
        line("warning: %s", w.c_str());
    }

    const Scenario k = cfg.scenario.kind;
    if (k == Scenario::GainSwitch || k == Scenario::QrngDelayed || k == Scenario::QrngTwoLaser) return;

    const double ratio = injection_ratio(cfg.injection, cfg.primary, cfg.primary_emitting_current(), cfg.secondary,
                                         cfg.modulation.secondary_high);
    const auto range = locking_range(cfg.secondary, cfg.injection, ratio);
    line("injection_ratio: %.6g", ratio);
    line("locking_range_rad_per_s: [%.6g, %.6g]", range.omega_min, range.omega_max);
    line("detuning_offset_rad_per_s: %.6g (%s)", cfg.detuning_offset,
         range.contains(cfg.detuning_offset) ? "inside locking range" : "outside locking range");
    line("cavity_detuning_rad_per_s: %.6g", cfg.injection.detuning);
    if (k == Scenario::CwSeed) return;

    std::vector<double> levels;
    if (k == Scenario::PhaseSeed || k == Scenario::PulsedSeed) {
        levels = cfg.phase_levels();
    } else {
        SymbolPattern pattern;
        pattern.protocol = k == Scenario::Mdpsk ? Protocol::MDPSK : cfg.scenario.protocol;
        pattern.alphabet = k == Scenario::Mdpsk ? cfg.scenario.M
                                                : (cfg.scenario.protocol == Protocol::BB84 ? 4 : 2);
        if (cfg.scenario.protocol == Protocol::COW) return;
        pattern.values = {0};
        levels = pattern.targets();
    }
    const auto window = perturbation_window(cfg.clock, cfg.modulation);
    line("perturbation_window_samples: [%zu, %zu)", window.first, window.second);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double dI = perturbation_amplitude(cfg.modulation, cfg.clock, cfg.primary, levels[i], i);
        line("phase_level[%zu]: %.6f rad -> delta_I %.6f mA", i, levels[i], dI * kMilli);
    }
}

}  // namespace phaseseed::cli
