#include "phaseseed/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "phaseseed/errors.hpp"
#include "phaseseed/injection.hpp"
#include "phaseseed/stats.hpp"

namespace phaseseed {

namespace {

constexpr double kPi = std::numbers::pi;

struct Gate {
    std::ptrdiff_t begin;
    std::size_t length;
};

Gate gate_of(const PulseGrid& grid, std::size_t j, double dt, double t0) {
    const double width = grid.window_fraction * grid.period;
    const double center = grid.origin + (static_cast<double>(j) + 0.5) * grid.period + grid.gate_delay;
    const double start = center - 0.5 * width;
    return {static_cast<std::ptrdiff_t>(std::llround((start - t0) / dt)),
            std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(width / dt)))};
}

// Gates whose windows lie fully inside the record, as (pulse index, gate).
std::vector<std::pair<std::size_t, Gate>> gates_in(const PulseGrid& grid, std::size_t n, double dt, double t0) {
    grid.validate();
    if (!(dt > 0.0)) throw DomainError("pulse_amplitudes: dt must be > 0");
    std::vector<std::pair<std::size_t, Gate>> out;
    for (std::size_t j = 0;; ++j) {
        const Gate g = gate_of(grid, j, dt, t0);
        if (g.begin + static_cast<std::ptrdiff_t>(g.length) > static_cast<std::ptrdiff_t>(n)) break;
        if (g.begin >= 0) out.emplace_back(j, g);
    }
    return out;
}

PulseAmplitude integrate_gate(std::span<const Complex> field, const PulseGrid& grid, std::size_t j, const Gate& g) {
    Complex acc{0.0, 0.0};
    const auto b = static_cast<std::size_t>(g.begin);
    for (std::size_t k = b; k < b + g.length; ++k) acc += field[k];
    return {j / grid.slots_per_symbol, static_cast<int>(j % grid.slots_per_symbol),
            acc / static_cast<double>(g.length)};
}

Complex field_at(const Trajectory& traj, std::size_t k) {
    const double m = std::sqrt(std::max(0.0, traj.S[k]));
    return {m * std::cos(traj.phi[k]), m * std::sin(traj.phi[k])};
}

IQPoint demod_pair(const PulseAmplitude& later, const PulseAmplitude& earlier, double threshold) {
    IQPoint p;
    p.symbol_index = later.symbol_index;
    p.slot_index = later.slot_index;
    const double ma = std::abs(later.amplitude);
    const double mb = std::abs(earlier.amplitude);
    if (ma <= 0.0 || mb <= 0.0 || ma < threshold || mb < threshold) return p;
    const Complex z = later.amplitude * std::conj(earlier.amplitude) / (ma * mb);
    p.I = z.real();
    p.Q = z.imag();
    p.phase = std::atan2(p.Q, p.I);
    p.click = true;
    return p;
}

void check_demod(std::span<const PulseAmplitude> amps, std::size_t delay) {
    if (delay == 0) throw DomainError("demodulate: delay must be >= 1");
    if (amps.size() < delay + 1) throw DomainError("demodulate: needs at least delay + 1 amplitudes");
}

std::size_t count_no_clicks(const std::vector<IQPoint>& pts) {
    return static_cast<std::size_t>(std::count_if(pts.begin(), pts.end(), [](const IQPoint& p) { return !p.click; }));
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

PulseGrid PulseGrid::from_clock(const ClockConfig& clock, double window_fraction, double gate_delay) {
    clock.validate();
    PulseGrid g;
    g.period = static_cast<double>(clock.samples_per_pulse()) * clock.dt;
    g.slots_per_symbol = clock.pulses_per_symbol();
    g.window_fraction = window_fraction;
    g.gate_delay = gate_delay;
    return g;
}

void PulseGrid::validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) throw ConfigError("pulse grid: period must be > 0");
    if (slots_per_symbol == 0) throw ConfigError("pulse grid: slots_per_symbol must be >= 1");
    if (!(window_fraction > 0.0)) throw ConfigError("pulse grid: window_fraction must be > 0");
    if (window_fraction > 1.0) throw ConfigError("pulse grid: detection windows overlap (window_fraction > 1)");
    if (!std::isfinite(gate_delay) || !std::isfinite(origin)) throw ConfigError("pulse grid: non-finite offset");
}

std::vector<Complex> complex_field(const Trajectory& traj) {
    std::vector<Complex> out(traj.size());
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = field_at(traj, static_cast<std::size_t>(k));
    return out;
}

std::vector<PulseAmplitude> pulse_amplitudes(std::span<const Complex> field, double dt, double t0,
                                             const PulseGrid& grid) {
    const auto gates = gates_in(grid, field.size(), dt, t0);
    std::vector<PulseAmplitude> out(gates.size());
    const auto n = static_cast<std::ptrdiff_t>(gates.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& [j, g] = gates[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] = integrate_gate(field, grid, j, g);
    }
    return out;
}

PulseAccumulator::PulseAccumulator(const PulseGrid& grid, double dt, double t0) : grid_(grid), dt_(dt), t0_(t0) {
    grid_.validate();
    if (!(dt > 0.0)) throw DomainError("PulseAccumulator: dt must be > 0");
    seek();
}

void PulseAccumulator::seek() {
    for (;; ++j_) {
        const Gate g = gate_of(grid_, j_, dt_, t0_);
        if (g.begin >= 0) {
            begin_ = g.begin;
            length_ = g.length;
            acc_ = {0.0, 0.0};
            return;
        }
    }
}

void PulseAccumulator::add(std::size_t k, Complex z) {
    const auto kk = static_cast<std::ptrdiff_t>(k);
    if (kk < begin_) return;
    acc_ += z;
    if (kk + 1 == begin_ + static_cast<std::ptrdiff_t>(length_)) {
        out_.push_back({j_ / grid_.slots_per_symbol, static_cast<int>(j_ % grid_.slots_per_symbol),
                        acc_ / static_cast<double>(length_)});
        ++j_;
        seek();
    }
}

void PulseAccumulator::add(std::size_t k, double S, double phi) {
    if (static_cast<std::ptrdiff_t>(k) < begin_) return;
    const double m = std::sqrt(std::max(0.0, S));
    add(k, Complex{m * std::cos(phi), m * std::sin(phi)});
}

double empty_slot_threshold(std::span<const PulseAmplitude> amps) {
    std::vector<double> mags;
    mags.reserve(amps.size());
    double peak = 0.0;
    for (const auto& a : amps) {
        mags.push_back(std::abs(a.amplitude));
        peak = std::max(peak, mags.back());
    }
    if (!(peak > 0.0)) return 0.0;
    std::erase_if(mags, [peak](double m) { return m < 0.01 * peak; });
    return 0.01 * median(std::move(mags));
}

Demodulation demodulate(std::span<const PulseAmplitude> amps, std::size_t delay, std::optional<double> threshold) {
    check_demod(amps, delay);
    Demodulation d;
    d.empty_threshold = threshold ? *threshold : empty_slot_threshold(amps);
    d.points.resize(amps.size() - delay);
    const auto n = static_cast<std::ptrdiff_t>(d.points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i) + delay;
        d.points[static_cast<std::size_t>(i)] = demod_pair(amps[k], amps[k - delay], d.empty_threshold);
    }
    d.no_clicks = count_no_clicks(d.points);
    return d;
}

std::vector<IQPoint> select_slot(std::span<const IQPoint> points, int slot) {
    std::vector<IQPoint> out;
    for (const auto& p : points) {
        if (p.slot_index == slot) out.push_back(p);
    }
    return out;
}

ConstellationReport constellation(std::span<const IQPoint> points, std::span<const double> targets,
                                  std::span<const int> intended) {
    if (targets.empty()) throw DomainError("constellation: no targets");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (std::abs(wrap_phase(targets[i] - targets[j])) < 1e-12) {
                throw DomainError("constellation: targets must be distinct modulo 2 pi");
            }
        }
    }
    ConstellationReport r;
    r.errors_counted = !intended.empty();
    r.assignment.assign(points.size(), -1);
    std::vector<std::vector<double>> members(targets.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const IQPoint& p = points[i];
        if (!p.click) continue;
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < targets.size(); ++t) {
            const double d = std::abs(wrap_phase(p.phase - targets[t]));
            if (d < best_d) {
                best_d = d;
                best = t;
            }
        }
        r.assignment[i] = static_cast<int>(best);
        members[best].push_back(p.phase);
        ++r.points;
        if (r.errors_counted) {
            if (p.symbol_index >= intended.size()) throw DomainError("constellation: intended pattern too short");
            if (intended[p.symbol_index] != static_cast<int>(best)) ++r.symbol_errors;
        }
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const CircularSummary c = circular_summary(members[t]);
        r.clusters.push_back({targets[t], members[t].size(), c.mean, c.std});
    }
    return r;
}

double visibility(double I_max, double I_min) {
    if (!(I_max >= I_min) || !(I_min >= 0.0)) throw DomainError("visibility: needs Imax >= Imin >= 0");
    if (I_max + I_min == 0.0) throw DomainError("visibility: undefined for zero intensity");
    return (I_max - I_min) / (I_max + I_min);
}

double fringe_visibility(std::span<const PulseAmplitude> amps, std::size_t delay) {
    check_demod(amps, delay);
    Complex cross{0.0, 0.0};
    double power = 0.0;
    for (std::size_t k = delay; k < amps.size(); ++k) {
        const Complex a = amps[k].amplitude;
        const Complex b = amps[k - delay].amplitude;
        cross += a * std::conj(b);
        power += std::norm(a) + std::norm(b);
    }
    // Swept relative phase: I(theta) = (power + 2 Re(e^{-i theta} cross)) / 4.
    const double I_max = 0.25 * (power + 2.0 * std::abs(cross));
    const double I_min = std::max(0.0, 0.25 * (power - 2.0 * std::abs(cross)));
    return visibility(I_max, I_min);
}

JitterReport jitter_stats(std::span<const double> P, double dt, double t0, double period, double edge_origin,
                          double threshold_fraction, double min_peak) {
    if (!(dt > 0.0)) throw DomainError("jitter_stats: dt must be > 0");
    if (!(period > 0.0)) throw DomainError("jitter_stats: period must be > 0");
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
        throw DomainError("jitter_stats: threshold_fraction must be in (0, 1)");
    }
    const auto n = static_cast<std::ptrdiff_t>(P.size());
    const auto len = static_cast<std::ptrdiff_t>(std::llround(period / dt));
    JitterReport r;
    std::size_t pulses = 0;
    for (std::size_t j = 0;; ++j) {
        const double edge = edge_origin + static_cast<double>(j) * period;
        const auto b = static_cast<std::ptrdiff_t>(std::llround((edge - t0) / dt));
        if (b + len > n) break;
        if (b < 0) continue;
        ++pulses;
        const auto first = P.begin() + b;
        const double peak = *std::max_element(first, first + len);
        const double thr = threshold_fraction * peak;
        bool found = false;
        if (peak > 0.0 && peak >= min_peak) {
            for (std::ptrdiff_t k = b + 1; k < b + len; ++k) {
                const double lo = P[static_cast<std::size_t>(k - 1)];
                const double hi = P[static_cast<std::size_t>(k)];
                if (lo < thr && hi >= thr) {
                    const double t = t0 + dt * (static_cast<double>(k - 1) + (thr - lo) / (hi - lo));
                    r.delays.push_back(t - edge);
                    found = true;
                    break;
                }
            }
        }
        if (!found) ++r.excluded;
    }
    if (pulses < 2) throw DomainError("jitter_stats: trajectory contains fewer than two pulses");
    r.mean = mean(r.delays);
    r.std = sample_std(r.delays);
    return r;
}

JitterReport jitter_stats(const Trajectory& traj, double period, double edge_origin, double threshold_fraction,
                          double min_peak) {
    return jitter_stats(traj.P, traj.dt, traj.t0, period, edge_origin, threshold_fraction, min_peak);
}

UniformityResult phase_uniformity_test(std::span<const double> phases, std::size_t n_bins, double significance) {
    if (n_bins < 2) throw DomainError("phase_uniformity_test: needs at least two bins");
    if (!(significance > 0.0 && significance < 1.0)) throw DomainError("phase_uniformity_test: significance in (0, 1)");
    if (phases.size() < 10 * n_bins) throw DomainError("phase_uniformity_test: needs at least 10 samples per bin");
    std::vector<double> counts(n_bins, 0.0);
    for (const double ph : phases) {
        const double u = (wrap_phase(ph) + kPi) / (2.0 * kPi);
        const auto bin = std::min(n_bins - 1, static_cast<std::size_t>(u * static_cast<double>(n_bins)));
        counts[bin] += 1.0;
    }
    const double expected = static_cast<double>(phases.size()) / static_cast<double>(n_bins);
    UniformityResult r;
    for (const double c : counts) r.chi2 += (c - expected) * (c - expected) / expected;
    const auto dof = static_cast<double>(n_bins - 1);
    r.critical = chi_square_critical(dof, significance);
    r.p_value = chi_square_sf(r.chi2, dof);
    r.pass = r.chi2 <= r.critical;
    return r;
}

std::vector<double> phases_of(std::span<const IQPoint> points) {
    std::vector<double> out;
    for (const auto& p : points) {
        if (p.click) out.push_back(p.phase);
    }
    return out;
}

void write_iq_csv(std::ostream& os, std::span<const IQPoint> points, std::span<const int> assignment) {
    if (!assignment.empty() && assignment.size() != points.size()) {
        throw DomainError("write_iq_csv: assignment length differs from points");
    }
    os << "symbol_index,I,Q,phase_rad,assigned_target_index\n";
    char buf[160];
    for (std::size_t i = 0; i < points.size(); ++i) {
        const IQPoint& p = points[i];
        if (!p.click) continue;
        const int a = assignment.empty() ? -1 : assignment[i];
        std::snprintf(buf, sizeof buf, "%zu,%.12e,%.12e,%.12e,%d\n", p.symbol_index, p.I, p.Q, p.phase, a);
        os << buf;
    }
}

void Report::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Report::add(const std::string& key, double value) { add(key, fmt(value)); }
void Report::add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

void Report::write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << k << ": " << v << '\n';
}

void append_constellation(Report& r, const ConstellationReport& c) {
    r.add("constellation_points", c.points);
    if (c.errors_counted) r.add("symbol_errors", c.symbol_errors);
    for (std::size_t i = 0; i < c.clusters.size(); ++i) {
        const auto& cl = c.clusters[i];
        const std::string p = "cluster_" + std::to_string(i) + "_";
        r.add(p + "target_rad", cl.target);
        r.add(p + "count", cl.count);
        r.add(p + "mean_rad", cl.mean_angle);
        r.add(p + "std_rad", cl.std);
    }
}

void append_jitter(Report& r, const JitterReport& j) {
    r.add("jitter_pulses", j.delays.size());
    r.add("jitter_excluded", j.excluded);
    r.add("jitter_mean_s", j.mean);
    r.add("jitter_std_s", j.std);
}

void append_uniformity(Report& r, const std::string& prefix, const UniformityResult& u) {
    r.add(prefix + "_chi2", u.chi2);
    r.add(prefix + "_critical", u.critical);
    r.add(prefix + "_p_value", u.p_value);
    r.add(prefix + "_uniform", u.pass);
}

namespace serial {

std::vector<Complex> complex_field(const Trajectory& traj) {
    std::vector<Complex> out(traj.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = field_at(traj, k);
    return out;
}

std::vector<PulseAmplitude> pulse_amplitudes(std::span<const Complex> field, double dt, double t0,
                                             const PulseGrid& grid) {
    std::vector<PulseAmplitude> out;
    for (const auto& [j, g] : gates_in(grid, field.size(), dt, t0)) out.push_back(integrate_gate(field, grid, j, g));
    return out;
}

Demodulation demodulate(std::span<const PulseAmplitude> amps, std::size_t delay, std::optional<double> threshold) {
    check_demod(amps, delay);
    Demodulation d;
    d.empty_threshold = threshold ? *threshold : empty_slot_threshold(amps);
    for (std::size_t k = delay; k < amps.size(); ++k) d.points.push_back(demod_pair(amps[k], amps[k - delay], d.empty_threshold));
    d.no_clicks = count_no_clicks(d.points);
    return d;
}

}  // namespace serial

}  // namespace phaseseed
