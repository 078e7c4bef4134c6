#include "phaseseed/drive.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <numbers>
#include <ostream>

#include "phaseseed/errors.hpp"
#include "phaseseed/rng.hpp"

namespace phaseseed {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t grid_count(double period, double dt, const char* what) {
    const double ratio = period / dt;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-6 * n) throw ConfigError(std::string("clock: dt does not divide the ") + what);
    return static_cast<std::size_t>(n);
}

std::size_t samples_of(double duration, double dt) {
    return static_cast<std::size_t>(std::llround(duration / dt));
}

void require_duty(double duty, const char* what) {
    if (!(duty > 0.0 && duty < 1.0)) throw ConfigError(std::string(what) + " must be in (0, 1)");
}

std::vector<int> draw_values(std::size_t n, int alphabet, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<int> out(n);
    for (auto& v : out) v = static_cast<int>(rng.bits32() % static_cast<std::uint32_t>(alphabet));
    return out;
}

}  // namespace

void ClockConfig::validate() const {
    if (!(symbol_rate > 0.0) || !std::isfinite(symbol_rate)) throw ConfigError("clock: symbol_rate must be > 0");
    if (!(secondary_pulse_rate > 0.0) || !std::isfinite(secondary_pulse_rate)) {
        throw ConfigError("clock: secondary_pulse_rate must be > 0");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("clock: dt must be > 0");
    const double ratio = secondary_pulse_rate / symbol_rate;
    if (ratio < 1.0 - 1e-9 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
        throw ConfigError("clock: secondary_pulse_rate must be an integer multiple of symbol_rate");
    }
    grid_count(pulse_period(), dt, "secondary pulse period");
    grid_count(symbol_period(), dt, "symbol period");
}

std::size_t ClockConfig::samples_per_pulse() const { return grid_count(pulse_period(), dt, "secondary pulse period"); }

std::size_t ClockConfig::pulses_per_symbol() const {
    return static_cast<std::size_t>(std::llround(secondary_pulse_rate / symbol_rate));
}

std::size_t ClockConfig::samples_per_symbol() const { return samples_per_pulse() * pulses_per_symbol(); }

void ModulationSpec::validate() const {
    require_duty(perturbation_duty, "perturbation_duty");
    require_duty(pulse_duty, "pulse_duty");
    require_duty(secondary_duty, "secondary_duty");
    const double levels[] = {base_current, high_current, secondary_low, secondary_high, primary_lead};
    for (const double v : levels) {
        if (!std::isfinite(v)) throw ConfigError("modulation: levels must be finite");
    }
    if (base_current < 0.0 || high_current < 0.0 || secondary_low < 0.0 || secondary_high < 0.0) {
        throw ConfigError("modulation: currents must be >= 0");
    }
    for (const double v : perturbation_currents) {
        if (!std::isfinite(v) || v < 0.0) throw ConfigError("modulation: perturbation currents must be finite and >= 0");
    }
}

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::COW: return "COW";
        case Protocol::DPS: return "DPS";
        case Protocol::BB84: return "BB84";
        case Protocol::MDPSK: return "MDPSK";
        case Protocol::RAW: return "RAW";
    }
    return "RAW";
}

Protocol protocol_from_string(const std::string& s) {
    std::string u = s;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (u == "COW") return Protocol::COW;
    if (u == "DPS") return Protocol::DPS;
    if (u == "BB84") return Protocol::BB84;
    if (u == "MDPSK") return Protocol::MDPSK;
    if (u == "RAW") return Protocol::RAW;
    throw ConfigError("unknown protocol tag: " + s);
}

void SymbolPattern::validate() const {
    if (values.empty()) throw ConfigError("symbol pattern: empty");
    if (alphabet < 1) throw ConfigError("symbol pattern: alphabet must be >= 1");
    for (const int v : values) {
        if (v < 0 || v >= alphabet) throw ConfigError("symbol pattern: value outside alphabet");
    }
}

double SymbolPattern::target_phase(std::size_t i) const {
    const int v = values.at(i);
    switch (protocol) {
        case Protocol::DPS: return v * kPi;
        case Protocol::BB84: {
            constexpr double table[] = {0.0, kPi, kPi / 2.0, 3.0 * kPi / 2.0};
            return table[v];
        }
        case Protocol::MDPSK: return 2.0 * kPi * v / alphabet;
        case Protocol::COW:
        case Protocol::RAW: return 0.0;
    }
    return 0.0;
}

std::string SymbolPattern::basis(std::size_t i) const {
    if (protocol != Protocol::BB84) return {};
    return values.at(i) < 2 ? "X" : "Y";
}

std::vector<double> SymbolPattern::targets() const {
    switch (protocol) {
        case Protocol::DPS: return {0.0, kPi};
        case Protocol::BB84: return {0.0, kPi, kPi / 2.0, 3.0 * kPi / 2.0};
        case Protocol::MDPSK: {
            std::vector<double> t(static_cast<std::size_t>(alphabet));
            for (int k = 0; k < alphabet; ++k) t[static_cast<std::size_t>(k)] = 2.0 * kPi * k / alphabet;
            return t;
        }
        case Protocol::COW:
        case Protocol::RAW: return {0.0};
    }
    return {0.0};
}

void write_symbol_pattern_csv(std::ostream& os, const SymbolPattern& pattern) {
    os << "symbol_index,protocol,value,basis\n";
    const std::string tag = to_string(pattern.protocol);
    for (std::size_t i = 0; i < pattern.values.size(); ++i) {
        os << i << ',' << tag << ',' << pattern.values[i] << ',' << pattern.basis(i) << '\n';
    }
}

double phase_to_current(double dphi, double t_m, const LaserParams& p) {
    if (!(t_m > 0.0)) throw DomainError("phase_to_current: t_m must be > 0");
    if (!(p.eps > 0.0) || p.alpha == 0.0) throw DomainError("phase_to_current: needs eps > 0 and alpha != 0");
    return dphi * 2.0 * constants::electron_charge * p.V / (t_m * p.Gamma * p.alpha * p.eps);
}

double fold_phase(double dphi) {
    if (!std::isfinite(dphi) || std::abs(dphi) > 2.0 * kPi + 1e-12) {
        throw DomainError("differential phase must satisfy |dphi| <= 2 pi");
    }
    if (dphi < 0.0) dphi += 2.0 * kPi;
    if (dphi >= 2.0 * kPi) dphi -= 2.0 * kPi;
    return dphi;
}

DriveWaveform gain_switch_wave(const ClockConfig& clock, double I_off, double I_on, double duty,
                               std::size_t n_pulses) {
    clock.validate();
    require_duty(duty, "duty");
    if (n_pulses == 0) throw ConfigError("gain_switch_wave: n_pulses must be >= 1");
    const std::size_t spp = clock.samples_per_pulse();
    const std::size_t on = samples_of(duty * clock.pulse_period(), clock.dt);
    std::vector<double> s(spp * n_pulses);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = (k % spp) < on ? I_on : I_off;
    return DriveWaveform(clock.dt, std::move(s));
}

std::vector<std::string> gain_switch_warnings(const LaserParams& p, double I_off, double I_on) {
    std::vector<std::string> w;
    const double I_th = threshold_current(p);
    if (!(I_off < I_th)) w.push_back("off current is not below threshold; pulses may not be phase randomised");
    if (!(I_on > I_th)) w.push_back("on current is not above threshold; the laser will not lase");
    return w;
}

std::vector<std::pair<std::size_t, std::size_t>> secondary_windows(const ClockConfig& clock,
                                                                    const ModulationSpec& spec) {
    const std::size_t spp = clock.samples_per_pulse();
    const std::size_t on = samples_of(spec.secondary_duty * clock.pulse_period(), clock.dt);
    std::vector<std::pair<std::size_t, std::size_t>> w;
    for (std::size_t j = 0; j < clock.pulses_per_symbol(); ++j) w.emplace_back(j * spp, j * spp + on);
    return w;
}

std::pair<std::size_t, std::size_t> perturbation_window(const ClockConfig& clock, const ModulationSpec& spec) {
    clock.validate();
    spec.validate();
    const auto win = secondary_windows(clock, spec);
    if (win.size() < 2) throw ConfigError("phase seeding needs at least two secondary pulses per symbol");
    const double c0 = 0.5 * static_cast<double>(win[0].first + win[0].second);
    const double c1 = 0.5 * static_cast<double>(win[1].first + win[1].second);
    const std::size_t len = std::max<std::size_t>(1, samples_of(spec.perturbation_length(clock), clock.dt));
    const double begin_f = 0.5 * (c0 + c1) - 0.5 * static_cast<double>(len);
    if (begin_f < 0.0) throw ConfigError("perturbation starts before the symbol");
    const auto begin = static_cast<std::size_t>(std::llround(begin_f));
    const std::size_t end = begin + len;
    for (const auto& [b, e] : win) {
        if (begin < e && b < end) throw ConfigError("perturbation overlaps a secondary pulse window");
    }
    return {begin, end};
}

double perturbation_amplitude(const ModulationSpec& spec, const ClockConfig& clock, const LaserParams& primary,
                              double dphi, std::optional<std::size_t> level_index) {
    if (level_index && !spec.perturbation_currents.empty()) {
        if (*level_index >= spec.perturbation_currents.size()) {
            throw ConfigError("perturbation level index outside the calibrated table");
        }
        return spec.perturbation_currents[*level_index];
    }
    return phase_to_current(fold_phase(dphi), spec.perturbation_length(clock), primary);
}

namespace {

std::optional<std::size_t> level_at(std::span<const std::size_t> levels, std::size_t m) {
    if (levels.empty()) return std::nullopt;
    return levels[m];
}

void check_levels(std::span<const double> phases, std::span<const std::size_t> levels) {
    if (phases.empty()) throw ConfigError("phase pattern: no symbols");
    if (!levels.empty() && levels.size() != phases.size()) {
        throw ConfigError("phase pattern: level indices and phases differ in length");
    }
}

}  // namespace

DriveWaveform phase_seed_pattern(const ClockConfig& clock, const ModulationSpec& spec, const LaserParams& primary,
                                 std::span<const double> phases, std::span<const std::size_t> level_indices) {
    check_levels(phases, level_indices);
    const auto [pb, pe] = perturbation_window(clock, spec);
    const std::size_t sps = clock.samples_per_symbol();
    std::vector<double> s(sps * phases.size(), spec.base_current);
    for (std::size_t m = 0; m < phases.size(); ++m) {
        const double a = perturbation_amplitude(spec, clock, primary, phases[m], level_at(level_indices, m));
        for (std::size_t k = m * sps + pb; k < m * sps + pe; ++k) s[k] += a;
    }
    return DriveWaveform(clock.dt, std::move(s));
}

DriveWaveform pulsed_seeding_pattern(const ClockConfig& clock, const ModulationSpec& spec,
                                     const LaserParams& primary, std::span<const double> phases,
                                     std::span<const std::size_t> level_indices) {
    check_levels(phases, level_indices);
    if (clock.pulses_per_symbol() != 2) {
        throw ConfigError("pulsed seeding needs secondary_pulse_rate = 2 x symbol_rate");
    }
    const auto [pb, pe] = perturbation_window(clock, spec);
    const std::size_t sps = clock.samples_per_symbol();
    const auto on_len = static_cast<std::ptrdiff_t>(samples_of(spec.pulse_duty * clock.symbol_period(), clock.dt));
    const auto lead = static_cast<std::ptrdiff_t>(samples_of(spec.primary_lead, clock.dt));
    const auto center2 = static_cast<std::ptrdiff_t>(pb + pe);  // twice the perturbation center
    const std::ptrdiff_t on_begin = (center2 - on_len) / 2 - lead;
    const std::ptrdiff_t on_end = on_begin + on_len;
    if (on_begin > static_cast<std::ptrdiff_t>(pb) || on_end < static_cast<std::ptrdiff_t>(pe)) {
        throw ConfigError("perturbation does not fit inside the primary pulse");
    }
    if (on_len >= static_cast<std::ptrdiff_t>(sps)) throw ConfigError("primary pulse fills the whole symbol");

    const auto total = static_cast<std::ptrdiff_t>(sps * phases.size());
    std::vector<double> s(static_cast<std::size_t>(total), spec.base_current);
    for (std::size_t m = 0; m < phases.size(); ++m) {
        const auto origin = static_cast<std::ptrdiff_t>(m * sps);
        for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(0, origin + on_begin); k < std::min(total, origin + on_end);
             ++k) {
            s[static_cast<std::size_t>(k)] = spec.high_current;
        }
        const double a = perturbation_amplitude(spec, clock, primary, phases[m], level_at(level_indices, m));
        for (std::size_t k = m * sps + pb; k < m * sps + pe; ++k) s[k] += a;
    }
    return DriveWaveform(clock.dt, std::move(s));
}

DriveWaveform secondary_gain_switch(const ClockConfig& clock, const ModulationSpec& spec, std::size_t n_symbols) {
    return gain_switch_wave(clock, spec.secondary_low, spec.secondary_high, spec.secondary_duty,
                            n_symbols * clock.pulses_per_symbol());
}

namespace {

std::vector<int> values_or_draw(std::span<const int> data, std::size_t n_symbols, int alphabet,
                                std::uint64_t seed) {
    if (!data.empty()) return {data.begin(), data.end()};
    if (n_symbols == 0) throw ConfigError("pattern: need data or a symbol count");
    return draw_values(n_symbols, alphabet, seed);
}

ProtocolDrives phase_encoded(SymbolPattern pattern, const ClockConfig& clock, const ModulationSpec& spec,
                             const LaserParams& primary, bool pulsed) {
    pattern.validate();
    std::vector<double> phases(pattern.values.size());
    std::vector<std::size_t> levels(pattern.values.size());
    for (std::size_t i = 0; i < phases.size(); ++i) {
        phases[i] = pattern.target_phase(i);
        levels[i] = static_cast<std::size_t>(pattern.values[i]);
    }
    DriveWaveform prim = pulsed ? pulsed_seeding_pattern(clock, spec, primary, phases, levels)
                                : phase_seed_pattern(clock, spec, primary, phases, levels);
    DriveWaveform sec = secondary_gain_switch(clock, spec, phases.size());
    return {std::move(prim), std::move(sec), std::move(pattern)};
}

}  // namespace

ProtocolDrives protocol_pattern(Protocol protocol, const ClockConfig& clock, const ModulationSpec& spec,
                                const LaserParams& primary, std::span<const int> data, std::size_t n_symbols,
                                std::uint64_t seed, double decoy_fraction) {
    clock.validate();
    spec.validate();
    SymbolPattern pattern;
    pattern.protocol = protocol;
    pattern.seed = seed;
    switch (protocol) {
        case Protocol::COW: {
            if (clock.pulses_per_symbol() != 2) throw ConfigError("COW needs two secondary pulses per symbol");
            pattern.alphabet = 3;
            if (!data.empty()) {
                pattern.values.assign(data.begin(), data.end());
            } else {
                if (n_symbols == 0) throw ConfigError("pattern: need data or a symbol count");
                RandomStream rng(seed);
                pattern.values.resize(n_symbols);
                for (auto& v : pattern.values) {
                    const double u = rng.uniform();
                    v = u < decoy_fraction ? 2 : static_cast<int>(rng.bits32() & 1u);
                }
            }
            pattern.validate();
            const std::size_t n = pattern.values.size();
            const std::size_t spp = clock.samples_per_pulse();
            const std::size_t on = samples_of(spec.secondary_duty * clock.pulse_period(), clock.dt);
            std::vector<double> sec(2 * spp * n, spec.secondary_low);
            for (std::size_t m = 0; m < n; ++m) {
                const int v = pattern.values[m];
                const bool slot_on[2] = {v != 1, v != 0};
                for (std::size_t j = 0; j < 2; ++j) {
                    if (!slot_on[j]) continue;
                    const std::size_t b = (2 * m + j) * spp;
                    std::fill(sec.begin() + static_cast<std::ptrdiff_t>(b),
                              sec.begin() + static_cast<std::ptrdiff_t>(b + on), spec.secondary_high);
                }
            }
            DriveWaveform prim(clock.dt, std::vector<double>(sec.size(), spec.base_current));
            return {std::move(prim), DriveWaveform(clock.dt, std::move(sec)), std::move(pattern)};
        }
        case Protocol::DPS:
            pattern.alphabet = 2;
            pattern.values = values_or_draw(data, n_symbols, 2, seed);
            return phase_encoded(std::move(pattern), clock, spec, primary, false);
        case Protocol::BB84:
            pattern.alphabet = 4;
            pattern.values = values_or_draw(data, n_symbols, 4, seed);
            return phase_encoded(std::move(pattern), clock, spec, primary, true);
        case Protocol::MDPSK:
        case Protocol::RAW: break;
    }
    throw ConfigError("protocol_pattern supports COW, DPS and BB84");
}

ProtocolDrives mdpsk_pattern(int M, const ClockConfig& clock, const ModulationSpec& spec,
                             const LaserParams& primary, std::span<const int> data, std::size_t n_symbols,
                             std::uint64_t seed) {
    if (M != 2 && M != 4 && M != 8 && M != 16) throw ConfigError("M-DPSK needs M in {2, 4, 8, 16}");
    clock.validate();
    spec.validate();
    SymbolPattern pattern;
    pattern.protocol = Protocol::MDPSK;
    pattern.alphabet = M;
    pattern.seed = seed;
    pattern.values = values_or_draw(data, n_symbols, M, seed);
    return phase_encoded(std::move(pattern), clock, spec, primary, false);
}

double mdpsk_bit_rate(int M, double symbol_rate) { return std::log2(static_cast<double>(M)) * symbol_rate; }

}  // namespace phaseseed
