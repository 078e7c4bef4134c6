#include "cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "phaseseed/checksum.hpp"
#include "phaseseed/errors.hpp"
#include "phaseseed/params.hpp"

namespace phaseseed::cli {

using nlohmann::json;

namespace {

/// Collects violations so that all of them are reported at once.
class Diagnostics {
public:
    explicit Diagnostics(const std::string& text) : text_(text) {}

    void add(const std::string& path, const std::string& message) {
        errors_.push_back(path + ": " + message + locate(path));
    }
    bool empty() const noexcept { return errors_.empty(); }
    [[noreturn]] void raise() const {
        std::string all = "invalid config (" + std::to_string(errors_.size()) + " problem" +
                          (errors_.size() == 1 ? "" : "s") + ")";
        for (const auto& e : errors_) all += "\n  " + e;
        throw ConfigError(all);
    }

private:
    std::string locate(const std::string& path) const {
        if (text_.empty() || path.empty()) return {};
        const auto dot = path.find_last_of('.');
        const std::string leaf = "\"" + path.substr(dot == std::string::npos ? 0 : dot + 1) + "\"";
        const auto pos = text_.find(leaf);
        if (pos == std::string::npos) return {};
        return " (line " + std::to_string(1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) +
               ")";
    }

    const std::string& text_;
    std::vector<std::string> errors_;
};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

/// Typed access to one JSON object; keys never read are reported as unknown.
class Section {
public:
    Section(const json& j, std::string path, Diagnostics& diag) : path_(std::move(path)), diag_(diag) {
        if (j.is_object()) {
            obj_ = &j;
        } else if (!j.is_null()) {
            diag_.add(path_, "must be an object");
        }
    }
    Section(const Section&) = delete;
    Section& operator=(const Section&) = delete;
    ~Section() {
        if (!obj_) return;
        for (const auto& [k, v] : obj_->items()) {
            if (!seen_.count(k)) diag_.add(join(path_, k), "unknown key");
        }
    }

    bool has(const std::string& key) const { return obj_ && obj_->contains(key); }
    std::string path(const std::string& key) const { return join(path_, key); }

    const json* raw(const std::string& key) {
        if (!obj_) return nullptr;
        seen_.insert(key);
        const auto it = obj_->find(key);
        return it == obj_->end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out, const std::function<bool(double)>& ok = {},
                const char* rule = nullptr) {
        const json* v = raw(key);
        if (!v) return;
        if (!v->is_number()) {
            diag_.add(path(key), "must be a number");
            return;
        }
        const double x = v->get<double>();
        if (!std::isfinite(x) || (ok && !ok(x))) {
            diag_.add(path(key), rule ? rule : "out of range");
            return;
        }
        out = x;
    }

    template <class Int>
    void count(const std::string& key, Int& out, Int min_value = 0) {
        const json* v = raw(key);
        if (!v) return;
        if (!v->is_number_integer() || v->get<long long>() < static_cast<long long>(min_value)) {
            diag_.add(path(key), "must be an integer >= " + std::to_string(min_value));
            return;
        }
        out = static_cast<Int>(v->get<long long>());
    }

    void flag(const std::string& key, bool& out) {
        const json* v = raw(key);
        if (!v) return;
        if (!v->is_boolean()) {
            diag_.add(path(key), "must be true or false");
            return;
        }
        out = v->get<bool>();
    }

    void text(const std::string& key, std::string& out) {
        const json* v = raw(key);
        if (!v) return;
        if (!v->is_string()) {
            diag_.add(path(key), "must be a string");
            return;
        }
        out = v->get<std::string>();
    }

    template <class T>
    void list(const std::string& key, std::vector<T>& out) {
        const json* v = raw(key);
        if (!v) return;
        if (!v->is_array()) {
            diag_.add(path(key), "must be an array");
            return;
        }
        std::vector<T> tmp;
        for (const auto& e : *v) {
            const bool ok = std::is_integral_v<T> ? e.is_number_integer() : e.is_number();
            if (!ok || (!std::is_integral_v<T> && !std::isfinite(e.get<double>()))) {
                diag_.add(path(key), std::is_integral_v<T> ? "must hold integers" : "must hold finite numbers");
                return;
            }
            tmp.push_back(e.get<T>());
        }
        out = std::move(tmp);
    }

    /// A current given as `<base>_mA` or `<base>_ith` (multiples of I_th).
    void current(const std::string& base, double& out, double I_th) {
        const bool mA = has(base + "_mA");
        const bool ith = has(base + "_ith");
        if (mA && ith) {
            raw(base + "_mA");
            raw(base + "_ith");
            diag_.add(path(base), "give either " + base + "_mA or " + base + "_ith, not both");
            return;
        }
        const auto nonneg = [](double x) { return x >= 0.0; };
        double v = 0.0;
        if (mA) {
            v = -1.0;
            number(base + "_mA", v, nonneg, "must be >= 0");
            if (v >= 0.0) out = v * 1e-3;
        } else if (ith) {
            v = -1.0;
            number(base + "_ith", v, nonneg, "must be >= 0");
            if (v >= 0.0) out = v * I_th;
        }
    }

    const json* object() const noexcept { return obj_; }

private:
    const json* obj_ = nullptr;
    std::string path_;
    Diagnostics& diag_;
    std::set<std::string> seen_;
};

const json& child(Section& parent, const std::string& key) {
    static const json absent;
    const json* v = parent.raw(key);
    return v ? *v : absent;
}

const auto positive = [](double x) { return x > 0.0; };
const auto nonnegative = [](double x) { return x >= 0.0; };

LaserParams parse_laser(const json& j, const std::string& path, Diagnostics& diag) {
    Section s(j, path, diag);
    TableUnits t{};
    std::string preset;
    s.text("preset", preset);
    const bool has_preset = !preset.empty();
    if (has_preset) {
        if (preset != "reference_dfb") diag.add(s.path("preset"), "unknown preset '" + preset + "'");
        t = reference_dfb_table();
    }
    struct Field {
        const char* key;
        double TableUnits::*member;
        std::function<bool(double)> ok;
        const char* rule;
    };
    const auto unit = [](double x) { return x > 0.0 && x <= 1.0; };
    const Field fields[] = {
        {"tau_n_ns", &TableUnits::tau_n_ns, positive, "must be > 0"},
        {"tau_p_ps", &TableUnits::tau_p_ps, positive, "must be > 0"},
        {"g_1e6_cm3_per_s", &TableUnits::g_1e6_cm3_per_s, positive, "must be > 0"},
        {"eps_1e17_cm3", &TableUnits::eps_1e17_cm3, nonnegative, "must be >= 0"},
        {"N0_1e18_per_cm3", &TableUnits::N0_1e18_per_cm3, nonnegative, "must be >= 0"},
        {"beta_1e5", &TableUnits::beta_1e5, [](double x) { return x >= 0.0 && x <= 1e5; }, "must be in [0, 1e5]"},
        {"alpha", &TableUnits::alpha, {}, nullptr},
        {"eta", &TableUnits::eta, unit, "must be in (0, 1]"},
        {"V_1e11_cm3", &TableUnits::V_1e11_cm3, positive, "must be > 0"},
        {"Gamma", &TableUnits::Gamma, unit, "must be in (0, 1]"},
        {"kappa_1e11_per_s", &TableUnits::kappa_1e11_per_s, nonnegative, "must be >= 0"},
        {"nu_THz", &TableUnits::nu_THz, positive, "must be > 0"},
    };
    for (const auto& f : fields) {
        if (!has_preset && !s.has(f.key)) {
            diag.add(s.path(f.key), "missing (no preset given)");
            continue;
        }
        s.number(f.key, t.*f.member, f.ok, f.rule);
    }
    return from_table_units(t);
}

}  // namespace

ScenarioTag parse_scenario(const std::string& tag) {
    ScenarioTag out;
    out.text = tag;
    const auto colon = tag.find(':');
    const std::string head = tag.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string{} : tag.substr(colon + 1);
    const auto no_arg = [&](Scenario s) {
        if (colon != std::string::npos) throw ConfigError("scenario '" + tag + "' takes no argument");
        out.kind = s;
    };
    if (head == "gain_switch") {
        no_arg(Scenario::GainSwitch);
    } else if (head == "cw_seed") {
        no_arg(Scenario::CwSeed);
    } else if (head == "phase_seed") {
        no_arg(Scenario::PhaseSeed);
    } else if (head == "pulsed_seed") {
        no_arg(Scenario::PulsedSeed);
    } else if (head == "protocol") {
        out.kind = Scenario::Protocol;
        if (arg == "cow") {
            out.protocol = Protocol::COW;
        } else if (arg == "dps") {
            out.protocol = Protocol::DPS;
        } else if (arg == "bb84") {
            out.protocol = Protocol::BB84;
        } else {
            throw ConfigError("scenario '" + tag + "': protocol must be cow, dps or bb84");
        }
    } else if (head == "mdpsk") {
        out.kind = Scenario::Mdpsk;
        out.protocol = Protocol::MDPSK;
        if (arg == "2" || arg == "4" || arg == "8" || arg == "16") {
            out.M = std::stoi(arg);
        } else {
            throw ConfigError("scenario '" + tag + "': M must be 2, 4, 8 or 16");
        }
    } else if (head == "qrng") {
        if (arg == "delayed") {
            out.kind = Scenario::QrngDelayed;
        } else if (arg == "two_laser") {
            out.kind = Scenario::QrngTwoLaser;
        } else {
            throw ConfigError("scenario '" + tag + "': qrng scheme must be delayed or two_laser");
        }
    } else {
        throw ConfigError("unknown scenario '" + tag + "'");
    }
    return out;
}

double RunConfig::primary_emitting_current() const {
    const bool pulsed = scenario.kind == Scenario::PulsedSeed ||
                        (scenario.kind == Scenario::Protocol && scenario.protocol == Protocol::BB84);
    return pulsed ? modulation.high_current : modulation.base_current;
}

std::vector<double> RunConfig::phase_levels() const {
    std::vector<double> out;
    for (const double p : run.phases) out.push_back(fold_phase(p));
    return out;
}

PulseGrid RunConfig::grid() const {
    return PulseGrid::from_clock(clock, measurement.window_fraction, measurement.gate_delay);
}

RunConfig parse_config(const json& doc, const std::string& text) {
    Diagnostics diag(text);
    RunConfig cfg;
    cfg.source = doc;
    if (!doc.is_object()) {
        diag.add("<root>", "config must be a JSON object");
        diag.raise();
    }
    {
        Section root(doc, "", diag);

        std::string tag;
        if (!root.has("scenario")) diag.add("scenario", "missing");
        root.text("scenario", tag);
        if (!tag.empty()) {
            try {
                cfg.scenario = parse_scenario(tag);
            } catch (const ConfigError& e) {
                diag.add("scenario", e.what());
            }
        }

        if (const json* v = root.raw("seed")) {
            if (v->is_number_unsigned() || (v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
                cfg.seed = v->get<std::uint64_t>();
            } else {
                diag.add("seed", "must be a non-negative integer");
            }
        }
        root.text("output_dir", cfg.output_dir);

        if (const json* lasers = root.raw("lasers")) {
            if (!lasers->is_object() || lasers->empty()) {
                diag.add("lasers", "must be a non-empty object of named parameter sets");
            } else {
                for (const auto& [name, body] : lasers->items()) {
                    cfg.lasers[name] = parse_laser(body, "lasers." + name, diag);
                }
            }
        } else {
            diag.add("lasers", "missing");
        }
        root.text("primary", cfg.primary_name);
        root.text("secondary", cfg.secondary_name);
        const auto resolve = [&](const std::string& key, const std::string& name, LaserParams& out) {
            if (name.empty()) {
                diag.add(key, "missing (name of a parameter set in lasers)");
            } else if (const auto it = cfg.lasers.find(name); it != cfg.lasers.end()) {
                out = it->second;
            } else if (!cfg.lasers.empty()) {
                diag.add(key, "refers to unknown parameter set '" + name + "'");
            }
        };
        resolve("primary", cfg.primary_name, cfg.primary);
        resolve("secondary", cfg.secondary_name, cfg.secondary);
        const bool lasers_ok = diag.empty();
        double Ith_p = 0.0;
        double Ith_s = 0.0;
        if (lasers_ok) {
            try {
                Ith_p = threshold_current(cfg.primary);
                Ith_s = threshold_current(cfg.secondary);
            } catch (const std::exception& e) {
                diag.add("lasers", e.what());
            }
        }

        {
            Section s(child(root, "clock"), "clock", diag);
            s.number("symbol_rate_hz", cfg.clock.symbol_rate, positive, "must be > 0");
            s.number("secondary_pulse_rate_hz", cfg.clock.secondary_pulse_rate, positive, "must be > 0");
            s.number("dt_s", cfg.clock.dt, positive, "must be > 0");
        }

        {
            ModulationSpec& m = cfg.modulation;
            m.base_current = 10.0 * Ith_p;
            m.high_current = 10.0 * Ith_p;
            m.secondary_low = 0.7 * Ith_s;
            m.secondary_high = 2.5 * Ith_s;
            Section s(child(root, "modulation"), "modulation", diag);
            s.current("base_current", m.base_current, Ith_p);
            s.current("high_current", m.high_current, Ith_p);
            s.current("secondary_low", m.secondary_low, Ith_s);
            s.current("secondary_high", m.secondary_high, Ith_s);
            const auto duty = [](double x) { return x > 0.0 && x < 1.0; };
            s.number("perturbation_duty", m.perturbation_duty, duty, "must be in (0, 1)");
            s.number("pulse_duty", m.pulse_duty, duty, "must be in (0, 1)");
            s.number("secondary_duty", m.secondary_duty, duty, "must be in (0, 1)");
            double lead_ps = m.primary_lead * 1e12;
            s.number("primary_lead_ps", lead_ps);
            m.primary_lead = lead_ps * 1e-12;
            std::vector<double> table_mA;
            s.list("perturbation_currents_mA", table_mA);
            for (const double v : table_mA) {
                if (v < 0.0) diag.add(s.path("perturbation_currents_mA"), "entries must be >= 0");
            }
            m.perturbation_currents.clear();
            for (const double v : table_mA) m.perturbation_currents.push_back(v * 1e-3);
        }

        {
            Section s(child(root, "injection"), "injection", diag);
            cfg.injection.kappa = cfg.secondary.kappa;
            s.number("kappa_per_s", cfg.injection.kappa, nonnegative, "must be >= 0");
            s.number("efficiency", cfg.injection.efficiency, [](double x) { return x >= 0.0 && x <= 1.0; },
                     "must be in [0, 1]");
            s.number("detuning_rad_per_s", cfg.detuning_offset);
            std::string ref = "matched";
            s.text("detuning_reference", ref);
            if (ref == "matched") {
                cfg.detuning_matched = true;
            } else if (ref == "cavity") {
                cfg.detuning_matched = false;
            } else {
                diag.add(s.path("detuning_reference"), "must be 'matched' or 'cavity'");
            }
        }

        {
            Section s(child(root, "noise"), "noise", diag);
            cfg.noise.enabled = true;
            s.flag("enabled", cfg.noise.enabled);
            s.number("amplitude", cfg.noise.amplitude, nonnegative, "must be >= 0");
        }

        {
            MeasurementConfig& m = cfg.measurement;
            Section s(child(root, "measurement"), "measurement", diag);
            s.number("window_fraction", m.window_fraction, [](double x) { return x > 0.0 && x <= 1.0; },
                     "must be in (0, 1] (larger windows overlap)");
            double gd_ps = 0.0;
            s.number("gate_delay_ps", gd_ps);
            m.gate_delay = gd_ps * 1e-12;
            s.count("settle_pulses", m.settle_pulses);
            s.number("jitter_threshold_fraction", m.jitter_threshold_fraction,
                     [](double x) { return x > 0.0 && x < 1.0; }, "must be in (0, 1)");
            s.count("uniformity_bins", m.uniformity_bins, std::size_t{2});
            s.number("significance", m.significance, [](double x) { return x > 0.0 && x < 1.0; },
                     "must be in (0, 1)");
        }

        {
            RunSpec& r = cfg.run;
            Section s(child(root, "run"), "run", diag);
            s.count("pulses", r.pulses, std::size_t{2});
            s.count("symbols", r.symbols, std::size_t{2});
            s.list("data", r.data);
            s.list("phases_rad", r.phases);
            s.number("decoy_fraction", r.decoy_fraction, [](double x) { return x >= 0.0 && x < 1.0; },
                     "must be in [0, 1)");
            s.count("trajectory_decimation", r.trajectory_decimation, std::size_t{1});
            double window_ns = r.trajectory_window * 1e9;
            s.number("trajectory_window_ns", window_ns, nonnegative, "must be >= 0");
            r.trajectory_window = window_ns * 1e-9;
            s.flag("write_trajectory", r.write_trajectory);
            s.flag("compare_free_running", r.compare_free_running);
        }

        {
            QrngSpec& q = cfg.qrng;
            Section s(child(root, "qrng"), "qrng", diag);
            s.count("samples", q.samples, std::size_t{1000});
            s.count("calibration_pulses", q.calibration_pulses, std::size_t{1});
            s.count("delay", q.delay, std::size_t{1});
            s.count("adc_bits", q.adc.bits, 1);
            s.count("output_bits", q.adc.output_bits, 0);
            s.number("adc_offset", q.adc.offset);
            std::string mode = "cw";
            s.text("two_laser_source", mode);
            if (mode == "cw") {
                q.two_laser = TwoLaserMode::Cw;
            } else if (mode == "gain_switched") {
                q.two_laser = TwoLaserMode::GainSwitched;
            } else {
                diag.add(s.path("two_laser_source"), "must be 'cw' or 'gain_switched'");
            }
            try {
                q.adc.validate();
            } catch (const std::exception& e) {
                diag.add("qrng", e.what());
            }
        }
    }

    // Cross-field invariants, checked only once every field parsed.
    if (diag.empty()) {
        const auto check = [&](const char* where, const std::function<void()>& f) {
            try {
                f();
            } catch (const std::exception& e) {
                diag.add(where, e.what());
            }
        };
        check("clock", [&] { cfg.clock.validate(); });
        check("modulation", [&] { cfg.modulation.validate(); });
        check("measurement", [&] { cfg.grid().validate(); });
        const Scenario k = cfg.scenario.kind;
        const bool seeded = k == Scenario::PhaseSeed || k == Scenario::PulsedSeed || k == Scenario::Protocol ||
                            k == Scenario::Mdpsk;
        if (seeded && diag.empty()) {
            check("modulation", [&] { perturbation_window(cfg.clock, cfg.modulation); });
        }
        if ((k == Scenario::PhaseSeed || k == Scenario::PulsedSeed) && cfg.run.phases.empty()) {
            diag.add("run.phases_rad", "required for " + cfg.scenario.text);
        }
        if (k == Scenario::PhaseSeed || k == Scenario::PulsedSeed) {
            check("run.phases_rad", [&] {
                auto levels = cfg.phase_levels();
                std::sort(levels.begin(), levels.end());
                if (std::adjacent_find(levels.begin(), levels.end()) != levels.end()) {
                    throw ConfigError("levels must be distinct modulo 2 pi");
                }
            });
        }
        if (!cfg.run.data.empty()) {
            std::size_t levels = cfg.run.phases.size();
            if (k == Scenario::Mdpsk) levels = static_cast<std::size_t>(cfg.scenario.M);
            if (k == Scenario::Protocol) {
                levels = cfg.scenario.protocol == Protocol::COW ? 3 : cfg.scenario.protocol == Protocol::DPS ? 2 : 4;
            }
            for (const int v : cfg.run.data) {
                if (v < 0 || static_cast<std::size_t>(v) >= levels) {
                    diag.add("run.data", "value " + std::to_string(v) + " is not a valid level index");
                    break;
                }
            }
        }
        if (k == Scenario::PulsedSeed || (k == Scenario::Protocol && cfg.scenario.protocol == Protocol::BB84)) {
            if (cfg.clock.pulses_per_symbol() != 2) {
                diag.add("clock", "pulsed seeding needs exactly two secondary pulses per symbol");
            }
        }
        if (cfg.detuning_matched) {
            cfg.injection.detuning = matched_detuning(cfg.primary, cfg.primary_emitting_current(), cfg.detuning_offset);
        } else {
            cfg.injection.detuning = cfg.detuning_offset;
        }
        check("injection", [&] { cfg.injection.validate(); });
    }
    if (!diag.empty()) diag.raise();
    cfg.noise.seed = cfg.seed;
    return cfg;
}

json read_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
        const auto before = text.substr(0, pos > 0 ? pos - 1 : 0);
        const auto line = 1 + std::count(before.begin(), before.end(), '\n');
        const auto col = before.size() - (before.rfind('\n') == std::string::npos ? 0 : before.rfind('\n') + 1) + 1;
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error: " +
                          e.what());
    }
}

void set_path(json& doc, const std::string& key, const json& value) {
    if (key.empty()) throw ConfigError("sweep parameter is empty");
    json* node = &doc;
    std::string::size_type start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("sweep parameter '" + key + "' is malformed");
        if (!node->is_object()) throw ConfigError("sweep parameter '" + key + "': '" + part + "' has no parent object");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        if (!node->contains(part)) (*node)[part] = json::object();
        node = &(*node)[part];
        start = dot + 1;
    }
}

json parse_value(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        return json(text);
    }
}

std::string config_hash(const json& doc) { return sha256_hex(doc.dump()); }

}  // namespace phaseseed::cli
