#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaseseed/drive.hpp"
#include "phaseseed/dynamics.hpp"
#include "phaseseed/injection.hpp"
#include "phaseseed/measurement.hpp"
#include "phaseseed/qrng.hpp"

namespace phaseseed::cli {

enum class Scenario { GainSwitch, CwSeed, PhaseSeed, PulsedSeed, Protocol, Mdpsk, QrngDelayed, QrngTwoLaser };

struct ScenarioTag {
    Scenario kind = Scenario::GainSwitch;
    Protocol protocol = Protocol::RAW;  ///< Protocol scenarios only
    int M = 0;                          ///< Mdpsk only
    std::string text;
};

/// Parses "gain_switch", "protocol:cow", "mdpsk:8", "qrng:delayed", ...
ScenarioTag parse_scenario(const std::string& tag);

struct MeasurementConfig {
    double window_fraction = 0.5;
    double gate_delay = 0.0;            ///< [s]
    std::size_t settle_pulses = 4;      ///< leading pulses excluded from statistics
    double jitter_threshold_fraction = 0.5;
    std::size_t uniformity_bins = 16;
    double significance = 0.01;
};

struct RunSpec {
    std::size_t pulses = 1000;          ///< gain_switch, cw_seed
    std::size_t symbols = 1000;         ///< phase_seed, pulsed_seed, protocol, mdpsk
    std::vector<int> data;              ///< explicit per-symbol values; drawn from the seed when empty
    std::vector<double> phases;         ///< phase_seed / pulsed_seed levels [rad]
    double decoy_fraction = 0.1;
    std::size_t trajectory_decimation = 10;
    double trajectory_window = 20e-9;   ///< recorded span from t = 0 [s]
    bool write_trajectory = true;
    bool compare_free_running = false;  ///< cw_seed: repeat with injection off on the same seeds
};

enum class TwoLaserMode { Cw, GainSwitched };

struct QrngSpec {
    std::size_t samples = 10000;
    std::size_t calibration_pulses = 2000;
    std::size_t delay = 1;
    AdcConfig adc{16, 1.0, 0.0, 12};
    TwoLaserMode two_laser = TwoLaserMode::Cw;
};

struct RunConfig {
    ScenarioTag scenario;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    std::map<std::string, LaserParams> lasers;
    std::string primary_name;
    std::string secondary_name;
    LaserParams primary;
    LaserParams secondary;
    ClockConfig clock;
    ModulationSpec modulation;
    InjectionConfig injection;
    double detuning_offset = 0.0;       ///< [rad/s], relative to the matched frequency
    bool detuning_matched = true;
    NoiseConfig noise;
    MeasurementConfig measurement;
    RunSpec run;
    QrngSpec qrng;
    nlohmann::json source;              ///< the effective document, used for hashing

    PulseGrid grid() const;
    /// Primary current while it emits: high_current when pulsed, else base_current.
    double primary_emitting_current() const;
    /// Distinct target phases of a phase_seed / pulsed_seed run, folded into [0, 2 pi).
    std::vector<double> phase_levels() const;
};

/// Parses and validates a config document.  Throws ConfigError listing every
/// violation found; `text` (the file contents) locates keys by line.
RunConfig parse_config(const nlohmann::json& doc, const std::string& text = {});

/// Reads JSON text; syntax errors are reported with line and column.
nlohmann::json read_json(const std::string& text, const std::string& origin);

/// Sets the dotted path `key` to `value`, creating missing intermediate
/// objects.  Unknown keys are left for parse_config to reject.
void set_path(nlohmann::json& doc, const std::string& key, const nlohmann::json& value);

/// Interprets a sweep value: a JSON literal when it parses, else a string.
nlohmann::json parse_value(const std::string& text);

/// SHA-256 of the canonical (sorted-key, compact) serialisation.
std::string config_hash(const nlohmann::json& doc);

}  // namespace phaseseed::cli
