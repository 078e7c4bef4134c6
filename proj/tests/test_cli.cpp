#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli/app.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/scenario.hpp"
#include "phaseseed/errors.hpp"

using namespace phaseseed;
using namespace phaseseed::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Scratch directory removed on scope exit.
struct Scratch {
    fs::path root;
    explicit Scratch(const std::string& name) : root(fs::temp_directory_path() / ("phaseseed_test_" + name)) {
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~Scratch() { fs::remove_all(root); }
    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = root / name;
        std::ofstream(p) << text;
        return p;
    }
};

json base_doc(const std::string& scenario) {
    return json{{"scenario", scenario},
                {"seed", 3},
                {"lasers", {{"dfb", {{"preset", "reference_dfb"}}}}},
                {"primary", "dfb"},
                {"secondary", "dfb"}};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string config_error(const json& doc, const std::string& text = {}) {
    try {
        parse_config(doc, text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("scenario tags") {
    CHECK(parse_scenario("gain_switch").kind == Scenario::GainSwitch);
    CHECK(parse_scenario("protocol:cow").protocol == Protocol::COW);
    const auto m = parse_scenario("mdpsk:8");
    CHECK(m.kind == Scenario::Mdpsk);
    CHECK(m.M == 8);
    CHECK(parse_scenario("qrng:two_laser").kind == Scenario::QrngTwoLaser);
    CHECK_THROWS_AS(parse_scenario("mdpsk:3"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("protocol:xyz"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("laser"), ConfigError);
}

TEST_CASE("defaults resolve from the threshold") {
    const RunConfig cfg = parse_config(base_doc("cw_seed"));
    const double ith = threshold_current(cfg.primary);
    CHECK(cfg.modulation.base_current == doctest::Approx(10 * ith));
    CHECK(cfg.modulation.secondary_low == doctest::Approx(0.7 * ith));
    CHECK(cfg.modulation.secondary_high == doctest::Approx(2.5 * ith));
    CHECK(cfg.injection.kappa == cfg.secondary.kappa);
    CHECK(cfg.noise.enabled);
    CHECK(cfg.detuning_matched);
}

TEST_CASE("config errors name every offending key") {
    json doc = base_doc("gain_switch");
    doc["lasers"]["bad"] = {{"tau_n_ns", 0.74}};
    doc["clock"] = {{"dt_s", -1}};
    doc["typo"] = 1;
    const std::string msg = config_error(doc);
    CHECK(msg.find("typo") != std::string::npos);
    CHECK(msg.find("dt_s") != std::string::npos);
    CHECK(msg.find("tau_p_ps") != std::string::npos);

    json both = base_doc("gain_switch");
    both["modulation"] = {{"base_current_mA", 10}, {"base_current_ith", 1}};
    CHECK(config_error(both).find("base_current") != std::string::npos);

    json phases = base_doc("phase_seed");
    CHECK(config_error(phases).find("phases_rad") != std::string::npos);
    phases["run"] = {{"phases_rad", {0.0, 6.283185307179586}}};
    CHECK_FALSE(config_error(phases).empty());

    json data = base_doc("mdpsk:4");
    data["run"] = {{"data", {0, 1, 4}}};
    CHECK_FALSE(config_error(data).empty());

    json overlap = base_doc("phase_seed");
    overlap["run"] = {{"phases_rad", {0.0, 1.0}}};
    overlap["modulation"] = {{"perturbation_duty", 0.5}};
    CHECK(config_error(overlap).find("overlap") != std::string::npos);
}

TEST_CASE("errors carry line numbers and syntax errors carry columns") {
    const std::string text = "{\n  \"scenario\": \"gain_switch\",\n  \"seed\": -4\n}\n";
    const json doc = read_json(text, "x.json");
    CHECK(config_error(doc, text).find("line 3") != std::string::npos);
    try {
        read_json("{\n  \"a\": ,\n}", "bad.json");
        FAIL("no error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.json:2:") != std::string::npos);
    }
}

TEST_CASE("dotted paths and sweep values") {
    json doc = base_doc("cw_seed");
    set_path(doc, "injection.efficiency", 0.2);
    CHECK(doc["injection"]["efficiency"] == 0.2);
    set_path(doc, "seed", 9);
    CHECK(doc["seed"] == 9);
    set_path(doc, "noise.amplitude", 0.5);
    CHECK(doc["noise"]["amplitude"] == 0.5);
    CHECK_THROWS_AS(set_path(doc, "seed.inner", 1), ConfigError);
    CHECK_THROWS_AS(set_path(doc, "injection..x", 1), ConfigError);
    set_path(doc, "nope.deeper", 1);
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    CHECK(parse_value("0.5") == json(0.5));
    CHECK(parse_value("true") == json(true));
    CHECK(parse_value("cavity") == json("cavity"));
}

TEST_CASE("config hash ignores key order") {
    const json a = json::parse(R"({"a":1,"b":{"c":2,"d":3}})");
    const json b = json::parse(R"({"b":{"d":3,"c":2},"a":1})");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 64);
    CHECK(config_hash(a) != config_hash(json::parse(R"({"a":2,"b":{"c":2,"d":3}})")));
}

TEST_CASE("atomic writes and the manifest") {
    Scratch s("manifest");
    {
        OutputDir dir(s.root / "run");
        dir.emit("a.txt", "hello");
        dir.manifest().seed = 7;
        dir.finish();
    }
    CHECK(slurp(s.root / "run" / "a.txt") == "hello");
    CHECK_FALSE(fs::exists(s.root / "run" / "a.txt.tmp"));
    const json m = json::parse(slurp(s.root / "run" / kManifestName));
    CHECK(m["format"] == kManifestFormat);
    CHECK(m["status"] == "ok");
    CHECK(m["files"][0]["name"] == "a.txt");
    CHECK(m["files"][0]["sha256"] == "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824");
}

TEST_CASE("simulate is deterministic and honours overrides") {
    Scratch s("determinism");
    json doc = base_doc("gain_switch");
    doc["modulation"] = {{"base_current_ith", 0.0}, {"high_current_ith", 2.0}};
    doc["run"] = {{"pulses", 20}, {"trajectory_window_ns", 2.0}};
    doc["output_dir"] = (s.root / "ignored").string();
    const auto cfg = s.write("gs.json", doc.dump(2));
    std::ostringstream out, err;
    GlobalOptions a{(s.root / "a").string(), std::nullopt, true};
    GlobalOptions b{(s.root / "b").string(), std::nullopt, true};
    REQUIRE(cmd_simulate(cfg.string(), a, out, err) == kOk);
    REQUIRE(cmd_simulate(cfg.string(), b, out, err) == kOk);
    CHECK_FALSE(fs::exists(s.root / "ignored"));
    for (const auto* f : {"trajectory.csv", "pulses.csv", "report.txt", "manifest.json"}) {
        CHECK(slurp(s.root / "a" / f) == slurp(s.root / "b" / f));
    }
    GlobalOptions c{(s.root / "c").string(), std::uint64_t{99}, true};
    REQUIRE(cmd_simulate(cfg.string(), c, out, err) == kOk);
    CHECK(slurp(s.root / "a" / "pulses.csv") != slurp(s.root / "c" / "pulses.csv"));
    const json m = json::parse(slurp(s.root / "c" / "manifest.json"));
    CHECK(m["seed"] == 99);
}

TEST_CASE("exit codes") {
    Scratch s("exit");
    std::ostringstream out, err;
    const GlobalOptions quiet{std::nullopt, std::nullopt, true};
    CHECK(cmd_validate((s.root / "missing.json").string(), quiet, out, err) == kIoError);
    const auto broken = s.write("broken.json", "{");
    CHECK(cmd_validate(broken.string(), quiet, out, err) == kConfigError);
    json bad = base_doc("gain_switch");
    bad["lasers"]["dfb"] = {{"preset", "reference_dfb"}, {"tau_p_ps", -1}};
    const auto neg = s.write("neg.json", bad.dump(2));
    CHECK(cmd_validate(neg.string(), quiet, out, err) == kConfigError);
    const auto good = s.write("good.json", base_doc("cw_seed").dump(2));
    CHECK(cmd_validate(good.string(), quiet, out, err) == kOk);
    CHECK(cmd_sweep(good.string(), "injection.efficiency", {"", ""}, quiet, out, err) == kConfigError);
    CHECK(cmd_sweep(good.string(), "injection.efficiency", {"0.1", "2"}, quiet, out, err) == kConfigError);
    const auto blocker = s.write("file", "x");
    GlobalOptions into_file{(blocker / "sub").string(), std::nullopt, true};
    json tiny = base_doc("gain_switch");
    tiny["run"] = {{"pulses", 2}};
    const auto t = s.write("tiny.json", tiny.dump());
    CHECK(cmd_simulate(t.string(), into_file, out, err) == kIoError);
}

TEST_CASE("sweep writes one run per value and a summary") {
    Scratch s("sweep");
    json doc = base_doc("cw_seed");
    doc["run"] = {{"pulses", 12}, {"write_trajectory", false}};
    doc["measurement"] = {{"settle_pulses", 2}};
    const auto cfg = s.write("cw.json", doc.dump(2));
    std::ostringstream out, err;
    const GlobalOptions o{(s.root / "out").string(), std::nullopt, true};
    REQUIRE(cmd_sweep(cfg.string(), "injection.efficiency", {"0", "0.05"}, o, out, err) == kOk);
    CHECK(fs::exists(s.root / "out" / "run_000" / "manifest.json"));
    CHECK(fs::exists(s.root / "out" / "run_001" / "iq.csv"));
    const std::string summary = slurp(s.root / "out" / "summary.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
    const json m = json::parse(slurp(s.root / "out" / "manifest.json"));
    CHECK(m["status"] == "ok");
}

TEST_CASE("cli argument parsing") {
    std::ostringstream out, err;
    const char* none[] = {"phaseseed"};
    CHECK(run_cli(1, const_cast<char**>(none), out, err) == kConfigError);
    const char* help[] = {"phaseseed", "--help"};
    CHECK(run_cli(2, const_cast<char**>(help), out, err) == kOk);
    CHECK(out.str().find("simulate") != std::string::npos);
}

TEST_CASE("every shipped recipe validates") {
    const fs::path dir = PHASESEED_CONFIG_DIR;
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".json") continue;
        ++n;
        CAPTURE(e.path().filename().string());
        const std::string text = slurp(e.path());
        CHECK_NOTHROW(parse_config(read_json(text, e.path().string()), text));
    }
    CHECK(n >= 14);
}
