#include "cli/app.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/scenario.hpp"
#include "phaseseed/errors.hpp"

namespace phaseseed::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Loaded {
    json doc;
    std::string text;
};

Loaded load(const std::string& path, const GlobalOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    Loaded l{read_json(ss.str(), path), ss.str()};
    if (opts.seed && l.doc.is_object()) l.doc["seed"] = *opts.seed;
    if (opts.out && l.doc.is_object()) l.doc["output_dir"] = *opts.out;
    return l;
}

/// The output directory does not affect results, so it is left out of the hash.
RunConfig configure(const json& doc, const std::string& text) {
    RunConfig cfg = parse_config(doc, text);
    cfg.source.erase("output_dir");
    return cfg;
}

/// Maps exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const AlignmentError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IntegrationBlowup& e) {
        err << "error: " << e.what() << '\n';
        return kBlowup;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUnexpected;
    }
}

Manifest manifest_for(const RunConfig& cfg) {
    Manifest m;
    m.config_hash = config_hash(cfg.source);
    m.seed = cfg.seed;
    m.scenario = cfg.scenario.text;
    return m;
}

/// Runs the scenario and writes its files into `dir`.
RunResult execute(const RunConfig& cfg, OutputDir& dir) {
    RunResult result = run_scenario(cfg);
    for (const auto& f : result.files) dir.emit(f.name, f.bytes);
    return result;
}

std::string metric(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

int cmd_simulate(const std::string& config_path, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto l = load(config_path, opts);
        const RunConfig cfg = configure(l.doc, l.text);
        OutputDir dir(cfg.output_dir);
        dir.manifest() = manifest_for(cfg);
        try {
            const RunResult result = execute(cfg, dir);
            for (const auto& w : result.warnings) err << "warning: " << w << '\n';
            dir.finish();
            if (!opts.quiet) {
                result.report.write(out);
                out << "wrote " << result.files.size() + 1 << " files to " << dir.root().string() << '\n';
            }
        } catch (const std::exception& e) {
            dir.manifest().status = "failed";
            dir.manifest().error = e.what();
            dir.finish();
            throw;
        }
        return int{kOk};
    });
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::vector<std::string>& values,
              const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<std::string> list;
        for (const auto& v : values) {
            if (!v.empty()) list.push_back(v);
        }
        if (list.empty()) throw ConfigError("sweep: --values is empty");
        const auto l = load(config_path, opts);
        // Every sub-config is validated before anything runs.
        std::vector<RunConfig> configs;
        for (const auto& v : list) {
            json doc = l.doc;
            set_path(doc, param, parse_value(v));
            try {
                configs.push_back(configure(doc, l.text));
            } catch (const ConfigError& e) {
                throw ConfigError("sweep value '" + v + "': " + e.what());
            }
        }
        OutputDir dir(configs.front().output_dir);
        Manifest& top = dir.manifest();
        json base = l.doc;
        base.erase("output_dir");
        top.config_hash = config_hash(base);
        top.seed = configs.front().seed;
        top.scenario = configs.front().scenario.text;

        std::ostringstream summary;
        summary << "value,jitter_std_s,visibility,cluster_std_rad,min_entropy_bits,phase_slips\n";
        for (std::size_t i = 0; i < configs.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "run_%03zu", i);
            try {
                OutputDir sub(dir.root() / name);
                sub.manifest() = manifest_for(configs[i]);
                const RunResult r = execute(configs[i], sub);
                sub.finish();
                for (const auto& f : sub.manifest().files) {
                    top.files.push_back({std::string(name) + "/" + f.name, f.bytes, f.sha256});
                }
                const Metrics& m = r.metrics;
                summary << list[i] << ',' << metric(m.jitter_std) << ',' << metric(m.visibility) << ','
                        << metric(m.cluster_std) << ',' << metric(m.min_entropy) << ',' << metric(m.phase_slips)
                        << '\n';
                if (!opts.quiet) out << param << " = " << list[i] << ": done\n";
            } catch (const std::exception& e) {
                top.status = "failed";
                top.error = std::string(name) + ": " + e.what();
                dir.emit("summary.csv", summary.str());
                dir.finish();
                throw;
            }
        }
        dir.emit("summary.csv", summary.str());
        dir.finish();
        if (!opts.quiet) out << summary.str();
        return int{kOk};
    });
}

int cmd_validate(const std::string& config_path, const GlobalOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto l = load(config_path, opts);
        const RunConfig cfg = configure(l.doc, l.text);
        describe(cfg, out);
        if (!opts.quiet) out << "config ok\n";
        return int{kOk};
    });
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"phaseseed: gain-switched and injection-locked laser simulator"};
    app.require_subcommand(1);
    GlobalOptions opts;
    std::string out_dir;
    std::uint64_t seed = 0;
    auto* out_opt = app.add_option("--out", out_dir, "Output directory (overrides the config)");
    auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
    app.add_flag("--quiet", opts.quiet, "Only print errors");

    std::string config;
    std::string param;
    std::vector<std::string> values;
    auto* sim = app.add_subcommand("simulate", "Run a scenario end to end");
    sim->add_option("config", config, "Run config (JSON)")->required();
    auto* sweep = app.add_subcommand("sweep", "Run one scenario per value of a config key");
    sweep->add_option("config", config, "Run config (JSON)")->required();
    sweep->add_option("--param", param, "Dotted config key, e.g. injection.efficiency")->required();
    sweep->add_option("--values", values, "Comma-separated values")->delimiter(',')->required()->expected(0, -1);
    auto* val = app.add_subcommand("validate", "Check a config and print derived quantities");
    val->add_option("config", config, "Run config (JSON)")->required();
    for (auto* sub : {sim, sweep, val}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kOk : kConfigError;
    }
    if (*out_opt) opts.out = out_dir;
    if (*seed_opt) opts.seed = seed;

    if (*sim) return cmd_simulate(config, opts, out, err);
    if (*sweep) return cmd_sweep(config, param, values, opts, out, err);
    return cmd_validate(config, opts, out, err);
}

}  // namespace phaseseed::cli
