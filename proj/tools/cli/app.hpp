#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace phaseseed::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUnexpected = 1,
    kConfigError = 2,
    kBlowup = 3,
    kIoError = 4,
};

struct GlobalOptions {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

int cmd_simulate(const std::string& config_path, const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::string& param, const std::vector<std::string>& values,
              const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& config_path, const GlobalOptions& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a command.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace phaseseed::cli
