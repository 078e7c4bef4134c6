#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace phaseseed::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes `bytes` to a sibling temp file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view bytes);

struct ManifestEntry {
    std::string name;  ///< relative to the output directory
    std::uintmax_t bytes = 0;
    std::string sha256;
};

struct Manifest {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string scenario;
    std::string status = "ok";
    std::string error;
    std::vector<ManifestEntry> files;

    nlohmann::json to_json() const;
};

/// Output directory that records every file it writes.  The manifest is the
/// last file written.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path root);

    const std::filesystem::path& root() const noexcept { return root_; }
    void emit(const std::string& name, std::string_view bytes);
    Manifest& manifest() noexcept { return manifest_; }
    void finish();

private:
    std::filesystem::path root_;
    Manifest manifest_;
};

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kManifestFormat = "phaseseed-manifest/1";

}  // namespace phaseseed::cli
