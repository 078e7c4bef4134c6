#include "cli/output.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <system_error>

#include "phaseseed/checksum.hpp"

#ifndef PHASESEED_VERSION
#define PHASESEED_VERSION "unknown"
#endif

namespace phaseseed::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, std::string_view bytes) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    const fs::path tmp = path.string() + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw IoError("cannot open " + tmp.string() + ": " + std::strerror(errno));
    const bool written = std::fwrite(bytes.data(), 1, bytes.size(), f) == bytes.size();
    const bool closed = std::fclose(f) == 0;
    if (!written || !closed) {
        fs::remove(tmp, ec);
        throw IoError("cannot write " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string());
    }
}

nlohmann::json Manifest::to_json() const {
    nlohmann::json j;
    j["format"] = kManifestFormat;
    j["phaseseed_version"] = PHASESEED_VERSION;
    j["config_sha256"] = config_hash;
    j["seed"] = seed;
    j["scenario"] = scenario;
    j["status"] = status;
    if (!error.empty()) j["error"] = error;
    auto& list = j["files"] = nlohmann::json::array();
    for (const auto& e : files) list.push_back({{"name", e.name}, {"bytes", e.bytes}, {"sha256", e.sha256}});
    return j;
}

OutputDir::OutputDir(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw IoError("cannot create output directory " + root_.string() + ": " + ec.message());
}

void OutputDir::emit(const std::string& name, std::string_view bytes) {
    write_atomic(root_ / name, bytes);
    manifest_.files.push_back({name, bytes.size(), sha256_hex(bytes)});
}

void OutputDir::finish() { write_atomic(root_ / kManifestName, manifest_.to_json().dump(2) + "\n"); }

}  // namespace phaseseed::cli
