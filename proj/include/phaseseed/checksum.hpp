#pragma once

#include <span>
#include <string>
#include <string_view>

#include "phaseseed/waveform.hpp"

namespace phaseseed {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const unsigned char> bytes);
std::string sha256_hex(std::string_view text);

/// SHA-256 of the waveform's dt, t0 and samples as little-endian IEEE-754 doubles.
std::string waveform_hash(const DriveWaveform& w);

}  // namespace phaseseed
