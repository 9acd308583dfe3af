#pragma once

#include "anidecay/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace anidecay {

inline constexpr const char* kVersion = "1.0.0";

/// Documented key table of the plain key-value config format (one `key =
/// value` per line, '#' comments). Unknown keys are rejected.
const std::map<std::string, std::string>& config_key_table();

/// Parses text, applies `key=value` overrides in order, validates everything
/// (including the s/s1 parameter gate). Errors carry the offending key.
RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides);
RunConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides);

/// Resolved-config manifest: every key with its final value, plus version and
/// seed; a run is reproducible from this alone.
std::string manifest_json(const RunConfig& config);

/// Round-trip helper: the config serialized back to the key-value format.
std::string config_text(const RunConfig& config);

} // namespace anidecay
