#pragma once

#include "driftlab/experiments.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>

namespace driftlab {

/// Raised on malformed configuration documents; message carries the key path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParsedConfig {
    Scenario scenario;
    std::optional<ReproduceConfig> reproduce;
    std::string canonical_text;  // sorted-key serialisation backing the config hash
};

/// Strict parse: every key is validated, unknown keys are errors with a
/// key-path diagnostic, and the scenario invariants are checked.
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

/// FNV-1a hash of the canonical serialisation, as a hex string.
std::string config_hash(const std::string& canonical_text);

/// Round-trip support: serialise the parsed scenario back to the canonical
/// document shape.
nlohmann::json scenario_to_json(const Scenario& sc);

}  // namespace driftlab
