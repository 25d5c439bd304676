#pragma once

#include <string>

#include "mhd1d/layer.hpp"
#include "mhd1d/limit.hpp"

// Flat key-value configuration files with sections [fluid], [grid], [time],
// [initial], [boundary], [study]. Strict mode rejects unknown keys.

namespace mhd1d {

struct ParsedConfig {
    enum class Kind { solve, sweep, layer };
    Kind kind = Kind::solve;
    ScenarioConfig scenario;  // kind == solve
    SweepSpec sweep;          // kind == sweep
    LayerScenario layer;      // kind == layer
    std::string description;  // one-line summary for the manifest
};

/// Parses and validates a config file. Syntax errors carry the file name and
/// line number; invariant violations name the violated rule.
ParsedConfig parse_config(const std::string& path, bool strict = true);

/// Parses config text directly (used by tests).
ParsedConfig parse_config_text(const std::string& text, bool strict = true,
                               const std::string& name = "<config>");

}  // namespace mhd1d
