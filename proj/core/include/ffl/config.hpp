#pragma once

#include <map>
#include <string>

#include "ffl/experiments.hpp"

namespace ffl {

// Syntax layer: "key = value" lines, '#' comments, later assignments win.
// Returns the raw key-value view so flag overrides can be merged in before
// semantic validation. Throws ConfigError on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Semantic layer: validates the merged view and assembles the config.
// Unknown keys, missing required fields (q, weights, and one of T/N/region),
// an explicit depth below the precision rule, zero trials, or a malformed
// value are ConfigErrors; unbalanced weights are InvalidWeights. A bare
// "siegel:E" observable is completed from the region key or from a single T
// together with R.
ExperimentConfig build_config(const std::map<std::string, std::string>& kv);

// parse_config_text + build_config.
ExperimentConfig parse_config(const std::string& text);

}  // namespace ffl
