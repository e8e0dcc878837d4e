#pragma once

#include <string>

#include "config.hpp"
#include "runner.hpp"

namespace molspec::cli {

// Leading '#' lines carry the version, kind, truncation weight and flags; then
// a header row and one row per grid point. Numbers use the shortest decimal
// that reads back to the same double.
std::string to_csv(const ExperimentConfig& cfg, const RunOutput& out);

// Full result with truncation_report, flags and a provenance block echoing the
// canonical config text.
std::string to_json(const ExperimentConfig& cfg, const RunOutput& out);

}  // namespace molspec::cli
