#pragma once

#include <string>

#include "core/config.hpp"

namespace dwell {

// Executes the configured experiment, writing CSV artifacts plus a
// metadata.json capturing the fully resolved configuration, derived
// quantities and headline results into out_dir. Returns the metadata as a
// JSON string (what the CLI prints). Throws on any module error.
std::string run_experiment(const RunConfig& cfg, const std::string& out_dir);

}  // namespace dwell
