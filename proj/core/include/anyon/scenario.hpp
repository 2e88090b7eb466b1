#pragma once

#include <ostream>
#include <string>

#include "anyon/config.hpp"

namespace anyon {

// End-to-end run driver: builds grid/kernel/initial data, integrates, and
// writes diagnostics.csv, summary.txt, config_echo.cfg and checkpoints into
// the output directory. The ANYONKIN_OUTPUT_DIR environment variable (or the
// explicit override) replaces the configured output directory.
//
// Returns 0 when the run completed with every hard invariant intact.
int run_scenario(const RunConfig& config, std::ostream& log,
                 const std::string& output_override = "");

// Continues a checkpointed run to the configured t_end. Output goes to the
// override when given, else to "<configured dir>_resumed".
int resume_scenario(const std::string& checkpoint_path, std::ostream& log,
                    const std::string& output_override = "");

}  // namespace anyon
