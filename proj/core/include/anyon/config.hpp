#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anyon/params.hpp"
#include "anyon/presets.hpp"

namespace anyon {

// Flat key = value run configuration. Grammar (documented in the README):
// one `key = value` pair per line, `#` starts a comment, blank lines are
// ignored, keys are a fixed vocabulary, repeated keys are an error, unknown
// keys are rejected. `alpha` and `preset` are required; everything else has
// a documented default.
struct RunConfig {
  SimulationParams sim;

  std::string preset = "bimodal";   // wu | bimodal | wave
  EquilibriumSpec eq;               // mu, temperature
  BimodalSpec bimodal;
  double wave_amplitude = 0.2;
  std::uint64_t seed = 0;
  bool mollify = false;

  std::string output_dir = "out";
  int checkpoint_every = 0;         // steps; 0 = only the final checkpoint

  bool record_bony = true;
  bool record_tails = true;
  bool record_flux = true;
  std::vector<double> lambdas;      // empty = auto {j/4, j/2, 3j/4}
  double band_width = 0.0;          // 0 = auto (2/j)
  double window_delta = 0.0;        // 0 = windowed sup-density probe off

  bool dt_auto = false;             // dt was not given; resolved to dx/j at parse time
};

struct ParseResult {
  RunConfig config;
  std::vector<std::string> errors;  // every violation, one message each
  bool ok() const { return errors.empty(); }
};

// Parses a configuration document. Collects all violations instead of
// stopping at the first.
ParseResult parse_config(const std::string& text);

ParseResult parse_config_file(const std::string& path);

// Canonical echo: fixed key order, full double precision, resolved values
// (auto dt and lambda defaults materialized). Re-parsing the echo reproduces
// the configuration exactly.
std::string echo_config(const RunConfig& c);

// Builds the preset named by the config (clamped, strictly positive).
DistributionField build_initial_data(const RunConfig& c, const PhaseGrid& g);

}  // namespace anyon
