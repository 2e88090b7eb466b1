#pragma once

#include <string>

#include "anyon/diagnostics.hpp"
#include "anyon/field.hpp"

namespace anyon {

// Binary checkpoint (described in the README):
//   magic "ANYKCKP1", u32 version, u32 config_len, u64 step, f64 time,
//   u32 nx, u32 nv, u8 window_flag, 7 x f64 accumulator scalars,
//   config echo text, then the payload: field values row-major (x, v1, v2),
//   the running-max velocity profile, and (if flagged) the windowed running
//   max, all 64-bit little-endian floats. Self-describing lengths; the
//   reader rejects bad magic, version mismatch, truncation, and any
//   dimension disagreement with the embedded config echo.
struct Checkpoint {
  std::string config_echo;
  long long step = 0;
  double time = 0.0;
  DistributionField field;
  RecorderState recorder;
};

void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace anyon
