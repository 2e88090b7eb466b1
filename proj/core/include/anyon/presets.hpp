#pragma once

#include <cstdint>

#include "anyon/field.hpp"
#include "anyon/grid.hpp"
#include "anyon/haldane.hpp"

namespace anyon {

// Built-in initial data. Every preset is clipped into [0, 1/alpha - 1/j],
// zeroed off the ball, and floored at 1e-250 on the ball so the data is
// strictly positive (the well-posedness hypotheses want inf_x f0 > 0).

struct BimodalSpec {
  double center = 1.5;       // bumps at (+-center, 0)
  double width = 0.7;
  double height_frac = 0.5;  // peak height as a fraction of 1/alpha - 1/j
};

struct WaveSpec {
  EquilibriumSpec eq;
  double amplitude = 0.2;    // f0 = f_eq(v) (1 + amplitude cos(2 pi x)), |a| < 1
};

// x-uniform equilibrium initial data.
DistributionField preset_wu(const PhaseGrid& g, double alpha, const EquilibriumSpec& eq);

// Two displaced Gaussians; height_frac >= 1 produces a clipped plateau whose
// maximum equals 1/alpha - 1/j exactly. seed != 0 jitters centers and width
// by a few percent (deterministic in the seed).
DistributionField preset_bimodal(const PhaseGrid& g, double alpha, const BimodalSpec& s,
                                 std::uint64_t seed = 0);

// Equilibrium modulated by a standing wave in x.
DistributionField preset_wave(const PhaseGrid& g, double alpha, const WaveSpec& s);

// Optional smoothing: separable discrete Gaussian of width 1/j (3-sigma
// support), periodic in x, zero-extended in v, re-masked and re-clipped.
void mollify(DistributionField& f, const PhaseGrid& g, double alpha);

}  // namespace anyon
