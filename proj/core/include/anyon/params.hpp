#pragma once

#include <string>
#include <vector>

namespace anyon {

// Physical and numerical parameters of one simulation.
//
// The model is a gas of particles with fractional exclusion statistics on the
// periodic slab x in [0,1) with two-dimensional velocities truncated to the
// ball |v| <= j. alpha = 1 is the fermion endpoint; alpha -> 0 approaches
// bosons. Occupancies live in (0, 1/alpha].
struct SimulationParams {
  double alpha = 0.5;        // exclusion parameter, in (0, 1]
  double b0 = 1.0;           // kernel amplitude (upper bound B0 of the kernel)
  double gamma = 0.5;        // relative-speed cutoff: no scattering below it
  double gamma_prime = 0.1;  // angular cutoff on |cos(theta)| and 1-|cos(theta)|
  double c_b = 1.0;          // required lower bound on the angular kernel mass
  double j = 4.0;            // velocity ball radius; also the occupancy regularization index
  int nx = 8;                // spatial nodes on [0,1)
  int nv = 32;               // velocity nodes per axis on [-j, j]
  int ntheta = 16;           // angular quadrature nodes on [0, 2*pi)
  double dt = 0.01;          // time step
  double t_end = 1.0;        // final time
  int picard_iters = 2;      // rate re-freeze sweeps inside the collision step
  double picard_tol = 1e-10; // early-exit L1 tolerance between sweeps
  bool projection = true;    // conservative moment projection each step

  double cap() const { return 1.0 / alpha; }
  double init_cap() const { return 1.0 / alpha - 1.0 / j; }

  // Returns every violated constraint, one message per violation.
  std::vector<std::string> validate() const;

  // Throws std::invalid_argument listing all violations.
  void require_valid() const;
};

}  // namespace anyon
