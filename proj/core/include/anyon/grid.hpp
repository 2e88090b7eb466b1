#pragma once

#include <cstdint>
#include <vector>

#include "anyon/params.hpp"

namespace anyon {

// Discrete phase-space geometry shared by every module.
//
// x: nx uniform nodes on the periodic interval [0,1), node-based, weight dx
//    each (trapezoid and midpoint coincide on a circle).
// v: nv x nv cell-centered Cartesian nodes on [-j,j]^2. Nodes outside the
//    ball |v| <= j carry zero quadrature weight and fields are pinned to
//    zero there. Coordinates are built as (i - (nv-1)/2)*dv so that the node
//    set is exactly symmetric under v -> -v in floating point.
// theta: ntheta midpoint nodes on [0, 2*pi); weights are dtheta where the
//    angular cutoff admits scattering and zero where |cos| < gamma' or
//    1-|cos| < gamma'.
struct PhaseGrid {
  int nx = 0, nv = 0, ntheta = 0;
  double j = 0.0;
  double dx = 0.0, dv = 0.0, dtheta = 0.0;
  double gamma_prime = 0.0;

  std::vector<double> x_nodes;        // nx
  std::vector<double> v_coords;       // nv, per axis
  std::vector<std::uint8_t> vmask;    // nv*nv, 1 inside the ball
  std::vector<int> ball_ids;          // linear ids i*nv+k of in-ball nodes
  std::vector<double> theta_nodes;    // ntheta
  std::vector<double> theta_weights;  // ntheta, zeroed outside the admissible set

  double vweight = 0.0;            // dv*dv
  double vweight_sum = 0.0;        // sum over the ball, ~ pi j^2
  double theta_measure = 0.0;      // sum of nonzero theta weights

  int vid(int i, int k) const { return i * nv + k; }
  bool inside(int i, int k) const { return vmask[static_cast<size_t>(i) * nv + k] != 0; }
  double vx(int i) const { return v_coords[i]; }
  size_t field_size() const { return static_cast<size_t>(nx) * nv * nv; }
};

// Builds and validates the grid. Throws std::invalid_argument when the grid
// cannot support the scheme (fewer than 4 nodes across the ball diameter,
// empty ball, or an angular cutoff that removes every quadrature node).
PhaseGrid make_grid(const SimulationParams& p);

}  // namespace anyon
