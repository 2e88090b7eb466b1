#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "anyon/field.hpp"
#include "anyon/grid.hpp"

namespace anyon {

// Binary collision geometry and the truncated collision operator.
//
// A pair (v, v*) scattering through the unit vector n exchanges the normal
// component of the relative velocity:
//   v'  = v  - n [(v - v*) . n],   v'* = v* + n [(v - v*) . n].
// With n at angle theta from (v - v*)/|v - v*| this gives |v' - v| =
// |v - v*||cos theta| and |v'* - v| = |v - v*||sin theta|, the two legs being
// orthogonal. Momentum and kinetic energy are conserved identically.

struct VelocityPair {
  double vx, vy;    // v'
  double wx, wy;    // v'*
};

// Post-collision velocities for (v, v*) and scattering angle theta.
VelocityPair post_collision(double vx, double vy, double sx, double sy, double theta);

// Bounded scattering kernel with small-deflection, grazing and slow-pair
// cutoffs: B = b0 when |v-v*| >= gamma, |cos theta| >= gamma' and
// 1 - |cos theta| >= gamma'; zero otherwise. Construction verifies by grid
// quadrature that the angular mass at admissible speeds is at least c_b.
struct CollisionKernel {
  double b0 = 1.0;
  double gamma = 0.5;
  double gamma_prime = 0.1;
  double c_b = 1.0;

  double eval(double rel_speed, double theta) const;
};

CollisionKernel make_kernel(const SimulationParams& p, const PhaseGrid& g);

// Precomputed pair geometry. The scattering displacements v'-v and v'*-v
// depend only on the velocity difference d = v - v* and theta, so they are
// tabulated once per (lattice offset, theta-node) with the kernel value and
// theta weight folded in. Rows with |d| below the speed cutoff are empty.
struct PairTable {
  struct Entry {
    double dpx, dpy;  // v'  - v
    double dqx, dqy;  // v'* - v
    double bw;        // B * theta_weight
  };
  int nv = 0;
  int span = 0;                    // 2*nv - 1
  std::vector<int> row_begin;      // span*span + 1
  std::vector<Entry> entries;
  std::vector<double> rel2;        // |d|^2 per row

  int row(int di, int dk) const { return (di + nv - 1) * span + (dk + nv - 1); }
};

PairTable build_pair_table(const PhaseGrid& g, const CollisionKernel& k);

// Gain envelope and loss frequency of the truncated operator, per node:
//   gain_env = (1/pi) Int B chi f' f'* F_j(f*)            dv* dtheta
//   loss     = (1/pi) Int B chi f* F_j(f') F_j(f'*)       dv* dtheta
// chi zeroes any configuration whose four velocities do not all lie in the
// ball; off-grid occupancies are bilinear interpolants (zero outside the
// ball). With regularized = false, F replaces F_j (the j -> infinity form
// used by the detailed-balance checks).
struct CollisionRates {
  DistributionField gain_env;
  DistributionField loss;
};

CollisionRates collision_rates(const DistributionField& f, const PhaseGrid& g,
                               const CollisionKernel& k, const PairTable& t,
                               double alpha, bool regularized = true);

// Q_j(f) = F_j(f) * gain_env - f * loss, per node (masked nodes zero).
DistributionField apply_Q(const DistributionField& f, const PhaseGrid& g,
                          const CollisionKernel& k, const PairTable& t,
                          double alpha, bool regularized = true);

// Adds to `post` (per x-slice) the unique correction of the form
// (c0 + c1 v1 + c2 v2 + c3 |v|^2) w(v), w = min(post, 1/alpha - post) on the
// ball, that restores the mass, momentum and energy of `pre` exactly.
// The weight vanishes toward both admissible bounds, so the correction can
// never push a node out of (0, 1/alpha]. Returns the L1 norm of the applied
// correction. Throws std::runtime_error on a singular projection system or
// when the correction polynomial would exceed the safe magnitude.
double conservative_projection(DistributionField& post, const DistributionField& pre,
                               const PhaseGrid& g, double alpha);

}  // namespace anyon
