#pragma once

#include "anyon/field.hpp"
#include "anyon/grid.hpp"

namespace anyon {

// Scalar functions of fractional exclusion statistics.
//
// filling_factor F(f) = (1-af)^a (1+(1-a)f)^(1-a) is the statistical blocking
// weight of a target occupancy f; it interpolates between the fermionic 1-f
// (a=1) and the bosonic 1+f (a->0). The regularized variant used by the
// truncated collision operator,
//   F_j(f) = (1-af) * ((1+(1-a)f) / (1/j + 1-af))^(1-a),
// keeps the same zeros but bounds the derivative near f = 1/a.

// F(f). Domain [0, 1/alpha]; throws std::domain_error outside.
double filling_factor(double f, double alpha);

// F_j(f). Domain [0, 1/alpha]; j >= 1.
double filling_factor_reg(double f, double alpha, double j);

// Structure factor S(f) = ((1+(1-a)f)/(1/j + 1-af))^(1-a), so that
// F_j(f) = (1-af) * S(f). The exponential collision step freezes S at the
// previous sweep and keeps the linear (1-ag) factor live.
double gain_structure(double f, double alpha, double j);

// Solves w^alpha (1+w)^(1-alpha) = zeta for the positive root. alpha = 1
// returns zeta exactly. Newton in log-w space on a convex residual; the
// backward residual satisfies |w^a(1+w)^(1-a) - zeta| <= 1e-12 max(1, zeta).
double solve_w(double zeta, double alpha);

// Same root from log(zeta), returned as log(w); immune to overflow of zeta.
double solve_w_log(double log_zeta, double alpha);

// Equilibrium occupancy at kinetic energy eps = |v|^2/2:
//   f = 1 / (w(e^((eps-mu)/T)) + alpha),   in (0, 1/alpha).
double equilibrium_occupancy(double eps, double mu, double temperature, double alpha);

struct EquilibriumSpec {
  double mu = 0.0;
  double temperature = 1.0;
};

// x-uniform equilibrium field on the grid (masked nodes zero).
DistributionField wu_equilibrium(const PhaseGrid& g, double alpha,
                                 const EquilibriumSpec& eq);

// Finds (mu, T) whose equilibrium reproduces the target mass and energy on
// this grid within relative 1e-8. Nested bisection: mass is monotone in mu at
// fixed T, energy monotone in T after the mass solve. Throws
// std::runtime_error naming the target when it is unreachable on the grid
// (energy below the degenerate minimum or above the uniform-gas maximum,
// mass beyond (1/alpha) * ball volume).
EquilibriumSpec match_moments(const PhaseGrid& g, double alpha,
                              double target_mass, double target_energy);

// Entropy-type functional: phase-space quadrature of
//   f ln f + (1-af) ln(1-af) - (1+(1-a)f) ln(1+(1-a)f)
// with 0 ln 0 = 0 at both endpoints. Non-increasing along the flow; the
// classical fermion H-functional at alpha = 1.
double entropy(const DistributionField& f, const PhaseGrid& g, double alpha);

// Number of many-body states of N particles in G single-particle states
// under fractional exclusion, via log-Gamma:
//   (G + (N-1)(1-a))! / ( N! * (G - aN - (1-a))! ).
// Reduces to binomial(G, N) at a=1 and binomial(G+N-1, N) at a=0.
// Throws std::domain_error when a Gamma argument is non-positive.
double state_count(double G, double N, double alpha);

}  // namespace anyon
