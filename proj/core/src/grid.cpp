#include "anyon/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anyon {

PhaseGrid make_grid(const SimulationParams& p) {
  p.require_valid();
  if (p.nv < 4)
    throw std::invalid_argument("make_grid: grid under-resolved, need at least 4 velocity nodes across the ball");

  PhaseGrid g;
  g.nx = p.nx;
  g.nv = p.nv;
  g.ntheta = p.ntheta;
  g.j = p.j;
  g.gamma_prime = p.gamma_prime;
  g.dx = 1.0 / p.nx;
  g.dv = 2.0 * p.j / p.nv;
  g.dtheta = 2.0 * std::numbers::pi / p.ntheta;
  g.vweight = g.dv * g.dv;

  g.x_nodes.resize(p.nx);
  for (int i = 0; i < p.nx; ++i) g.x_nodes[i] = i * g.dx;

  // Symmetric cell centers: v[nv-1-i] == -v[i] bitwise.
  const double c = 0.5 * (p.nv - 1);
  g.v_coords.resize(p.nv);
  for (int i = 0; i < p.nv; ++i) g.v_coords[i] = (i - c) * g.dv;

  const double j2 = p.j * p.j;
  g.vmask.assign(static_cast<size_t>(p.nv) * p.nv, 0);
  for (int i = 0; i < p.nv; ++i) {
    for (int k = 0; k < p.nv; ++k) {
      const double r2 = g.v_coords[i] * g.v_coords[i] + g.v_coords[k] * g.v_coords[k];
      if (r2 <= j2) {
        g.vmask[static_cast<size_t>(i) * p.nv + k] = 1;
        g.ball_ids.push_back(i * p.nv + k);
      }
    }
  }
  if (g.ball_ids.empty())
    throw std::invalid_argument("make_grid: the velocity ball contains no grid node");
  g.vweight_sum = static_cast<double>(g.ball_ids.size()) * g.vweight;

  g.theta_nodes.resize(p.ntheta);
  g.theta_weights.assign(p.ntheta, 0.0);
  g.theta_measure = 0.0;
  for (int k = 0; k < p.ntheta; ++k) {
    const double th = (k + 0.5) * g.dtheta;
    g.theta_nodes[k] = th;
    const double ac = std::fabs(std::cos(th));
    const bool admissible = (ac >= p.gamma_prime) && (1.0 - ac >= p.gamma_prime);
    if (admissible) {
      g.theta_weights[k] = g.dtheta;
      g.theta_measure += g.dtheta;
    }
  }
  if (g.theta_measure <= 0.0)
    throw std::invalid_argument("make_grid: the angular cutoff removes every quadrature node; "
                                "increase ntheta or decrease gamma_prime");
  return g;
}

}  // namespace anyon
