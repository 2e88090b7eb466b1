#pragma once

// Reference implementation of the truncated collision rates for tests.
//
// Deliberately naive: no pair table, no precomputed displacement rows, no
// merged exponentials. Geometry is evaluated per (node, partner, angle) in
// absolute coordinates and the statistical blocking factors come from the
// public scalar functions. Agreement with the production path is then a real
// cross-check of the tabulated fast path rather than of shared code.

#include <cmath>
#include <numbers>

#include "anyon/collision.hpp"
#include "anyon/field.hpp"
#include "anyon/grid.hpp"
#include "anyon/haldane.hpp"

namespace anyon::testing {

struct OracleRates {
  DistributionField gain_env;
  DistributionField loss;
};

// Bilinear interpolation, zero outside the node rectangle. Same association
// order as the production interpolant (a + t*(b-a)).
inline double oracle_bilerp(const double* fs, const PhaseGrid& g, double vx, double vy) {
  const double gx = vx / g.dv + 0.5 * (g.nv - 1);
  const double gy = vy / g.dv + 0.5 * (g.nv - 1);
  const int i0 = static_cast<int>(std::floor(gx));
  const int k0 = static_cast<int>(std::floor(gy));
  const double tx = gx - i0, ty = gy - k0;
  auto fetch = [&](int i, int k) -> double {
    if (i < 0 || i >= g.nv || k < 0 || k >= g.nv) return 0.0;
    return fs[static_cast<size_t>(i) * g.nv + k];
  };
  const double lo = fetch(i0, k0) + tx * (fetch(i0 + 1, k0) - fetch(i0, k0));
  const double hi = fetch(i0, k0 + 1) + tx * (fetch(i0 + 1, k0 + 1) - fetch(i0, k0 + 1));
  return lo + ty * (hi - lo);
}

inline double oracle_block(double f, double alpha, double j, bool regularized) {
  if (alpha == 1.0) return 1.0 - f;
  return regularized ? filling_factor_reg(f, alpha, j) : filling_factor(f, alpha);
}

inline OracleRates direct_collision_rates(const DistributionField& f, const PhaseGrid& g,
                                          const CollisionKernel& k, double alpha,
                                          bool regularized = true) {
  OracleRates out{DistributionField(g.nx, g.nv), DistributionField(g.nx, g.nv)};
  const double j2 = g.j * g.j;
  const double scale = g.vweight / std::numbers::pi;

  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    for (int id : g.ball_ids) {
      const double vx = g.v_coords[id / g.nv], vy = g.v_coords[id % g.nv];
      double gain = 0.0, loss = 0.0;

      for (int qid : g.ball_ids) {
        const double sx = g.v_coords[qid / g.nv], sy = g.v_coords[qid % g.nv];
        const double dx = vx - sx, dy = vy - sy;
        const double rel = std::sqrt(dx * dx + dy * dy);
        if (rel < k.gamma || rel == 0.0) continue;

        for (int m = 0; m < g.ntheta; ++m) {
          const double w = g.theta_weights[m];
          if (w == 0.0) continue;
          const double b = k.eval(rel, g.theta_nodes[m]);
          if (b == 0.0) continue;

          const double ct = std::cos(g.theta_nodes[m]);
          const double st = std::sin(g.theta_nodes[m]);
          const double ex = dx / rel, ey = dy / rel;
          const double nx = ex * ct - ey * st;
          const double ny = ex * st + ey * ct;
          const double proj = rel * ct;
          const double px = vx - nx * proj, py = vy - ny * proj;
          if (px * px + py * py > j2) continue;
          const double qx = sx + nx * proj, qy = sy + ny * proj;
          if (qx * qx + qy * qy > j2) continue;

          const double fp = oracle_bilerp(fs, g, px, py);
          const double fq = oracle_bilerp(fs, g, qx, qy);
          gain += b * w * fp * fq * oracle_block(fs[qid], alpha, g.j, regularized);
          loss += b * w * fs[qid] * oracle_block(fp, alpha, g.j, regularized) *
                  oracle_block(fq, alpha, g.j, regularized);
        }
      }
      out.gain_env.slice(ix)[id] = gain * scale;
      out.loss.slice(ix)[id] = loss * scale;
    }
  }
  return out;
}

}  // namespace anyon::testing
