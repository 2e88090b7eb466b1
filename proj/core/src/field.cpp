#include "anyon/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anyon {

DistributionField make_field(const PhaseGrid& g) { return DistributionField(g.nx, g.nv); }

Moments compute_moments(const DistributionField& f, const PhaseGrid& g) {
  Moments m;
  for (int ix = 0; ix < g.nx; ++ix) {
    const Moments s = slice_moments(f.slice(ix), g);
    m.mass += s.mass;
    m.mom1 += s.mom1;
    m.mom2 += s.mom2;
    m.energy += s.energy;
  }
  m.mass *= g.dx;
  m.mom1 *= g.dx;
  m.mom2 *= g.dx;
  m.energy *= g.dx;
  return m;
}

Moments slice_moments(const double* fs, const PhaseGrid& g) {
  double m = 0.0, p1 = 0.0, p2 = 0.0, en = 0.0;
  for (int id : g.ball_ids) {
    const int i = id / g.nv, k = id % g.nv;
    const double y = fs[id];
    const double v1 = g.v_coords[i], v2 = g.v_coords[k];
    m += y;
    p1 += v1 * y;
    p2 += v2 * y;
    en += (v1 * v1 + v2 * v2) * y;
  }
  return Moments{m * g.vweight, p1 * g.vweight, p2 * g.vweight, en * g.vweight};
}

void clamp_initial_data(DistributionField& f, const PhaseGrid& g, double alpha) {
  const double cap = 1.0 / alpha - 1.0 / g.j;
  for (int ix = 0; ix < g.nx; ++ix) {
    double* fs = f.slice(ix);
    for (int i = 0; i < g.nv; ++i)
      for (int k = 0; k < g.nv; ++k) {
        const int id = g.vid(i, k);
        fs[id] = g.inside(i, k) ? std::clamp(fs[id], 0.0, cap) : 0.0;
      }
  }
}

double min_unmasked(const DistributionField& f, const PhaseGrid& g) {
  double m = std::numeric_limits<double>::infinity();
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    for (int id : g.ball_ids) m = std::min(m, fs[id]);
  }
  return m;
}

double max_unmasked(const DistributionField& f, const PhaseGrid& g) {
  double m = -std::numeric_limits<double>::infinity();
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    for (int id : g.ball_ids) m = std::max(m, fs[id]);
  }
  return m;
}

bool masked_nodes_zero(const DistributionField& f, const PhaseGrid& g) {
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    for (int i = 0; i < g.nv; ++i)
      for (int k = 0; k < g.nv; ++k)
        if (!g.inside(i, k) && fs[g.vid(i, k)] != 0.0) return false;
  }
  return true;
}

double l1_norm(const DistributionField& f, const PhaseGrid& g) {
  double s = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    for (int id : g.ball_ids) s += std::fabs(fs[id]);
  }
  return s * g.dx * g.vweight;
}

double l1_distance(const DistributionField& f, const DistributionField& h,
                   const PhaseGrid& g) {
  double s = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    const double* hs = h.slice(ix);
    for (int id : g.ball_ids) s += std::fabs(fs[id] - hs[id]);
  }
  return s * g.dx * g.vweight;
}

}  // namespace anyon
