#include "anyon/presets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace anyon {

namespace {

constexpr double kFloor = 1e-250;

// Clip to [floor, cap] on the ball, zero elsewhere.
void finalize(DistributionField& f, const PhaseGrid& g, double alpha) {
  const double cap = 1.0 / alpha - 1.0 / g.j;
  for (int ix = 0; ix < g.nx; ++ix) {
    double* fs = f.slice(ix);
    for (int i = 0; i < g.nv; ++i)
      for (int k = 0; k < g.nv; ++k) {
        const int id = g.vid(i, k);
        fs[id] = g.inside(i, k) ? std::clamp(fs[id], kFloor, cap) : 0.0;
      }
  }
}

// Deterministic uniform double in [-1, 1) from a counter-less splitmix step;
// std::uniform_real_distribution is implementation-defined, this is not.
double jitter_unit(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return 2.0 * ((z >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

DistributionField preset_wu(const PhaseGrid& g, double alpha, const EquilibriumSpec& eq) {
  DistributionField f = wu_equilibrium(g, alpha, eq);
  finalize(f, g, alpha);
  return f;
}

DistributionField preset_bimodal(const PhaseGrid& g, double alpha, const BimodalSpec& s,
                                 std::uint64_t seed) {
  double cx = s.center, width = s.width;
  if (seed != 0) {
    std::uint64_t state = seed;
    cx *= 1.0 + 0.05 * jitter_unit(state);
    width *= 1.0 + 0.05 * jitter_unit(state);
  }
  const double cap = 1.0 / alpha - 1.0 / g.j;
  const double h = s.height_frac * cap;
  const double inv2w2 = 1.0 / (2.0 * width * width);

  DistributionField f(g.nx, g.nv);
  for (int id : g.ball_ids) {
    const int i = id / g.nv, k = id % g.nv;
    const double v1 = g.v_coords[i], v2 = g.v_coords[k];
    const double dplus = (v1 - cx) * (v1 - cx) + v2 * v2;
    const double dminus = (v1 + cx) * (v1 + cx) + v2 * v2;
    const double val = h * (std::exp(-dplus * inv2w2) + std::exp(-dminus * inv2w2));
    for (int ix = 0; ix < g.nx; ++ix) f.at(ix, i, k) = val;
  }
  finalize(f, g, alpha);
  return f;
}

DistributionField preset_wave(const PhaseGrid& g, double alpha, const WaveSpec& s) {
  DistributionField f(g.nx, g.nv);
  for (int id : g.ball_ids) {
    const int i = id / g.nv, k = id % g.nv;
    const double eps = 0.5 * (g.v_coords[i] * g.v_coords[i] + g.v_coords[k] * g.v_coords[k]);
    const double base = equilibrium_occupancy(eps, s.eq.mu, s.eq.temperature, alpha);
    for (int ix = 0; ix < g.nx; ++ix) {
      const double mod = 1.0 + s.amplitude * std::cos(2.0 * std::numbers::pi * g.x_nodes[ix]);
      f.at(ix, i, k) = base * mod;
    }
  }
  finalize(f, g, alpha);
  return f;
}

namespace {

std::vector<double> gaussian_taps(double sigma, double h, int max_radius) {
  int r = static_cast<int>(std::ceil(3.0 * sigma / h));
  r = std::clamp(r, 1, max_radius);
  std::vector<double> w(2 * r + 1);
  double sum = 0.0;
  for (int m = -r; m <= r; ++m) {
    w[m + r] = std::exp(-0.5 * (m * h) * (m * h) / (sigma * sigma));
    sum += w[m + r];
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

void mollify(DistributionField& f, const PhaseGrid& g, double alpha) {
  const double sigma = 1.0 / g.j;
  const std::vector<double> wx = gaussian_taps(sigma, g.dx, g.nx);
  const std::vector<double> wv = gaussian_taps(sigma, g.dv, g.nv);
  const int rx = (static_cast<int>(wx.size()) - 1) / 2;
  const int rv = (static_cast<int>(wv.size()) - 1) / 2;

  DistributionField tmp(g.nx, g.nv);

  // x pass, periodic.
  for (int ix = 0; ix < g.nx; ++ix)
    for (int i = 0; i < g.nv; ++i)
      for (int k = 0; k < g.nv; ++k) {
        double acc = 0.0;
        for (int m = -rx; m <= rx; ++m) {
          const int src = ((ix + m) % g.nx + g.nx) % g.nx;
          acc += wx[m + rx] * f.at(src, i, k);
        }
        tmp.at(ix, i, k) = acc;
      }

  // v1 pass, zero-extended.
  for (int ix = 0; ix < g.nx; ++ix)
    for (int i = 0; i < g.nv; ++i)
      for (int k = 0; k < g.nv; ++k) {
        double acc = 0.0;
        for (int m = -rv; m <= rv; ++m) {
          const int src = i + m;
          if (src >= 0 && src < g.nv) acc += wv[m + rv] * tmp.at(ix, src, k);
        }
        f.at(ix, i, k) = acc;
      }

  // v2 pass, zero-extended; reads the v1-pass result out of f.
  for (int ix = 0; ix < g.nx; ++ix)
    for (int i = 0; i < g.nv; ++i)
      for (int k = 0; k < g.nv; ++k) {
        double acc = 0.0;
        for (int m = -rv; m <= rv; ++m) {
          const int src = k + m;
          if (src >= 0 && src < g.nv) acc += wv[m + rv] * f.at(ix, i, src);
        }
        tmp.at(ix, i, k) = acc;
      }
  f.a.swap(tmp.a);

  finalize(f, g, alpha);
}

}  // namespace anyon
