#pragma once

#include <vector>

#include "anyon/grid.hpp"

namespace anyon {

// Discrete occupancy f(x, v1, v2), stored row-major with x outermost.
struct DistributionField {
  int nx = 0, nv = 0;
  std::vector<double> a;

  DistributionField() = default;
  DistributionField(int nx_, int nv_)
      : nx(nx_), nv(nv_), a(static_cast<size_t>(nx_) * nv_ * nv_, 0.0) {}

  double& at(int ix, int i, int k) {
    return a[(static_cast<size_t>(ix) * nv + i) * nv + k];
  }
  double at(int ix, int i, int k) const {
    return a[(static_cast<size_t>(ix) * nv + i) * nv + k];
  }
  double* slice(int ix) { return a.data() + static_cast<size_t>(ix) * nv * nv; }
  const double* slice(int ix) const { return a.data() + static_cast<size_t>(ix) * nv * nv; }
  size_t size() const { return a.size(); }
};

DistributionField make_field(const PhaseGrid& g);

struct Moments {
  double mass = 0.0;
  double mom1 = 0.0;
  double mom2 = 0.0;
  double energy = 0.0;  // integral of |v|^2 f (no 1/2)
};

// Phase-space quadrature of {1, v1, v2, |v|^2} against f, per unit slab.
// Reduction order is fixed (x outer, then row-major v) for determinism.
Moments compute_moments(const DistributionField& f, const PhaseGrid& g);

// Moments of a single x-slice with the velocity weight only (no dx).
Moments slice_moments(const double* fs, const PhaseGrid& g);

// Clips f into [0, 1/alpha - 1/j] on the ball and zeroes masked nodes.
void clamp_initial_data(DistributionField& f, const PhaseGrid& g, double alpha);

// Range / norm helpers. "unmasked" means in-ball nodes only.
double min_unmasked(const DistributionField& f, const PhaseGrid& g);
double max_unmasked(const DistributionField& f, const PhaseGrid& g);
bool masked_nodes_zero(const DistributionField& f, const PhaseGrid& g);
double l1_norm(const DistributionField& f, const PhaseGrid& g);
double l1_distance(const DistributionField& f, const DistributionField& h,
                   const PhaseGrid& g);

}  // namespace anyon
