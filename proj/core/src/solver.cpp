#include "anyon/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "anyon/haldane.hpp"

namespace anyon {

DistributionField transport_shift(const DistributionField& f, const PhaseGrid& g,
                                  double dt) {
  DistributionField out(g.nx, g.nv);
  const int nx = g.nx;
  for (int id : g.ball_ids) {
    const int i = id / g.nv;
    const double s = g.v_coords[i] * dt / g.dx;
    const double m = std::floor(s);
    const double r = s - m;
    const int mi = static_cast<int>(m);

    if (r == 0.0) {
      // Integer shift: an exact index permutation, no interpolation error.
      for (int ix = 0; ix < nx; ++ix) {
        const int k1 = ((ix - mi) % nx + nx) % nx;
        out.a[static_cast<size_t>(ix) * g.nv * g.nv + id] =
            f.a[static_cast<size_t>(k1) * g.nv * g.nv + id];
      }
      continue;
    }

    // Departure point falls between nodes k0 and k1 = k0+1 with weight 1-r
    // toward k1; the a + t*(b-a) form keeps values inside the stencil hull.
    for (int ix = 0; ix < nx; ++ix) {
      const int k0 = ((ix - mi - 1) % nx + nx) % nx;
      const int k1 = ((ix - mi) % nx + nx) % nx;
      const double a = f.a[static_cast<size_t>(k0) * g.nv * g.nv + id];
      const double b = f.a[static_cast<size_t>(k1) * g.nv * g.nv + id];
      out.a[static_cast<size_t>(ix) * g.nv * g.nv + id] = a + (1.0 - r) * (b - a);
    }
  }
  return out;
}

double exp_relax(double f, double Gt, double L, double alpha, double dt) {
  const double lambda = alpha * Gt + L;
  if (lambda == 0.0) return f;
  // The stationary value is Gt/lambda <= 1/alpha in exact arithmetic; the min
  // guards the one-ulp overshoot of the division.
  const double ginf = std::min(Gt / lambda, 1.0 / alpha);
  const double e = std::exp(-lambda * dt);
  return ginf + (f - ginf) * e;  // convex combination: stays in [min,max](f, ginf)
}

CollisionStepResult exponential_collision_step(const DistributionField& f,
                                               const PhaseGrid& g,
                                               const CollisionKernel& k,
                                               const PairTable& t,
                                               const SimulationParams& p,
                                               double dt) {
  CollisionStepResult res;
  res.g = f;
  DistributionField prev = f;

  for (int sweep = 0; sweep < p.picard_iters; ++sweep) {
    // Freeze the rates at the current iterate, then relax exactly from f.
    const CollisionRates rates = collision_rates(res.g, g, k, t, p.alpha, true);
    prev = res.g;
    for (int ix = 0; ix < g.nx; ++ix) {
      const double* f0 = f.slice(ix);
      const double* fr = prev.slice(ix);
      const double* ge = rates.gain_env.slice(ix);
      const double* ls = rates.loss.slice(ix);
      double* gs = res.g.slice(ix);
      for (int id : g.ball_ids) {
        const double Gt = ge[id] * gain_structure(fr[id], p.alpha, g.j);
        gs[id] = exp_relax(f0[id], Gt, ls[id], p.alpha, dt);
      }
    }
    res.sweeps = sweep + 1;
    res.picard_residual = l1_distance(res.g, prev, g);
    if (res.picard_residual <= p.picard_tol) break;
  }
  return res;
}

namespace {

void assert_invariants(const DistributionField& f, const PhaseGrid& g, double alpha,
                       int step) {
  const double cap = 1.0 / alpha;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    for (int i = 0; i < g.nv; ++i)
      for (int k = 0; k < g.nv; ++k) {
        const double y = fs[g.vid(i, k)];
        if (g.inside(i, k)) {
          if (!(y >= 0.0 && y <= cap))
            throw std::runtime_error(
                "range invariant violated after step " + std::to_string(step) +
                ": f(ix=" + std::to_string(ix) + ", iv=" + std::to_string(i) +
                ", kv=" + std::to_string(k) + ") = " + std::to_string(y) +
                " outside [0, 1/alpha]");
        } else if (y != 0.0) {
          throw std::runtime_error(
              "mask invariant violated after step " + std::to_string(step) +
              ": off-ball node (ix=" + std::to_string(ix) + ", iv=" + std::to_string(i) +
              ", kv=" + std::to_string(k) + ") = " + std::to_string(y));
        }
      }
  }
}

}  // namespace

RunStats run(const SimulationParams& p, const PhaseGrid& g, const CollisionKernel& k,
             const PairTable& t, DistributionField& f, const StepHook& hook,
             int first_step, double start_time) {
  p.require_valid();
  RunStats stats;
  double time = start_time;
  int step = first_step;
  const double guard = 1e-12 * std::max(1.0, std::fabs(p.t_end));

  while (time < p.t_end - guard) {
    const double dt = std::min(p.dt, p.t_end - time);
    const DistributionField pre = f;

    f = transport_shift(f, g, 0.5 * dt);
    const DistributionField pre_coll = f;

    CollisionStepResult coll = exponential_collision_step(f, g, k, t, p, dt);
    f = std::move(coll.g);

    const Moments before = compute_moments(pre_coll, g);
    const Moments after = compute_moments(f, g);
    StepInfo info;
    info.defect[0] = after.mass - before.mass;
    info.defect[1] = after.mom1 - before.mom1;
    info.defect[2] = after.mom2 - before.mom2;
    info.defect[3] = after.energy - before.energy;

    if (p.projection)
      info.projection_l1 = conservative_projection(f, pre_coll, g, p.alpha);

    f = transport_shift(f, g, 0.5 * dt);

    time += dt;
    ++step;
    assert_invariants(f, g, p.alpha, step);

    info.step = step;
    info.time = time;
    info.dt = dt;
    info.pre = &pre;
    info.post = &f;
    info.picard_residual = coll.picard_residual;
    if (hook) hook(info);

    ++stats.steps;
  }
  stats.final_time = time;
  return stats;
}

}  // namespace anyon
