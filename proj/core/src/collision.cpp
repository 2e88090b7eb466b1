#include "anyon/collision.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "anyon/util.hpp"

namespace anyon {

VelocityPair post_collision(double vx, double vy, double sx, double sy, double theta) {
  const double dx = vx - sx, dy = vy - sy;
  const double rel = std::sqrt(dx * dx + dy * dy);
  if (rel == 0.0) return VelocityPair{vx, vy, sx, sy};
  const double ex = dx / rel, ey = dy / rel;
  const double ct = std::cos(theta), st = std::sin(theta);
  // n is the collision normal, at angle theta from the relative direction.
  const double nx = ex * ct - ey * st;
  const double ny = ex * st + ey * ct;
  const double proj = rel * ct;  // (v - v*) . n
  return VelocityPair{vx - nx * proj, vy - ny * proj, sx + nx * proj, sy + ny * proj};
}

double CollisionKernel::eval(double rel_speed, double theta) const {
  const double ac = std::fabs(std::cos(theta));
  const bool ok = rel_speed >= gamma && ac >= gamma_prime && 1.0 - ac >= gamma_prime;
  return ok ? b0 : 0.0;
}

CollisionKernel make_kernel(const SimulationParams& p, const PhaseGrid& g) {
  p.require_valid();
  CollisionKernel k{p.b0, p.gamma, p.gamma_prime, p.c_b};
  // The angular mass at any admissible speed is b0 times the admissible
  // theta measure; the theory needs it bounded below by c_b.
  const double angular_mass = k.b0 * g.theta_measure;
  if (angular_mass < k.c_b)
    throw std::invalid_argument(
        "make_kernel: angular kernel mass " + std::to_string(angular_mass) +
        " is below the required floor c_b = " + std::to_string(k.c_b) +
        "; raise b0 or ntheta, or relax c_b");
  return k;
}

PairTable build_pair_table(const PhaseGrid& g, const CollisionKernel& k) {
  PairTable t;
  t.nv = g.nv;
  t.span = 2 * g.nv - 1;
  const int rows = t.span * t.span;
  t.row_begin.assign(rows + 1, 0);
  t.rel2.assign(rows, 0.0);
  t.entries.reserve(static_cast<size_t>(rows) * 2);

  for (int di = -(g.nv - 1); di <= g.nv - 1; ++di) {
    for (int dk = -(g.nv - 1); dk <= g.nv - 1; ++dk) {
      const int r = t.row(di, dk);
      const double dx = di * g.dv, dy = dk * g.dv;
      const double rel2 = dx * dx + dy * dy;
      t.rel2[r] = rel2;
      const double rel = std::sqrt(rel2);
      if (rel >= k.gamma && rel > 0.0) {
        for (int m = 0; m < g.ntheta; ++m) {
          if (g.theta_weights[m] == 0.0) continue;
          const double b = k.eval(rel, g.theta_nodes[m]);
          if (b == 0.0) continue;
          // Displacements relative to v: scatter the pair (0, -d).
          const VelocityPair vp = post_collision(0.0, 0.0, -dx, -dy, g.theta_nodes[m]);
          t.entries.push_back({vp.vx, vp.vy, vp.wx, vp.wy, b * g.theta_weights[m]});
        }
      }
      t.row_begin[r + 1] = static_cast<int>(t.entries.size());
    }
  }
  return t;
}

namespace {

// Occupancy at an off-grid velocity by bilinear interpolation of one x-slice,
// zero outside the node rectangle (masked nodes are already zero). The
// a + t*(b-a) form keeps the result inside the hull of the four corners.
inline double bilerp(const double* fs, int nv, double inv_dv, double center,
                     double vx, double vy) {
  const double gx = vx * inv_dv + center;
  const double gy = vy * inv_dv + center;
  const int i0 = static_cast<int>(std::floor(gx));
  const int k0 = static_cast<int>(std::floor(gy));
  const double tx = gx - i0, ty = gy - k0;
  auto fetch = [&](int i, int k) -> double {
    return (static_cast<unsigned>(i) < static_cast<unsigned>(nv) &&
            static_cast<unsigned>(k) < static_cast<unsigned>(nv))
               ? fs[static_cast<size_t>(i) * nv + k]
               : 0.0;
  };
  const double f00 = fetch(i0, k0), f10 = fetch(i0 + 1, k0);
  const double f01 = fetch(i0, k0 + 1), f11 = fetch(i0 + 1, k0 + 1);
  const double lo = f00 + tx * (f10 - f00);
  const double hi = f01 + tx * (f11 - f01);
  return lo + ty * (hi - lo);
}

}  // namespace

CollisionRates collision_rates(const DistributionField& f, const PhaseGrid& g,
                               const CollisionKernel& k, const PairTable& t,
                               double alpha, bool regularized) {
  (void)k;  // geometry and kernel are baked into the table
  CollisionRates out{DistributionField(g.nx, g.nv), DistributionField(g.nx, g.nv)};

  const int nv = g.nv;
  const double inv_dv = 1.0 / g.dv;
  const double center = 0.5 * (nv - 1);
  const double j2 = g.j * g.j;
  const double invj = 1.0 / g.j;
  const double oma = 1.0 - alpha;
  const double scale = g.vweight / std::numbers::pi;
  const bool linear_stats = (alpha == 1.0);

  // Per-node blocking factor of the partner: F_j(f*) (or F(f*) unregularized).
  std::vector<double> fstar_block(static_cast<size_t>(nv) * nv);

  std::vector<double> gain_acc(static_cast<size_t>(nv) * nv);
  std::vector<double> loss_acc(static_cast<size_t>(nv) * nv);

  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);

    for (int id : g.ball_ids) {
      const double y = fs[id];
      const double blk = std::max(0.0, 1.0 - alpha * y);
      if (linear_stats) {
        fstar_block[id] = blk;
      } else if (regularized) {
        fstar_block[id] = blk * std::pow((1.0 + oma * y) / (invj + blk), oma);
      } else {
        fstar_block[id] = std::pow(blk, alpha) * std::pow(1.0 + oma * y, oma);
      }
    }

    for (int id : g.ball_ids) {
      const int i = id / nv, kk = id % nv;
      const double vx = g.v_coords[i], vy = g.v_coords[kk];
      double gain = 0.0, loss = 0.0;

      for (int qid : g.ball_ids) {
        const int a = qid / nv, b = qid % nv;
        const int r = t.row(i - a, kk - b);
        const int e0 = t.row_begin[r], e1 = t.row_begin[r + 1];
        if (e0 == e1) continue;

        double gain_row = 0.0, loss_row = 0.0;
        for (int e = e0; e < e1; ++e) {
          const PairTable::Entry& en = t.entries[e];
          const double px = vx + en.dpx, py = vy + en.dpy;
          if (px * px + py * py > j2) continue;
          const double qx = vx + en.dqx, qy = vy + en.dqy;
          if (qx * qx + qy * qy > j2) continue;

          const double fp = bilerp(fs, nv, inv_dv, center, px, py);
          const double fq = bilerp(fs, nv, inv_dv, center, qx, qy);
          gain_row += en.bw * fp * fq;

          const double t1 = std::max(0.0, 1.0 - alpha * fp);
          const double t2 = std::max(0.0, 1.0 - alpha * fq);
          double block2;
          if (linear_stats) {
            block2 = t1 * t2;
          } else if (t1 <= 0.0 || t2 <= 0.0) {
            block2 = 0.0;
          } else if (regularized) {
            // F_j(f') F_j(f'*) with the two powers merged into one exp/log.
            const double ratio = ((1.0 + oma * fp) * (1.0 + oma * fq)) /
                                 ((invj + t1) * (invj + t2));
            block2 = t1 * t2 * std::exp(oma * std::log(ratio));
          } else {
            block2 = std::exp(alpha * std::log(t1 * t2) +
                              oma * std::log((1.0 + oma * fp) * (1.0 + oma * fq)));
          }
          loss_row += en.bw * block2;
        }
        gain += gain_row * fstar_block[qid];
        loss += loss_row * fs[qid];
      }
      gain_acc[id] = gain * scale;
      loss_acc[id] = loss * scale;
    }

    double* gs = out.gain_env.slice(ix);
    double* ls = out.loss.slice(ix);
    for (int id : g.ball_ids) {
      gs[id] = gain_acc[id];
      ls[id] = loss_acc[id];
    }
  }
  return out;
}

DistributionField apply_Q(const DistributionField& f, const PhaseGrid& g,
                          const CollisionKernel& k, const PairTable& t,
                          double alpha, bool regularized) {
  const CollisionRates rates = collision_rates(f, g, k, t, alpha, regularized);
  DistributionField q(g.nx, g.nv);
  const double invj = 1.0 / g.j;
  const double oma = 1.0 - alpha;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    const double* gs = rates.gain_env.slice(ix);
    const double* ls = rates.loss.slice(ix);
    double* qs = q.slice(ix);
    for (int id : g.ball_ids) {
      const double y = fs[id];
      const double blk = std::max(0.0, 1.0 - alpha * y);
      double fill;
      if (alpha == 1.0) {
        fill = blk;
      } else if (regularized) {
        fill = blk * std::pow((1.0 + oma * y) / (invj + blk), oma);
      } else {
        fill = std::pow(blk, alpha) * std::pow(1.0 + oma * y, oma);
      }
      qs[id] = fill * gs[id] - y * ls[id];
    }
  }
  return q;
}

double conservative_projection(DistributionField& post, const DistributionField& pre,
                               const PhaseGrid& g, double alpha) {
  const double cap = 1.0 / alpha;
  const double invj = 1.0 / g.j;
  const double invj2 = invj * invj;
  double applied_l1 = 0.0;

  std::vector<double> weight(static_cast<size_t>(g.nv) * g.nv);

  for (int ix = 0; ix < g.nx; ++ix) {
    double* ps = post.slice(ix);
    const Moments want = slice_moments(pre.slice(ix), g);
    const Moments have = slice_moments(ps, g);
    double defect[4] = {want.mass - have.mass, want.mom1 - have.mom1,
                        want.mom2 - have.mom2, want.energy - have.energy};
    if (defect[0] == 0.0 && defect[1] == 0.0 && defect[2] == 0.0 && defect[3] == 0.0)
      continue;

    // w vanishes toward both admissible bounds, so a correction of bounded
    // polynomial factor cannot leave [0, 1/alpha].
    for (int id : g.ball_ids) weight[id] = std::max(0.0, std::min(ps[id], cap - ps[id]));

    // Basis {1, v1/j, v2/j, |v|^2/j^2}; equations use the raw moments.
    double A[4][4] = {};
    for (int id : g.ball_ids) {
      const int i = id / g.nv, k = id % g.nv;
      const double v1 = g.v_coords[i], v2 = g.v_coords[k];
      const double v2n = v1 * v1 + v2 * v2;
      const double phi[4] = {1.0, v1 * invj, v2 * invj, v2n * invj2};
      const double psi[4] = {1.0, v1, v2, v2n};
      const double w = weight[id] * g.vweight;
      for (int r = 0; r < 4; ++r)
        for (int m = 0; m < 4; ++m) A[r][m] += psi[r] * phi[m] * w;
    }

    double c[4];
    solve4(A, defect, c);

    // Validate the whole correction before touching the field, so a throw
    // leaves `post` unmodified.
    std::vector<double> poly(g.ball_ids.size());
    double poly_max = 0.0;
    for (size_t n = 0; n < g.ball_ids.size(); ++n) {
      const int id = g.ball_ids[n];
      const int i = id / g.nv, k = id % g.nv;
      const double v1 = g.v_coords[i], v2 = g.v_coords[k];
      poly[n] = c[0] + c[1] * v1 * invj + c[2] * v2 * invj +
                c[3] * (v1 * v1 + v2 * v2) * invj2;
      poly_max = std::max(poly_max, std::fabs(poly[n]));
    }
    if (poly_max > 1.0)
      throw std::runtime_error(
          "conservative projection: correction factor " + std::to_string(poly_max) +
          " exceeds the safe range (moment defect too large for this field)");

    double slice_l1 = 0.0;
    for (size_t n = 0; n < g.ball_ids.size(); ++n) {
      const double corr = poly[n] * weight[g.ball_ids[n]];
      ps[g.ball_ids[n]] += corr;
      slice_l1 += std::fabs(corr);
    }
    applied_l1 += slice_l1 * g.vweight * g.dx;
  }
  return applied_l1;
}

}  // namespace anyon
