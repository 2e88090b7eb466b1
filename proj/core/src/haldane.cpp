#include "anyon/haldane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "anyon/util.hpp"

namespace anyon {

namespace {

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1]");
}

void check_occupancy(double f, double alpha, const char* who) {
  if (!(f >= 0.0 && f <= 1.0 / alpha))
    throw std::domain_error(std::string(who) + ": occupancy " + std::to_string(f) +
                            " outside [0, 1/alpha]");
}

// alpha * (1/alpha) can round to 1 + 1ulp, so the linear factor is clamped at
// zero instead of being allowed to go (harmlessly but confusingly) negative.
double blocking(double f, double alpha) { return std::max(0.0, 1.0 - alpha * f); }

double softplus(double u) {
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

double sigmoid(double u) {
  if (u > 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

double filling_factor(double f, double alpha) {
  check_alpha(alpha, "filling_factor");
  check_occupancy(f, alpha, "filling_factor");
  const double t = blocking(f, alpha);
  if (alpha == 1.0) return t;
  return std::pow(t, alpha) * std::pow(1.0 + (1.0 - alpha) * f, 1.0 - alpha);
}

double filling_factor_reg(double f, double alpha, double j) {
  check_alpha(alpha, "filling_factor_reg");
  check_occupancy(f, alpha, "filling_factor_reg");
  if (!(j >= 1.0)) throw std::domain_error("filling_factor_reg: j must be at least 1");
  const double t = blocking(f, alpha);
  if (alpha == 1.0) return t;  // exponent 1-alpha vanishes, the regularization is inert
  return t * std::pow((1.0 + (1.0 - alpha) * f) / (1.0 / j + t), 1.0 - alpha);
}

double gain_structure(double f, double alpha, double j) {
  check_alpha(alpha, "gain_structure");
  check_occupancy(f, alpha, "gain_structure");
  if (!(j >= 1.0)) throw std::domain_error("gain_structure: j must be at least 1");
  if (alpha == 1.0) return 1.0;
  const double t = blocking(f, alpha);
  return std::pow((1.0 + (1.0 - alpha) * f) / (1.0 / j + t), 1.0 - alpha);
}

double solve_w_log(double log_zeta, double alpha) {
  check_alpha(alpha, "solve_w_log");
  if (!std::isfinite(log_zeta))
    throw std::domain_error("solve_w_log: log(zeta) must be finite");
  if (alpha == 1.0) return log_zeta;

  // Root of h(u) = alpha*u + (1-alpha)*softplus(u) - log(zeta) in u = log w.
  // h is increasing and convex with h' in (alpha, 1), and both starting points
  // below satisfy h(u0) >= 0, so Newton descends onto the root monotonically.
  const double L = log_zeta;
  double u = (L <= 0.0) ? L / alpha : L;
  for (int it = 0; it < 100; ++it) {
    const double h = alpha * u + (1.0 - alpha) * softplus(u) - L;
    if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(L))) break;
    const double hp = alpha + (1.0 - alpha) * sigmoid(u);
    const double step = h / hp;
    u -= step;
    if (std::fabs(step) < 1e-16 * (1.0 + std::fabs(u))) break;
  }
  return u;
}

double solve_w(double zeta, double alpha) {
  check_alpha(alpha, "solve_w");
  if (!(zeta > 0.0)) throw std::domain_error("solve_w: zeta must be positive");
  if (alpha == 1.0) return zeta;
  return std::exp(solve_w_log(std::log(zeta), alpha));
}

double equilibrium_occupancy(double eps, double mu, double temperature, double alpha) {
  if (!(temperature > 0.0))
    throw std::domain_error("equilibrium_occupancy: temperature must be positive");
  const double u = solve_w_log((eps - mu) / temperature, alpha);
  return 1.0 / (std::exp(u) + alpha);  // exp may overflow to inf; 1/inf == 0 is the right tail
}

DistributionField wu_equilibrium(const PhaseGrid& g, double alpha,
                                 const EquilibriumSpec& eq) {
  DistributionField f(g.nx, g.nv);
  for (int id : g.ball_ids) {
    const int i = id / g.nv, k = id % g.nv;
    const double eps = 0.5 * (g.v_coords[i] * g.v_coords[i] + g.v_coords[k] * g.v_coords[k]);
    const double val = equilibrium_occupancy(eps, eq.mu, eq.temperature, alpha);
    for (int ix = 0; ix < g.nx; ++ix) f.at(ix, i, k) = val;
  }
  return f;
}

namespace {

// Mass and energy of the x-uniform equilibrium, per unit slab.
void equilibrium_moments(const PhaseGrid& g, double alpha, double mu, double T,
                         double* mass, double* energy) {
  double m = 0.0, e = 0.0;
  for (int id : g.ball_ids) {
    const int i = id / g.nv, k = id % g.nv;
    const double v2 = g.v_coords[i] * g.v_coords[i] + g.v_coords[k] * g.v_coords[k];
    const double f = equilibrium_occupancy(0.5 * v2, mu, T, alpha);
    m += f;
    e += v2 * f;
  }
  *mass = m * g.vweight;
  *energy = e * g.vweight;
}

double solve_mu_for_mass(const PhaseGrid& g, double alpha, double T,
                         double target_mass) {
  auto mass_at = [&](double mu) {
    double m, e;
    equilibrium_moments(g, alpha, mu, T, &m, &e);
    return m;
  };
  double lo = -1.0, hi = 1.0;
  while (mass_at(lo) > target_mass) {
    lo *= 2.0;
    if (lo < -1e15)
      throw std::runtime_error("match_moments: target mass " + std::to_string(target_mass) +
                               " could not be bracketed from below");
  }
  while (mass_at(hi) < target_mass) {
    hi *= 2.0;
    if (hi > 1e15)
      throw std::runtime_error("match_moments: target mass " + std::to_string(target_mass) +
                               " could not be bracketed from above");
  }
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 1e-13 * std::max(1.0, std::fabs(lo) + std::fabs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    (mass_at(mid) < target_mass ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EquilibriumSpec match_moments(const PhaseGrid& g, double alpha,
                              double target_mass, double target_energy) {
  check_alpha(alpha, "match_moments");
  const double mass_max = g.vweight_sum / alpha;
  if (!(target_mass > 0.0 && target_mass < mass_max))
    throw std::runtime_error("match_moments: target mass " + std::to_string(target_mass) +
                             " outside the reachable range (0, " + std::to_string(mass_max) +
                             ") on this grid");
  if (!(target_energy > 0.0))
    throw std::runtime_error("match_moments: target energy " + std::to_string(target_energy) +
                             " must be positive");

  auto energy_at = [&](double T) {
    const double mu = solve_mu_for_mass(g, alpha, T, target_mass);
    double m, e;
    equilibrium_moments(g, alpha, mu, T, &m, &e);
    return e;
  };

  // Energy at fixed mass grows with temperature, from the degenerate packing
  // (T -> 0) up to the uniform gas on the ball (T -> inf).
  double t_lo = 1.0, t_hi = 1.0;
  while (energy_at(t_lo) > target_energy) {
    t_lo *= 0.5;
    if (t_lo < 1e-9)
      throw std::runtime_error("match_moments: target energy " +
                               std::to_string(target_energy) +
                               " lies below the degenerate minimum for this mass");
  }
  while (energy_at(t_hi) < target_energy) {
    t_hi *= 2.0;
    if (t_hi > 1e9)
      throw std::runtime_error("match_moments: target energy " +
                               std::to_string(target_energy) +
                               " exceeds the uniform-gas maximum for this mass");
  }
  for (int it = 0; it < 200; ++it) {
    if (t_hi - t_lo <= 1e-13 * t_hi) break;
    const double mid = 0.5 * (t_lo + t_hi);
    (energy_at(mid) < target_energy ? t_lo : t_hi) = mid;
  }
  const double T = 0.5 * (t_lo + t_hi);
  return EquilibriumSpec{solve_mu_for_mass(g, alpha, T, target_mass), T};
}

double entropy(const DistributionField& f, const PhaseGrid& g, double alpha) {
  check_alpha(alpha, "entropy");
  double total = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const double* fs = f.slice(ix);
    double cell = 0.0;
    for (int id : g.ball_ids) {
      const double y = fs[id];
      cell += xlogx(y) + xlogx(blocking(y, alpha)) - xlogx(1.0 + (1.0 - alpha) * y);
    }
    total += cell;
  }
  return total * g.dx * g.vweight;
}

double state_count(double G, double N, double alpha) {
  check_alpha(alpha, "state_count");
  const double top = G + (N - 1.0) * (1.0 - alpha) + 1.0;
  const double bot1 = N + 1.0;
  const double bot2 = G - alpha * N - (1.0 - alpha) + 1.0;
  if (!(top > 0.0) || !(bot1 > 0.0) || !(bot2 > 0.0))
    throw std::domain_error("state_count: Gamma argument non-positive (over-packed states)");
  return std::exp(std::lgamma(top) - std::lgamma(bot1) - std::lgamma(bot2));
}

}  // namespace anyon
