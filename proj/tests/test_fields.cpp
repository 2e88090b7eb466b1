#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anyon/field.hpp"
#include "anyon/grid.hpp"
#include "anyon/presets.hpp"
#include "doctest.h"

using namespace anyon;

namespace {

SimulationParams base_params() {
  SimulationParams p;
  p.nx = 4;
  p.nv = 16;
  p.ntheta = 16;
  p.j = 4.0;
  p.alpha = 0.5;
  return p;
}

}  // namespace

TEST_CASE("grid: geometry, bitwise velocity symmetry, quadrature weights") {
  const SimulationParams p = base_params();
  const PhaseGrid g = make_grid(p);

  CHECK(g.dx == 0.25);
  CHECK(g.dv == 0.5);
  CHECK(g.x_nodes.front() == 0.0);
  CHECK(g.x_nodes[1] == doctest::Approx(0.25));

  // Cell centers are exactly antisymmetric, not just approximately.
  for (int i = 0; i < g.nv; ++i)
    CHECK(g.v_coords[i] == -g.v_coords[g.nv - 1 - i]);

  // Mask and ball id list agree, and the ball is v -> -v symmetric.
  int masked_on = 0;
  for (int i = 0; i < g.nv; ++i)
    for (int k = 0; k < g.nv; ++k) {
      masked_on += g.inside(i, k) ? 1 : 0;
      CHECK(g.inside(i, k) == g.inside(g.nv - 1 - i, g.nv - 1 - k));
    }
  CHECK(static_cast<size_t>(masked_on) == g.ball_ids.size());
  for (size_t n = 1; n < g.ball_ids.size(); ++n)
    CHECK(g.ball_ids[n - 1] < g.ball_ids[n]);

  // Ball quadrature mass approximates pi j^2 (cell-center rule).
  CHECK(g.vweight_sum ==
        doctest::Approx(std::numbers::pi * g.j * g.j).epsilon(0.04));
}

TEST_CASE("grid: angular cutoff keeps 12 of 16 midpoints at gamma' = 0.1") {
  const SimulationParams p = base_params();
  const PhaseGrid g = make_grid(p);

  int admissible = 0;
  for (int k = 0; k < g.ntheta; ++k)
    if (g.theta_weights[k] > 0.0) {
      CHECK(g.theta_weights[k] == g.dtheta);
      ++admissible;
    }
  // cos of the first midpoint 11.25 degrees is 0.98 > 0.9, so the four
  // near-axis nodes drop out and three per quadrant survive.
  CHECK(admissible == 12);
  CHECK(g.theta_measure == doctest::Approx(12.0 * g.dtheta).epsilon(1e-15));
}

TEST_CASE("grid: construction rejects unusable discretizations") {
  SimulationParams p = base_params();
  p.nv = 3;
  CHECK_THROWS_AS(make_grid(p), std::invalid_argument);

  // ntheta = 4 puts every midpoint at |cos| = sqrt(1/2); gamma' = 0.49
  // removes them all.
  p = base_params();
  p.ntheta = 4;
  p.gamma_prime = 0.49;
  CHECK_THROWS_WITH_AS(make_grid(p), doctest::Contains("angular cutoff"),
                       std::invalid_argument);

  p = base_params();
  p.alpha = 1.5;
  CHECK_THROWS_AS(make_grid(p), std::invalid_argument);
}

TEST_CASE("field: indexing layout and moment quadrature") {
  const SimulationParams p = base_params();
  const PhaseGrid g = make_grid(p);
  DistributionField f = make_field(g);
  CHECK(f.size() == g.field_size());

  f.at(2, 5, 7) = 3.25;
  CHECK(f.slice(2)[g.vid(5, 7)] == 3.25);
  CHECK(f.at(2, 5, 7) == 3.25);

  // Constant occupancy on the ball: mass = c * vweight_sum, momenta ~ 0,
  // energy = c * sum |v|^2 w.
  f = make_field(g);
  const double c0 = 0.375;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int id : g.ball_ids) f.slice(ix)[id] = c0;
  const Moments m = compute_moments(f, g);
  CHECK(m.mass == doctest::Approx(c0 * g.vweight_sum).epsilon(1e-14));
  CHECK(std::fabs(m.mom1) <= 1e-14 * m.mass * g.j);
  CHECK(std::fabs(m.mom2) <= 1e-14 * m.mass * g.j);
  double e = 0.0;
  for (int id : g.ball_ids) {
    const int i = id / g.nv, k = id % g.nv;
    e += (g.v_coords[i] * g.v_coords[i] + g.v_coords[k] * g.v_coords[k]) * c0 * g.vweight;
  }
  CHECK(m.energy == doctest::Approx(e).epsilon(1e-13));

  // slice_moments agrees with the global quadrature divided by the slab.
  const Moments ms = slice_moments(f.slice(0), g);
  CHECK(ms.mass == doctest::Approx(m.mass).epsilon(1e-13));
  CHECK(ms.energy == doctest::Approx(m.energy).epsilon(1e-13));
}

TEST_CASE("field: clamping, range helpers, masked-node discipline") {
  const SimulationParams p = base_params();
  const PhaseGrid g = make_grid(p);
  DistributionField f = make_field(g);
  for (size_t n = 0; n < f.a.size(); ++n) f.a[n] = -1.0 + 0.01 * static_cast<double>(n % 500);

  clamp_initial_data(f, g, p.alpha);
  CHECK(masked_nodes_zero(f, g));
  CHECK(min_unmasked(f, g) >= 0.0);
  CHECK(max_unmasked(f, g) <= p.init_cap());

  // l1 helpers against direct sums.
  DistributionField h = f;
  for (int id : g.ball_ids) h.slice(1)[id] += 0.125;
  const double d = l1_distance(f, h, g);
  CHECK(d == doctest::Approx(0.125 * g.ball_ids.size() * g.vweight * g.dx).epsilon(1e-13));
  CHECK(l1_norm(f, g) > 0.0);
  CHECK(l1_distance(f, f, g) == 0.0);
}

TEST_CASE("presets: positivity floor, cap saturation, spatial structure") {
  const SimulationParams p = base_params();
  const PhaseGrid g = make_grid(p);
  const double cap = p.init_cap();

  SUBCASE("equilibrium preset is x-uniform and strictly positive") {
    const DistributionField f = preset_wu(g, p.alpha, EquilibriumSpec{0.0, 1.0});
    CHECK(masked_nodes_zero(f, g));
    CHECK(min_unmasked(f, g) >= 1e-250);
    CHECK(max_unmasked(f, g) <= cap);
    for (int ix = 1; ix < g.nx; ++ix)
      for (int id : g.ball_ids) CHECK(f.slice(ix)[id] == f.slice(0)[id]);
  }

  SUBCASE("overdriven bimodal bumps clip exactly at the initial cap") {
    BimodalSpec s;
    s.height_frac = 1.5;
    const DistributionField f = preset_bimodal(g, p.alpha, s);
    CHECK(max_unmasked(f, g) == cap);
    CHECK(min_unmasked(f, g) >= 1e-250);
    // Seeded variant moves the bumps but keeps the bounds.
    const DistributionField fj = preset_bimodal(g, p.alpha, s, 1234u);
    CHECK(max_unmasked(fj, g) <= cap);
    CHECK(min_unmasked(fj, g) >= 1e-250);
    CHECK(l1_distance(f, fj, g) > 0.0);
    // Same seed, same bytes.
    const DistributionField fj2 = preset_bimodal(g, p.alpha, s, 1234u);
    CHECK(l1_distance(fj, fj2, g) == 0.0);
  }

  SUBCASE("wave preset modulates the equilibrium in x") {
    WaveSpec s;
    s.amplitude = 0.3;
    const DistributionField f = preset_wave(g, p.alpha, s);
    CHECK(masked_nodes_zero(f, g));
    CHECK(min_unmasked(f, g) >= 1e-250);
    CHECK(max_unmasked(f, g) <= cap);
    const Moments m0 = slice_moments(f.slice(0), g);
    const Moments m2 = slice_moments(f.slice(2), g);
    CHECK(m0.mass != m2.mass);  // crest vs trough
  }

  SUBCASE("mollification preserves bounds, mask, and approximate mass") {
    BimodalSpec s;
    s.height_frac = 1.2;
    DistributionField f = preset_bimodal(g, p.alpha, s);
    const double mass0 = compute_moments(f, g).mass;
    mollify(f, g, p.alpha);
    CHECK(masked_nodes_zero(f, g));
    CHECK(min_unmasked(f, g) >= 1e-250);
    CHECK(max_unmasked(f, g) <= cap);
    // The kernel is zero-extended past the ball edge, so a little mass can
    // leak; it must stay small and the field must actually change.
    const double mass1 = compute_moments(f, g).mass;
    CHECK(mass1 == doctest::Approx(mass0).epsilon(0.1));
    CHECK(mass1 != mass0);
  }
}
