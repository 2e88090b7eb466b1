#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "anyon/checkpoint.hpp"
#include "anyon/csv.hpp"
#include "anyon/haldane.hpp"
#include "anyon/presets.hpp"
#include "anyon/scenario.hpp"
#include "anyon/solver.hpp"

namespace {

int usage() {
  std::cout <<
      "usage:\n"
      "  anyonkin run <config-file> [output-dir]\n"
      "  anyonkin resume <checkpoint-file> [output-dir]\n"
      "  anyonkin equilibrium <alpha> <mu> <temperature>\n"
      "  anyonkin check\n"
      "\n"
      "The ANYONKIN_OUTPUT_DIR environment variable overrides the configured\n"
      "output directory; an explicit [output-dir] argument overrides both.\n";
  return 2;
}

int cmd_run(int argc, char** argv) {
  if (argc < 1) return usage();
  const anyon::ParseResult parsed = anyon::parse_config_file(argv[0]);
  if (!parsed.ok()) {
    for (const std::string& msg : parsed.errors) std::cerr << "config error: " << msg << "\n";
    return 1;
  }
  const std::string override_dir = argc > 1 ? argv[1] : "";
  return anyon::run_scenario(parsed.config, std::cout, override_dir);
}

int cmd_resume(int argc, char** argv) {
  if (argc < 1) return usage();
  const std::string override_dir = argc > 1 ? argv[1] : "";
  return anyon::resume_scenario(argv[0], std::cout, override_dir);
}

int cmd_equilibrium(int argc, char** argv) {
  if (argc < 3) return usage();
  double alpha, mu, temperature;
  try {
    alpha = std::stod(argv[0]);
    mu = std::stod(argv[1]);
    temperature = std::stod(argv[2]);
  } catch (...) {
    std::cerr << "equilibrium: arguments must be numbers\n";
    return 1;
  }
  try {
    std::cout << "eps,zeta,w,occupancy,filling_factor\n";
    for (int n = 0; n <= 32; ++n) {
      const double eps = 0.25 * n;
      const double zeta = std::exp((eps - mu) / temperature);
      const double w = anyon::solve_w(zeta, alpha);
      const double f = anyon::equilibrium_occupancy(eps, mu, temperature, alpha);
      std::cout << anyon::CsvWriter::num(eps) << "," << anyon::CsvWriter::num(zeta)
                << "," << anyon::CsvWriter::num(w) << "," << anyon::CsvWriter::num(f)
                << "," << anyon::CsvWriter::num(anyon::filling_factor(f, alpha)) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "equilibrium: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// Fast self-contained invariant battery; exits nonzero if anything is off.
int cmd_check() {
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::cout << "check: " << name << (ok ? " ok" : " FAIL") << "\n";
    if (!ok) ++failures;
  };

  try {
    anyon::SimulationParams p;
    p.nx = 4;
    p.nv = 16;
    p.ntheta = 8;
    p.alpha = 0.5;
    const anyon::PhaseGrid g = anyon::make_grid(p);
    const anyon::CollisionKernel k = anyon::make_kernel(p, g);
    const anyon::PairTable t = anyon::build_pair_table(g, k);

    bool sym = true;
    for (int i = 0; i < g.nv; ++i)
      if (g.v_coords[i] != -g.v_coords[g.nv - 1 - i]) sym = false;
    report("velocity grid v -> -v symmetry", sym);

    bool cons = true;
    for (int n = 0; n < 100; ++n) {
      const double vx = std::sin(1.0 + n), vy = std::cos(2.0 + n);
      const double sx = std::sin(3.0 * n + 0.5), sy = std::cos(0.7 * n);
      const double th = 0.1 + 0.06 * n;
      const auto vp = anyon::post_collision(vx, vy, sx, sy, th);
      const double dp = std::fabs(vp.vx + vp.wx - vx - sx) + std::fabs(vp.vy + vp.wy - vy - sy);
      const double de = std::fabs(vp.vx * vp.vx + vp.vy * vp.vy + vp.wx * vp.wx +
                                   vp.wy * vp.wy - vx * vx - vy * vy - sx * sx - sy * sy);
      if (dp > 1e-12 || de > 1e-12) cons = false;
    }
    report("pair collision conserves momentum and energy", cons);

    bool range = true;
    const double cap = 1.0 / p.alpha;
    for (int n = 0; n < 200; ++n) {
      const double f = cap * (0.5 + 0.499 * std::sin(0.37 * n));
      const double Gt = std::fabs(std::sin(0.11 * n));
      const double L = std::fabs(std::cos(0.23 * n));
      for (double dt : {1e-6, 1.0, 1e6}) {
        const double out = anyon::exp_relax(f, Gt, L, p.alpha, dt);
        if (!(out >= 0.0 && out <= cap)) range = false;
      }
    }
    report("exponential relaxation keeps the occupancy range", range);

    anyon::DistributionField f = anyon::preset_bimodal(g, p.alpha, anyon::BimodalSpec{});
    const anyon::Moments m0 = anyon::compute_moments(f, g);
    const anyon::DistributionField shifted =
        anyon::transport_shift(f, g, g.dx / g.v_coords[g.nv - 1]);
    const anyon::Moments m1 = anyon::compute_moments(shifted, g);
    report("transport conserves the velocity moments",
           std::fabs(m1.mass - m0.mass) < 1e-12 && std::fabs(m1.energy - m0.energy) < 1e-12);

    bool wres = true;
    for (double a : {0.25, 0.5, 1.0})
      for (double zeta : {1e-4, 1.0, 1e4}) {
        const double w = anyon::solve_w(zeta, a);
        const double back = std::pow(w, a) * std::pow(1.0 + w, 1.0 - a);
        if (std::fabs(back - zeta) > 1e-12 * std::max(1.0, zeta)) wres = false;
      }
    report("statistics equation solver residuals", wres);

    report("filling factor endpoints",
           anyon::filling_factor(0.0, 0.5) == 1.0 &&
               anyon::filling_factor(2.0, 0.5) == 0.0 &&
               anyon::filling_factor_reg(2.0, 0.5, 4.0) == 0.0);

    report("state counting reduces to binomials at alpha = 1",
           std::fabs(anyon::state_count(5, 2, 1.0) - 10.0) < 1e-9 &&
               std::fabs(anyon::state_count(6, 3, 1.0) - 20.0) < 1e-9);

    anyon::DistributionField pert = f;
    for (int id : g.ball_ids) pert.slice(0)[id] *= 1.0 + 1e-3;
    const double l1 = anyon::conservative_projection(pert, f, g, p.alpha);
    const anyon::Moments mp = anyon::compute_moments(pert, g);
    report("conservative projection restores slice moments",
           l1 > 0.0 && std::fabs(mp.mass - m0.mass) < 1e-12 &&
               std::fabs(mp.energy - m0.energy) < 1e-12);

    anyon::SimulationParams ps = p;
    ps.t_end = 2 * ps.dt;
    anyon::DistributionField evolved = f;
    anyon::run(ps, g, k, t, evolved, anyon::StepHook{});
    report("two solver steps keep the hard invariants",
           anyon::min_unmasked(evolved, g) >= 0.0 &&
               anyon::max_unmasked(evolved, g) <= cap &&
               anyon::masked_nodes_zero(evolved, g));

    const std::string tmp = "check_roundtrip.ckpt";
    anyon::RecorderState rs;
    rs.running_max_v.assign(static_cast<size_t>(g.nv) * g.nv, 0.25);
    rs.prev_entropy = -1.5;
    anyon::Checkpoint ck{"alpha = 0.5\npreset = bimodal\nnx = 4\nnv = 16\nntheta = 8\n",
                         7, 0.875, evolved, rs};
    anyon::save_checkpoint(tmp, ck);
    const anyon::Checkpoint back = anyon::load_checkpoint(tmp);
    std::remove(tmp.c_str());
    report("checkpoint round-trip is bit-exact",
           back.step == ck.step && back.time == ck.time && back.field.a == ck.field.a &&
               back.recorder.running_max_v == rs.running_max_v &&
               back.recorder.prev_entropy == rs.prev_entropy);
  } catch (const std::exception& e) {
    std::cout << "check: aborted: " << e.what() << "\n";
    return 1;
  }

  std::cout << (failures == 0 ? "check: all passed\n" : "check: FAILURES\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  const std::string cmd = argv[1];
  if (cmd == "run") return cmd_run(argc - 2, argv + 2);
  if (cmd == "resume") return cmd_resume(argc - 2, argv + 2);
  if (cmd == "equilibrium") return cmd_equilibrium(argc - 2, argv + 2);
  if (cmd == "check") return cmd_check();
  return usage();
}
