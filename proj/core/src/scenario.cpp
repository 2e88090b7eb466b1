#include "anyon/scenario.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "anyon/checkpoint.hpp"
#include "anyon/csv.hpp"
#include "anyon/diagnostics.hpp"

namespace anyon {

namespace {

std::string resolve_output_dir(const std::string& configured, const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  const char* env = std::getenv("ANYONKIN_OUTPUT_DIR");
  if (env && *env) return env;
  return configured;
}

std::vector<std::string> csv_header(const std::vector<double>& lambdas) {
  std::vector<std::string> h = {
      "step", "time", "mass", "mom1", "mom2", "energy",
      "entropy", "entropy_production", "max_f", "min_f",
      "picard_residual", "defect_mass", "defect_mom1", "defect_mom2",
      "defect_energy", "projection_l1", "bony", "bony_integral", "sup_density"};
  for (size_t n = 0; n < lambdas.size(); ++n)
    h.push_back("tail_plain_" + std::to_string(n));
  for (size_t n = 0; n < lambdas.size(); ++n)
    h.push_back("tail_weighted_" + std::to_string(n));
  h.push_back("station_mom_integral");
  h.push_back("station_en_integral");
  return h;
}

std::vector<std::string> csv_row(const StepRecord& r, size_t nlam) {
  auto num = [](double v) { return CsvWriter::num(v); };
  std::vector<std::string> f = {
      CsvWriter::num(r.step), num(r.time),
      num(r.moments.mass), num(r.moments.mom1), num(r.moments.mom2), num(r.moments.energy),
      num(r.entropy), num(r.entropy_production), num(r.max_f), num(r.min_f),
      num(r.picard_residual), num(r.defect[0]), num(r.defect[1]), num(r.defect[2]),
      num(r.defect[3]), num(r.projection_l1), num(r.bony), num(r.bony_integral),
      num(r.sup_density)};
  for (size_t n = 0; n < nlam; ++n)
    f.push_back(num(n < r.tail_plain.size() ? r.tail_plain[n] : 0.0));
  for (size_t n = 0; n < nlam; ++n)
    f.push_back(num(n < r.tail_weighted.size() ? r.tail_weighted[n] : 0.0));
  f.push_back(num(r.station_mom_integral));
  f.push_back(num(r.station_en_integral));
  return f;
}

void write_summary(const std::string& path, const DiagnosticsSummary& s,
                   const std::vector<double>& lambdas, const RunStats& stats,
                   double cap) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write summary file '" + path + "'");
  auto num = [](double v) { return CsvWriter::num(v); };
  auto yn = [](bool b) { return b ? "yes" : "no"; };

  out << "steps completed: " << stats.steps << "\n";
  out << "final time: " << num(stats.final_time) << "\n";
  out << "conservation drift (relative): mass=" << num(s.conservation_drift[0])
      << " mom1=" << num(s.conservation_drift[1])
      << " mom2=" << num(s.conservation_drift[2])
      << " energy=" << num(s.conservation_drift[3]) << "\n";
  out << "max |collision defect|: mass=" << num(s.max_abs_defect[0])
      << " mom1=" << num(s.max_abs_defect[1])
      << " mom2=" << num(s.max_abs_defect[2])
      << " energy=" << num(s.max_abs_defect[3]) << "\n";
  out << "entropy monotone: " << yn(s.entropy_monotone)
      << " (max production " << num(s.max_entropy_production) << ")\n";
  out << "range ok: " << yn(s.range_ok) << " (min " << num(s.global_min_f)
      << ", max " << num(s.global_max_f) << ", cap " << num(cap) << ")\n";
  out << "mask ok: " << yn(s.mask_ok) << "\n";
  out << "l1 drift from initial: " << num(s.l1_drift_from_initial) << "\n";
  out << "bony fit: slope=" << num(s.bony_fit.slope)
      << " intercept=" << num(s.bony_fit.intercept)
      << " max_rel_residual=" << num(s.bony_fit.max_rel_residual) << "\n";
  out << "tail lambdas:";
  for (double lam : lambdas) out << " " << num(lam);
  out << "\n";
  out << "final tail plain:";
  for (double v : s.final_tail_plain) out << " " << num(v);
  out << "\n";
  out << "final tail weighted:";
  for (double v : s.final_tail_weighted) out << " " << num(v);
  out << "\n";
  out << "tail loglog slopes: plain=" << num(s.tail_plain_slope.slope)
      << (s.tail_plain_slope.hit_floor ? " (hit floor)" : "")
      << " weighted=" << num(s.tail_weighted_slope.slope)
      << (s.tail_weighted_slope.hit_floor ? " (hit floor)" : "") << "\n";
  out << "envelope: applicable=" << yn(s.envelope.applicable)
      << " b1_hat=" << num(s.envelope.b1_hat) << " t_m_hat="
      << (s.envelope.t_m_hat ? num(*s.envelope.t_m_hat) : std::string("none"))
      << " window_points=" << s.envelope.window_points << "\n";
  if (!s.window_profile.empty()) {
    out << "window profile:";
    for (double v : s.window_profile) out << " " << num(v);
    out << "\n";
  }
}

std::string checkpoint_name(long long step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "checkpoint_%08lld.ckpt", step);
  return buf;
}

int drive(const RunConfig& config, std::ostream& log, const std::string& out_dir,
          DistributionField f, int first_step, double start_time,
          const RecorderState* inherited) {
  const SimulationParams& p = config.sim;
  const PhaseGrid grid = make_grid(p);
  const CollisionKernel kernel = make_kernel(p, grid);
  const PairTable table = build_pair_table(grid, kernel);

  std::filesystem::create_directories(out_dir);

  RecorderOptions opt;
  opt.record_bony = config.record_bony;
  opt.record_tails = config.record_tails;
  opt.record_flux = config.record_flux;
  opt.lambdas = config.lambdas;
  opt.band_width = config.band_width;
  opt.window_delta = config.window_delta;
  Recorder rec(grid, kernel, table, p.alpha, opt);

  const std::string echo = echo_config(config);
  {
    std::ofstream cfg(out_dir + "/config_echo.cfg", std::ios::binary | std::ios::trunc);
    if (!cfg) throw std::runtime_error("cannot write '" + out_dir + "/config_echo.cfg'");
    cfg << echo;
  }

  std::ofstream csv_file(out_dir + "/diagnostics.csv", std::ios::binary | std::ios::trunc);
  if (!csv_file)
    throw std::runtime_error("cannot write '" + out_dir + "/diagnostics.csv'");
  CsvWriter csv(csv_file);
  csv.row(csv_header(rec.lambdas()));

  const StepRecord seed = inherited ? rec.resume(f, *inherited, first_step, start_time)
                                    : rec.start(f, first_step, start_time);
  csv.row(csv_row(seed, rec.lambdas().size()));

  log << "run: alpha=" << CsvWriter::num(p.alpha) << " preset=" << config.preset
      << " nx=" << p.nx << " nv=" << p.nv << " ntheta=" << p.ntheta
      << " dt=" << CsvWriter::num(p.dt) << " t_end=" << CsvWriter::num(p.t_end) << "\n";

  const StepHook hook = [&](const StepInfo& info) {
    const StepRecord row = rec.observe(info);
    csv.row(csv_row(row, rec.lambdas().size()));
    if (config.checkpoint_every > 0 && info.step % config.checkpoint_every == 0) {
      Checkpoint ck{echo, info.step, info.time, *info.post, rec.state()};
      save_checkpoint(out_dir + "/" + checkpoint_name(info.step), ck);
    }
  };

  const RunStats stats = run(p, grid, kernel, table, f, hook, first_step, start_time);
  csv_file.flush();
  if (!csv_file) throw std::runtime_error("write to diagnostics.csv failed");

  const DiagnosticsSummary summary = rec.finalize(f);
  write_summary(out_dir + "/summary.txt", summary, rec.lambdas(), stats, p.cap());

  Checkpoint final_ck{echo, first_step + stats.steps, stats.final_time, f, rec.state()};
  save_checkpoint(out_dir + "/checkpoint_final.ckpt", final_ck);

  log << "run: " << stats.steps << " steps to t=" << CsvWriter::num(stats.final_time)
      << ", " << rec.rows().size() << " diagnostic rows\n";
  log << "run: conservation drift mass=" << CsvWriter::num(summary.conservation_drift[0])
      << " energy=" << CsvWriter::num(summary.conservation_drift[3]) << "\n";
  log << "run: entropy monotone " << (summary.entropy_monotone ? "yes" : "no")
      << ", range " << (summary.range_ok ? "ok" : "VIOLATED")
      << ", mask " << (summary.mask_ok ? "ok" : "VIOLATED") << "\n";
  log << "run: output written to " << out_dir << "\n";

  return (summary.range_ok && summary.mask_ok) ? 0 : 1;
}

}  // namespace

int run_scenario(const RunConfig& config, std::ostream& log,
                 const std::string& output_override) {
  try {
    const std::string out_dir = resolve_output_dir(config.output_dir, output_override);
    const PhaseGrid grid = make_grid(config.sim);
    DistributionField f0 = build_initial_data(config, grid);
    return drive(config, log, out_dir, std::move(f0), 0, 0.0, nullptr);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

int resume_scenario(const std::string& checkpoint_path, std::ostream& log,
                    const std::string& output_override) {
  try {
    const Checkpoint ck = load_checkpoint(checkpoint_path);
    const ParseResult parsed = parse_config(ck.config_echo);
    if (!parsed.ok()) {
      for (const std::string& msg : parsed.errors) log << "error: " << msg << "\n";
      return 1;
    }
    const std::string out_dir =
        resolve_output_dir(parsed.config.output_dir + "_resumed", output_override);
    log << "resume: from step " << ck.step << " at t=" << CsvWriter::num(ck.time) << "\n";
    return drive(parsed.config, log, out_dir, ck.field,
                 static_cast<int>(ck.step), ck.time, &ck.recorder);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace anyon
