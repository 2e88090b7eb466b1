#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "anyon/checkpoint.hpp"
#include "anyon/config.hpp"
#include "anyon/csv.hpp"
#include "anyon/scenario.hpp"
#include "doctest.h"

using namespace anyon;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::string> csv_lines(const std::string& bytes) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < bytes.size()) {
    const size_t end = bytes.find("\r\n", pos);
    if (end == std::string::npos) break;
    lines.push_back(bytes.substr(pos, end - pos));
    pos = end + 2;
  }
  return lines;
}

const char* kScenarioDoc =
    "alpha = 0.5\n"
    "preset = bimodal\n"
    "nx = 4\n"
    "nv = 8\n"
    "ntheta = 8\n"
    "j = 4\n"
    "dt = 0.01\n"
    "t_end = 0.03\n"
    "picard_iters = 1\n"
    "seed = 7\n"
    "checkpoint_every = 2\n";

RunConfig scenario_config(const std::string& dir) {
  ParseResult r = parse_config(std::string(kScenarioDoc) + "output_dir = " + dir + "\n");
  REQUIRE(r.ok());
  return r.config;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("tmp_io") / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("config: a full document lands every value") {
  const std::string doc =
      "# exercise every key once\n"
      "alpha = 0.75\n"
      "b0 = 2.5\n"
      "gamma = 0.4\n"
      "gamma_prime = 0.05\n"
      "c_b = 0.5\n"
      "j = 8\n"
      "nx = 16   # trailing comment\n"
      "nv = 24\n"
      "ntheta = 12\n"
      "dt = 0.002\n"
      "t_end = 1.5\n"
      "picard_iters = 3\n"
      "picard_tol = 1e-9\n"
      "projection = false\n"
      "preset = wave\n"
      "mu = -0.25\n"
      "temperature = 1.25\n"
      "bimodal_center = 2.5\n"
      "bimodal_width = 0.5\n"
      "bimodal_height_frac = 0.8\n"
      "wave_amplitude = 0.15\n"
      "seed = 12345678901234567890\n"
      "mollify = true\n"
      "output_dir = runs/demo\n"
      "checkpoint_every = 50\n"
      "record_bony = false\n"
      "record_tails = true\n"
      "record_flux = false\n"
      "lambdas = 2, 4, 6\n"
      "band_width = 0.25\n"
      "window_delta = 0.1\n";
  const ParseResult r = parse_config(doc);
  REQUIRE(r.ok());
  const RunConfig& c = r.config;
  CHECK(c.sim.alpha == 0.75);
  CHECK(c.sim.b0 == 2.5);
  CHECK(c.sim.gamma == 0.4);
  CHECK(c.sim.gamma_prime == 0.05);
  CHECK(c.sim.c_b == 0.5);
  CHECK(c.sim.j == 8.0);
  CHECK(c.sim.nx == 16);
  CHECK(c.sim.nv == 24);
  CHECK(c.sim.ntheta == 12);
  CHECK(c.sim.dt == 0.002);
  CHECK(c.sim.t_end == 1.5);
  CHECK(c.sim.picard_iters == 3);
  CHECK(c.sim.picard_tol == 1e-9);
  CHECK(c.sim.projection == false);
  CHECK(c.preset == "wave");
  CHECK(c.eq.mu == -0.25);
  CHECK(c.eq.temperature == 1.25);
  CHECK(c.bimodal.center == 2.5);
  CHECK(c.bimodal.width == 0.5);
  CHECK(c.bimodal.height_frac == 0.8);
  CHECK(c.wave_amplitude == 0.15);
  CHECK(c.seed == 12345678901234567890ull);
  CHECK(c.mollify == true);
  CHECK(c.output_dir == "runs/demo");
  CHECK(c.checkpoint_every == 50);
  CHECK(c.record_bony == false);
  CHECK(c.record_tails == true);
  CHECK(c.record_flux == false);
  CHECK(c.lambdas == std::vector<double>{2.0, 4.0, 6.0});
  CHECK(c.band_width == 0.25);
  CHECK(c.window_delta == 0.1);
  CHECK(!c.dt_auto);
}

TEST_CASE("config: every violation is reported at once, with line numbers") {
  const std::string doc =
      "alpha = 0.5\n"          // 1: fine
      "nonsense line\n"        // 2: no '='
      "speed = 3\n"            // 3: unknown key
      "alpha = 0.6\n"          // 4: duplicate
      "nv = many\n"            // 5: bad integer
      "temperature = -2\n"     // 6: semantic violation
      "preset = gaussian\n";   // 7: not a preset
  const ParseResult r = parse_config(doc);
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors.size() == 6);
  auto has = [&](const std::string& frag) {
    for (const std::string& e : r.errors)
      if (e.find(frag) != std::string::npos) return true;
    return false;
  };
  CHECK(has("line 2"));
  CHECK(has("unknown key 'speed'"));
  CHECK(has("duplicate key 'alpha'"));
  CHECK(has("line 5"));
  CHECK(has("temperature must be positive"));
  CHECK(has("preset must be"));
}

TEST_CASE("config: required keys and the automatic time step") {
  ParseResult r = parse_config("nx = 2\n");
  REQUIRE_FALSE(r.ok());
  bool has_alpha = false, has_preset = false;
  for (const std::string& e : r.errors) {
    has_alpha |= e.find("'alpha'") != std::string::npos;
    has_preset |= e.find("'preset'") != std::string::npos;
  }
  CHECK(has_alpha);
  CHECK(has_preset);

  r = parse_config("alpha = 0.5\npreset = wu\nnx = 5\nj = 4\n");
  REQUIRE(r.ok());
  CHECK(r.config.dt_auto);
  CHECK(r.config.sim.dt == 1.0 / (5 * 4.0));
  const std::string echo = echo_config(r.config);
  CHECK(echo.find("# dt was resolved automatically") != std::string::npos);
}

TEST_CASE("config: the canonical echo re-parses to the same configuration") {
  ParseResult first = parse_config(
      "alpha = 0.3\npreset = bimodal\nnv = 20\nnx = 3\nseed = 99\n"
      "lambdas = 1.5, 2.5\ndt = 0.004\nbimodal_height_frac = 1.1\n");
  REQUIRE(first.ok());
  const ParseResult second = parse_config(echo_config(first.config));
  REQUIRE(second.ok());
  const RunConfig &a = first.config, &b = second.config;
  CHECK(a.sim.alpha == b.sim.alpha);
  CHECK(a.sim.b0 == b.sim.b0);
  CHECK(a.sim.gamma == b.sim.gamma);
  CHECK(a.sim.gamma_prime == b.sim.gamma_prime);
  CHECK(a.sim.c_b == b.sim.c_b);
  CHECK(a.sim.j == b.sim.j);
  CHECK(a.sim.nx == b.sim.nx);
  CHECK(a.sim.nv == b.sim.nv);
  CHECK(a.sim.ntheta == b.sim.ntheta);
  CHECK(a.sim.dt == b.sim.dt);
  CHECK(a.sim.t_end == b.sim.t_end);
  CHECK(a.sim.picard_iters == b.sim.picard_iters);
  CHECK(a.sim.picard_tol == b.sim.picard_tol);
  CHECK(a.sim.projection == b.sim.projection);
  CHECK(a.preset == b.preset);
  CHECK(a.eq.mu == b.eq.mu);
  CHECK(a.eq.temperature == b.eq.temperature);
  CHECK(a.bimodal.center == b.bimodal.center);
  CHECK(a.bimodal.width == b.bimodal.width);
  CHECK(a.bimodal.height_frac == b.bimodal.height_frac);
  CHECK(a.wave_amplitude == b.wave_amplitude);
  CHECK(a.seed == b.seed);
  CHECK(a.mollify == b.mollify);
  CHECK(a.output_dir == b.output_dir);
  CHECK(a.checkpoint_every == b.checkpoint_every);
  CHECK(a.record_bony == b.record_bony);
  CHECK(a.record_tails == b.record_tails);
  CHECK(a.record_flux == b.record_flux);
  CHECK(a.lambdas == b.lambdas);
  CHECK(a.band_width == b.band_width);
  CHECK(a.window_delta == b.window_delta);
  // The echo of the echo is byte-stable.
  CHECK(echo_config(a) == echo_config(b));
}

TEST_CASE("csv writer: RFC 4180 quoting and full-precision numbers") {
  std::ostringstream out;
  CsvWriter w(out);
  w.row({"plain", "with,comma", "with\"quote", "with\r\nnewline"});
  CHECK(out.str() ==
        "plain,\"with,comma\",\"with\"\"quote\",\"with\r\nnewline\"\r\n");

  CHECK(CsvWriter::num(0.1) == "0.10000000000000001");
  CHECK(CsvWriter::num(0.5) == "0.5");
  CHECK(CsvWriter::num(42) == "42");
  CHECK(CsvWriter::num(1234567890123456789ll) == "1234567890123456789");
  // Equal doubles give equal bytes, which the determinism tests lean on.
  CHECK(CsvWriter::num(1.0 / 3.0) == CsvWriter::num(1.0 / 3.0));
}

TEST_CASE("checkpoint: round-trip preserves every byte of state") {
  TempDir tmp("ckpt_roundtrip");
  ParseResult r = parse_config(std::string(kScenarioDoc) + "output_dir = x\n");
  REQUIRE(r.ok());
  const PhaseGrid g = make_grid(r.config.sim);

  Checkpoint c;
  c.config_echo = echo_config(r.config);
  c.step = 17;
  c.time = 0.17;
  c.field = build_initial_data(r.config, g);
  c.recorder.running_max_v.assign(static_cast<size_t>(g.nv) * g.nv, 0.0);
  for (int id : g.ball_ids) c.recorder.running_max_v[id] = 0.25 + 0.001 * id;
  c.recorder.bony_integral = 1.5;
  c.recorder.prev_bony = 2.5;
  c.recorder.station_mom_integral = -0.125;
  c.recorder.prev_station_mom = 0.0625;
  c.recorder.station_en_integral = 3.5;
  c.recorder.prev_station_en = 4.5;
  c.recorder.prev_entropy = -7.25;

  const std::string path = (tmp.path / "state.ckpt").string();
  save_checkpoint(path, c);
  const Checkpoint d = load_checkpoint(path);
  CHECK(d.config_echo == c.config_echo);
  CHECK(d.step == 17);
  CHECK(d.time == 0.17);
  CHECK(d.field.a == c.field.a);
  CHECK(d.recorder.running_max_v == c.recorder.running_max_v);
  CHECK(d.recorder.bony_integral == 1.5);
  CHECK(d.recorder.prev_bony == 2.5);
  CHECK(d.recorder.station_mom_integral == -0.125);
  CHECK(d.recorder.prev_station_mom == 0.0625);
  CHECK(d.recorder.station_en_integral == 3.5);
  CHECK(d.recorder.prev_station_en == 4.5);
  CHECK(d.recorder.prev_entropy == -7.25);
  CHECK(d.recorder.running_max_sharp.empty());
}

TEST_CASE("checkpoint: tampered files are rejected with a specific reason") {
  TempDir tmp("ckpt_tamper");
  ParseResult r = parse_config(std::string(kScenarioDoc) + "output_dir = x\n");
  REQUIRE(r.ok());
  const PhaseGrid g = make_grid(r.config.sim);
  Checkpoint c;
  c.config_echo = echo_config(r.config);
  c.step = 1;
  c.time = 0.01;
  c.field = build_initial_data(r.config, g);
  c.recorder.running_max_v.assign(static_cast<size_t>(g.nv) * g.nv, 0.0);
  const std::string path = (tmp.path / "base.ckpt").string();
  save_checkpoint(path, c);
  const std::string good = slurp(path);

  auto expect = [&](std::string bytes, const char* fragment) {
    const std::string p = (tmp.path / "bad.ckpt").string();
    spit(p, bytes);
    CHECK_THROWS_WITH_AS(load_checkpoint(p), doctest::Contains(fragment),
                         std::runtime_error);
  };

  std::string bad = good;
  bad[0] = 'B';
  expect(bad, "bad magic");

  bad = good;
  bad[8] = 9;  // version field
  expect(bad, "unsupported version");

  expect(good.substr(0, good.size() - 9), "truncated");
  expect(good + "xyz", "trailing bytes");

  // Flip the embedded "nx = 4" to "nx = 8": sizes stay coherent but the
  // payload no longer matches the configuration it claims.
  bad = good;
  const size_t at = bad.find("nx = 4");
  REQUIRE(at != std::string::npos);
  bad[at + 5] = '8';
  expect(bad, "disagree");

  // Break the embedded config outright.
  bad = good;
  const size_t ak = bad.find("alpha = ");
  REQUIRE(ak != std::string::npos);
  bad[ak] = 'q';
  expect(bad, "does not parse");
}

TEST_CASE("scenario: artifacts, byte-level determinism, and resume") {
  TempDir root("scenario");
  const std::string dir_a = (root.path / "a").string();
  const std::string dir_b = (root.path / "b").string();

  // One configuration, two physical destinations: the artifacts must not
  // depend on where they land.
  const RunConfig cfg = scenario_config((root.path / "configured").string());
  std::ostringstream log;
  REQUIRE(run_scenario(cfg, log, dir_a) == 0);
  REQUIRE(run_scenario(cfg, log, dir_b) == 0);

  for (const char* name :
       {"diagnostics.csv", "summary.txt", "config_echo.cfg", "checkpoint_final.ckpt",
        "checkpoint_00000002.ckpt"}) {
    CAPTURE(name);
    CHECK(fs::exists(fs::path(dir_a) / name));
  }

  // Identical configurations produce identical bytes, everywhere.
  CHECK(slurp(fs::path(dir_a) / "diagnostics.csv") ==
        slurp(fs::path(dir_b) / "diagnostics.csv"));
  CHECK(slurp(fs::path(dir_a) / "summary.txt") == slurp(fs::path(dir_b) / "summary.txt"));
  CHECK(slurp(fs::path(dir_a) / "checkpoint_final.ckpt") ==
        slurp(fs::path(dir_b) / "checkpoint_final.ckpt"));

  // Resuming from the mid-run checkpoint reproduces the remaining rows.
  const std::string resumed = (root.path / "a_resumed").string();
  REQUIRE(resume_scenario((fs::path(dir_a) / "checkpoint_00000002.ckpt").string(), log,
                          resumed) == 0);
  const auto full = csv_lines(slurp(fs::path(dir_a) / "diagnostics.csv"));
  const auto part = csv_lines(slurp(fs::path(resumed) / "diagnostics.csv"));
  REQUIRE(full.size() == 5);   // header, seed, steps 1..3
  REQUIRE(part.size() == 3);   // header, seed at step 2, step 3
  CHECK(part[0] == full[0]);
  CHECK(part.back() == full.back());
}

TEST_CASE("scenario: output directory overrides and failure reporting") {
  TempDir root("scenario_env");
  const std::string configured = (root.path / "configured").string();
  const std::string via_env = (root.path / "via_env").string();
  const std::string via_arg = (root.path / "via_arg").string();

  std::ostringstream log;
  REQUIRE(setenv("ANYONKIN_OUTPUT_DIR", via_env.c_str(), 1) == 0);
  CHECK(run_scenario(scenario_config(configured), log) == 0);
  // The explicit override outranks the environment.
  CHECK(run_scenario(scenario_config(configured), log, via_arg) == 0);
  REQUIRE(unsetenv("ANYONKIN_OUTPUT_DIR") == 0);

  CHECK(fs::exists(fs::path(via_env) / "diagnostics.csv"));
  CHECK(fs::exists(fs::path(via_arg) / "diagnostics.csv"));
  CHECK(!fs::exists(fs::path(configured) / "diagnostics.csv"));

  // An unusable output path is an error exit, not a crash.
  std::ostringstream errlog;
  CHECK(run_scenario(scenario_config("/proc/definitely/not/writable"), errlog) == 1);
  CHECK(errlog.str().find("error") != std::string::npos);
}
