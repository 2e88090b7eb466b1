#include "anyon/config.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "anyon/csv.hpp"

namespace anyon {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& v, double* out) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) return false;
    *out = d;
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& v, int* out) {
  try {
    size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size() || d < INT_MIN || d > INT_MAX) return false;
    *out = static_cast<int>(d);
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_u64(const std::string& v, std::uint64_t* out) {
  try {
    size_t pos = 0;
    const unsigned long long d = std::stoull(v, &pos);
    if (pos != v.size()) return false;
    *out = d;
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_bool(const std::string& v, bool* out) {
  if (v == "true") { *out = true; return true; }
  if (v == "false") { *out = false; return true; }
  return false;
}

bool parse_list(const std::string& v, std::vector<double>* out) {
  out->clear();
  std::string item;
  // comma- or whitespace-separated
  std::string norm = v;
  for (char& c : norm)
    if (c == ',') c = ' ';
  std::istringstream tokens(norm);
  while (tokens >> item) {
    double d;
    if (!parse_double(item, &d)) return false;
    out->push_back(d);
  }
  return !out->empty();
}

const std::set<std::string> kKnownKeys = {
    "alpha", "b0", "gamma", "gamma_prime", "c_b", "j", "nx", "nv", "ntheta",
    "dt", "t_end", "picard_iters", "picard_tol", "projection",
    "preset", "mu", "temperature",
    "bimodal_center", "bimodal_width", "bimodal_height_frac",
    "wave_amplitude", "seed", "mollify",
    "output_dir", "checkpoint_every",
    "record_bony", "record_tails", "record_flux",
    "lambdas", "band_width", "window_delta"};

}  // namespace

ParseResult parse_config(const std::string& text) {
  ParseResult res;
  RunConfig& c = res.config;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      res.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      res.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    if (!kKnownKeys.count(key)) {
      res.errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      continue;
    }
    if (!seen.insert(key).second) {
      res.errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      continue;
    }

    auto bad = [&](const char* kind) {
      res.errors.push_back("line " + std::to_string(lineno) + ": key '" + key +
                           "' expects " + kind + ", got '" + val + "'");
    };

    if (key == "alpha") { if (!parse_double(val, &c.sim.alpha)) bad("a real number"); }
    else if (key == "b0") { if (!parse_double(val, &c.sim.b0)) bad("a real number"); }
    else if (key == "gamma") { if (!parse_double(val, &c.sim.gamma)) bad("a real number"); }
    else if (key == "gamma_prime") { if (!parse_double(val, &c.sim.gamma_prime)) bad("a real number"); }
    else if (key == "c_b") { if (!parse_double(val, &c.sim.c_b)) bad("a real number"); }
    else if (key == "j") { if (!parse_double(val, &c.sim.j)) bad("a real number"); }
    else if (key == "nx") { if (!parse_int(val, &c.sim.nx)) bad("an integer"); }
    else if (key == "nv") { if (!parse_int(val, &c.sim.nv)) bad("an integer"); }
    else if (key == "ntheta") { if (!parse_int(val, &c.sim.ntheta)) bad("an integer"); }
    else if (key == "dt") { if (!parse_double(val, &c.sim.dt)) bad("a real number"); }
    else if (key == "t_end") { if (!parse_double(val, &c.sim.t_end)) bad("a real number"); }
    else if (key == "picard_iters") { if (!parse_int(val, &c.sim.picard_iters)) bad("an integer"); }
    else if (key == "picard_tol") { if (!parse_double(val, &c.sim.picard_tol)) bad("a real number"); }
    else if (key == "projection") { if (!parse_bool(val, &c.sim.projection)) bad("true or false"); }
    else if (key == "preset") {
      if (val == "wu" || val == "bimodal" || val == "wave") c.preset = val;
      else res.errors.push_back("line " + std::to_string(lineno) +
                                ": preset must be wu, bimodal or wave, got '" + val + "'");
    }
    else if (key == "mu") { if (!parse_double(val, &c.eq.mu)) bad("a real number"); }
    else if (key == "temperature") { if (!parse_double(val, &c.eq.temperature)) bad("a real number"); }
    else if (key == "bimodal_center") { if (!parse_double(val, &c.bimodal.center)) bad("a real number"); }
    else if (key == "bimodal_width") { if (!parse_double(val, &c.bimodal.width)) bad("a real number"); }
    else if (key == "bimodal_height_frac") { if (!parse_double(val, &c.bimodal.height_frac)) bad("a real number"); }
    else if (key == "wave_amplitude") { if (!parse_double(val, &c.wave_amplitude)) bad("a real number"); }
    else if (key == "seed") { if (!parse_u64(val, &c.seed)) bad("an unsigned integer"); }
    else if (key == "mollify") { if (!parse_bool(val, &c.mollify)) bad("true or false"); }
    else if (key == "output_dir") { c.output_dir = val; }
    else if (key == "checkpoint_every") { if (!parse_int(val, &c.checkpoint_every)) bad("an integer"); }
    else if (key == "record_bony") { if (!parse_bool(val, &c.record_bony)) bad("true or false"); }
    else if (key == "record_tails") { if (!parse_bool(val, &c.record_tails)) bad("true or false"); }
    else if (key == "record_flux") { if (!parse_bool(val, &c.record_flux)) bad("true or false"); }
    else if (key == "lambdas") { if (!parse_list(val, &c.lambdas)) bad("a list of real numbers"); }
    else if (key == "band_width") { if (!parse_double(val, &c.band_width)) bad("a real number"); }
    else if (key == "window_delta") { if (!parse_double(val, &c.window_delta)) bad("a real number"); }
  }

  if (!seen.count("alpha")) res.errors.push_back("missing required key 'alpha'");
  if (!seen.count("preset")) res.errors.push_back("missing required key 'preset'");

  if (!seen.count("dt") && c.sim.nx > 0 && c.sim.j > 0.0) {
    c.sim.dt = 1.0 / (c.sim.nx * c.sim.j);  // one x-cell per step for the fastest node
    c.dt_auto = true;
  }

  for (const std::string& msg : c.sim.validate()) res.errors.push_back(msg);

  if (c.eq.temperature <= 0.0)
    res.errors.push_back("temperature must be positive");
  if (c.preset == "wave" && !(std::fabs(c.wave_amplitude) < 1.0))
    res.errors.push_back("wave_amplitude must satisfy |a| < 1 to keep the data positive");
  if (c.bimodal.width <= 0.0)
    res.errors.push_back("bimodal_width must be positive");
  if (c.bimodal.height_frac < 0.0)
    res.errors.push_back("bimodal_height_frac must be non-negative");
  if (c.checkpoint_every < 0)
    res.errors.push_back("checkpoint_every must be non-negative");
  if (c.band_width < 0.0)
    res.errors.push_back("band_width must be non-negative");
  if (c.window_delta < 0.0)
    res.errors.push_back("window_delta must be non-negative");
  for (double lam : c.lambdas)
    if (lam <= 0.0) {
      res.errors.push_back("lambdas must all be positive");
      break;
    }
  return res;
}

ParseResult parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult res;
    res.errors.push_back("cannot open configuration file '" + path + "'");
    return res;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream out;
  auto num = [](double v) { return CsvWriter::num(v); };
  auto flag = [](bool b) { return b ? "true" : "false"; };

  out << "alpha = " << num(c.sim.alpha) << "\n";
  out << "b0 = " << num(c.sim.b0) << "\n";
  out << "gamma = " << num(c.sim.gamma) << "\n";
  out << "gamma_prime = " << num(c.sim.gamma_prime) << "\n";
  out << "c_b = " << num(c.sim.c_b) << "\n";
  out << "j = " << num(c.sim.j) << "\n";
  out << "nx = " << c.sim.nx << "\n";
  out << "nv = " << c.sim.nv << "\n";
  out << "ntheta = " << c.sim.ntheta << "\n";
  if (c.dt_auto) out << "# dt was resolved automatically\n";
  out << "dt = " << num(c.sim.dt) << "\n";
  out << "t_end = " << num(c.sim.t_end) << "\n";
  out << "picard_iters = " << c.sim.picard_iters << "\n";
  out << "picard_tol = " << num(c.sim.picard_tol) << "\n";
  out << "projection = " << flag(c.sim.projection) << "\n";
  out << "preset = " << c.preset << "\n";
  out << "mu = " << num(c.eq.mu) << "\n";
  out << "temperature = " << num(c.eq.temperature) << "\n";
  out << "bimodal_center = " << num(c.bimodal.center) << "\n";
  out << "bimodal_width = " << num(c.bimodal.width) << "\n";
  out << "bimodal_height_frac = " << num(c.bimodal.height_frac) << "\n";
  out << "wave_amplitude = " << num(c.wave_amplitude) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "mollify = " << flag(c.mollify) << "\n";
  out << "output_dir = " << c.output_dir << "\n";
  out << "checkpoint_every = " << c.checkpoint_every << "\n";
  out << "record_bony = " << flag(c.record_bony) << "\n";
  out << "record_tails = " << flag(c.record_tails) << "\n";
  out << "record_flux = " << flag(c.record_flux) << "\n";
  if (!c.lambdas.empty()) {
    out << "lambdas =";
    for (double lam : c.lambdas) out << " " << num(lam);
    out << "\n";
  }
  out << "band_width = " << num(c.band_width) << "\n";
  out << "window_delta = " << num(c.window_delta) << "\n";
  return out.str();
}

DistributionField build_initial_data(const RunConfig& c, const PhaseGrid& g) {
  DistributionField f;
  if (c.preset == "wu") {
    f = preset_wu(g, c.sim.alpha, c.eq);
  } else if (c.preset == "bimodal") {
    f = preset_bimodal(g, c.sim.alpha, c.bimodal, c.seed);
  } else if (c.preset == "wave") {
    f = preset_wave(g, c.sim.alpha, WaveSpec{c.eq, c.wave_amplitude});
  } else {
    throw std::invalid_argument("build_initial_data: unknown preset '" + c.preset + "'");
  }
  if (c.mollify) mollify(f, g, c.sim.alpha);
  return f;
}

}  // namespace anyon
