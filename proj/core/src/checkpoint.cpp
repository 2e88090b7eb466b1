#include "anyon/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "anyon/config.hpp"

namespace anyon {

namespace {

constexpr char kMagic[8] = {'A', 'N', 'Y', 'K', 'C', 'K', 'P', '1'};
constexpr std::uint32_t kVersion = 1;

void put_bytes(std::ostream& out, const void* p, size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void get_bytes(std::istream& in, void* p, size_t n, const char* what) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in.gcount()) != n)
    throw std::runtime_error(std::string("checkpoint: truncated while reading ") + what);
}

template <typename T>
void put(std::ostream& out, T v) {
  put_bytes(out, &v, sizeof v);
}

template <typename T>
T get(std::istream& in, const char* what) {
  T v;
  get_bytes(in, &v, sizeof v, what);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& c) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open '" + path + "' for writing");

  const bool window = !c.recorder.running_max_sharp.empty();
  put_bytes(out, kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(c.config_echo.size()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(c.step));
  put<double>(out, c.time);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(c.field.nx));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(c.field.nv));
  put<std::uint8_t>(out, window ? 1 : 0);
  put<double>(out, c.recorder.bony_integral);
  put<double>(out, c.recorder.prev_bony);
  put<double>(out, c.recorder.station_mom_integral);
  put<double>(out, c.recorder.prev_station_mom);
  put<double>(out, c.recorder.station_en_integral);
  put<double>(out, c.recorder.prev_station_en);
  put<double>(out, c.recorder.prev_entropy);
  put_bytes(out, c.config_echo.data(), c.config_echo.size());
  put_bytes(out, c.field.a.data(), c.field.a.size() * sizeof(double));
  put_bytes(out, c.recorder.running_max_v.data(),
            c.recorder.running_max_v.size() * sizeof(double));
  if (window)
    put_bytes(out, c.recorder.running_max_sharp.data(),
              c.recorder.running_max_sharp.size() * sizeof(double));
  out.flush();
  if (!out) throw std::runtime_error("checkpoint: write to '" + path + "' failed");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open '" + path + "'");

  char magic[8];
  get_bytes(in, magic, sizeof magic, "magic");
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("checkpoint: bad magic in '" + path + "'");
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));

  const auto config_len = get<std::uint32_t>(in, "config length");
  if (config_len > (1u << 20))
    throw std::runtime_error("checkpoint: implausible config length");

  Checkpoint c;
  c.step = static_cast<long long>(get<std::uint64_t>(in, "step"));
  c.time = get<double>(in, "time");
  const auto nx = get<std::uint32_t>(in, "nx");
  const auto nv = get<std::uint32_t>(in, "nv");
  if (nx == 0 || nv == 0 || nx > (1u << 20) || nv > (1u << 20))
    throw std::runtime_error("checkpoint: implausible grid dimensions");
  const auto window = get<std::uint8_t>(in, "window flag");
  c.recorder.bony_integral = get<double>(in, "bony integral");
  c.recorder.prev_bony = get<double>(in, "bony value");
  c.recorder.station_mom_integral = get<double>(in, "station momentum integral");
  c.recorder.prev_station_mom = get<double>(in, "station momentum value");
  c.recorder.station_en_integral = get<double>(in, "station energy integral");
  c.recorder.prev_station_en = get<double>(in, "station energy value");
  c.recorder.prev_entropy = get<double>(in, "entropy value");

  c.config_echo.resize(config_len);
  if (config_len) get_bytes(in, c.config_echo.data(), config_len, "config echo");

  const size_t field_n = static_cast<size_t>(nx) * nv * nv;
  c.field.nx = static_cast<int>(nx);
  c.field.nv = static_cast<int>(nv);
  c.field.a.resize(field_n);
  get_bytes(in, c.field.a.data(), field_n * sizeof(double), "field payload");

  c.recorder.running_max_v.resize(static_cast<size_t>(nv) * nv);
  get_bytes(in, c.recorder.running_max_v.data(),
            c.recorder.running_max_v.size() * sizeof(double), "running max payload");

  if (window) {
    c.recorder.running_max_sharp.resize(field_n);
    get_bytes(in, c.recorder.running_max_sharp.data(), field_n * sizeof(double),
              "window probe payload");
  }

  char extra;
  in.read(&extra, 1);
  if (in.gcount() != 0)
    throw std::runtime_error("checkpoint: trailing bytes in '" + path + "'");

  const ParseResult parsed = parse_config(c.config_echo);
  if (!parsed.ok())
    throw std::runtime_error("checkpoint: embedded configuration does not parse: " +
                             parsed.errors.front());
  if (parsed.config.sim.nx != c.field.nx || parsed.config.sim.nv != c.field.nv)
    throw std::runtime_error(
        "checkpoint: payload dimensions disagree with the embedded configuration");
  return c;
}

}  // namespace anyon
