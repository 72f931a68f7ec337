#include "bsar/config.hpp"

#include <cctype>
#include <cerrno>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

namespace bsar {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
    throw std::invalid_argument("config: key '" + key + "' needs a number, got '" +
                                value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE ||
      v < INT_MIN || v > INT_MAX)
    throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" +
                                value + "'");
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE ||
      value.find('-') != std::string::npos)
    throw std::invalid_argument("config: key '" + key +
                                "' needs a non-negative integer, got '" + value + "'");
  return static_cast<std::uint64_t>(v);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.geometry.alpha = 1.0;
  c.geometry.h = 1.0;
  c.geometry.c0 = 1.0;
  c.geometry.s0 = -2.0;
  c.geometry.s1 = 2.0;
  c.geometry.t0 = 2.0;
  c.geometry.t1 = 9.0;
  c.geometry.mute_halfwidth = 0.1;
  c.geometry.taper_fraction = 0.1;
  c.scene_grid.origin_x1 = -1.5;
  c.scene_grid.origin_x2 = -1.5;
  c.scene_grid.dx1 = 3.0 / 64.0;
  c.scene_grid.dx2 = 3.0 / 64.0;
  c.scene_grid.n1 = 64;
  c.scene_grid.n2 = 64;
  c.sino_ns = 64;
  c.sino_nt = 128;
  c.pulse.kind = PulseKind::ricker;
  c.pulse.center_freq = 8.0;
  c.pulse.bandwidth = 0.0;
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  RunConfig c = defaults();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    try {
      c.apply(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return c;
}

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "alpha") geometry.alpha = parse_double(key, value);
  else if (key == "h") geometry.h = parse_double(key, value);
  else if (key == "c0") geometry.c0 = parse_double(key, value);
  else if (key == "s_min") geometry.s0 = parse_double(key, value);
  else if (key == "s_max") geometry.s1 = parse_double(key, value);
  else if (key == "t_min") geometry.t0 = parse_double(key, value);
  else if (key == "t_max") geometry.t1 = parse_double(key, value);
  else if (key == "mute_halfwidth") geometry.mute_halfwidth = parse_double(key, value);
  else if (key == "taper_fraction") geometry.taper_fraction = parse_double(key, value);
  else if (key == "scene_origin_x1") scene_grid.origin_x1 = parse_double(key, value);
  else if (key == "scene_origin_x2") scene_grid.origin_x2 = parse_double(key, value);
  else if (key == "scene_dx1") scene_grid.dx1 = parse_double(key, value);
  else if (key == "scene_dx2") scene_grid.dx2 = parse_double(key, value);
  else if (key == "scene_n1") scene_grid.n1 = parse_int(key, value);
  else if (key == "scene_n2") scene_grid.n2 = parse_int(key, value);
  else if (key == "sino_ns") sino_ns = parse_int(key, value);
  else if (key == "sino_nt") sino_nt = parse_int(key, value);
  else if (key == "pulse_kind") {
    if (value == "ricker") pulse.kind = PulseKind::ricker;
    else if (value == "raised_cosine_band") pulse.kind = PulseKind::raised_cosine_band;
    else
      throw std::invalid_argument(
          "config: pulse_kind must be 'ricker' or 'raised_cosine_band', got '" +
          value + "'");
  } else if (key == "pulse_center_freq") pulse.center_freq = parse_double(key, value);
  else if (key == "pulse_bandwidth") pulse.bandwidth = parse_double(key, value);
  else if (key == "seed") seed = parse_u64(key, value);
  else if (key == "outdir") outdir = value;
  else if (key == "tol_identity") tol_identity = parse_double(key, value);
  else if (key == "tol_identity3") tol_identity3 = parse_double(key, value);
  else if (key == "tol_det_fd") tol_det_fd = parse_double(key, value);
  else if (key == "tol_det_pair") tol_det_pair = parse_double(key, value);
  else if (key == "tol_kernel") tol_kernel = parse_double(key, value);
  else if (key == "tol_phase") tol_phase = parse_double(key, value);
  else if (key == "tol_adjoint") tol_adjoint = parse_double(key, value);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void RunConfig::validate() const {
  geometry.validate();
  scene_grid.validate();
  if (sino_ns < 2 || sino_nt < 2)
    throw std::invalid_argument("config: sino_ns and sino_nt must be >= 2");
  pulse.validate();
  for (double tol : {tol_identity, tol_identity3, tol_det_fd, tol_det_pair,
                     tol_kernel, tol_phase, tol_adjoint})
    if (!(tol > 0.0)) throw std::invalid_argument("config: tolerances must be > 0");
  if (outdir.empty()) throw std::invalid_argument("config: outdir must be nonempty");
}

SinogramGrid RunConfig::sinogram_grid() const {
  return SinogramGrid::over_windows(geometry, sino_ns, sino_nt);
}

std::string RunConfig::canonical_text() const {
  std::map<std::string, std::string> kv;
  kv["alpha"] = fmt(geometry.alpha);
  kv["h"] = fmt(geometry.h);
  kv["c0"] = fmt(geometry.c0);
  kv["s_min"] = fmt(geometry.s0);
  kv["s_max"] = fmt(geometry.s1);
  kv["t_min"] = fmt(geometry.t0);
  kv["t_max"] = fmt(geometry.t1);
  kv["mute_halfwidth"] = fmt(geometry.mute_halfwidth);
  kv["taper_fraction"] = fmt(geometry.taper_fraction);
  kv["scene_origin_x1"] = fmt(scene_grid.origin_x1);
  kv["scene_origin_x2"] = fmt(scene_grid.origin_x2);
  kv["scene_dx1"] = fmt(scene_grid.dx1);
  kv["scene_dx2"] = fmt(scene_grid.dx2);
  kv["scene_n1"] = std::to_string(scene_grid.n1);
  kv["scene_n2"] = std::to_string(scene_grid.n2);
  kv["sino_ns"] = std::to_string(sino_ns);
  kv["sino_nt"] = std::to_string(sino_nt);
  kv["pulse_kind"] =
      pulse.kind == PulseKind::ricker ? "ricker" : "raised_cosine_band";
  kv["pulse_center_freq"] = fmt(pulse.center_freq);
  kv["pulse_bandwidth"] = fmt(pulse.bandwidth);
  kv["seed"] = std::to_string(seed);
  kv["outdir"] = outdir;
  kv["tol_identity"] = fmt(tol_identity);
  kv["tol_identity3"] = fmt(tol_identity3);
  kv["tol_det_fd"] = fmt(tol_det_fd);
  kv["tol_det_pair"] = fmt(tol_det_pair);
  kv["tol_kernel"] = fmt(tol_kernel);
  kv["tol_phase"] = fmt(tol_phase);
  kv["tol_adjoint"] = fmt(tol_adjoint);

  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t acc = 14695981039346656037ull;
  for (unsigned char ch : canonical_text()) {
    acc ^= ch;
    acc *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(acc));
  return buf;
}

}  // namespace bsar
