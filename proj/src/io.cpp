#include "bsar/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace bsar {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary scene/sinogram I/O assumes a little-endian host");
static_assert(sizeof(double) == 8);

constexpr char kSceneMagic[8] = {'B', 'S', 'A', 'R', 'S', 'C', 'N', '\0'};
constexpr char kSinoMagic[8] = {'B', 'S', 'A', 'R', 'S', 'I', 'N', '\0'};
constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ofstream& out, const void* p, std::size_t n,
                 const std::string& path) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void read_bytes(std::ifstream& in, void* p, std::size_t n, const std::string& path) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (in.gcount() != static_cast<std::streamsize>(n))
    throw std::runtime_error("truncated file: " + path);
}

void write_header(std::ofstream& out, const char (&magic)[8],
                  const std::string& path) {
  write_bytes(out, magic, 8, path);
  const std::uint32_t version = kVersion;
  const std::uint32_t reserved = 0;
  write_bytes(out, &version, 4, path);
  write_bytes(out, &reserved, 4, path);
}

void read_header(std::ifstream& in, const char (&magic)[8], const std::string& path) {
  char got[8];
  read_bytes(in, got, 8, path);
  if (std::memcmp(got, magic, 8) != 0)
    throw std::runtime_error("bad magic (not a recognized file): " + path);
  std::uint32_t version = 0;
  std::uint32_t reserved = 0;
  read_bytes(in, &version, 4, path);
  read_bytes(in, &reserved, 4, path);
  if (version != kVersion)
    throw std::runtime_error("unsupported format version in " + path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

void write_values(std::ofstream& out, const std::vector<double>& v,
                  const std::string& path) {
  write_bytes(out, v.data(), v.size() * sizeof(double), path);
}

std::vector<double> read_values(std::ifstream& in, std::size_t n,
                                const std::string& path) {
  std::vector<double> v(n);
  read_bytes(in, v.data(), n * sizeof(double), path);
  char extra;
  if (in.read(&extra, 1); in.gcount() != 0)
    throw std::runtime_error("trailing bytes after payload: " + path);
  return v;
}

std::int64_t checked_dim(std::int64_t n, const std::string& path) {
  if (n < 1 || n > (std::int64_t{1} << 31))
    throw std::runtime_error("implausible dimension in " + path);
  return n;
}

}  // namespace

void write_scene(const Scene& scene, const std::string& path) {
  scene.validate();
  auto out = open_out(path);
  write_header(out, kSceneMagic, path);
  const double meta[4] = {scene.grid.origin_x1, scene.grid.origin_x2, scene.grid.dx1,
                          scene.grid.dx2};
  write_bytes(out, meta, sizeof(meta), path);
  const std::int64_t dims[2] = {scene.grid.n1, scene.grid.n2};
  write_bytes(out, dims, sizeof(dims), path);
  write_values(out, scene.values, path);
}

Scene read_scene(const std::string& path) {
  auto in = open_in(path);
  read_header(in, kSceneMagic, path);
  double meta[4];
  read_bytes(in, meta, sizeof(meta), path);
  std::int64_t dims[2];
  read_bytes(in, dims, sizeof(dims), path);

  Scene scene;
  scene.grid.origin_x1 = meta[0];
  scene.grid.origin_x2 = meta[1];
  scene.grid.dx1 = meta[2];
  scene.grid.dx2 = meta[3];
  scene.grid.n1 = static_cast<int>(checked_dim(dims[0], path));
  scene.grid.n2 = static_cast<int>(checked_dim(dims[1], path));
  scene.values = read_values(
      in, static_cast<std::size_t>(scene.grid.n1) * scene.grid.n2, path);
  try {
    scene.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid scene in ") + path + ": " +
                             e.what());
  }
  return scene;
}

void write_sinogram(const Sinogram& sinogram, const std::string& path) {
  sinogram.validate();
  auto out = open_out(path);
  write_header(out, kSinoMagic, path);
  const double meta[4] = {sinogram.grid.s_start, sinogram.grid.s_step,
                          sinogram.grid.t_start, sinogram.grid.t_step};
  write_bytes(out, meta, sizeof(meta), path);
  const std::int64_t dims[2] = {sinogram.grid.ns, sinogram.grid.nt};
  write_bytes(out, dims, sizeof(dims), path);
  write_values(out, sinogram.values, path);
}

Sinogram read_sinogram(const std::string& path) {
  auto in = open_in(path);
  read_header(in, kSinoMagic, path);
  double meta[4];
  read_bytes(in, meta, sizeof(meta), path);
  std::int64_t dims[2];
  read_bytes(in, dims, sizeof(dims), path);

  Sinogram sino;
  sino.grid.s_start = meta[0];
  sino.grid.s_step = meta[1];
  sino.grid.t_start = meta[2];
  sino.grid.t_step = meta[3];
  sino.grid.ns = static_cast<int>(checked_dim(dims[0], path));
  sino.grid.nt = static_cast<int>(checked_dim(dims[1], path));
  sino.values =
      read_values(in, static_cast<std::size_t>(sino.grid.ns) * sino.grid.nt, path);
  try {
    sino.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid sinogram in ") + path + ": " +
                             e.what());
  }
  return sino;
}

namespace {

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::array<double, 3>>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << header << '\n';
  char line[128];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", r[0], r[1], r[2]);
    out << line;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_scene_csv(const Scene& scene, const std::string& path) {
  scene.validate();
  std::vector<std::array<double, 3>> rows;
  rows.reserve(scene.values.size());
  for (int i = 0; i < scene.grid.n1; ++i)
    for (int j = 0; j < scene.grid.n2; ++j)
      rows.push_back({scene.grid.center_x1(i), scene.grid.center_x2(j), scene.at(i, j)});
  write_csv(path, "x1,x2,value", rows);
}

void write_sinogram_csv(const Sinogram& sinogram, const std::string& path) {
  sinogram.validate();
  std::vector<std::array<double, 3>> rows;
  rows.reserve(sinogram.values.size());
  for (int i = 0; i < sinogram.grid.ns; ++i)
    for (int j = 0; j < sinogram.grid.nt; ++j)
      rows.push_back({sinogram.grid.s_at(i), sinogram.grid.t_at(j), sinogram.at(i, j)});
  write_csv(path, "s,t,value", rows);
}

void write_pgm16(const Scene& scene, const std::string& path) {
  scene.validate();
  const double vmax = *std::max_element(scene.values.begin(), scene.values.end());
  auto out = open_out(path);
  out << "P5\n"
      << scene.grid.n1 << ' ' << scene.grid.n2 << "\n65535\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(scene.grid.n1) * 2);
  for (int k = 0; k < scene.grid.n2; ++k) {
    const int j = scene.grid.n2 - 1 - k;
    for (int i = 0; i < scene.grid.n1; ++i) {
      double v = scene.at(i, j);
      std::uint16_t q = 0;
      if (vmax > 0.0 && v > 0.0)
        q = static_cast<std::uint16_t>(
            std::lround(65535.0 * std::min(v, vmax) / vmax));
      row[static_cast<std::size_t>(i) * 2] = static_cast<unsigned char>(q >> 8);
      row[static_cast<std::size_t>(i) * 2 + 1] = static_cast<unsigned char>(q & 0xff);
    }
    write_bytes(out, row.data(), row.size(), path);
  }
}

}  // namespace bsar
