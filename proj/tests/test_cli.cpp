#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsar/cli.hpp"
#include "bsar/config.hpp"
#include "bsar/io.hpp"
#include "bsar/report.hpp"
#include "bsar/rng.hpp"
#include "doctest.h"

using namespace bsar;

namespace {

std::filesystem::path work_file(const std::string& name) {
  const auto dir = std::filesystem::path("cli_test_artifacts");
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("configuration defaults validate and hash deterministically") {
  const RunConfig cfg = RunConfig::defaults();
  CHECK_NOTHROW(cfg.validate());
  const std::string h = cfg.hash();
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(h == RunConfig::defaults().hash());

  RunConfig other = RunConfig::defaults();
  other.apply("alpha", "2.5");
  CHECK(other.geometry.alpha == 2.5);
  CHECK(other.hash() != h);

  // Canonical text renders every key (sorted), so two distinct configs
  // cannot collide by omission.
  const std::string text = cfg.canonical_text();
  for (const char* key :
       {"alpha=", "h=", "c0=", "s_min=", "t_max=", "scene_n1=", "sino_nt=",
        "pulse_kind=", "seed=", "tol_adjoint="})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("configuration overrides parse and reject garbage") {
  RunConfig cfg = RunConfig::defaults();
  cfg.apply("sino_ns", "32");
  CHECK(cfg.sino_ns == 32);
  cfg.apply("pulse_kind", "raised_cosine_band");
  cfg.apply("pulse_bandwidth", "4");
  CHECK(cfg.pulse.kind == PulseKind::raised_cosine_band);
  cfg.apply("seed", "12345");
  CHECK(cfg.seed == 12345);
  cfg.apply("outdir", "elsewhere");
  CHECK(cfg.outdir == "elsewhere");

  CHECK_THROWS_AS(cfg.apply("no_such_key", "1"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("alpha", "fast"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("alpha", "1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("scene_n1", "2.5"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("seed", "-4"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply("pulse_kind", "square"), std::invalid_argument);

  cfg = RunConfig::defaults();
  cfg.geometry.alpha = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig::defaults();
  cfg.tol_phase = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("configuration files support comments and report the failing line") {
  const auto good = work_file("good.cfg");
  {
    std::ofstream out(good);
    out << "# stock geometry, taller platform\n"
        << "h = 2.0\n"
        << "\n"
        << "sino_ns = 16   # fewer slow-time samples\n";
  }
  const RunConfig cfg = RunConfig::from_file(good.string());
  CHECK(cfg.geometry.h == 2.0);
  CHECK(cfg.sino_ns == 16);
  CHECK(cfg.geometry.alpha == 1.0);  // untouched default

  const auto bad = work_file("bad.cfg");
  {
    std::ofstream out(bad);
    out << "h = 2.0\nthis line has no equals\n";
  }
  try {
    (void)RunConfig::from_file(bad.string());
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS((void)RunConfig::from_file(work_file("missing.cfg").string()),
                  std::invalid_argument);
}

TEST_CASE("verification reports render ordered key = value lines") {
  VerificationReport rep;
  rep.put("suite", std::string("demo"));
  rep.put("metric", 0.1);
  rep.put("flag", true);
  rep.put_check("first", true);
  CHECK(rep.passed());
  rep.put_check("second", false);
  CHECK_FALSE(rep.passed());
  const std::string text = rep.text();
  CHECK(text == "suite = demo\n"
                "metric = 0.10000000000000001\n"
                "flag = true\n"
                "first = pass\n"
                "second = fail\n"
                "passed = false\n");

  const auto path = work_file("report_direct.txt");
  rep.write(path.string());
  CHECK(slurp(path) == text);
}

TEST_CASE("command line rejects bad invocations with exit code 2") {
  CHECK(run(std::vector<std::string>{}) == 2);
  CHECK(run({"no-such-command"}) == 2);
  CHECK(run({"simulate"}) == 2);  // missing required --scene/--out
  CHECK(run({"verify"}) == 2);    // missing suite name
  CHECK(run({"verify", "identities", "--samples", "0"}) == 2);
  CHECK(run({"verify", "identities", "--samples", "-5"}) == 2);
  CHECK(run({"selftest", "--set", "alpha"}) == 2);          // not key=value
  CHECK(run({"selftest", "--set", "no_such_key=1"}) == 2);  // unknown key
  CHECK(run({"selftest", "--set", "alpha=-1"}) == 2);       // fails validation
  CHECK(run({"selftest", "--config", "cli_test_artifacts/missing.cfg"}) == 2);
  CHECK(run({"demo-artifact", "--target", "abc"}) == 2);
  CHECK(run({"demo-artifact", "--target", "1.0"}) == 2);
  CHECK(run({"demo-artifact", "--target", "0.5,oops"}) == 2);
}

TEST_CASE("help requests succeed") {
  CHECK(run({"--help"}) == 0);
  CHECK(run({"verify", "--help"}) == 0);
}

TEST_CASE("set overrides win over the configuration file") {
  const auto path = work_file("broken_alpha.cfg");
  {
    std::ofstream out(path);
    out << "alpha = -1.0\n";  // invalid on its own
  }
  CHECK(run({"verify", "identities", "--config", path.string(), "--samples", "50",
             "--out", work_file("override.txt").string()}) == 2);
  CHECK(run({"verify", "identities", "--config", path.string(), "--set", "alpha=1.0",
             "--samples", "50", "--out", work_file("override.txt").string()}) == 0);
}

TEST_CASE("verification subcommands pass and write reports") {
  const auto id_path = work_file("identities.txt");
  CHECK(run({"verify", "identities", "--samples", "300", "--seed", "7", "--out",
             id_path.string()}) == 0);
  const std::string id_text = slurp(id_path);
  CHECK(id_text.find("suite = identities") != std::string::npos);
  CHECK(id_text.find("config_hash = ") != std::string::npos);
  CHECK(id_text.find("passed = true") != std::string::npos);

  const auto mic_path = work_file("microlocal.txt");
  CHECK(run({"verify", "microlocal", "--samples", "100", "--seed", "11", "--out",
             mic_path.string()}) == 0);
  const std::string mic_text = slurp(mic_path);
  CHECK(mic_text.find("suite = microlocal") != std::string::npos);
  CHECK(mic_text.find("passed = true") != std::string::npos);

  // Identical invocations produce identical report bytes.
  const auto again = work_file("identities_again.txt");
  CHECK(run({"verify", "identities", "--samples", "300", "--seed", "7", "--out",
             again.string()}) == 0);
  CHECK(slurp(again) == id_text);
}

TEST_CASE("selftest passes on a reduced problem") {
  CHECK(run({"selftest", "--set", "scene_n1=16", "--set", "scene_n2=16", "--set",
             "sino_ns=16"}) == 0);
}

TEST_CASE("simulate and reconstruct round through files") {
  // A small scene over the stock geometry.
  SceneGrid grid;
  grid.origin_x1 = -1.5;
  grid.origin_x2 = -1.5;
  grid.dx1 = 3.0 / 8.0;
  grid.dx2 = 3.0 / 8.0;
  grid.n1 = 8;
  grid.n2 = 8;
  Scene scene = Scene::zeros(grid);
  Rng rng(33);
  for (double& v : scene.values) v = rng.uniform(-1.0, 1.0);
  const auto scene_path = work_file("input_scene.bin");
  write_scene(scene, scene_path.string());

  const auto sino_path = work_file("sim_out.bin");
  CHECK(run({"simulate", "--set", "sino_ns=16", "--scene", scene_path.string(),
             "--out", sino_path.string()}) == 0);

  RunConfig cfg = RunConfig::defaults();
  cfg.apply("sino_ns", "16");
  const Sinogram expected = forward(cfg.geometry, scene, cfg.pulse, cfg.sinogram_grid());
  const Sinogram got = read_sinogram(sino_path.string());
  REQUIRE(got.values.size() == expected.values.size());
  for (std::size_t n = 0; n < got.values.size(); ++n)
    CHECK(got.values[n] == expected.values[n]);

  const auto img_path = work_file("rec_out.bin");
  CHECK(run({"reconstruct", "--set", "sino_ns=16", "--set", "scene_n1=16", "--set",
             "scene_n2=16", "--data", sino_path.string(), "--out",
             img_path.string()}) == 0);
  CHECK(std::filesystem::exists(img_path));
  CHECK(std::filesystem::exists(img_path.string() + ".pgm"));

  cfg.apply("scene_n1", "16");
  cfg.apply("scene_n2", "16");
  const Scene expected_img = adjoint(cfg.geometry, got, cfg.pulse, cfg.scene_grid);
  const Scene got_img = read_scene(img_path.string());
  REQUIRE(got_img.values.size() == expected_img.values.size());
  for (std::size_t n = 0; n < got_img.values.size(); ++n)
    CHECK(got_img.values[n] == expected_img.values[n]);

  // Simulating from a missing scene file is a usage error.
  CHECK(run({"simulate", "--scene", work_file("nope.bin").string(), "--out",
             sino_path.string()}) == 2);
}

TEST_CASE("artifact demo subcommand writes image and report") {
  const auto dir = work_file("demo_out");
  CHECK(run({"demo-artifact", "--target", "0.5,1.0", "--out", dir.string()}) == 0);
  CHECK(std::filesystem::exists(dir / "image.bin"));
  CHECK(std::filesystem::exists(dir / "image.pgm"));
  const std::string rep = slurp(dir / "report.txt");
  CHECK(rep.find("suite = demo-artifact") != std::string::npos);
  CHECK(rep.find("passed = true") != std::string::npos);
  const auto pos = rep.find("peak_ratio = ");
  REQUIRE(pos != std::string::npos);
  const double ratio = std::stod(rep.substr(pos + 13));
  CHECK(std::abs(ratio - 1.0) <= 1e-12);

  // A target on the track is rejected up front.
  CHECK(run({"demo-artifact", "--target", "0.5,0.0", "--out", dir.string()}) == 2);
}
