#include "bsar/cli.hpp"

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bsar/config.hpp"
#include "bsar/io.hpp"
#include "bsar/operators.hpp"
#include "bsar/report.hpp"
#include "bsar/verify.hpp"

namespace bsar {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

RunConfig load_config(const std::string& config_path,
                      const std::vector<std::string>& overrides) {
  RunConfig cfg =
      config_path.empty() ? RunConfig::defaults() : RunConfig::from_file(config_path);
  for (const std::string& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    cfg.apply(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  cfg.validate();
  return cfg;
}

GroundPoint parse_target(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--target expects x1,x2, got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string first = trim(text.substr(0, comma));
    const std::string second = trim(text.substr(comma + 1));
    GroundPoint p;
    p.x1 = std::stod(first, &used);
    if (used != first.size()) throw std::invalid_argument(text);
    p.x2 = std::stod(second, &used);
    if (used != second.size()) throw std::invalid_argument(text);
    return p;
  } catch (const std::exception&) {
    throw std::invalid_argument("--target expects x1,x2, got '" + text + "'");
  }
}

void emit_report(const VerificationReport& rep, const std::string& out_path) {
  if (out_path.empty())
    std::cout << rep.text();
  else
    rep.write(out_path);
}

int run_simulate(const RunConfig& cfg, const std::string& scene_path,
                 const std::string& out_path) {
  const Scene scene = read_scene(scene_path);
  const Sinogram data = forward(cfg.geometry, scene, cfg.pulse, cfg.sinogram_grid());
  write_sinogram(data, out_path);
  return 0;
}

int run_reconstruct(const RunConfig& cfg, const std::string& data_path,
                    const std::string& out_path) {
  const Sinogram data = read_sinogram(data_path);
  const Scene image = adjoint(cfg.geometry, data, cfg.pulse, cfg.scene_grid);
  write_scene(image, out_path);
  write_pgm16(image, out_path + ".pgm");
  return 0;
}

int run_demo(const RunConfig& cfg, const std::string& target_text,
             const std::string& out_dir) {
  const GroundPoint target = parse_target(target_text);
  const std::string dir = out_dir.empty() ? cfg.outdir : out_dir;
  std::filesystem::create_directories(dir);

  ArtifactDemo demo;
  try {
    demo = artifact_demo(cfg.geometry, target, cfg.pulse, cfg.scene_grid,
                         cfg.sinogram_grid());
  } catch (const std::runtime_error& e) {
    std::cerr << "demo-artifact check failed: " << e.what() << '\n';
    return 1;
  }

  write_scene(demo.image, dir + "/image.bin");
  write_pgm16(demo.image, dir + "/image.pgm");

  VerificationReport rep;
  rep.put("suite", std::string("demo-artifact"));
  rep.put("config_hash", cfg.hash());
  rep.put("target_x1", target.x1);
  rep.put("target_x2", target.x2);
  rep.put("true_peak_x1", demo.true_peak.x1);
  rep.put("true_peak_x2", demo.true_peak.x2);
  rep.put("mirror_peak_x1", demo.mirror_peak.x1);
  rep.put("mirror_peak_x2", demo.mirror_peak.x2);
  rep.put("true_value", demo.true_value);
  rep.put("mirror_value", demo.mirror_value);
  rep.put("peak_ratio", demo.peak_ratio);
  rep.put_check("peaks_located", true);
  rep.write(dir + "/report.txt");
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"bistatic SAR simulation and verification toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string scene_path;
  std::string data_path;
  std::string out_path;
  std::string target_text = "0.5,1.0";
  int samples = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "configuration file with key = value lines");
    sub->add_option("--set", overrides,
                    "override one configuration key (key=value); repeatable");
  };
  auto add_suite_options = [&](CLI::App* sub, int default_samples) {
    sub->add_option("--samples", samples, "sample count")
        ->default_val(default_samples)
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
      seed_given = true;
    });
    sub->add_option("--out", out_path, "report file (default: stdout)");
  };

  CLI::App* simulate =
      app.add_subcommand("simulate", "apply the forward model to a scene file");
  add_common(simulate);
  simulate->add_option("--scene", scene_path, "input scene (binary)")->required();
  simulate->add_option("--out", out_path, "output sinogram (binary)")->required();

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "backproject a sinogram file");
  add_common(reconstruct);
  reconstruct->add_option("--data", data_path, "input sinogram (binary)")->required();
  reconstruct->add_option("--out", out_path, "output image (binary; .pgm is added)")
      ->required();

  CLI::App* demo = app.add_subcommand(
      "demo-artifact", "image a point scatterer and report the mirror ghost");
  add_common(demo);
  demo->add_option("--target", target_text, "scatterer position as x1,x2");
  demo->add_option("--out", out_path, "output directory (default: config outdir)");

  CLI::App* verify =
      app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  CLI::App* verify_microlocal = verify->add_subcommand(
      "microlocal", "determinants, fold/blowdown verdicts, positivity");
  add_common(verify_microlocal);
  add_suite_options(verify_microlocal, 1000);
  CLI::App* verify_identities = verify->add_subcommand(
      "identities", "the six phase-ideal decomposition identities");
  add_common(verify_identities);
  add_suite_options(verify_identities, 10000);

  CLI::App* selftest = app.add_subcommand(
      "selftest", "adjoint dot-product test and phase-gradient oracle");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const RunConfig cfg = load_config(config_path, overrides);

    if (*simulate) return run_simulate(cfg, scene_path, out_path);
    if (*reconstruct) return run_reconstruct(cfg, data_path, out_path);
    if (*demo) return run_demo(cfg, target_text, out_path);

    if (*verify_microlocal) {
      MicrolocalSuiteParams params;
      params.chart_samples = samples;
      params.verdict_samples = samples;
      params.positivity_samples = 100 * samples;
      params.seed = seed_given ? seed : cfg.seed;
      const auto res = run_microlocal_suite(cfg, params);
      emit_report(res.report, out_path);
      return res.passed ? 0 : 1;
    }
    if (*verify_identities) {
      IdentitySuiteParams params;
      params.samples = samples;
      params.seed = seed_given ? seed : cfg.seed;
      const auto res = run_identity_suite(cfg, params);
      emit_report(res.report, out_path);
      return res.passed ? 0 : 1;
    }

    SelftestParams params;
    params.seed = cfg.seed;
    const auto res = run_selftest(cfg, params);
    emit_report(res.report, "");
    return res.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("bsar");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace bsar
