// polyqp: batch driver for quasi-periodic polyharmonic spectral experiments.
//
// Subcommands: validate | converge | cheese | isocurve | fraction | wave |
// diophantine. Thread count comes from POLYQP_THREADS (else the OpenMP
// default); outputs are independent of it.

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "polyqp/experiment.hpp"
#include "polyqp/svg.hpp"

namespace fs = std::filesystem;
using namespace polyqp;

namespace {

enum ExitCode {
  kOk = 0,
  kParseError = 2,
  kSemanticError = 3,
  kRuntimeError = 4,
  kResonantInput = 5,
};

struct Emitter {
  fs::path dir;
  RunManifest manifest;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  explicit Emitter(const ExperimentConfig& cfg, const std::string& out_override) {
    dir = out_override.empty() ? fs::path(cfg.out_dir) : fs::path(out_override);
    fs::create_directories(dir);
    manifest.config_hash = config_hash(cfg);
    manifest.version = kArtifactVersion;
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    manifest.outputs.push_back(name);
  }

  void finish() {
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    write_manifest(manifest, (dir / "manifest.json").string());
  }
};

Vec2 parse_k(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--k expects \"kx,ky\"");
  return Vec2(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

std::string csv_of(const std::function<void(std::ostream&)>& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

int cmd_validate(const std::string& config_path) {
  // load_config already rejects semantic violations; re-run validate to list
  // everything at once when the potential block alone is the problem.
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open " << config_path << '\n';
    return kParseError;
  }
  nlohmann::json j = nlohmann::json::parse(in);
  ExperimentConfig cfg = parse_config(j);
  const auto violations = validate(cfg.potential);
  for (const auto& v : violations) std::cout << v.message << '\n';
  if (!violations.empty()) return kSemanticError;
  std::cout << "ok (config hash " << config_hash(cfg) << ")\n";
  return kOk;
}

int cmd_diophantine(const ExperimentConfig& cfg, const std::string& out,
                    int max_box) {
  Emitter em(cfg, out);
  const auto rows = diophantine_report(cfg.potential.freq, max_box);
  em.write("diophantine.csv",
           csv_of([&](std::ostream& os) { write_diophantine_csv(rows, os); }));
  em.finish();
  return kOk;
}

int cmd_converge(const ExperimentConfig& cfg, const std::string& out,
                 const Vec2& k, int level) {
  Emitter em(cfg, out);
  const auto result =
      run_multiscale(cfg.potential, k, level, cfg.schedule, cfg.floors);
  if (std::holds_alternative<ResonantAtLevel>(result)) {
    const auto& r = std::get<ResonantAtLevel>(result).witness;
    std::cerr << "resonant at level " << r.level << ": best overlap "
              << r.overlap << ", nearest gap " << r.gap << '\n';
    em.finish();
    return kResonantInput;
  }
  const auto& rep = std::get<ConvergenceReport>(result);
  em.write("convergence.csv",
           csv_of([&](std::ostream& os) { write_convergence_csv(rep, os); }));
  em.finish();
  return kOk;
}

int cmd_cheese(const ExperimentConfig& cfg, const std::string& out,
               double lambda, int level) {
  Emitter em(cfg, out);
  const auto sets = carve_levels(cfg, lambda, level);
  for (const auto& set : sets) {
    const std::string tag = std::to_string(set.level());
    em.write("cheese_arcs_" + tag + ".csv",
             csv_of([&](std::ostream& os) { set.write_csv(os); }));
    const auto holes = AngleSet::from_arcs(set.level(), lambda, set.holes());
    em.write("cheese_holes_" + tag + ".csv",
             csv_of([&](std::ostream& os) { holes.write_csv(os); }));
    em.write("cheese_" + tag + ".svg", svg_angle_set(set));
    const auto st = hole_statistics(set);
    std::cout << "level " << set.level() << ": " << st.count
              << " holes, total measure removed " << st.total_removed << '\n';
  }
  em.finish();
  return kOk;
}

int cmd_isocurve(const ExperimentConfig& cfg, const std::string& out,
                 double lambda, int level) {
  Emitter em(cfg, out);
  AngleSet b = AngleSet::full_circle(level, lambda);
  const IsoCurve curve = isocurve_at(cfg, lambda, level,
                                     ExecutionPolicy::Parallel, &b);
  em.write("isocurve.csv",
           csv_of([&](std::ostream& os) { write_isocurve_csv(curve, os); }));
  em.write("isocurve_angles.csv",
           csv_of([&](std::ostream& os) { b.write_csv(os); }));
  em.write("isocurve.svg", svg_isocurve(curve));
  std::cout << curve.samples.size() << " samples, " << curve.failures.size()
            << " failed directions\n";
  em.finish();
  return kOk;
}

int cmd_fraction(const ExperimentConfig& cfg, const std::string& out,
                 const std::vector<double>& radii, int level,
                 std::size_t samples) {
  if (!cfg.has_seed) {
    std::cerr << "fraction: config must set a seed for Monte Carlo runs\n";
    return kSemanticError;
  }
  Emitter em(cfg, out);
  std::vector<std::pair<double, FractionEstimate>> rows;
  for (double R : radii)
    rows.emplace_back(R, nonresonant_fraction(cfg.potential, R, level, samples,
                                              cfg.seed, cfg.schedule,
                                              cfg.thresholds));
  em.write("fraction.csv",
           csv_of([&](std::ostream& os) { write_fraction_csv(rows, os); }));
  em.finish();
  return kOk;
}

int cmd_wave(const ExperimentConfig& cfg, const std::string& out,
             const Vec2& k, int level) {
  Emitter em(cfg, out);
  const auto chain =
      multiscale_pairs(cfg.potential, k, level, cfg.schedule, cfg.floors);
  if (std::holds_alternative<ResonantAtLevel>(chain)) {
    const auto& r = std::get<ResonantAtLevel>(chain).witness;
    std::cerr << "resonant at level " << r.level << '\n';
    em.finish();
    return kResonantInput;
  }
  const SpectralPair& pair =
      std::get<std::vector<SpectralPair>>(chain).back();
  const auto field =
      grid_render(pair, k, cfg.potential.freq, cfg.grids.spatial);
  em.write("wave.csv", csv_of([&](std::ostream& os) {
             write_field_csv(field, cfg.grids.spatial, os);
           }));
  em.write("wave_mag.svg", svg_field_magnitude(field, cfg.grids.spatial));
  em.finish();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("POLYQP_THREADS"))
    omp_set_num_threads(std::max(1, std::atoi(threads)));

  CLI::App app{"momentum-space multiscale toolkit for quasi-periodic "
               "polyharmonic operators"};
  app.require_subcommand(1);

  std::string config_path, out_dir, k_str = "1.37,0.22", radii_str = "4,8,16";
  double lambda = 81.0;
  int level = 1, max_box = 8;
  std::size_t samples = 2000;

  auto add_common = [&](CLI::App* sub, bool needs_config = true) {
    sub->add_option("--config", config_path, "experiment config (JSON)")
        ->required(needs_config);
    sub->add_option("--out", out_dir, "output directory (default from config)");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a config file");
  add_common(validate_cmd);

  auto* converge_cmd =
      app.add_subcommand("converge", "multiscale convergence report at k");
  add_common(converge_cmd);
  converge_cmd->add_option("--k", k_str, "momentum kx,ky")->required();
  converge_cmd->add_option("--level", level, "number of levels")->default_val(3);

  auto* cheese_cmd =
      app.add_subcommand("cheese", "carve non-resonant angle sets");
  add_common(cheese_cmd);
  cheese_cmd->add_option("--lambda", lambda, "energy level")->required();
  cheese_cmd->add_option("--level", level, "deepest level")->default_val(2);

  auto* iso_cmd = app.add_subcommand("isocurve", "trace D_n(lambda)");
  add_common(iso_cmd);
  iso_cmd->add_option("--lambda", lambda, "energy level")->required();
  iso_cmd->add_option("--level", level, "level n")->default_val(1);

  auto* frac_cmd =
      app.add_subcommand("fraction", "Monte Carlo non-resonant fraction");
  add_common(frac_cmd);
  frac_cmd->add_option("--R", radii_str, "comma-separated disk radii");
  frac_cmd->add_option("--level", level, "level n")->default_val(1);
  frac_cmd->add_option("--samples", samples, "Monte Carlo samples")
      ->default_val(2000);

  auto* wave_cmd = app.add_subcommand("wave", "render an eigenfunction");
  add_common(wave_cmd);
  wave_cmd->add_option("--k", k_str, "momentum kx,ky")->required();
  wave_cmd->add_option("--level", level, "level n")->default_val(1);

  auto* dio_cmd =
      app.add_subcommand("diophantine", "small-denominator diagnostics");
  add_common(dio_cmd);
  dio_cmd->add_option("--max-box", max_box, "largest index box")->default_val(8);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(config_path);

    const ExperimentConfig cfg = load_config(config_path);
    if (converge_cmd->parsed())
      return cmd_converge(cfg, out_dir, parse_k(k_str), level);
    if (cheese_cmd->parsed()) return cmd_cheese(cfg, out_dir, lambda, level);
    if (iso_cmd->parsed()) return cmd_isocurve(cfg, out_dir, lambda, level);
    if (frac_cmd->parsed()) {
      std::vector<double> radii;
      std::stringstream ss(radii_str);
      std::string tok;
      while (std::getline(ss, tok, ',')) radii.push_back(std::stod(tok));
      return cmd_fraction(cfg, out_dir, radii, level, samples);
    }
    if (wave_cmd->parsed()) return cmd_wave(cfg, out_dir, parse_k(k_str), level);
    if (dio_cmd->parsed()) return cmd_diophantine(cfg, out_dir, max_box);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kSemanticError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kSemanticError;
  } catch (const CapExceeded& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}
