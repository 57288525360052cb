#include "polyqp/config.hpp"

#include <nlohmann/json.hpp>

#include <cinttypes>
#include <fstream>

namespace polyqp {

namespace {

using nlohmann::json;

void require_keys(const json& j, const char* where,
                  std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required = {}) {
  if (!j.is_object())
    throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw ConfigError(std::string(where) + ": unknown field \"" + key + "\"");
  }
  for (const char* r : required)
    if (!j.contains(r))
      throw ConfigError(std::string(where) + ": missing field \"" + r + "\"");
}

IVec2 parse_ivec2(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(std::string(where) + ": expected [int, int]");
  return IVec2(j[0].get<int>(), j[1].get<int>());
}

Frequency parse_alpha(const json& j) {
  require_keys(j, "alpha", {"kind", "a", "b", "d", "value", "mu_assumed"},
               {"kind"});
  const std::string kind = j.at("kind").get<std::string>();
  const double mu = j.value("mu_assumed", 2.0);
  try {
    if (kind == "quadratic") {
      require_keys(j, "alpha", {"kind", "a", "b", "d", "mu_assumed"},
                   {"a", "b", "d"});
      return Frequency::quadratic(j.at("a").get<double>(),
                                  j.at("b").get<double>(),
                                  j.at("d").get<int>(), mu);
    }
    if (kind == "decimal") {
      require_keys(j, "alpha", {"kind", "value", "mu_assumed"}, {"value"});
      return Frequency::decimal(j.at("value").get<double>(), mu);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("alpha: ") + e.what());
  }
  throw ConfigError("alpha: kind must be \"quadratic\" or \"decimal\"");
}

PotentialSpec parse_potential(const json& j) {
  require_keys(j, "potential",
               {"alpha", "l", "Q", "coupling", "coefficients", "real_valued"},
               {"alpha", "l", "Q", "coefficients"});
  PotentialSpec spec;
  spec.freq = parse_alpha(j.at("alpha"));
  spec.l = j.at("l").get<int>();
  spec.Q = j.at("Q").get<int>();
  spec.coupling = j.value("coupling", 1.0);
  spec.real_valued = j.value("real_valued", true);
  for (const auto& c : j.at("coefficients")) {
    require_keys(c, "coefficient", {"s1", "s2", "re", "im"}, {"s1", "s2", "re"});
    const IVec2 s1 = parse_ivec2(c.at("s1"), "s1");
    const IVec2 s2 = parse_ivec2(c.at("s2"), "s2");
    const Complex v(c.at("re").get<double>(), c.value("im", 0.0));
    if (!spec.coeffs.emplace(make_key(s1, s2), v).second)
      throw ConfigError("potential: duplicate coefficient key");
  }
  return spec;
}

GrowthSchedule parse_schedule(const json& j) {
  require_keys(j, "schedule",
               {"R1", "r1", "factor", "R_cap", "r_cap", "size_cap"});
  GrowthSchedule s;
  s.R1 = j.value("R1", 1);
  s.r1 = j.value("r1", 1);
  s.factor = j.value("factor", 2);
  s.R_cap = j.value("R_cap", 0);
  s.r_cap = j.value("r_cap", 0);
  s.size_cap = j.value("size_cap", std::size_t{2500});
  if (s.R1 < 1 || s.r1 < 0 || s.factor < 2)
    throw ConfigError("schedule: need R1 >= 1, r1 >= 0, factor >= 2");
  return s;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  require_keys(j, "config",
               {"potential", "schedule", "thresholds", "grids", "lambdas",
                "seed", "out_dir"},
               {"potential"});
  ExperimentConfig cfg;
  cfg.potential = parse_potential(j.at("potential"));
  if (j.contains("schedule")) cfg.schedule = parse_schedule(j.at("schedule"));

  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    require_keys(t, "thresholds",
                 {"delta1_coeff", "rho", "eps0", "overlap_floor",
                  "gap_floor_scale", "eta", "full_s_scan"});
    cfg.thresholds.delta1_coeff = t.value("delta1_coeff", 0.1);
    cfg.thresholds.rho = t.value("rho", 0.1);
    cfg.thresholds.eps0 = t.value("eps0", 0.0);
    cfg.thresholds.full_s_scan = t.value("full_s_scan", false);
    cfg.floors.overlap_floor = t.value("overlap_floor", 0.5);
    cfg.floors.gap_floor_scale = t.value("gap_floor_scale", 1e-8);
    cfg.radial.eta = t.value("eta", 0.2);
    if (cfg.thresholds.delta1_coeff <= 0 || cfg.thresholds.rho <= 0 ||
        cfg.thresholds.eps0 < 0 || cfg.floors.overlap_floor <= 0 ||
        cfg.floors.gap_floor_scale <= 0 || cfg.radial.eta <= 0)
      throw ConfigError("thresholds: floors must be positive (eps0 >= 0)");
  }

  if (j.contains("grids")) {
    const json& g = j.at("grids");
    require_keys(g, "grids", {"phi_resolution", "k_grid", "spatial"});
    cfg.grids.phi_resolution = g.value("phi_resolution", 1024);
    cfg.grids.k_grid = g.value("k_grid", 64);
    if (g.contains("spatial")) {
      const json& s = g.at("spatial");
      require_keys(s, "spatial", {"origin", "extent", "nx", "ny"});
      if (s.contains("origin")) {
        auto o = s.at("origin");
        cfg.grids.spatial.origin = Vec2(o.at(0).get<double>(), o.at(1).get<double>());
      }
      if (s.contains("extent")) {
        auto e = s.at("extent");
        cfg.grids.spatial.extent = Vec2(e.at(0).get<double>(), e.at(1).get<double>());
      }
      cfg.grids.spatial.nx = s.value("nx", 64);
      cfg.grids.spatial.ny = s.value("ny", 64);
    }
    if (cfg.grids.phi_resolution < 1024)
      throw ConfigError("grids: phi_resolution must be >= 1024");
  }

  if (j.contains("lambdas")) {
    for (const auto& v : j.at("lambdas")) {
      const double lam = v.get<double>();
      if (lam <= 0) throw ConfigError("lambdas: must be positive");
      cfg.lambdas.push_back(lam);
    }
  }
  if (j.contains("seed")) {
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.has_seed = true;
  }
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();

  const auto violations = validate(cfg.potential);
  if (!violations.empty())
    throw ConfigError("potential: " + violations.front().message);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j = json::parse(in);  // throws json::parse_error
  return parse_config(j);
}

std::string canonical_config_json(const ExperimentConfig& cfg) {
  json j;
  json alpha;
  if (cfg.potential.freq.kind() == FrequencyKind::QuadraticIrrational) {
    alpha = {{"kind", "quadratic"},
             {"a", cfg.potential.freq.quad_a()},
             {"b", cfg.potential.freq.quad_b()},
             {"d", cfg.potential.freq.quad_d()},
             {"mu_assumed", cfg.potential.freq.mu_assumed()}};
  } else {
    alpha = {{"kind", "decimal"},
             {"value", cfg.potential.freq.value()},
             {"mu_assumed", cfg.potential.freq.mu_assumed()}};
  }
  json coeffs = json::array();
  for (const auto& [key, v] : cfg.potential.coeffs)
    coeffs.push_back({{"s1", {key[0], key[1]}},
                      {"s2", {key[2], key[3]}},
                      {"re", v.real()},
                      {"im", v.imag()}});
  j["potential"] = {{"alpha", alpha},
                    {"l", cfg.potential.l},
                    {"Q", cfg.potential.Q},
                    {"coupling", cfg.potential.coupling},
                    {"real_valued", cfg.potential.real_valued},
                    {"coefficients", coeffs}};
  j["schedule"] = {{"R1", cfg.schedule.R1},     {"r1", cfg.schedule.r1},
                   {"factor", cfg.schedule.factor}, {"R_cap", cfg.schedule.R_cap},
                   {"r_cap", cfg.schedule.r_cap},
                   {"size_cap", cfg.schedule.size_cap}};
  j["thresholds"] = {{"delta1_coeff", cfg.thresholds.delta1_coeff},
                     {"rho", cfg.thresholds.rho},
                     {"eps0", cfg.thresholds.eps0},
                     {"overlap_floor", cfg.floors.overlap_floor},
                     {"gap_floor_scale", cfg.floors.gap_floor_scale},
                     {"eta", cfg.radial.eta},
                     {"full_s_scan", cfg.thresholds.full_s_scan}};
  j["grids"] = {{"phi_resolution", cfg.grids.phi_resolution},
                {"k_grid", cfg.grids.k_grid},
                {"spatial",
                 {{"origin", {cfg.grids.spatial.origin.x(), cfg.grids.spatial.origin.y()}},
                  {"extent", {cfg.grids.spatial.extent.x(), cfg.grids.spatial.extent.y()}},
                  {"nx", cfg.grids.spatial.nx},
                  {"ny", cfg.grids.spatial.ny}}}};
  j["lambdas"] = cfg.lambdas;
  if (cfg.has_seed) j["seed"] = cfg.seed;
  return j.dump();  // json objects iterate in sorted key order
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  const std::string s = canonical_config_json(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_manifest(const RunManifest& m, const std::string& path) {
  json j = {{"config_hash", m.config_hash},
            {"version", m.version},
            {"outputs", m.outputs},
            {"wall_seconds", m.wall_seconds}};
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

}  // namespace polyqp
