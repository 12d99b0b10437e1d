#include <algorithm>
#include <fstream>

#include "rsm/errors.hpp"
#include "rsm/experiments.hpp"
#include "rsm/version.hpp"
#include "experiments_detail.hpp"

namespace rsm {

void ExperimentConfig::validate() const {
  if (n < 1) throw parameter_error("config: n must be >= 1");
  if (trials < 1) throw parameter_error("config: trials must be >= 1");
  if (!(K >= 1.0)) throw parameter_error("config: K must be >= 1");
  if (!std::is_sorted(eps_grid.begin(), eps_grid.end()))
    throw parameter_error("config: eps_grid must be sorted ascending");
  for (double e : eps_grid)
    if (!(e >= 0.0)) throw parameter_error("config: eps_grid entries must be >= 0");
  if (threads < 1) throw parameter_error("config: threads must be >= 1");
}

nlohmann::json ExperimentConfig::echo() const {
  nlohmann::json j{{"name", name},
                   {"n", n},
                   {"law", law.name()},
                   {"trials", trials},
                   {"master_seed", master_seed},
                   {"eps_grid", eps_grid},
                   {"L", L},
                   {"lambda", lambda},
                   {"p", p},
                   {"sphere", {{"c0", sphere.c0}, {"c1", sphere.c1}, {"c_spread", sphere.c_spread}}},
                   {"K", K},
                   {"lcd",
                    {{"theta_max", lcd.theta_max},
                     {"grid_step", lcd.grid_step},
                     {"bisect_tol", lcd.bisect_tol}}},
                   {"u", u},
                   {"realized_u", realized_u},
                   {"sigma", sigma},
                   {"j_size", j_size},
                   {"r_grid", r_grid},
                   {"ratio_cap", ratio_cap},
                   {"with_threshold", with_threshold},
                   {"assert_fraction", assert_fraction}};
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.name = j.value("name", cfg.name);
  cfg.n = j.value("n", cfg.n);
  if (j.contains("law")) cfg.law = EntryLaw::parse(j.at("law").get<std::string>());
  cfg.trials = j.value("trials", cfg.trials);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  cfg.eps_grid = j.value("eps_grid", cfg.eps_grid);
  cfg.L = j.value("L", cfg.L);
  cfg.lambda = j.value("lambda", cfg.lambda);
  cfg.p = j.value("p", cfg.p);
  if (j.contains("sphere")) {
    const auto& s = j.at("sphere");
    cfg.sphere = SphereParams(s.value("c0", 0.5), s.value("c1", 0.5), s.value("c_spread", 0.15));
  }
  cfg.K = j.value("K", cfg.K);
  if (j.contains("lcd")) {
    const auto& l = j.at("lcd");
    cfg.lcd.theta_max = l.value("theta_max", cfg.lcd.theta_max);
    cfg.lcd.grid_step = l.value("grid_step", cfg.lcd.grid_step);
    cfg.lcd.bisect_tol = l.value("bisect_tol", cfg.lcd.bisect_tol);
  }
  cfg.u = j.value("u", cfg.u);
  cfg.realized_u = j.value("realized_u", cfg.realized_u);
  cfg.sigma = j.value("sigma", cfg.sigma);
  cfg.j_size = j.value("j_size", cfg.j_size);
  cfg.r_grid = j.value("r_grid", cfg.r_grid);
  cfg.ratio_cap = j.value("ratio_cap", cfg.ratio_cap);
  cfg.with_threshold = j.value("with_threshold", cfg.with_threshold);
  cfg.assert_fraction = j.value("assert_fraction", cfg.assert_fraction);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.out = j.value("out", cfg.out);
  cfg.lcd.L = cfg.L;
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parameter_error("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parameter_error("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

namespace detail {

nlohmann::json report_envelope(const ExperimentConfig& cfg, const std::string& experiment) {
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"experiment", experiment},
                        {"code_version", kVersion},
                        {"config", cfg.echo()}};
}

} // namespace detail

} // namespace rsm
