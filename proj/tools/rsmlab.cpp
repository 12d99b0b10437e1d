// rsmlab: experiments and diagnostics for random symmetric matrices and the
// arithmetic structure of unit vectors. Subcommands mirror the library
// runners; every experiment takes --config <json> plus flag overrides and
// emits a JSON report (and a CSV summary next to it when --out is given).
//
// Exit codes: 0 pass, 1 assertion violation, 2 configuration error,
// 3 capacity error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rsm/anticonc.hpp"
#include "rsm/ensembles.hpp"
#include "rsm/errors.hpp"
#include "rsm/experiments.hpp"
#include "rsm/io.hpp"
#include "rsm/mrlcd.hpp"
#include "rsm/rng.hpp"
#include "rsm/rounding.hpp"
#include "rsm/threshold.hpp"
#include "rsm/version.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<int> n;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> law;
  std::optional<double> lambda;
  std::optional<double> L;
  std::optional<double> p;
  std::optional<double> K;
  std::optional<int> threads;
  std::string out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--n", flags.n, "dimension");
  cmd->add_option("--trials", flags.trials, "trial count");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--law", flags.law, "entry law, e.g. rademacher, signed-bernoulli(0.1)");
  cmd->add_option("--lambda", flags.lambda, "block fraction");
  cmd->add_option("--L", flags.L, "denominator scale L");
  cmd->add_option("--p", flags.p, "SignedBernoulli parameter");
  cmd->add_option("--K", flags.K, "operator norm event constant");
  cmd->add_option("--threads", flags.threads, "worker threads");
  cmd->add_option("--out", flags.out, "output path prefix (.json/.csv)");
}

rsm::ExperimentConfig build_config(const CommonFlags& flags) {
  rsm::ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = rsm::ExperimentConfig::load(flags.config_path);
  if (flags.n) cfg.n = *flags.n;
  if (flags.trials) cfg.trials = *flags.trials;
  if (flags.seed) cfg.master_seed = *flags.seed;
  if (flags.law) cfg.law = rsm::EntryLaw::parse(*flags.law);
  if (flags.lambda) cfg.lambda = *flags.lambda;
  if (flags.L) {
    cfg.L = *flags.L;
    cfg.lcd.L = *flags.L;
  }
  if (flags.p) cfg.p = *flags.p;
  if (flags.K) cfg.K = *flags.K;
  if (flags.threads) cfg.threads = *flags.threads;
  if (!flags.out.empty()) cfg.out = flags.out;
  cfg.validate();
  return cfg;
}

int emit_report(const rsm::ExperimentReport& report, const std::string& out) {
  if (out.empty()) {
    std::cout << rsm::dump_report(report.doc);
  } else {
    rsm::write_text_file(out + ".json", rsm::dump_report(report.doc));
    rsm::write_text_file(out + ".csv", report.csv);
    std::cout << report.doc["experiment"].get<std::string>() << ": "
              << (report.exit_code == 0 ? "pass" : "FAIL") << ", report at " << out << ".json\n";
  }
  return report.exit_code;
}

int emit_json(const nlohmann::json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    rsm::write_text_file(out + ".json", doc.dump(2) + "\n");
    std::cout << "report at " << out << ".json\n";
  }
  return 0;
}

// Vector input for the diagnostic subcommands: explicit coords from the
// config file, otherwise a seeded random unit vector.
rsm::UnitVector diagnostic_vector(const CommonFlags& flags) {
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw rsm::parameter_error("cannot open config file " + flags.config_path);
    nlohmann::json j;
    in >> j;
    if (j.contains("coords")) {
      const auto coords = j.at("coords").get<std::vector<double>>();
      Eigen::VectorXd v(static_cast<Eigen::Index>(coords.size()));
      for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<Eigen::Index>(i)] = coords[i];
      return rsm::UnitVector::normalized(std::move(v));
    }
  }
  const int n = flags.n.value_or(32);
  rsm::Rng rng(flags.seed.value_or(1));
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  return rsm::UnitVector::normalized(std::move(v));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"random symmetric matrix structure diagnostics"};
  app.set_version_flag("--version", rsm::kVersion);
  app.require_subcommand(1);

  std::map<std::string, CommonFlags> flags;
  std::map<std::string, std::function<int()>> actions;

  auto experiment = [&](const std::string& name,
                        rsm::ExperimentReport (*runner)(const rsm::ExperimentConfig&)) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common_flags(cmd, flags[name]);
    actions[name] = [&, name, runner] {
      const auto cfg = build_config(flags[name]);
      return emit_report(runner(cfg), cfg.out);
    };
    return cmd;
  };

  experiment("sval-tail", rsm::run_sval_tail)
      ->description("lower tail of the smallest singular value");
  experiment("singularity-exact", rsm::run_singularity_exact)
      ->description("exact singularity probability of tiny sign matrices");
  experiment("decouple", rsm::run_decoupling_check)
      ->description("exact quadratic-form decoupling check");
  experiment("replace", rsm::run_replacement_check)
      ->description("Rademacher vs SignedBernoulli concentration ratios");
  experiment("structure-scan", rsm::run_structure_scan)
      ->description("median-LCD structure of solved directions vs baselines");
  experiment("denominator", rsm::run_denominator_check)
      ->description("||A^{-1}X|| vs ||A^{-1}||_HS event frequencies");
  experiment("quadratic", rsm::run_quadratic_smallball)
      ->description("normalized quadratic form small-ball tail");

  // Diagnostic one-shots on a single vector.
  {
    CLI::App* cmd = app.add_subcommand("lcd", "certified LCD bracket of a unit vector");
    add_common_flags(cmd, flags["lcd"]);
    actions["lcd"] = [&] {
      const auto& f = flags["lcd"];
      const rsm::UnitVector v = diagnostic_vector(f);
      rsm::LcdParams params;
      params.L = f.L.value_or(1.0);
      const rsm::LcdBracket bracket = rsm::lcd(v, params);
      return emit_json({{"dim", v.dim()}, {"L", params.L}, {"bracket", bracket}}, f.out);
    };
  }
  {
    CLI::App* cmd = app.add_subcommand("mrlcd", "median regularized LCD report");
    add_common_flags(cmd, flags["mrlcd"]);
    actions["mrlcd"] = [&] {
      const auto& f = flags["mrlcd"];
      const rsm::UnitVector v = diagnostic_vector(f);
      rsm::LcdParams params;
      params.L = f.L.value_or(1.0);
      const rsm::SphereParams sphere(0.5, 0.5, 0.15);
      const double lambda = f.lambda.value_or(0.125);
      return emit_json(nlohmann::json(rsm::mrlcd(v, params, sphere, lambda)), f.out);
    };
  }
  {
    CLI::App* cmd = app.add_subcommand("threshold", "concentration threshold of a unit vector");
    add_common_flags(cmd, flags["threshold"]);
    actions["threshold"] = [&] {
      const auto& f = flags["threshold"];
      const rsm::UnitVector v = diagnostic_vector(f);
      const auto report = rsm::threshold(v, f.p.value_or(0.1), f.L.value_or(1.0));
      return emit_json(nlohmann::json(report), f.out);
    };
  }
  {
    CLI::App* cmd = app.add_subcommand("round", "randomized rounding with certification");
    add_common_flags(cmd, flags["round"]);
    actions["round"] = [&] {
      const auto& f = flags["round"];
      const rsm::UnitVector v = diagnostic_vector(f);
      const auto& coords = v.coords();
      const double p = f.p.value_or(0.1);
      const double scale = 4.0 * std::sqrt(static_cast<double>(v.dim()));
      std::vector<double> y(static_cast<std::size_t>(v.dim()));
      for (int i = 0; i < v.dim(); ++i) y[static_cast<std::size_t>(i)] = scale * coords[i];
      const double mu = rsm::least_mu_levy(y, rsm::EntryLaw::signed_bernoulli(p));
      const auto result =
          rsm::levy_round(y, p, mu, 8.0, 0.125, 1000, f.seed.value_or(1));
      return emit_json(nlohmann::json(result), f.out);
    };
  }

  try {
    app.parse(argc, argv);
    for (auto& [name, action] : actions)
      if (app.get_subcommand(name)->parsed()) return action();
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const rsm::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const rsm::parameter_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const rsm::precondition_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const rsm::structural_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
