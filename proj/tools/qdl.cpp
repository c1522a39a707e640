// qdl: reproduce figure data, estimate embedded densities from sample files,
// and run the invariant suites.
//
// Exit status: 0 success, 1 validation error, 2 oracle failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdl/experiment.hpp"
#include "qdl/oracle_suites.hpp"
#include "qdl/target_sampling.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitOracle = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> overrides;
  std::string save_config;
};

qdl::ExperimentConfig effective_config(const CommonOptions& opt) {
  qdl::ExperimentConfig cfg = opt.config_path.empty() ? qdl::ExperimentConfig{} : qdl::ExperimentConfig::load(opt.config_path);
  for (const auto& kv : opt.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.out.empty()) cfg.output_path = opt.out;
  cfg.validate();
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw std::invalid_argument("failed writing '" + path + "'");
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "Experiment config file (key = value)");
  cmd->add_option("--seed", opt.seed, "RNG seed (overrides config)");
  cmd->add_option("--out", opt.out, "Output path (default: standard output)");
  cmd->add_option("--set", opt.overrides, "Override a config key, key=value (repeatable)");
  cmd->add_option("--save-config", opt.save_config, "Write the effective config to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian learning of densities as density operators"};
  app.require_subcommand(1);

  CommonOptions repro_opt;
  std::string figure;
  auto* repro = app.add_subcommand("reproduce", "Write the data table of a figure");
  repro->add_option("--figure", figure, "fig2a | fig2b | fig3a | fig3b")->required();
  add_common(repro, repro_opt);

  CommonOptions est_opt;
  std::string samples_path;
  auto* est = app.add_subcommand("estimate", "Embedded MAP density of a sample file");
  est->add_option("samples", samples_path, "Sample file, one decimal per line")->required();
  add_common(est, est_opt);

  std::string suite = "all";
  auto* oracle = app.add_subcommand("oracle", "Run invariant suites");
  oracle->add_option("--suite", suite, "discrete | basis | embedding | learn | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*repro) {
      const auto cfg = effective_config(repro_opt);
      const auto table = qdl::reproduce(qdl::figure_from_string(figure), cfg);
      if (!repro_opt.save_config.empty()) write_text(repro_opt.save_config, cfg.to_text());
      write_text(cfg.output_path, table.to_csv());
    } else if (*est) {
      const auto cfg = effective_config(est_opt);
      const auto samples = qdl::read_samples_file(samples_path, cfg.interval);
      const auto table = qdl::estimate(samples, cfg);
      if (!est_opt.save_config.empty()) write_text(est_opt.save_config, cfg.to_text());
      write_text(cfg.output_path, table.to_csv());
    } else if (*oracle) {
      const auto results = qdl::run_suite(qdl::suite_from_string(suite));
      bool ok = true;
      for (const auto& r : results) {
        std::printf("%-4s %-10s %-45s residual=%.3e tol=%.1e\n", r.pass ? "PASS" : "FAIL", r.suite.c_str(),
                    r.name.c_str(), r.residual, r.tolerance);
        ok = ok && r.pass;
      }
      return ok ? 0 : kExitOracle;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
