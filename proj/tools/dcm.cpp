// Command line front end: train, sample, evaluate and bench runs.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dcm/config.hpp"
#include "dcm/errors.hpp"
#include "dcm/run.hpp"

namespace {

enum ExitCode { kOk = 0, kUnexpected = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

std::vector<std::string> split_values(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_summary(const dcm::RunSummary& s) {
  std::cout << "relative_error " << s.metric.relative_error << "\n"
            << "l2_relative_error " << s.metric.l2_relative_error << "\n"
            << "max_abs_error " << s.metric.max_abs_error << "\n"
            << "flux_profile_max_deviation " << s.flux_profile_max_deviation << "\n"
            << "final_loss " << s.final_loss.total << " (pde " << s.final_loss.mse_g << ", dirichlet "
            << s.final_loss.mse_d << ", neumann " << s.final_loss.mse_n << ")\n"
            << "iterations adam " << s.adam_iterations << ", lbfgs " << s.lbfgs_iterations << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deep collocation solver for steady potential problems in graded media"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string output_dir;
  bool quiet = false;
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--output-dir", output_dir, "Override the configured output directory");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  std::string config_path;
  std::string params_path;
  std::string vary;
  std::optional<std::string> values;

  auto* train = app.add_subcommand("train", "Train a network on the configured case");
  train->add_option("config", config_path, "JSON run configuration")->required();
  auto* sample = app.add_subcommand("sample", "Dump the collocation points as CSV");
  sample->add_option("config", config_path, "JSON run configuration")->required();
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a parameter snapshot against the case oracle");
  evaluate->add_option("config", config_path, "JSON run configuration")->required();
  evaluate->add_option("params", params_path, "Parameter snapshot written by train")->required();
  auto* bench = app.add_subcommand("bench", "Train one variant per value of an axis and tabulate");
  bench->add_option("config", config_path, "JSON run configuration")->required();
  bench->add_option("--vary", vary, "activation | sampler | depth | n_interior | n_per_face | schedule")->required();
  bench->add_option("--values", values, "Comma separated variant labels (default: the whole axis)");

  for (auto* sub : {train, sample, evaluate, bench}) {
    sub->add_option("--seed", seed, "Override the configured seed");
    sub->add_option("--output-dir", output_dir, "Override the configured output directory");
    sub->add_flag("--quiet", quiet, "Suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    dcm::RunConfig cfg = dcm::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    const dcm::RunOptions opts{quiet};

    if (*train) {
      print_summary(dcm::run_train(cfg, opts));
    } else if (*sample) {
      for (const auto& f : dcm::run_sample(cfg)) std::cout << cfg.output_dir << "/" << f << "\n";
    } else if (*evaluate) {
      print_summary(dcm::run_evaluate(cfg, params_path, opts));
    } else if (*bench) {
      const auto axis = dcm::parse_vary_axis(vary);
      const auto variants = values ? split_values(*values) : dcm::default_variants(axis);
      const auto rows = dcm::run_matrix(cfg, axis, variants, opts);
      for (const auto& r : rows)
        std::cout << r.variant << " relative_error " << r.summary.metric.relative_error << " loss "
                  << r.summary.final_loss.total << "\n";
    }
  } catch (const dcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const dcm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const dcm::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnexpected;
  }
  return kOk;
}
