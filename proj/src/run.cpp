#include "dcm/run.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dcm/detail/names.hpp"
#include "dcm/errors.hpp"
#include "dcm/io.hpp"

namespace dcm {
namespace fs = std::filesystem;

namespace {

// Owns an output directory for the duration of one run: holds a lock file
// and removes everything it wrote unless commit() is reached.
class OutputDir {
 public:
  explicit OutputDir(const std::string& path) : dir_(path) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + path + "': " + ec.message());
    lock_ = dir_ / ".dcm.lock";
    std::FILE* f = std::fopen(lock_.c_str(), "wx");
    if (!f) {
      if (errno == EEXIST) throw IoError("output directory '" + path + "' is locked by another run");
      throw IoError("cannot create lock file in '" + path + "'");
    }
    std::fclose(f);
  }

  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  ~OutputDir() {
    std::error_code ec;
    if (!committed_) {
      for (const auto& f : written_) fs::remove(f, ec);
    }
    fs::remove(lock_, ec);
  }

  template <class Writer>
  void write(const std::string& name, Writer&& writer) {
    const fs::path p = dir_ / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("cannot open '" + p.string() + "' for writing");
    written_.push_back(p);
    writer(os);
    os.flush();
    if (!os) throw IoError("failed writing '" + p.string() + "'");
  }

  std::vector<std::string> files() const {
    std::vector<std::string> out;
    for (const auto& p : written_) out.push_back(p.filename().string());
    return out;
  }

  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  fs::path lock_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

template <class F>
auto as_config_error(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

double profile_deviation(const std::vector<FluxSample>& profile) {
  double worst = 0.0;
  for (const auto& s : profile) worst = std::max(worst, std::abs(s.q_pred - s.q_exact) / std::abs(s.q_exact));
  return worst;
}

nlohmann::json loss_json(const LossReport& r) {
  return {{"total", r.total},           {"mse_g", r.mse_g},          {"mse_d", r.mse_d},
          {"mse_n", r.mse_n},           {"n_interior", r.n_interior}, {"n_dirichlet", r.n_dirichlet},
          {"n_neumann", r.n_neumann}};
}

nlohmann::json summary_json(const RunSummary& s, const RunConfig& cfg) {
  nlohmann::json j;
  j["final_loss"] = loss_json(s.final_loss);
  j["relative_error"] = s.metric.relative_error;
  j["max_abs_error"] = s.metric.max_abs_error;
  j["l2_relative_error"] = s.metric.l2_relative_error;
  j["flux_relative_error"] = s.metric.flux_relative_error;
  j["flux_profile_max_deviation"] = s.flux_profile_max_deviation;
  j["iterations"] = {{"adam", s.adam_iterations}, {"lbfgs", s.lbfgs_iterations}};
  j["status"] = to_string(s.status);
  j["wall_ms"] = s.wall_ms;
  j["config"] = to_json(cfg);
  j["files"] = s.files;
  return j;
}

void write_profile_csv(std::ostream& os, const std::vector<FluxSample>& profile) {
  os << "s,q_pred,q_exact\n";
  for (const auto& p : profile)
    os << format_real(p.s) << ',' << format_real(p.q_pred) << ',' << format_real(p.q_exact) << '\n';
}

CollocationSet build_collocation(const RunConfig& cfg) {
  return as_config_error([&] {
    return attach_case_bcs(cfg.case_id, sample_domain(cfg.sampler_kind(), case_geometry(cfg.case_id), cfg.n_interior,
                                                      cfg.n_per_face));
  });
}

}  // namespace

TrainedRun train_case(const RunConfig& cfg, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const CollocationSet set = build_collocation(cfg);
  NetworkParams params = as_config_error([&] { return init_params(cfg.network_spec()); });
  const MaterialModel model = case_material(cfg.case_id);

  TrainObserver progress;
  if (!opts.quiet) {
    progress = [&](const IterationRecord& r, std::span<const double>) {
      if (r.iteration % 100 == 0) {
        std::cerr << "[" << case_name(cfg.case_id) << "] iter " << r.iteration << " (" << to_string(r.phase)
                  << ") loss " << r.loss.total << " = " << r.loss.mse_g << " + " << r.loss.mse_d << " + "
                  << r.loss.mse_n << '\n';
      }
    };
  }
  TrainResult result = as_config_error([&] { return train(params, model, set, cfg.adam, cfg.lbfgs, progress); });
  if (result.status == TrainStatus::NonFinite) {
    throw NumericalError("training produced a non-finite loss after " +
                         std::to_string(result.history.records.size()) + " iterations");
  }

  const NetworkField field(result.params);
  CaseEvaluation evaluation = evaluate_case(cfg.case_id, field, cfg.eval_grid);
  RunSummary s;
  s.final_loss = result.history.records.empty() ? CollocationLoss(model, set).evaluate(result.params)
                                                : result.history.records.back().loss;
  s.metric = evaluation.metric;
  s.flux_profile_max_deviation = profile_deviation(default_flux_profile(cfg.case_id, field, cfg.flux_samples));
  s.adam_iterations = result.history.iterations(Phase::Adam);
  s.lbfgs_iterations = result.history.iterations(Phase::Lbfgs);
  s.status = result.status;
  s.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  NetworkParams trained = result.params;
  return {std::move(trained), std::move(result), std::move(evaluation), s};
}

RunSummary run_train(const RunConfig& cfg, const RunOptions& opts) {
  OutputDir out(cfg.output_dir);
  out.write("config.json", [&](std::ostream& os) { os << to_json(cfg).dump(2) << '\n'; });
  TrainedRun run = train_case(cfg, opts);
  const NetworkField field(run.params);
  const auto profile = default_flux_profile(cfg.case_id, field, cfg.flux_samples);

  out.write("convergence.csv",
            [&](std::ostream& os) { write_convergence_csv(os, run.result.history, cfg.record_wall_clock); });
  out.write("fields.csv", [&](std::ostream& os) { write_fields_csv(os, run.evaluation.table); });
  out.write("fields.vtk", [&](std::ostream& os) { write_fields_vtk(os, run.evaluation.table); });
  out.write("flux_profile.csv", [&](std::ostream& os) { write_profile_csv(os, profile); });
  out.write("params.txt", [&](std::ostream& os) { write_params(os, run.params); });
  RunSummary s = run.summary;
  s.files = out.files();
  s.files.push_back("summary.json");
  out.write("summary.json", [&](std::ostream& os) { os << summary_json(s, cfg).dump(2) << '\n'; });
  out.commit();
  return s;
}

std::vector<std::string> run_sample(const RunConfig& cfg) {
  OutputDir out(cfg.output_dir);
  const CollocationSet set = build_collocation(cfg);
  out.write("config.json", [&](std::ostream& os) { os << to_json(cfg).dump(2) << '\n'; });
  out.write("collocation.csv", [&](std::ostream& os) { write_collocation_csv(os, set); });
  out.commit();
  return out.files();
}

RunSummary run_evaluate(const RunConfig& cfg, const std::string& params_path, const RunOptions&) {
  const auto start = std::chrono::steady_clock::now();
  const NetworkParams params = load_params(params_path);
  const NetworkSpec spec = cfg.network_spec();
  if (params.num_layers() != spec.hidden_widths.size() + 1) {
    throw ConfigError("hidden_widths: snapshot has " + std::to_string(params.num_layers() - 1) +
                      " hidden layers, config has " + std::to_string(spec.hidden_widths.size()));
  }
  for (std::size_t l = 0; l < spec.hidden_widths.size(); ++l) {
    if (params.layers()[l].rows != spec.hidden_widths[l])
      throw ConfigError("hidden_widths[" + std::to_string(l) + "]: does not match the snapshot");
  }
  if (!(params.activation() == spec.activation)) throw ConfigError("activation: does not match the snapshot");

  OutputDir out(cfg.output_dir);
  const CollocationSet set = build_collocation(cfg);
  const NetworkField field(params);
  const CaseEvaluation ev = evaluate_case(cfg.case_id, field, cfg.eval_grid);
  const auto profile = default_flux_profile(cfg.case_id, field, cfg.flux_samples);

  RunSummary s;
  s.final_loss = CollocationLoss(case_material(cfg.case_id), set).evaluate(params);
  s.metric = ev.metric;
  s.flux_profile_max_deviation = profile_deviation(profile);
  s.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.write("fields.csv", [&](std::ostream& os) { write_fields_csv(os, ev.table); });
  out.write("fields.vtk", [&](std::ostream& os) { write_fields_vtk(os, ev.table); });
  out.write("flux_profile.csv", [&](std::ostream& os) { write_profile_csv(os, profile); });
  s.files = out.files();
  s.files.push_back("summary.json");
  out.write("summary.json", [&](std::ostream& os) { os << summary_json(s, cfg).dump(2) << '\n'; });
  out.commit();
  return s;
}

VaryAxis parse_vary_axis(std::string_view name) {
  const auto key = detail::normalize_name(name);
  if (key == "activation") return VaryAxis::Activation;
  if (key == "sampler") return VaryAxis::Sampler;
  if (key == "depth") return VaryAxis::Depth;
  if (key == "ninterior") return VaryAxis::NInterior;
  if (key == "nperface") return VaryAxis::NPerFace;
  if (key == "schedule" || key == "optimizer" || key == "optimizerschedule") return VaryAxis::Schedule;
  throw ConfigError("--vary: unknown axis '" + std::string(name) + "'");
}

std::string vary_axis_name(VaryAxis axis) {
  switch (axis) {
    case VaryAxis::Activation: return "activation";
    case VaryAxis::Sampler: return "sampler";
    case VaryAxis::Depth: return "depth";
    case VaryAxis::NInterior: return "n_interior";
    case VaryAxis::NPerFace: return "n_per_face";
    case VaryAxis::Schedule: return "schedule";
  }
  return "unknown";
}

std::vector<std::string> default_variants(VaryAxis axis) {
  std::vector<std::string> out;
  switch (axis) {
    case VaryAxis::Activation:
      for (auto t : kAllActivations) out.push_back(activation_name(t));
      break;
    case VaryAxis::Sampler:
      for (auto t : kAllSamplers) out.push_back(sampler_name(t));
      break;
    case VaryAxis::Depth:
      out = {"1", "2", "3", "4", "5", "6"};
      break;
    case VaryAxis::NInterior:
      out = {"500", "1000", "2000", "3000", "4000"};
      break;
    case VaryAxis::NPerFace:
      out = {"50", "100", "200", "300", "400"};
      break;
    case VaryAxis::Schedule:
      out = {"adam", "lbfgs", "combined"};
      break;
  }
  return out;
}

RunConfig apply_variant(const RunConfig& base, VaryAxis axis, const std::string& label) {
  RunConfig cfg = base;
  auto count = [&]() -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(label, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != label.size() || v == 0) throw ConfigError(vary_axis_name(axis) + ": '" + label + "' is not a positive integer");
    return static_cast<std::size_t>(v);
  };
  switch (axis) {
    case VaryAxis::Activation:
      cfg.activation.type = parse_activation(label);
      break;
    case VaryAxis::Sampler:
      cfg.sampler.type = parse_sampler(label);
      break;
    case VaryAxis::Depth:
      cfg.hidden_widths.assign(count(), base.hidden_widths.front());
      break;
    case VaryAxis::NInterior:
      cfg.n_interior = count();
      break;
    case VaryAxis::NPerFace:
      cfg.n_per_face = count();
      break;
    case VaryAxis::Schedule: {
      const std::size_t total = base.adam.max_iters + base.lbfgs.max_iters;
      const auto key = detail::normalize_name(label);
      if (key == "adam") {
        cfg.adam.max_iters = total;
        cfg.lbfgs.max_iters = 0;
      } else if (key == "lbfgs") {
        cfg.adam.max_iters = 0;
        cfg.lbfgs.max_iters = total;
      } else if (key != "combined") {
        throw ConfigError("schedule: unknown schedule '" + label + "'");
      }
      break;
    }
  }
  return cfg;
}

std::vector<MatrixRow> run_matrix(const RunConfig& base, VaryAxis axis, const std::vector<std::string>& variants,
                                  const RunOptions& opts) {
  if (variants.empty()) throw ConfigError("--vary " + vary_axis_name(axis) + ": empty variant list");
  std::vector<RunConfig> configs;
  for (const auto& v : variants) configs.push_back(apply_variant(base, axis, v));

  OutputDir out(base.output_dir);
  out.write("config.json", [&](std::ostream& os) { os << to_json(base).dump(2) << '\n'; });
  std::vector<MatrixRow> rows;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!opts.quiet) std::cerr << "variant " << variants[i] << '\n';
    rows.push_back({variants[i], train_case(configs[i], opts).summary});
  }
  out.write("comparison.csv", [&](std::ostream& os) {
    os << "variant,total,mse_g,mse_d,mse_n,relative_error,adam_iters,lbfgs_iters,wall_ms\n";
    for (const auto& r : rows) {
      const auto& s = r.summary;
      os << r.variant << ',' << format_real(s.final_loss.total) << ',' << format_real(s.final_loss.mse_g) << ','
         << format_real(s.final_loss.mse_d) << ',' << format_real(s.final_loss.mse_n) << ','
         << format_real(s.metric.relative_error) << ',' << s.adam_iterations << ',' << s.lbfgs_iterations << ','
         << format_real(base.record_wall_clock ? s.wall_ms : 0.0) << '\n';
    }
  });
  out.commit();
  return rows;
}

}  // namespace dcm
