#include "dcm/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dcm/errors.hpp"

namespace dcm {

using nlohmann::json;

NetworkSpec RunConfig::network_spec() const {
  NetworkSpec spec;
  spec.hidden_widths = hidden_widths;
  spec.activation = activation;
  spec.seed = seed;
  return spec;
}

SamplerKind RunConfig::sampler_kind() const {
  SamplerKind k = sampler;
  k.seed = seed;
  return k;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(prefix.empty() ? key : prefix + "." + key, "unknown key");
  }
}

std::uint64_t get_uint(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::size_t get_count(const json& v, const std::string& path) {
  const auto n = get_uint(v, path);
  if (n == 0) fail(path, "must be positive");
  return static_cast<std::size_t>(n);
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

template <class F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
}

void parse_activation_node(const json& v, RunConfig& cfg) {
  if (v.is_string()) {
    cfg.activation.type = with_path("activation", [&] { return parse_activation(v.get<std::string>()); });
    return;
  }
  check_keys(v, "activation", {"kind", "beta"});
  if (!v.contains("kind")) fail("activation.kind", "missing");
  const auto name = get_string(v["kind"], "activation.kind");
  cfg.activation.type = with_path("activation.kind", [&] { return parse_activation(name); });
  if (v.contains("beta")) {
    cfg.activation.beta = get_real(v["beta"], "activation.beta");
    if (!(cfg.activation.beta > 0.0)) fail("activation.beta", "must be positive");
  }
}

void parse_sampler_node(const json& v, RunConfig& cfg) {
  if (v.is_string()) {
    cfg.sampler.type = with_path("sampler", [&] { return parse_sampler(v.get<std::string>()); });
    return;
  }
  check_keys(v, "sampler", {"kind", "generator"});
  if (!v.contains("kind")) fail("sampler.kind", "missing");
  const auto name = get_string(v["kind"], "sampler.kind");
  cfg.sampler.type = with_path("sampler.kind", [&] { return parse_sampler(name); });
  if (v.contains("generator")) cfg.sampler.korobov_generator = get_count(v["generator"], "sampler.generator");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return cfg;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<document>: malformed JSON: ") + e.what());
  }
  if (doc.is_null()) return cfg;
  check_keys(doc, "",
             {"case", "sampler", "n_interior", "n_per_face", "hidden_widths", "activation", "adam", "lbfgs",
              "eval_grid", "flux_samples", "seed", "output_dir", "record_wall_clock"});

  if (doc.contains("case")) {
    const auto name = get_string(doc["case"], "case");
    cfg.case_id = with_path("case", [&] { return parse_case(name); });
  }
  if (doc.contains("sampler")) parse_sampler_node(doc["sampler"], cfg);
  if (doc.contains("n_interior")) cfg.n_interior = get_count(doc["n_interior"], "n_interior");
  if (doc.contains("n_per_face")) cfg.n_per_face = get_count(doc["n_per_face"], "n_per_face");
  if (doc.contains("hidden_widths")) {
    const auto& hw = doc["hidden_widths"];
    if (!hw.is_array() || hw.empty()) fail("hidden_widths", "expected a non-empty array of positive integers");
    cfg.hidden_widths.clear();
    for (std::size_t i = 0; i < hw.size(); ++i)
      cfg.hidden_widths.push_back(get_count(hw[i], "hidden_widths[" + std::to_string(i) + "]"));
  }
  if (doc.contains("activation")) parse_activation_node(doc["activation"], cfg);
  if (doc.contains("adam")) {
    const auto& a = doc["adam"];
    check_keys(a, "adam", {"learning_rate", "beta1", "beta2", "epsilon", "max_iters"});
    if (a.contains("learning_rate")) cfg.adam.learning_rate = get_real(a["learning_rate"], "adam.learning_rate");
    if (a.contains("beta1")) cfg.adam.beta1 = get_real(a["beta1"], "adam.beta1");
    if (a.contains("beta2")) cfg.adam.beta2 = get_real(a["beta2"], "adam.beta2");
    if (a.contains("epsilon")) cfg.adam.epsilon = get_real(a["epsilon"], "adam.epsilon");
    if (a.contains("max_iters")) cfg.adam.max_iters = get_uint(a["max_iters"], "adam.max_iters");
    try {
      cfg.adam.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (doc.contains("lbfgs")) {
    const auto& l = doc["lbfgs"];
    check_keys(l, "lbfgs", {"memory", "max_iters", "gradient_tolerance", "c1", "c2"});
    if (l.contains("memory")) cfg.lbfgs.memory = get_count(l["memory"], "lbfgs.memory");
    if (l.contains("max_iters")) cfg.lbfgs.max_iters = get_uint(l["max_iters"], "lbfgs.max_iters");
    if (l.contains("gradient_tolerance"))
      cfg.lbfgs.gradient_tolerance = get_real(l["gradient_tolerance"], "lbfgs.gradient_tolerance");
    if (l.contains("c1")) cfg.lbfgs.c1 = get_real(l["c1"], "lbfgs.c1");
    if (l.contains("c2")) cfg.lbfgs.c2 = get_real(l["c2"], "lbfgs.c2");
    try {
      cfg.lbfgs.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (doc.contains("eval_grid")) {
    cfg.eval_grid = get_count(doc["eval_grid"], "eval_grid");
    if (cfg.eval_grid < 2) fail("eval_grid", "must be at least 2");
  }
  if (doc.contains("flux_samples")) cfg.flux_samples = get_count(doc["flux_samples"], "flux_samples");
  if (doc.contains("seed")) cfg.seed = get_uint(doc["seed"], "seed");
  if (doc.contains("output_dir")) {
    cfg.output_dir = get_string(doc["output_dir"], "output_dir");
    if (cfg.output_dir.empty()) fail("output_dir", "must not be empty");
  }
  if (doc.contains("record_wall_clock")) {
    if (!doc["record_wall_clock"].is_boolean()) fail("record_wall_clock", "expected a boolean");
    cfg.record_wall_clock = doc["record_wall_clock"].get<bool>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json to_json(const RunConfig& cfg) {
  json j;
  j["case"] = case_name(cfg.case_id);
  j["sampler"] = {{"kind", sampler_name(cfg.sampler.type)}, {"generator", cfg.sampler.korobov_generator}};
  j["n_interior"] = cfg.n_interior;
  j["n_per_face"] = cfg.n_per_face;
  j["hidden_widths"] = cfg.hidden_widths;
  j["activation"] = {{"kind", activation_name(cfg.activation.type)}, {"beta", cfg.activation.beta}};
  j["adam"] = {{"learning_rate", cfg.adam.learning_rate},
               {"beta1", cfg.adam.beta1},
               {"beta2", cfg.adam.beta2},
               {"epsilon", cfg.adam.epsilon},
               {"max_iters", cfg.adam.max_iters}};
  j["lbfgs"] = {{"memory", cfg.lbfgs.memory},
                {"max_iters", cfg.lbfgs.max_iters},
                {"gradient_tolerance", cfg.lbfgs.gradient_tolerance},
                {"c1", cfg.lbfgs.c1},
                {"c2", cfg.lbfgs.c2}};
  j["eval_grid"] = cfg.eval_grid;
  j["flux_samples"] = cfg.flux_samples;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  j["record_wall_clock"] = cfg.record_wall_clock;
  return j;
}

}  // namespace dcm
