#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dcm/activation.hpp"
#include "dcm/cases.hpp"
#include "dcm/optim.hpp"
#include "dcm/sampling.hpp"

namespace dcm {

/// Everything a run needs. Defaults reproduce the headline experiment:
/// exponential cube case, Latin hypercube 3000/300 points, 2x30 arctan net,
/// 1000 Adam steps followed by up to 2000 L-BFGS iterations.
struct RunConfig {
  CaseId case_id = CaseId::Case1Exponential;
  SamplerKind sampler{};
  std::size_t n_interior = 3000;
  std::size_t n_per_face = 300;
  std::vector<std::size_t> hidden_widths{30, 30};
  ActivationKind activation{};
  AdamConfig adam{};
  LbfgsConfig lbfgs{};
  std::size_t eval_grid = 21;
  std::size_t flux_samples = 21;
  std::uint64_t seed = 0;
  std::string output_dir = "dcm_out";
  bool record_wall_clock = false;

  NetworkSpec network_spec() const;
  SamplerKind sampler_kind() const;  // sampler with the run seed applied
};

/// Parses a JSON document. Unknown keys, type mismatches and invalid enum
/// names throw ConfigError naming the offending key path. Empty text yields
/// the defaults.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

/// Effective configuration, every key present.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace dcm
