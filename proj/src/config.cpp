#include "holderreg/config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace holderreg {

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw UsageError(std::string("config: ") + name + " must be positive");
  };
  positive(eps_pos, "eps_pos");
  positive(eps_inf, "eps_inf");
  positive(slack_pct, "slack_pct");
  positive(chain_slack_pct, "chain_slack_pct");
  positive(membership_tol, "membership_tol");
  positive(ladder_t0, "ladder_t0");
  positive(radii_r0, "radii_r0");
  if (!(ladder_theta > 0.0 && ladder_theta < 1.0))
    throw UsageError("config: ladder_theta must lie in (0,1)");
  if (!(radii_ratio > 0.0 && radii_ratio < 1.0))
    throw UsageError("config: radii_ratio must lie in (0,1)");
  if (ladder_rungs < 2 || radii_rungs < 2) throw UsageError("config: ladders need >= 2 rungs");
  if (parallel < 1) throw UsageError("config: parallel degree must be >= 1");
  if (sampler_resolution < 3) throw UsageError("config: sampler_resolution must be >= 3");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  RunConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "eps_pos") cfg.eps_pos = val.get<double>();
    else if (key == "eps_inf") cfg.eps_inf = val.get<double>();
    else if (key == "slack_pct") cfg.slack_pct = val.get<double>();
    else if (key == "chain_slack_pct") cfg.chain_slack_pct = val.get<double>();
    else if (key == "membership_tol") cfg.membership_tol = val.get<double>();
    else if (key == "ladder_t0") cfg.ladder_t0 = val.get<double>();
    else if (key == "ladder_theta") cfg.ladder_theta = val.get<double>();
    else if (key == "ladder_rungs") cfg.ladder_rungs = val.get<int>();
    else if (key == "radii_r0") cfg.radii_r0 = val.get<double>();
    else if (key == "radii_ratio") cfg.radii_ratio = val.get<double>();
    else if (key == "radii_rungs") cfg.radii_rungs = val.get<int>();
    else if (key == "direction_count") cfg.direction_count = val.get<int>();
    else if (key == "sampler_resolution") cfg.sampler_resolution = val.get<int>();
    else if (key == "parallel") cfg.parallel = val.get<int>();
    else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
    else if (key == "out_dir") cfg.out_dir = val.get<std::string>();
    else throw UsageError("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

RunConfig resolve_config(const std::string& explicit_path) {
  if (!explicit_path.empty()) return load_config(explicit_path);
  if (const char* env = std::getenv("HOLDERREG_CONFIG"); env != nullptr && env[0] != '\0')
    return load_config(env);
  return RunConfig{};
}

}  // namespace holderreg
