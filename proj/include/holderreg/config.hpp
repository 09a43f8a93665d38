#pragma once

#include <cstdint>
#include <string>

#include "holderreg/sampling.hpp"

namespace holderreg {

/// Run-wide tolerances and sampling parameters. Defaults are the pinned
/// values used across the toolkit; overrides come from a JSON config file.
struct RunConfig {
  double eps_pos = 1e-6;
  double eps_inf = 1e6;
  double slack_pct = 5.0;
  double chain_slack_pct = 10.0;
  double membership_tol = 1e-9;

  double ladder_t0 = 1e-1;
  double ladder_theta = 0.5;
  int ladder_rungs = 20;

  double radii_r0 = 0.5;
  double radii_ratio = 0.5;
  int radii_rungs = 12;

  int direction_count = 0;  // 0: per-dimension default
  int sampler_resolution = 401;
  int parallel = 1;
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  ScaleLadder ladder() const { return make_scale_ladder(ladder_t0, ladder_theta, ladder_rungs); }
  ScaleLadder radii() const { return make_radii_ladder(radii_r0, radii_ratio, radii_rungs); }
  DirectionGrid grid(int n) const {
    return make_direction_grid(n, direction_count > 0 ? direction_count
                                                      : default_direction_count(n),
                               n > 3, seed);
  }
  void validate() const;
};

/// Parses a config JSON file; unknown keys are rejected.
RunConfig load_config(const std::string& path);

/// Applies the HOLDERREG_CONFIG environment fallback when path is empty.
RunConfig resolve_config(const std::string& explicit_path);

}  // namespace holderreg
