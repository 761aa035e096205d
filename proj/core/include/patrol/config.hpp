#pragma once

#include <cstdint>
#include <string>

namespace patrol {

// Tunable knobs shared by the planners. Defaults match the documented
// behaviour of the library; everything here can be overridden from the CLI
// or a PATROL_CONFIG defaults file.
struct SolverConfig {
  // Orienteering switches to the exact solver when the filtered candidate
  // count is at most this value (clamped to 20, the subset-DP memory limit).
  int orienteering_exact_threshold = 16;

  // Revisit discount m applied to orienteering weights of vertices already
  // on the current walk.
  double revisit_discount = 0.1;

  // Binary-search tolerance for the leg time d, as a fraction of r_min.
  double leg_search_tol = 1e-6;

  // Bi-criterion stretch factor alpha.
  double stretch = 2.0;

  // Common-period search bound: periods are aligned up to this multiple of
  // the longest walk period before reporting incommensurability.
  int hyperperiod_max_multiple = 64;

  // Upper bound on simulated visit events in one latency evaluation.
  std::int64_t event_cap = 20'000'000;

  // State cap for the exact decision oracle; exceeding it yields "unknown".
  std::uint64_t oracle_state_cap = 10'000'000;

  // Step cap for the exhaustive single-walk enumeration oracle.
  int walk_enum_max_steps = 12;

  // Disables the TSP-vs-MCCP pick-min improvement (ablation).
  bool disable_tsp_improvement = false;

  // Covers weight levels with split TSP tours instead of rooted cycle
  // covers when the discharge time is infinite.
  bool minmax_unrooted_mode = false;
};

// Loads overrides from a JSON file. Unknown keys are rejected.
SolverConfig load_config_file(const std::string& path);

// Applies PATROL_CONFIG (if set) on top of the defaults.
SolverConfig config_from_env();

}  // namespace patrol
