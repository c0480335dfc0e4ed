#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "scenario.hpp"

namespace qsteer::cli {

// Subcommands return the process exit code: 0 nominal (detect: free
// space), 1 dynamics detected, and throw std::invalid_argument /
// std::runtime_error for usage or data errors (mapped to 2 by
// run_guarded / main).

// CSV: t_s, S_exact, S_closed_form, S_sampled, stderr, shots per grid
// point. Dwell times come from t_grid, or from y1_grid through the
// shell geometry; with neither, the scenario's natural range is used
// (50 points on [0, 3/gamma], 100 on [0, 2 pi / J], 50 on [0, 3]).
// The t_s column is printed in natural units (rate * t).
int cmd_sweep(const ScenarioConfig& cfg, std::ostream& out);

// CSV: y1, t_s, S for each impact parameter, sorted ascending.
int cmd_traverse(const ScenarioConfig& cfg, std::ostream& out);

// CSV: y1, idx, x, y polylines of the deformed rays, one block per
// impact parameter in grid order.
int cmd_trajectories(const ScenarioConfig& cfg, int samples_inside,
                     std::ostream& out);

struct DetectOptions {
  int n_settings = 2;
  double abs_tol = 1e-6;
  double z = 3.0;
  // Column names to read; remap to consume other producers' CSV
  // (e.g. --col-s S_exact for sweep output).
  std::string col_t = "t_s";
  std::string col_s = "S";
  std::string col_stderr = "stderr";
  std::string col_shots = "shots";
};

// Reads observation CSV and prints the verdict summary. Returns 0 for
// FreeSpace, 1 for DynamicsDetected. Malformed rows raise with their
// line number.
int cmd_detect(std::istream& in, const DetectOptions& opt, std::ostream& out);

// CSV: ensemble_id, S over randomly generated classical explanations,
// then a max_S summary row. Seed 0 starts with the canonical
// single-component ensemble (sigma = I/2, fair announcements), whose
// S is exactly 0.
int cmd_hidden_state(int count, std::uint64_t seed, int n_bases,
                     std::ostream& out);

// Runs fn, mapping exceptions to exit code 2 with an error line.
int run_guarded(const std::function<int()>& fn, std::ostream& err);

}  // namespace qsteer::cli
