#include <fstream>
#include <functional>
#include <iostream>
#include <list>
#include <ostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "scenario.hpp"

namespace {

using qsteer::cli::ScenarioConfig;

// Binds one CLI flag per configuration key so the command line and the
// config file share a single validation path. Config file first, then
// any flag the user actually passed.
class ScenarioArgs {
 public:
  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path_,
                   "configuration file with key = value lines");
    add(cmd, "scenario", "--scenario", "identity, dephasing, or coupling");
    add(cmd, "gamma", "--gamma", "dephasing rate");
    add(cmd, "J", "--J", "exchange coupling strength");
    add(cmd, "a", "--a", "inner shell radius");
    add(cmd, "R", "--R", "outer shell radius");
    add(cmd, "L", "--L", "half-length of the traversal window");
    add(cmd, "k", "--k", "carrier wavenumber (sets the speed with omega)");
    add(cmd, "omega", "--omega", "carrier angular frequency");
    add(cmd, "y1_grid", "--y1-grid",
        "impact parameters, comma list or linspace:lo:hi:count");
    add(cmd, "t_grid", "--t-grid",
        "dwell times, comma list or linspace:lo:hi:count");
    add(cmd, "bases", "--bases", "measurement settings, XZ or XYZ");
    add(cmd, "shots", "--shots",
        "samples per measurement setting, 0 for exact values only");
    add(cmd, "seed", "--seed", "base seed for finite-shot sampling");
  }

  ScenarioConfig build() const {
    ScenarioConfig cfg;
    if (!config_path_.empty()) qsteer::cli::apply_config_file(cfg, config_path_);
    for (const Entry& e : entries_)
      if (e.option->count() > 0) qsteer::cli::apply_key(cfg, e.key, e.value);
    return cfg;
  }

 private:
  struct Entry {
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
  };

  void add(CLI::App& cmd, std::string key, const std::string& flag,
           const std::string& help) {
    entries_.push_back({std::move(key), "", nullptr});
    Entry& e = entries_.back();
    e.option = cmd.add_option(flag, e.value, help);
  }

  std::string config_path_;
  std::list<Entry> entries_;
};

int with_output(const std::string& path,
                const std::function<int(std::ostream&)>& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file '" + path + "'");
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Temporal steering of a probe qubit crossing a cloaking shell: exact "
      "and finite-shot steering values, ray geometry, and a detector that "
      "decides from steering data whether the shell is present."};
  app.require_subcommand(1);

  ScenarioArgs sweep_args, traverse_args, traj_args;
  std::string sweep_out, traverse_out, traj_out, hidden_out;

  CLI::App* sweep = app.add_subcommand(
      "sweep", "steering value over a dwell-time grid, CSV to stdout");
  sweep_args.attach(*sweep);
  sweep->add_option("--output", sweep_out, "write CSV here instead of stdout");

  CLI::App* traverse = app.add_subcommand(
      "traverse", "steering value per impact parameter through the shell");
  traverse_args.attach(*traverse);
  traverse->add_option("--output", traverse_out,
                       "write CSV here instead of stdout");

  int samples_inside = 1001;
  CLI::App* traj = app.add_subcommand(
      "trajectories", "piecewise ray paths through the shell, CSV points");
  traj_args.attach(*traj);
  traj->add_option("--samples-inside", samples_inside,
                   "sample count along each mapped chord");
  traj->add_option("--output", traj_out, "write CSV here instead of stdout");

  std::string detect_input;
  qsteer::cli::DetectOptions detect_opt;
  CLI::App* det = app.add_subcommand(
      "detect", "read steering records from CSV and report a verdict");
  det->add_option("input", detect_input, "CSV file of records, - for stdin")
      ->required();
  det->add_option("--N", detect_opt.n_settings,
                  "number of measurement settings behind the data");
  det->add_option("--abs-tol", detect_opt.abs_tol,
                  "absolute slack added to each consistency band");
  det->add_option("--z", detect_opt.z, "z-score width of the consistency band");
  det->add_option("--col-t", detect_opt.col_t, "dwell-time column name");
  det->add_option("--col-s", detect_opt.col_s, "steering-value column name");
  det->add_option("--col-stderr", detect_opt.col_stderr,
                  "standard-error column name");
  det->add_option("--col-shots", detect_opt.col_shots, "shot-count column name");

  int hidden_count = 1000;
  std::uint64_t hidden_seed = 0;
  int hidden_bases = 2;
  CLI::App* hidden = app.add_subcommand(
      "hidden-state", "steering values of random hidden-state ensembles");
  hidden->add_option("--count", hidden_count, "ensembles to draw");
  hidden->add_option("--seed", hidden_seed,
                     "RNG seed, 0 starts with the canonical ensemble");
  hidden->add_option("--N", hidden_bases, "number of measurement settings");
  hidden->add_option("--output", hidden_out,
                     "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return qsteer::cli::run_guarded(
      [&]() -> int {
        if (*sweep)
          return with_output(sweep_out, [&](std::ostream& out) {
            return qsteer::cli::cmd_sweep(sweep_args.build(), out);
          });
        if (*traverse)
          return with_output(traverse_out, [&](std::ostream& out) {
            return qsteer::cli::cmd_traverse(traverse_args.build(), out);
          });
        if (*traj)
          return with_output(traj_out, [&](std::ostream& out) {
            return qsteer::cli::cmd_trajectories(traj_args.build(),
                                                 samples_inside, out);
          });
        if (*det) {
          if (detect_input == "-")
            return qsteer::cli::cmd_detect(std::cin, detect_opt, std::cout);
          std::ifstream in(detect_input);
          if (!in)
            throw std::runtime_error("cannot open input file '" +
                                     detect_input + "'");
          return qsteer::cli::cmd_detect(in, detect_opt, std::cout);
        }
        return with_output(hidden_out, [&](std::ostream& out) {
          return qsteer::cli::cmd_hidden_state(hidden_count, hidden_seed,
                                               hidden_bases, out);
        });
      },
      std::cerr);
}
