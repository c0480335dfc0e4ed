#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsteer/channels.hpp"
#include "qsteer/cloak.hpp"

namespace qsteer::cli {

enum class Scenario { Identity, Dephasing, Coupling };

// One run description shared by every subcommand. Geometry lengths are
// in units of 1/k; the ray speed is omega / k. Defaults give the unit
// shell (a = R/2, R = 1) inside a +-5 aperture at unit speed.
struct ScenarioConfig {
  Scenario scenario = Scenario::Identity;
  std::optional<double> gamma;     // dephasing rate
  std::optional<double> coupling;  // exchange rate J
  double inner_radius = 0.5;       // a
  double outer_radius = 1.0;       // R
  double half_span = 5.0;          // L
  double wavenumber = 1.0;         // k
  double angular_frequency = 1.0;  // omega
  std::vector<double> y1_grid;
  std::vector<double> t_grid;
  int n_bases = 2;  // 2 = {X, Z}, 3 = {X, Y, Z}
  std::uint64_t shots = 0;  // 0 = exact only
  std::uint64_t seed = 1;

  double speed() const { return angular_frequency / wavenumber; }
  CloakGeometry geometry() const;
  // gamma, J, or 0; requires the matching rate to be set.
  double rate() const;
  ChannelSpec channel() const;
  const char* scenario_name() const;
};

// Grid syntax: "v1,v2,..." or "linspace:lo:hi:count" (inclusive ends).
std::vector<double> parse_grid(const std::string& text);

// Sets one configuration key from its text value; throws
// std::invalid_argument naming the key on anything malformed. Keys:
// scenario, gamma, J, a, R, L, k, omega, y1_grid, t_grid, bases,
// shots, seed.
void apply_key(ScenarioConfig& cfg, const std::string& key,
               const std::string& value);

// `key = value` lines, '#' starts a comment, blank lines ignored.
// Errors carry the file path and line number.
void apply_config_file(ScenarioConfig& cfg, const std::string& path);
void apply_config_stream(ScenarioConfig& cfg, std::istream& in,
                         const std::string& origin);

// Shortest round-trippable decimal used in every CSV cell.
std::string format_number(double v);

}  // namespace qsteer::cli
