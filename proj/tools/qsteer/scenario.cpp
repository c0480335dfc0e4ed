#include "scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsteer::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("key " + key + ": invalid number '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size() || value.find('-') != std::string::npos)
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("key " + key + ": invalid count '" + value + "'");
  }
}

double parse_positive(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (!(v > 0.0))
    throw std::invalid_argument("key " + key + ": must be > 0, got '" + value + "'");
  return v;
}

double parse_rate(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (!(v >= 0.0))
    throw std::invalid_argument("key " + key + ": must be >= 0, got '" + value + "'");
  return v;
}

}  // namespace

CloakGeometry ScenarioConfig::geometry() const {
  return CloakGeometry(inner_radius, outer_radius, half_span, speed());
}

double ScenarioConfig::rate() const {
  switch (scenario) {
    case Scenario::Identity:
      return 0.0;
    case Scenario::Dephasing:
      if (!gamma) throw std::invalid_argument("scenario dephasing requires gamma");
      return *gamma;
    case Scenario::Coupling:
      if (!coupling) throw std::invalid_argument("scenario coupling requires J");
      return *coupling;
  }
  return 0.0;
}

ChannelSpec ScenarioConfig::channel() const {
  switch (scenario) {
    case Scenario::Identity:
      return ChannelSpec::identity();
    case Scenario::Dephasing:
      return ChannelSpec::dephasing(rate());
    case Scenario::Coupling:
      return ChannelSpec::exchange_coupling(rate());
  }
  return ChannelSpec::identity();
}

const char* ScenarioConfig::scenario_name() const {
  switch (scenario) {
    case Scenario::Identity: return "identity";
    case Scenario::Dephasing: return "dephasing";
    case Scenario::Coupling: return "coupling";
  }
  return "identity";
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string spec = trim(text);
  if (spec.empty()) throw std::invalid_argument("grid: empty specification");

  std::vector<double> grid;
  if (spec.rfind("linspace:", 0) == 0) {
    std::stringstream ss(spec.substr(9));
    std::string lo_s, hi_s, count_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
        !std::getline(ss, count_s) || count_s.empty())
      throw std::invalid_argument("grid: expected linspace:lo:hi:count, got '" +
                                  spec + "'");
    const double lo = parse_double("grid", lo_s);
    const double hi = parse_double("grid", hi_s);
    const std::uint64_t count = parse_u64("grid", count_s);
    if (count == 0) throw std::invalid_argument("grid: count must be >= 1");
    if (count == 1) return {lo};
    grid.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(count - 1));
    return grid;
  }

  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_double("grid", trim(item)));
  if (grid.empty()) throw std::invalid_argument("grid: empty specification");
  return grid;
}

void apply_key(ScenarioConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "scenario") {
    if (value == "identity") cfg.scenario = Scenario::Identity;
    else if (value == "dephasing") cfg.scenario = Scenario::Dephasing;
    else if (value == "coupling") cfg.scenario = Scenario::Coupling;
    else
      throw std::invalid_argument(
          "key scenario: expected identity, dephasing or coupling, got '" +
          value + "'");
  } else if (key == "gamma") {
    cfg.gamma = parse_rate(key, value);
  } else if (key == "J") {
    cfg.coupling = parse_rate(key, value);
  } else if (key == "a") {
    cfg.inner_radius = parse_positive(key, value);
  } else if (key == "R") {
    cfg.outer_radius = parse_positive(key, value);
  } else if (key == "L") {
    cfg.half_span = parse_positive(key, value);
  } else if (key == "k") {
    cfg.wavenumber = parse_positive(key, value);
  } else if (key == "omega") {
    cfg.angular_frequency = parse_positive(key, value);
  } else if (key == "y1_grid") {
    cfg.y1_grid = parse_grid(value);
  } else if (key == "t_grid") {
    cfg.t_grid = parse_grid(value);
  } else if (key == "bases") {
    if (value == "XZ") cfg.n_bases = 2;
    else if (value == "XYZ") cfg.n_bases = 3;
    else
      throw std::invalid_argument("key bases: expected XZ or XYZ, got '" +
                                  value + "'");
  } else if (key == "shots") {
    cfg.shots = parse_u64(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else {
    throw std::invalid_argument("unknown configuration key '" + key + "'");
  }
}

void apply_config_stream(ScenarioConfig& cfg, std::istream& in,
                         const std::string& origin) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + " line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument(origin + " line " + std::to_string(line_no) +
                                  ": missing key");
    try {
      apply_key(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(origin + " line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
}

void apply_config_file(ScenarioConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  apply_config_stream(cfg, in, path);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace qsteer::cli
