#include "qsteer/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace qsteer {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void validate_records(const ObservationSet& obs, const char* who) {
  require(!obs.records.empty(), std::string(who) + ": empty observation set");
  for (const ObservationRecord& r : obs.records) {
    require(r.dwell_time >= 0.0,
            std::string(who) + ": negative dwell time in record");
    require(r.std_error >= 0.0,
            std::string(who) + ": negative std_error in record");
  }
}

double dephasing_model(double gamma, double t) {
  return 1.0 + std::exp(-2.0 * gamma * t);
}

double coupling_model(double j, double t) {
  return 0.25 * (5.0 + 2.0 * std::cos(2.0 * j * t) + std::cos(4.0 * j * t));
}

}  // namespace

Verdict detect(const ObservationSet& obs, int n_settings, double abs_tol,
               double z) {
  validate_records(obs, "detect");
  require(n_settings == 2 || n_settings == 3,
          "detect: number of settings must be 2 or 3");
  require(abs_tol > 0.0, "detect: abs_tol must be > 0");
  require(z > 0.0, "detect: z must be > 0");

  Verdict v;
  v.decision = Decision::FreeSpace;
  const double n = static_cast<double>(n_settings);
  for (const ObservationRecord& r : obs.records) {
    RecordFlags f;
    f.deviation = std::abs(r.S - n);
    f.consistent_with_max = f.deviation <= z * r.std_error + abs_tol;
    f.violates_classical_bound = r.S > 1.0 + z * r.std_error;
    v.max_deviation = std::max(v.max_deviation, f.deviation);
    if (!f.consistent_with_max) v.decision = Decision::DynamicsDetected;
    v.per_record.push_back(f);
  }
  return v;
}

FitResult fit_dephasing(const ObservationSet& obs) {
  validate_records(obs, "fit_dephasing");

  FitResult out;
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < obs.records.size(); ++i) {
    if (obs.records[i].S > 1.0)
      used.push_back(i);
    else
      out.excluded.push_back(i);
  }
  require(!used.empty(),
          "fit_dephasing: unfittable, every record has S <= 1");
  std::set<double> distinct;
  for (std::size_t i : used)
    if (obs.records[i].dwell_time > 0.0)
      distinct.insert(obs.records[i].dwell_time);
  require(distinct.size() >= 2,
          "fit_dephasing: unfittable, need >= 2 usable records with "
          "distinct positive dwell times");

  const bool weighted = std::any_of(used.begin(), used.end(), [&](std::size_t i) {
    return obs.records[i].std_error > 0.0;
  });
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i : used) {
    const ObservationRecord& r = obs.records[i];
    const double x = -2.0 * r.dwell_time;
    const double y = std::log(r.S - 1.0);
    double w = 1.0;
    if (weighted) {
      // var(ln(S - 1)) ~ (std_error / (S - 1))^2; exact records get a
      // variance floor instead of an infinite weight.
      const double rel = r.std_error / (r.S - 1.0);
      w = 1.0 / std::max(rel * rel, 1e-24);
    }
    sxy += w * x * y;
    sxx += w * x * x;
  }
  out.rate = sxy / sxx;
  for (std::size_t i : used) {
    const ObservationRecord& r = obs.records[i];
    const double d = r.S - dephasing_model(out.rate, r.dwell_time);
    out.rss += d * d;
  }
  return out;
}

FitResult fit_coupling(const ObservationSet& obs, double coupling_max) {
  validate_records(obs, "fit_coupling");
  require(obs.records.size() >= 3, "fit_coupling: need >= 3 records");
  require(coupling_max > 0.0, "fit_coupling: coupling_max must be > 0");

  std::set<double> distinct;
  for (const ObservationRecord& r : obs.records) distinct.insert(r.dwell_time);
  require(distinct.size() >= 2,
          "fit_coupling: need >= 2 distinct dwell times");
  double min_spacing = std::numeric_limits<double>::infinity();
  for (auto it = std::next(distinct.begin()); it != distinct.end(); ++it)
    min_spacing = std::min(min_spacing, *it - *std::prev(it));
  const double admissible = std::numbers::pi / (2.0 * min_spacing);
  require(coupling_max <= admissible * (1.0 + 1e-12),
          "fit_coupling: coupling_max undersampled; grid spacing admits at "
          "most " + std::to_string(admissible));

  const auto rss_at = [&](double j) {
    double rss = 0.0;
    for (const ObservationRecord& r : obs.records) {
      const double d = r.S - coupling_model(j, r.dwell_time);
      rss += d * d;
    }
    return rss;
  };

  // Coarse scan; strict < keeps the smallest J on ties.
  constexpr int kGrid = 1000;
  double best_j = 0.0;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGrid; ++k) {
    const double j = coupling_max * static_cast<double>(k) /
                     static_cast<double>(kGrid - 1);
    const double rss = rss_at(j);
    if (rss < best_rss) {
      best_rss = rss;
      best_j = j;
    }
  }

  // Golden-section refinement inside the winning bracket; accepted only
  // on strict improvement so exact grid hits (J = 0 in particular) stay.
  const double step = coupling_max / static_cast<double>(kGrid - 1);
  double lo = std::max(0.0, best_j - step);
  double hi = std::min(coupling_max, best_j + step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = rss_at(c);
  double fd = rss_at(d);
  double cand_j = fc < fd ? c : d;
  double cand_rss = std::min(fc, fd);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, coupling_max);
       ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = rss_at(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = rss_at(d);
    }
    if (fc < cand_rss) {
      cand_rss = fc;
      cand_j = c;
    }
    if (fd < cand_rss) {
      cand_rss = fd;
      cand_j = d;
    }
  }

  FitResult out;
  if (cand_rss < best_rss) {
    out.rate = cand_j;
    out.rss = cand_rss;
  } else {
    out.rate = best_j;
    out.rss = best_rss;
  }
  return out;
}

}  // namespace qsteer
