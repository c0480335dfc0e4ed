#pragma once

#include <cstdint>
#include <vector>

namespace qsteer {

struct ObservationRecord {
  double dwell_time = 0.0;
  double S = 0.0;
  double std_error = 0.0;   // 0 marks an exact value
  std::uint64_t shots = 0;  // 0 marks an exact value
};

struct ObservationSet {
  std::vector<ObservationRecord> records;
};

enum class Decision { FreeSpace, DynamicsDetected };

struct RecordFlags {
  // S exceeds the classical ceiling 1 beyond z sigma.
  bool violates_classical_bound = false;
  // |S - N| within z sigma + abs_tol of the unperturbed maximum.
  bool consistent_with_max = false;
  double deviation = 0.0;  // |S - N|
};

struct Verdict {
  Decision decision = Decision::FreeSpace;
  double max_deviation = 0.0;
  std::vector<RecordFlags> per_record;
};

// FreeSpace iff every record sits at the unperturbed maximum S = N
// within its own statistical allowance. Any drop below flags dynamics
// inside the shell; the classical-bound flag separates "still steerable"
// from "explainable by a hidden state".
Verdict detect(const ObservationSet& obs, int n_settings,
               double abs_tol = 1e-6, double z = 3.0);

struct FitResult {
  double rate = 0.0;  // recovered gamma or J
  // Residual sum of squares of S against the fitted curve, over the
  // records the fit used.
  double rss = 0.0;
  // Indices of records the fit had to drop (dephasing: S <= 1, where
  // the log-linear form is undefined).
  std::vector<std::size_t> excluded;
};

// Weighted through-origin regression of ln(S - 1) on -2 t: exact for
// data on 1 + exp(-2 gamma t). Weights are the inverse delta-method
// variances ((S - 1) / std_error)^2 when std_error > 0, else uniform.
// Needs >= 2 usable records with distinct positive dwell times.
FitResult fit_dephasing(const ObservationSet& obs);

// Grid scan (1000 points on [0, coupling_max]) plus golden-section
// refinement of the best bracket; ties resolve toward smaller J.
// coupling_max must respect the sampling: J <= pi / (2 min-spacing of
// distinct dwell times). Needs >= 3 records.
FitResult fit_coupling(const ObservationSet& obs, double coupling_max);

}  // namespace qsteer
