#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qsteer/channels.hpp"
#include "qsteer/qops.hpp"

namespace qsteer {

// Temporal steering run: Alice measures the initial state in basis i at
// t = 0, the collapsed state rides the channel for the dwell time, Bob
// measures in the same basis. S = sum_i sum_a P(a) <B_i>_a^2. Classical
// (hidden-state) ceiling is 1; the quantum ceiling is N.

// Pairwise tolerance on |<e_a^i|e_b^j>|^2 = 1/2 for distinct settings.
inline constexpr double kMubTol = 1e-10;

struct SteeringTask {
  // Bases must be pairwise mutually unbiased, N in {2, 3}.
  SteeringTask(ChannelSpec channel, std::vector<MeasurementBasis> bases,
               double dwell_time);
  SteeringTask(ChannelSpec channel, DensityMatrix initial_state,
               std::vector<MeasurementBasis> bases, double dwell_time);

  ChannelSpec channel;
  DensityMatrix initial_state;  // defaults to I/2
  std::vector<MeasurementBasis> bases;
  double dwell_time;
};

enum class EstimateMode { Exact, Sampled };

struct SteeringEstimate {
  std::vector<double> per_basis_terms;
  double value = 0.0;  // S, the sum of the terms
  EstimateMode mode = EstimateMode::Exact;
  std::uint64_t shots_per_basis = 0;  // 0 for exact
  double std_error = 0.0;             // 0 for exact
  // (basis index, outcome) cells that received zero samples; the basis
  // term was computed from the remaining cells.
  std::vector<std::pair<int, int>> empty_cells;
};

// {X, Z} for n = 2; {X, Y, Z} for n = 3.
std::vector<MeasurementBasis> default_bases(int n);

// Basis conjugated by the rotation exp(-i theta sigma_y / 2).
MeasurementBasis rotate_about_y(const MeasurementBasis& basis, double theta);

// Exact S from the channel's closed-form propagation.
SteeringEstimate steering_exact(const SteeringTask& task);

// Same protocol through an arbitrary propagator rho -> rho(t). Used to
// probe the quantum bound with channels beyond the two scenarios and to
// drive the protocol through the numerical integrator.
using Propagator =
    std::function<DensityMatrix(const DensityMatrix& rho, double t)>;
SteeringEstimate steering_exact_with(const Propagator& propagate,
                                     const DensityMatrix& initial_state,
                                     const std::vector<MeasurementBasis>& bases,
                                     double dwell_time);

// Alice keeps the task bases; Bob measures them conjugated by an
// exp(-i theta sigma_y / 2) rotation (clock misalignment probe).
SteeringEstimate steering_exact_misaligned(const SteeringTask& task,
                                           double rotation_angle);

// Finite-statistics estimate: per basis, Alice's outcome is drawn from
// the exact P(a), Bob's from the exact conditional P(b | a), and the
// plug-in estimator uses the empirical frequencies. Deterministic in
// (task, shots, seed) regardless of call order; shots >= 100. The
// plug-in estimate is biased high by O(1/shots); the bias is reported
// through std_error rather than corrected. std_error is the delta-method
// propagation of the multinomial cell variances.
SteeringEstimate steering_sampled(const SteeringTask& task,
                                  std::uint64_t shots_per_basis,
                                  std::uint64_t seed);

// 1 + exp(-2 gamma t): two-setting {X, Z} value under pure dephasing.
double dephasing_S_closed_form(double gamma, double t);

// (1/4)(5 + 2 cos(2 J t) + cos(4 J t)): two-setting value under exchange
// coupling with an empty ancilla. Minimum 7/8 at J t = pi/3, 2 pi/3.
double coupling_S_closed_form(double coupling, double t);

// One classical explanation Bob could hold: with weight `weight` the
// qubit is in `bob_state` and Alice announces +1 in basis i with
// probability alice_prob_plus[i].
struct HiddenStateComponent {
  double weight;
  std::vector<double> alice_prob_plus;
  DensityMatrix bob_state;
};

struct HiddenStateEnsemble {
  // Weights must be >= 0 and sum to 1 within 1e-12; probabilities in
  // [0, 1]; one announcement probability per basis.
  explicit HiddenStateEnsemble(std::vector<HiddenStateComponent> components);
  std::vector<HiddenStateComponent> components;
};

// S achievable by the ensemble: cells with zero announcement probability
// contribute zero. Bounded by 1 for any ensemble.
double hidden_state_S(const HiddenStateEnsemble& ensemble,
                      const std::vector<MeasurementBasis>& bases);

}  // namespace qsteer
