#include "qsteer/steering.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qsteer/rng.hpp"

namespace qsteer {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void validate_bases(const std::vector<MeasurementBasis>& bases) {
  const int n = static_cast<int>(bases.size());
  require(n == 2 || n == 3, "steering: number of settings must be 2 or 3");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int a : {+1, -1}) {
        for (int b : {+1, -1}) {
          const double overlap = (bases[static_cast<std::size_t>(i)].projector(a).matrix() *
                                  bases[static_cast<std::size_t>(j)].projector(b).matrix())
                                     .trace()
                                     .real();
          require(std::abs(overlap - 0.5) <= kMubTol,
                  "steering: settings " + std::to_string(i) + " and " +
                      std::to_string(j) + " are not mutually unbiased");
        }
      }
    }
  }
}

SteeringEstimate make_exact(std::vector<double> terms) {
  SteeringEstimate est;
  est.per_basis_terms = std::move(terms);
  est.value = std::accumulate(est.per_basis_terms.begin(),
                              est.per_basis_terms.end(), 0.0);
  est.mode = EstimateMode::Exact;
  return est;
}

// Shared exact protocol; Bob's setting may differ from Alice's.
std::vector<double> exact_terms(const Propagator& propagate,
                                const DensityMatrix& initial_state,
                                const std::vector<MeasurementBasis>& alice,
                                const std::vector<MeasurementBasis>& bob,
                                double dwell_time) {
  std::vector<double> terms;
  terms.reserve(alice.size());
  for (std::size_t i = 0; i < alice.size(); ++i) {
    double term = 0.0;
    for (const MeasurementBranch& br : measure(initial_state, alice[i])) {
      const DensityMatrix evolved = propagate(br.post_state, dwell_time);
      const double cond = expectation(evolved, bob[i]);
      term += br.probability * cond * cond;
    }
    terms.push_back(term);
  }
  return terms;
}

}  // namespace

SteeringTask::SteeringTask(ChannelSpec channel_,
                           std::vector<MeasurementBasis> bases_,
                           double dwell_time_)
    : SteeringTask(std::move(channel_), DensityMatrix::maximally_mixed(2),
                   std::move(bases_), dwell_time_) {}

SteeringTask::SteeringTask(ChannelSpec channel_, DensityMatrix initial_state_,
                           std::vector<MeasurementBasis> bases_,
                           double dwell_time_)
    : channel(std::move(channel_)),
      initial_state(std::move(initial_state_)),
      bases(std::move(bases_)),
      dwell_time(dwell_time_) {
  require(initial_state.dim() == 2, "SteeringTask: initial state must be 2x2");
  require(dwell_time >= 0.0, "SteeringTask: dwell time must be >= 0");
  validate_bases(bases);
}

std::vector<MeasurementBasis> default_bases(int n) {
  require(n == 2 || n == 3, "default_bases: n must be 2 or 3");
  std::vector<MeasurementBasis> bases;
  bases.push_back(MeasurementBasis::pauli(BasisLabel::X));
  if (n == 3) bases.push_back(MeasurementBasis::pauli(BasisLabel::Y));
  bases.push_back(MeasurementBasis::pauli(BasisLabel::Z));
  return bases;
}

MeasurementBasis rotate_about_y(const MeasurementBasis& basis, double theta) {
  Mat r(2, 2);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  r << c, -s, s, c;
  return MeasurementBasis(
      basis.label(),
      DensityMatrix(r * basis.projector(+1).matrix() * r.adjoint()),
      DensityMatrix(r * basis.projector(-1).matrix() * r.adjoint()));
}

SteeringEstimate steering_exact(const SteeringTask& task) {
  const Propagator propagate = [&task](const DensityMatrix& rho, double t) {
    return apply(task.channel, rho, t);
  };
  return make_exact(exact_terms(propagate, task.initial_state, task.bases,
                                task.bases, task.dwell_time));
}

SteeringEstimate steering_exact_with(const Propagator& propagate,
                                     const DensityMatrix& initial_state,
                                     const std::vector<MeasurementBasis>& bases,
                                     double dwell_time) {
  require(initial_state.dim() == 2,
          "steering_exact_with: initial state must be 2x2");
  require(dwell_time >= 0.0, "steering_exact_with: dwell time must be >= 0");
  validate_bases(bases);
  return make_exact(
      exact_terms(propagate, initial_state, bases, bases, dwell_time));
}

SteeringEstimate steering_exact_misaligned(const SteeringTask& task,
                                           double rotation_angle) {
  std::vector<MeasurementBasis> bob;
  bob.reserve(task.bases.size());
  for (const MeasurementBasis& b : task.bases)
    bob.push_back(rotate_about_y(b, rotation_angle));
  const Propagator propagate = [&task](const DensityMatrix& rho, double t) {
    return apply(task.channel, rho, t);
  };
  return make_exact(exact_terms(propagate, task.initial_state, task.bases, bob,
                                task.dwell_time));
}

SteeringEstimate steering_sampled(const SteeringTask& task,
                                  std::uint64_t shots_per_basis,
                                  std::uint64_t seed) {
  require(shots_per_basis >= 100, "steering_sampled: shots must be >= 100");

  SteeringEstimate est;
  est.mode = EstimateMode::Sampled;
  est.shots_per_basis = shots_per_basis;

  double variance = 0.0;
  for (std::size_t i = 0; i < task.bases.size(); ++i) {
    const MeasurementBasis& basis = task.bases[i];

    // Exact collapse probabilities and Bob conditionals; cells with
    // zero weight never fire because draws live in [0, 1).
    double p_plus = 0.0;
    double bob_plus[2] = {0.0, 0.0};  // P(b = +1 | a), a in {+1, -1}
    {
      const Mat& rho = task.initial_state.matrix();
      for (int ai = 0; ai < 2; ++ai) {
        const int a = ai == 0 ? +1 : -1;
        const Mat& proj = basis.projector(a).matrix();
        Mat num = proj * rho * proj;
        const double pa = num.trace().real();
        if (ai == 0) p_plus = pa;
        if (pa > 0.0) {
          const DensityMatrix evolved =
              apply(task.channel, DensityMatrix(num / pa), task.dwell_time);
          bob_plus[ai] =
              (basis.projector(+1).matrix() * evolved.matrix()).trace().real();
        }
      }
    }

    std::uint64_t count[2] = {0, 0};
    std::int64_t outcome_sum[2] = {0, 0};
    for (std::uint64_t s = 0; s < shots_per_basis; ++s) {
      const double ua = counter_uniform(seed, i, s, 0);
      const int ai = ua < p_plus ? 0 : 1;
      const double ub = counter_uniform(seed, i, s, 1);
      const int b = ub < bob_plus[ai] ? +1 : -1;
      ++count[ai];
      outcome_sum[ai] += b;
    }

    const double n = static_cast<double>(shots_per_basis);
    double term = 0.0;
    double p_hat[2] = {0.0, 0.0};
    double m_hat[2] = {0.0, 0.0};
    for (int ai = 0; ai < 2; ++ai) {
      if (count[ai] == 0) {
        est.empty_cells.emplace_back(static_cast<int>(i), ai == 0 ? +1 : -1);
        continue;
      }
      p_hat[ai] = static_cast<double>(count[ai]) / n;
      m_hat[ai] = static_cast<double>(outcome_sum[ai]) /
                  static_cast<double>(count[ai]);
      term += p_hat[ai] * m_hat[ai] * m_hat[ai];
    }
    est.per_basis_terms.push_back(term);

    // Delta method: binomial spread of P(a) plus the conditional-mean
    // spread inside each cell.
    if (count[0] > 0 && count[1] > 0) {
      const double dp = m_hat[0] * m_hat[0] - m_hat[1] * m_hat[1];
      variance += dp * dp * p_hat[0] * p_hat[1] / n;
    }
    for (int ai = 0; ai < 2; ++ai) {
      if (count[ai] == 0) continue;
      const double g = 2.0 * p_hat[ai] * m_hat[ai];
      variance += g * g * (1.0 - m_hat[ai] * m_hat[ai]) /
                  static_cast<double>(count[ai]);
    }
  }

  est.value = std::accumulate(est.per_basis_terms.begin(),
                              est.per_basis_terms.end(), 0.0);
  est.std_error = std::sqrt(variance);
  return est;
}

double dephasing_S_closed_form(double gamma, double t) {
  require(gamma >= 0.0, "dephasing_S_closed_form: gamma must be >= 0");
  require(t >= 0.0, "dephasing_S_closed_form: t must be >= 0");
  return 1.0 + std::exp(-2.0 * gamma * t);
}

double coupling_S_closed_form(double coupling, double t) {
  require(coupling >= 0.0, "coupling_S_closed_form: coupling must be >= 0");
  require(t >= 0.0, "coupling_S_closed_form: t must be >= 0");
  const double jt = coupling * t;
  return 0.25 * (5.0 + 2.0 * std::cos(2.0 * jt) + std::cos(4.0 * jt));
}

HiddenStateEnsemble::HiddenStateEnsemble(
    std::vector<HiddenStateComponent> components_)
    : components(std::move(components_)) {
  require(!components.empty(), "HiddenStateEnsemble: no components");
  double total = 0.0;
  for (const HiddenStateComponent& c : components) {
    require(c.weight >= 0.0, "HiddenStateEnsemble: negative weight");
    total += c.weight;
    require(!c.alice_prob_plus.empty(),
            "HiddenStateEnsemble: missing announcement probabilities");
    for (double p : c.alice_prob_plus)
      require(p >= 0.0 && p <= 1.0,
              "HiddenStateEnsemble: announcement probability outside [0, 1]");
    require(c.bob_state.dim() == 2,
            "HiddenStateEnsemble: hidden state must be 2x2");
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "HiddenStateEnsemble: weights do not sum to 1 within 1e-12");
}

double hidden_state_S(const HiddenStateEnsemble& ensemble,
                      const std::vector<MeasurementBasis>& bases) {
  validate_bases(bases);
  for (const HiddenStateComponent& c : ensemble.components)
    require(c.alice_prob_plus.size() == bases.size(),
            "hidden_state_S: announcement probabilities do not match settings");

  double total = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (int ai = 0; ai < 2; ++ai) {
      // P(a) <B>_a^2 = (sum_l q_l P_l(a) m_l)^2 / sum_l q_l P_l(a)
      double p = 0.0;
      double num = 0.0;
      for (const HiddenStateComponent& c : ensemble.components) {
        const double pa =
            ai == 0 ? c.alice_prob_plus[i] : 1.0 - c.alice_prob_plus[i];
        const double m = expectation(c.bob_state, bases[i]);
        p += c.weight * pa;
        num += c.weight * pa * m;
      }
      if (p > 0.0) total += num * num / p;
    }
  }
  return total;
}

}  // namespace qsteer
