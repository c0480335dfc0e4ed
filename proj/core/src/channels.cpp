#include "qsteer/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsteer {

namespace {

const Complex kI{0.0, 1.0};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Classic RK4 with fixed step on an autonomous matrix ODE.
template <typename Rhs>
Mat rk4(Mat y, double t, long steps, const Rhs& f) {
  const double h = t / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const Mat k1 = f(y);
    const Mat k2 = f(y + (h / 2.0) * k1);
    const Mat k3 = f(y + (h / 2.0) * k2);
    const Mat k4 = f(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

Mat rehermitize(const Mat& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

Mat exchange_hamiltonian(double coupling) {
  require(coupling >= 0.0, "exchange_hamiltonian: coupling must be >= 0");
  return coupling *
         (kron(sigma_plus(), sigma_minus()) + kron(sigma_minus(), sigma_plus()));
}

ChannelSpec ChannelSpec::identity() { return ChannelSpec(Variant{Identity{}}); }

ChannelSpec ChannelSpec::dephasing(double gamma) {
  require(gamma >= 0.0, "ChannelSpec::dephasing: gamma must be >= 0");
  return ChannelSpec(Variant{Dephasing{gamma}});
}

ChannelSpec ChannelSpec::exchange_coupling(double coupling) {
  return exchange_coupling(coupling, DensityMatrix::basis_state(2, 1));
}

ChannelSpec ChannelSpec::exchange_coupling(double coupling,
                                           DensityMatrix ancilla) {
  require(coupling >= 0.0, "ChannelSpec::exchange_coupling: coupling must be >= 0");
  require(ancilla.dim() == 2,
          "ChannelSpec::exchange_coupling: ancilla must be a qubit state");
  return ChannelSpec(Variant{ExchangeCoupling{coupling, std::move(ancilla)}});
}

double ChannelSpec::rate() const {
  return std::visit(
      [](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Identity>) return 0.0;
        if constexpr (std::is_same_v<T, Dephasing>) return c.gamma;
        if constexpr (std::is_same_v<T, ExchangeCoupling>) return c.coupling;
      },
      v_);
}

DensityMatrix apply(const ChannelSpec& spec, const DensityMatrix& rho,
                    double t) {
  require(t >= 0.0, "apply: dwell time must be >= 0");
  require(rho.dim() == 2, "apply: state must be 2x2");
  return std::visit(
      [&](const auto& c) -> DensityMatrix {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ChannelSpec::Identity>) {
          return rho;
        } else if constexpr (std::is_same_v<T, ChannelSpec::Dephasing>) {
          Mat m = rho.matrix();
          const double decay = std::exp(-c.gamma * t);
          m(0, 1) *= decay;
          m(1, 0) *= decay;
          return DensityMatrix(std::move(m));
        } else {
          const Mat u = unitary_from_hamiltonian(exchange_hamiltonian(c.coupling), t);
          return partial_trace_second(evolve_unitary(tensor(rho, c.ancilla), u));
        }
      },
      spec.variant());
}

Mat lindblad_rhs(const Mat& rho, double gamma) {
  require(rho.rows() == 2 && rho.cols() == 2, "lindblad_rhs: state must be 2x2");
  require(gamma >= 0.0, "lindblad_rhs: gamma must be >= 0");
  const Mat& sz = pauli_z();
  // sz^2 = I, so the anticommutator part is just -2 rho.
  return (gamma / 4.0) * (2.0 * sz * rho * sz - 2.0 * rho);
}

Mat liouville_rhs(const Mat& rho12, double coupling) {
  require(rho12.rows() == 4 && rho12.cols() == 4,
          "liouville_rhs: joint state must be 4x4");
  const Mat h = exchange_hamiltonian(coupling);
  return -kI * (h * rho12 - rho12 * h);
}

DensityMatrix integrate_fixed_step(const ChannelSpec& spec,
                                   const DensityMatrix& rho, double t,
                                   const IntegratorConfig& config) {
  require(t >= 0.0, "integrate_fixed_step: dwell time must be >= 0");
  require(config.steps >= 1, "integrate_fixed_step: steps must be >= 1");
  require(rho.dim() == 2, "integrate_fixed_step: state must be 2x2");
  const double rate = spec.rate();
  if (rate * t / static_cast<double>(config.steps) >= 0.1) {
    const long needed = static_cast<long>(std::floor(rate * t / 0.1)) + 1;
    throw std::invalid_argument(
        "integrate_fixed_step: step too large for rate " + std::to_string(rate) +
        "; need at least " + std::to_string(needed) + " steps");
  }
  if (t == 0.0) return rho;
  return std::visit(
      [&](const auto& c) -> DensityMatrix {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ChannelSpec::Identity>) {
          return rho;
        } else if constexpr (std::is_same_v<T, ChannelSpec::Dephasing>) {
          const double gamma = c.gamma;
          Mat y = rk4(rho.matrix(), t, config.steps,
                      [gamma](const Mat& m) { return lindblad_rhs(m, gamma); });
          return DensityMatrix(rehermitize(y));
        } else {
          const double coupling = c.coupling;
          Mat y = rk4(tensor(rho, c.ancilla).matrix(), t, config.steps,
                      [coupling](const Mat& m) { return liouville_rhs(m, coupling); });
          return partial_trace_second(DensityMatrix(rehermitize(y)));
        }
      },
      spec.variant());
}

}  // namespace qsteer
