#pragma once

#include <variant>

#include "qsteer/qops.hpp"

namespace qsteer {

// hbar = 1 throughout: rates (gamma, J) are inverse times.

// J (sigma+ (x) sigma- + sigma- (x) sigma+) acting on qubit (x) ancilla.
Mat exchange_hamiltonian(double coupling);

// Open-system map the qubit traverses while inside the shell. One of:
// no evolution, pure dephasing at rate gamma, or coherent exchange with
// a fresh ancilla mode at rate J.
class ChannelSpec {
 public:
  struct Identity {};
  struct Dephasing {
    double gamma;
  };
  struct ExchangeCoupling {
    double coupling;
    DensityMatrix ancilla;
  };
  using Variant = std::variant<Identity, Dephasing, ExchangeCoupling>;

  static ChannelSpec identity();
  static ChannelSpec dephasing(double gamma);
  // Ancilla defaults to |down><down| (empty mode).
  static ChannelSpec exchange_coupling(double coupling);
  static ChannelSpec exchange_coupling(double coupling, DensityMatrix ancilla);

  const Variant& variant() const { return v_; }
  // gamma, J, or 0; sets the integrator step bound.
  double rate() const;

 private:
  explicit ChannelSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct IntegratorConfig {
  long steps = 1000;
};

// Evolves rho for a dwell time t >= 0 using the closed-form solution:
// dephasing scales the off-diagonals by exp(-gamma t); exchange forms
// rho (x) ancilla, conjugates by exp(-i H t), and traces out the ancilla.
// t is always the total dwell time from the initial joint state; the
// exchange map must not be composed from shorter reduced segments.
DensityMatrix apply(const ChannelSpec& spec, const DensityMatrix& rho,
                    double t);

// Dephasing generator (gamma/4)(2 sz rho sz - sz^2 rho - rho sz^2).
// Traceless and Hermitian for Hermitian input.
Mat lindblad_rhs(const Mat& rho, double gamma);

// Joint von Neumann generator -i [H, rho12] for the exchange Hamiltonian.
Mat liouville_rhs(const Mat& rho12, double coupling);

// Fixed-step RK4 on the matching generator; the joint state is
// integrated for exchange and the ancilla traced out at the end.
// Requires rate * t / steps < 0.1; the error names the minimum step
// count. The output is re-Hermitized before validation. t = 0 returns
// the input exactly.
DensityMatrix integrate_fixed_step(const ChannelSpec& spec,
                                   const DensityMatrix& rho, double t,
                                   const IntegratorConfig& config);

}  // namespace qsteer
