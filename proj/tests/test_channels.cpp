#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsteer/channels.hpp"
#include "qsteer/rng.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace qsteer;
using testutil::max_abs_diff;
using testutil::min_eigenvalue;

namespace {
constexpr double kPi = std::numbers::pi;

DensityMatrix plus_state() {
  Vec k(2);
  k << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(k);
}

ChannelSpec random_spec(SplitMix64& rng) {
  switch (rng.next() % 3) {
    case 0: return ChannelSpec::identity();
    case 1: return ChannelSpec::dephasing(rng.uniform(0.0, 3.0));
    default:
      return ChannelSpec::exchange_coupling(
          rng.uniform(0.0, 3.0), DensityMatrix{oracle::random_qubit_state(rng)});
  }
}
}  // namespace

TEST_CASE("channel construction validates rates and the ancilla") {
  CHECK_THROWS_AS(ChannelSpec::dephasing(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(ChannelSpec::exchange_coupling(-1.0), std::invalid_argument);
  CHECK_NOTHROW(ChannelSpec::dephasing(0.0));
  CHECK(ChannelSpec::identity().rate() == 0.0);
  CHECK(ChannelSpec::dephasing(0.7).rate() == 0.7);
}

TEST_CASE("identity channel returns the state unchanged") {
  SplitMix64 rng(21);
  const DensityMatrix rho{oracle::random_qubit_state(rng)};
  CHECK(max_abs_diff(apply(ChannelSpec::identity(), rho, 2.5).matrix(),
                     rho.matrix()) == 0.0);
  CHECK_THROWS_AS(apply(ChannelSpec::identity(), rho, -1.0),
                  std::invalid_argument);
}

TEST_CASE("dephasing damps coherences and freezes populations") {
  const ChannelSpec spec = ChannelSpec::dephasing(1.0);

  // gamma t = ln 2 halves the |+> coherence to 1/4.
  const DensityMatrix out = apply(spec, plus_state(), std::log(2.0));
  CHECK_CLOSE(out.entry(0, 1).real(), 0.25, 1e-12);
  CHECK_CLOSE(out.entry(0, 0).real(), 0.5, 1e-12);

  SplitMix64 rng(22);
  for (int i = 0; i < 200; ++i) {
    const Mat rho = oracle::random_qubit_state(rng);
    const double gamma = rng.uniform(0.0, 2.0);
    const double t = rng.uniform(0.0, 3.0);
    const Mat got = apply(ChannelSpec::dephasing(gamma), DensityMatrix{rho}, t).matrix();
    CHECK(max_abs_diff(got, oracle::dephase(rho, gamma, t)) <= 1e-12);
  }

  // Diagonal states are fixed points.
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  CHECK(max_abs_diff(apply(spec, DensityMatrix{diag}, 5.0).matrix(), diag) == 0.0);
}

TEST_CASE("dephasing is a semigroup in the dwell time") {
  SplitMix64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const double gamma = rng.uniform(0.0, 2.0);
    const ChannelSpec spec = ChannelSpec::dephasing(gamma);
    const DensityMatrix rho{oracle::random_qubit_state(rng)};
    const double t1 = rng.uniform(0.0, 2.0);
    const double t2 = rng.uniform(0.0, 2.0);
    const Mat split = apply(spec, apply(spec, rho, t1), t2).matrix();
    const Mat whole = apply(spec, rho, t1 + t2).matrix();
    CHECK(max_abs_diff(split, whole) <= 1e-12);
  }
}

TEST_CASE("exchange coupling matches the hand-built joint unitary") {
  SplitMix64 rng(24);
  for (int i = 0; i < 100; ++i) {
    const double coupling = rng.uniform(0.0, 3.0);
    const double t = rng.uniform(0.0, 4.0);
    const Mat ancilla = oracle::random_qubit_state(rng);
    const Mat rho = oracle::random_qubit_state(rng);

    const Mat u = oracle::exchange_unitary(coupling, t);
    const Mat joint = oracle::kron4(rho, ancilla);
    const Mat evolved = u * joint * u.adjoint();
    Mat reduced = Mat::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int k = 0; k < 2; ++k) reduced(a, b) += evolved(2 * a + k, 2 * b + k);

    const ChannelSpec spec =
        ChannelSpec::exchange_coupling(coupling, DensityMatrix{ancilla});
    CHECK(max_abs_diff(apply(spec, DensityMatrix{rho}, t).matrix(), reduced) <=
          1e-12);
  }
}

TEST_CASE("full swap empties the qubit into a fresh down-mode ancilla") {
  const double coupling = 1.3;
  const ChannelSpec spec = ChannelSpec::exchange_coupling(coupling);
  const DensityMatrix up = DensityMatrix::basis_state(2, 0);
  const DensityMatrix after = apply(spec, up, kPi / (2.0 * coupling));
  CHECK(max_abs_diff(after.matrix(), DensityMatrix::basis_state(2, 1).matrix()) <=
        1e-10);

  // |down> with a down ancilla is stationary.
  const DensityMatrix down = DensityMatrix::basis_state(2, 1);
  CHECK(max_abs_diff(apply(spec, down, 2.7).matrix(), down.matrix()) <= 1e-12);
}

TEST_CASE("exchange reduced state is 2 pi / J periodic; the half period flips "
          "the coherence sign") {
  SplitMix64 rng(25);
  for (int i = 0; i < 100; ++i) {
    const double coupling = rng.uniform(0.1, 3.0);
    const ChannelSpec spec = ChannelSpec::exchange_coupling(coupling);
    const DensityMatrix rho{oracle::random_qubit_state(rng)};
    const double t = rng.uniform(0.0, 3.0);

    const Mat now = apply(spec, rho, t).matrix();
    const Mat full = apply(spec, rho, t + 2.0 * kPi / coupling).matrix();
    CHECK(max_abs_diff(now, full) <= 1e-10);

    // At t + pi/J the populations recur but the off-diagonal is negated:
    // the up-down <-> down-down coherence crosses the two invariant
    // subspaces of the joint unitary and picks up its relative sign.
    const Mat half = apply(spec, rho, t + kPi / coupling).matrix();
    CHECK_CLOSE(half(0, 0).real(), now(0, 0).real(), 1e-10);
    CHECK_CLOSE(half(0, 1).real(), -now(0, 1).real(), 1e-10);
    CHECK_CLOSE(half(0, 1).imag(), -now(0, 1).imag(), 1e-10);
  }
}

TEST_CASE("lindblad_rhs: traceless, Hermitian, zero on diagonal states") {
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  CHECK(lindblad_rhs(diag, 1.5).cwiseAbs().maxCoeff() <= 1e-15);

  // |+> coherence decays at rate gamma: d rho01 / dt = -gamma rho01.
  const double gamma = 0.8;
  const Mat rhs = lindblad_rhs(plus_state().matrix(), gamma);
  CHECK_CLOSE(rhs(0, 1).real(), -gamma * 0.5, 1e-12);
  CHECK_CLOSE(rhs(0, 0).real(), 0.0, 1e-15);

  SplitMix64 rng(26);
  for (int i = 0; i < 200; ++i) {
    const Mat rho = oracle::random_qubit_state(rng);
    const Mat r = lindblad_rhs(rho, rng.uniform(0.0, 3.0));
    CHECK(std::abs(r.trace()) <= 1e-14);
    CHECK(is_hermitian(r, 1e-14));
  }
}

TEST_CASE("liouville_rhs: commutator form, zero on stationary states") {
  const Mat down_down =
      tensor(DensityMatrix::basis_state(2, 1), DensityMatrix::basis_state(2, 1))
          .matrix();
  CHECK(liouville_rhs(down_down, 2.0).cwiseAbs().maxCoeff() <= 1e-15);

  SplitMix64 rng(27);
  const Mat joint = oracle::random_state(rng, 4);
  CHECK(liouville_rhs(joint, 0.0).cwiseAbs().maxCoeff() <= 1e-15);

  for (int i = 0; i < 200; ++i) {
    const Mat rho = oracle::random_state(rng, 4);
    const Mat r = liouville_rhs(rho, rng.uniform(0.0, 3.0));
    CHECK(std::abs(r.trace()) <= 1e-14);
    CHECK(is_hermitian(r, 1e-13));
  }
}

TEST_CASE("integrator refuses oversized steps and names the requirement") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  const ChannelSpec spec = ChannelSpec::dephasing(2.0);
  try {
    integrate_fixed_step(spec, rho, 10.0, IntegratorConfig{100});
    FAIL("expected std::invalid_argument");
  } catch (const std::invalid_argument& e) {
    // rate * t = 20, so at least 201 steps are needed.
    CHECK(std::string(e.what()).find("201") != std::string::npos);
  }
  CHECK_THROWS_AS(
      integrate_fixed_step(spec, rho, 1.0, IntegratorConfig{0}),
      std::invalid_argument);
}

TEST_CASE("integrator reproduces the closed forms") {
  SUBCASE("zero dwell time returns the input exactly") {
    const DensityMatrix rho = plus_state();
    const Mat out = integrate_fixed_step(ChannelSpec::dephasing(1.0), rho, 0.0,
                                         IntegratorConfig{10})
                        .matrix();
    CHECK(max_abs_diff(out, rho.matrix()) == 0.0);
  }

  SUBCASE("dephasing grid") {
    const double gamma = 1.0;
    const ChannelSpec spec = ChannelSpec::dephasing(gamma);
    const DensityMatrix rho = plus_state();
    for (int k = 0; k <= 10; ++k) {
      const double t = 3.0 * k / 10.0;
      const Mat numeric =
          integrate_fixed_step(spec, rho, t, IntegratorConfig{10000}).matrix();
      CHECK(max_abs_diff(numeric, apply(spec, rho, t).matrix()) <= 1e-8);
    }
  }

  SUBCASE("exchange grid") {
    const double coupling = 1.0;
    const ChannelSpec spec = ChannelSpec::exchange_coupling(coupling);
    SplitMix64 rng(28);
    const DensityMatrix rho{oracle::random_qubit_state(rng)};
    for (int k = 0; k <= 10; ++k) {
      const double t = 2.0 * kPi * k / 10.0;
      const Mat numeric =
          integrate_fixed_step(spec, rho, t, IntegratorConfig{10000}).matrix();
      CHECK(max_abs_diff(numeric, apply(spec, rho, t).matrix()) <= 1e-8);
    }
  }
}

TEST_CASE("apply and integrate keep states physical across random draws") {
  SplitMix64 rng(29);
  for (int i = 0; i < 1000; ++i) {
    const ChannelSpec spec = random_spec(rng);
    const DensityMatrix rho{oracle::random_qubit_state(rng)};
    const double t = rng.uniform(0.0, 4.0);

    const Mat exact = apply(spec, rho, t).matrix();
    CHECK(std::abs(exact.trace().real() - 1.0) <= 1e-10);
    CHECK(is_hermitian(exact, 1e-12));
    CHECK(min_eigenvalue(exact) >= -1e-8);

    const long steps =
        std::max<long>(50, static_cast<long>(spec.rate() * t / 0.05) + 1);
    const Mat numeric =
        integrate_fixed_step(spec, rho, t, IntegratorConfig{steps}).matrix();
    CHECK(std::abs(numeric.trace().real() - 1.0) <= 1e-10);
    CHECK(is_hermitian(numeric, 1e-12));
    CHECK(min_eigenvalue(numeric) >= -1e-8);
  }
}
