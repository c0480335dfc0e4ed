#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qsteer {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Absolute entrywise tolerance for matrix equality.
inline constexpr double kEntryTol = 1e-12;
// Floor on the smallest eigenvalue of a state (roundoff slack).
inline constexpr double kPsdTol = 1e-10;
// Tolerance on U^dag U = I.
inline constexpr double kUnitaryTol = 1e-10;
// Measurement branches below this probability are dropped.
inline constexpr double kBranchTol = 1e-12;

bool approx_equal(const Mat& a, const Mat& b, double tol = kEntryTol);
bool is_hermitian(const Mat& m, double tol = kEntryTol);

const Mat& pauli_x();
const Mat& pauli_y();
const Mat& pauli_z();
Mat identity_matrix(Eigen::Index dim);
Mat sigma_plus();   // |up><down|, basis order (up, down)
Mat sigma_minus();  // |down><up|

// Kronecker product; index convention (i, k) -> 2*i + k, i.e. the
// two-qubit basis order (up up, up down, down up, down down).
Mat kron(const Mat& a, const Mat& b);

// Qubit (or two-qubit) state. Construction validates Hermiticity and
// unit trace to 1e-12 and smallest eigenvalue >= -1e-10; dimension
// must be 2 or 4. Throws std::invalid_argument otherwise.
class DensityMatrix {
 public:
  explicit DensityMatrix(Mat m);

  const Mat& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  Complex entry(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  static DensityMatrix maximally_mixed(Eigen::Index dim);
  // |index><index| in the computational basis (0 = up, 1 = down).
  static DensityMatrix basis_state(Eigen::Index dim, Eigen::Index index);
  // Normalizes the ket, then forms |k><k|.
  static DensityMatrix pure(const Vec& ket);

 private:
  Mat m_;
};

enum class BasisLabel { X, Y, Z };

// Two-outcome projective measurement on a qubit. The projectors must
// resolve the identity (1e-12) and be mutually orthogonal (1e-12);
// each is stored as a rank-1 state.
class MeasurementBasis {
 public:
  MeasurementBasis(BasisLabel label, DensityMatrix plus, DensityMatrix minus);

  static MeasurementBasis pauli(BasisLabel label);

  BasisLabel label() const { return label_; }
  // outcome is +1 or -1.
  const DensityMatrix& projector(int outcome) const;
  // Pi_plus - Pi_minus.
  Mat observable() const;

 private:
  BasisLabel label_;
  DensityMatrix plus_;
  DensityMatrix minus_;
};

struct MeasurementBranch {
  int outcome;  // +1 or -1
  double probability;
  DensityMatrix post_state;
};

// tensor(a, b): 4x4 joint state of two qubits, qubit 1 major.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Trace over the second qubit of a 4x4 state.
DensityMatrix partial_trace_second(const DensityMatrix& rho);

// Projective measurement. Branches are listed in outcome order (+1, -1);
// branches with probability < 1e-12 are omitted. Probabilities of the
// returned branches sum to 1 within 1e-12.
std::vector<MeasurementBranch> measure(const DensityMatrix& rho,
                                       const MeasurementBasis& basis);

// <Pi_plus - Pi_minus> in rho, clamped to [-1, 1].
double expectation(const DensityMatrix& rho, const MeasurementBasis& basis);

// exp(-i H t) via Hermitian eigendecomposition (hbar = 1). H must be
// Hermitian within 1e-12.
Mat unitary_from_hamiltonian(const Mat& hamiltonian, double t);

// U rho U^dag. U must be unitary within 1e-10 and match rho's dimension.
DensityMatrix evolve_unitary(const DensityMatrix& rho, const Mat& unitary);

}  // namespace qsteer
