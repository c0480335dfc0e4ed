#include "qsteer/qops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsteer {

namespace {

const Complex kI{0.0, 1.0};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double max_abs_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

bool approx_equal(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m, m.adjoint()) <= tol;
}

const Mat& pauli_x() {
  static const Mat m = (Mat(2, 2) << 0, 1, 1, 0).finished();
  return m;
}

const Mat& pauli_y() {
  static const Mat m = (Mat(2, 2) << 0, -kI, kI, 0).finished();
  return m;
}

const Mat& pauli_z() {
  static const Mat m = (Mat(2, 2) << 1, 0, 0, -1).finished();
  return m;
}

Mat identity_matrix(Eigen::Index dim) { return Mat::Identity(dim, dim); }

Mat sigma_plus() {
  static const Mat m = (Mat(2, 2) << 0, 1, 0, 0).finished();
  return m;
}

Mat sigma_minus() {
  static const Mat m = (Mat(2, 2) << 0, 0, 1, 0).finished();
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix::DensityMatrix(Mat m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), "DensityMatrix: matrix must be square");
  require(m_.rows() == 2 || m_.rows() == 4,
          "DensityMatrix: dimension must be 2 or 4");
  require(is_hermitian(m_, kEntryTol),
          "DensityMatrix: matrix is not Hermitian within 1e-12");
  require(std::abs(m_.trace() - Complex{1.0, 0.0}) <= kEntryTol,
          "DensityMatrix: trace differs from 1 by more than 1e-12");
  require(min_eigenvalue(m_) >= -kPsdTol,
          "DensityMatrix: smallest eigenvalue below -1e-10");
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  require(dim == 2 || dim == 4, "maximally_mixed: dimension must be 2 or 4");
  return DensityMatrix(Mat::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(Eigen::Index dim, Eigen::Index index) {
  require(dim == 2 || dim == 4, "basis_state: dimension must be 2 or 4");
  require(index >= 0 && index < dim, "basis_state: index out of range");
  Mat m = Mat::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Vec& ket) {
  require(ket.size() == 2 || ket.size() == 4,
          "pure: ket dimension must be 2 or 4");
  const double n = ket.norm();
  require(n > 0.0, "pure: ket must be nonzero");
  Vec k = ket / n;
  return DensityMatrix(k * k.adjoint());
}

MeasurementBasis::MeasurementBasis(BasisLabel label, DensityMatrix plus,
                                   DensityMatrix minus)
    : label_(label), plus_(std::move(plus)), minus_(std::move(minus)) {
  require(plus_.dim() == 2 && minus_.dim() == 2,
          "MeasurementBasis: projectors must be 2x2");
  const Mat sum = plus_.matrix() + minus_.matrix();
  require(approx_equal(sum, Mat::Identity(2, 2), kEntryTol),
          "MeasurementBasis: projectors do not resolve the identity");
  const Mat cross = plus_.matrix() * minus_.matrix();
  require(cross.cwiseAbs().maxCoeff() <= kEntryTol,
          "MeasurementBasis: projectors are not orthogonal");
}

MeasurementBasis MeasurementBasis::pauli(BasisLabel label) {
  const Mat* sigma = nullptr;
  switch (label) {
    case BasisLabel::X: sigma = &pauli_x(); break;
    case BasisLabel::Y: sigma = &pauli_y(); break;
    case BasisLabel::Z: sigma = &pauli_z(); break;
  }
  const Mat eye = Mat::Identity(2, 2);
  return MeasurementBasis(label, DensityMatrix((eye + *sigma) / 2.0),
                          DensityMatrix((eye - *sigma) / 2.0));
}

const DensityMatrix& MeasurementBasis::projector(int outcome) const {
  require(outcome == 1 || outcome == -1,
          "MeasurementBasis::projector: outcome must be +1 or -1");
  return outcome == 1 ? plus_ : minus_;
}

Mat MeasurementBasis::observable() const {
  return plus_.matrix() - minus_.matrix();
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  require(a.dim() == 2 && b.dim() == 2, "tensor: inputs must be 2x2");
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace_second(const DensityMatrix& rho) {
  require(rho.dim() == 4, "partial_trace_second: input must be 4x4");
  const Mat& m = rho.matrix();
  Mat out = Mat::Zero(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      for (Eigen::Index k = 0; k < 2; ++k) out(i, j) += m(2 * i + k, 2 * j + k);
  return DensityMatrix(std::move(out));
}

std::vector<MeasurementBranch> measure(const DensityMatrix& rho,
                                       const MeasurementBasis& basis) {
  require(rho.dim() == 2, "measure: state must be 2x2");
  std::vector<MeasurementBranch> branches;
  for (int outcome : {+1, -1}) {
    const Mat& proj = basis.projector(outcome).matrix();
    Mat num = proj * rho.matrix() * proj;
    const double p = num.trace().real();
    if (p < kBranchTol) continue;
    branches.push_back({outcome, p, DensityMatrix(num / p)});
  }
  return branches;
}

double expectation(const DensityMatrix& rho, const MeasurementBasis& basis) {
  require(rho.dim() == 2, "expectation: state must be 2x2");
  const double v = (basis.observable() * rho.matrix()).trace().real();
  return std::clamp(v, -1.0, 1.0);
}

Mat unitary_from_hamiltonian(const Mat& hamiltonian, double t) {
  require(hamiltonian.rows() == hamiltonian.cols(),
          "unitary_from_hamiltonian: Hamiltonian must be square");
  require(is_hermitian(hamiltonian, kEntryTol),
          "unitary_from_hamiltonian: Hamiltonian is not Hermitian within 1e-12");
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian);
  const auto& evals = es.eigenvalues();
  Vec phases(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    phases(i) = std::exp(-kI * evals(i) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix evolve_unitary(const DensityMatrix& rho, const Mat& unitary) {
  require(unitary.rows() == rho.dim() && unitary.cols() == rho.dim(),
          "evolve_unitary: dimension mismatch");
  const Mat gram = unitary.adjoint() * unitary;
  require(approx_equal(gram, Mat::Identity(rho.dim(), rho.dim()), kUnitaryTol),
          "evolve_unitary: matrix is not unitary within 1e-10");
  return DensityMatrix(unitary * rho.matrix() * unitary.adjoint());
}

}  // namespace qsteer
