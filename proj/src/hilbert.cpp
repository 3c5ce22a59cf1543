#include "qnm/hilbert.hpp"

#include <cmath>

namespace qnm {

HilbertSpace::HilbertSpace(std::vector<Index> subsystem_dims)
    : dims_(std::move(subsystem_dims)) {
  if (dims_.empty()) throw BadSubsystem("HilbertSpace: no subsystems");
  total_ = 1;
  for (Index d : dims_) {
    if (d < 1) throw BadSubsystem("HilbertSpace: subsystem dim < 1");
    total_ *= d;
  }
}

HilbertSpace HilbertSpace::qubits(int n) {
  return HilbertSpace(std::vector<Index>(static_cast<size_t>(n), 2));
}

HilbertSpace HilbertSpace::tensor(const HilbertSpace& other) const {
  std::vector<Index> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return HilbertSpace(dims);
}

Operator::Operator(HilbertSpace s, Mat mat) : space(std::move(s)), m(std::move(mat)) {
  if (m.rows() != m.cols()) throw DimensionMismatch("Operator: not square");
  if (m.rows() != space.dim()) throw DimensionMismatch("Operator: dim != space dim");
}

bool Operator::is_hermitian(double tol) const {
  double scale = std::max(1.0, frob(m));
  return frob(m - m.adjoint()) <= tol * scale;
}

PureState::PureState(HilbertSpace s, CVec a) : space(std::move(s)), amps(std::move(a)) {
  if (amps.size() != space.dim()) throw DimensionMismatch("PureState: dim != space dim");
  if (std::abs(amps.norm() - 1.0) > 1e-12)
    throw NotState("PureState: amplitudes not unit norm");
}

DensityMatrix::DensityMatrix(HilbertSpace s, Mat mat)
    : space(std::move(s)), m(std::move(mat)) {
  if (m.rows() != m.cols() || m.rows() != space.dim())
    throw DimensionMismatch("DensityMatrix: dim != space dim");
  double scale = std::max(1.0, frob(m));
  if (frob(m - m.adjoint()) > 1e-12 * scale)
    throw NotState("DensityMatrix: not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > 1e-12 || std::abs(m.trace().imag()) > 1e-12)
    throw NotState("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()),
                                        Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw NotState("DensityMatrix: negative eigenvalue");
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Operator tensor(const Operator& a, const Operator& b) {
  return {a.space.tensor(b.space), kron(a.m, b.m)};
}

PureState tensor(const PureState& a, const PureState& b) {
  return {a.space.tensor(b.space), kron_vec(a.amps, b.amps)};
}

Mat embed(const HilbertSpace& space, Index subsystem, const Mat& op) {
  if (subsystem < 0 || subsystem >= space.num_subsystems())
    throw BadSubsystem("embed: subsystem out of range");
  if (op.rows() != space.subsystem_dim(subsystem))
    throw DimensionMismatch("embed: operator dim mismatch");
  Index left = 1, right = 1;
  for (Index k = 0; k < subsystem; ++k) left *= space.subsystem_dim(k);
  for (Index k = subsystem + 1; k < space.num_subsystems(); ++k)
    right *= space.subsystem_dim(k);
  Mat out = kron(Mat::Identity(left, left), kron(op, Mat::Identity(right, right)));
  return out;
}

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, Cplx(0, -1), Cplx(0, 1), 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat sigma_minus() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

CVec basis_state(Index dim, Index k) {
  CVec v = CVec::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace qnm
