#pragma once

#include <initializer_list>
#include <vector>

#include "qnm/errors.hpp"
#include "qnm/types.hpp"

namespace qnm {

// Tensor-product space of finite-dimensional subsystems. The first subsystem
// is the most significant index: for dims {d0, d1} basis state |i0 i1> sits
// at row i0*d1 + i1, consistent with kron(A0, A1).
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<Index> subsystem_dims);
  HilbertSpace(std::initializer_list<Index> dims)
      : HilbertSpace(std::vector<Index>(dims)) {}

  static HilbertSpace qubits(int n);
  static HilbertSpace single(Index d) { return HilbertSpace({d}); }

  Index dim() const { return total_; }
  Index num_subsystems() const { return static_cast<Index>(dims_.size()); }
  const std::vector<Index>& subsystem_dims() const { return dims_; }
  Index subsystem_dim(Index k) const { return dims_.at(static_cast<size_t>(k)); }

  HilbertSpace tensor(const HilbertSpace& other) const;

  bool operator==(const HilbertSpace& o) const { return dims_ == o.dims_; }
  bool operator!=(const HilbertSpace& o) const { return !(*this == o); }

 private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

struct Operator {
  HilbertSpace space;
  Mat m;

  Operator() = default;
  Operator(HilbertSpace s, Mat mat);

  Index dim() const { return m.rows(); }
  Operator adjoint() const { return {space, m.adjoint()}; }
  bool is_hermitian(double tol = 1e-10) const;
};

struct PureState {
  HilbertSpace space;
  CVec amps;

  PureState() = default;
  PureState(HilbertSpace s, CVec a);   // checks unit norm within 1e-12

  Index dim() const { return amps.size(); }
  Mat projector() const { return amps * amps.adjoint(); }
};

struct DensityMatrix {
  HilbertSpace space;
  Mat m;

  DensityMatrix() = default;
  DensityMatrix(HilbertSpace s, Mat mat);  // Hermitian, unit trace, PSD floor

  Index dim() const { return m.rows(); }
};

// Kronecker helpers in the repo-wide subsystem ordering.
Mat kron(const Mat& a, const Mat& b);
CVec kron_vec(const CVec& a, const CVec& b);

Operator tensor(const Operator& a, const Operator& b);
PureState tensor(const PureState& a, const PureState& b);

// Embed an operator acting on one subsystem of `space` (identity elsewhere).
Mat embed(const HilbertSpace& space, Index subsystem, const Mat& op);

// Pauli matrices and friends.
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat sigma_minus();   // |0><1|
CVec basis_state(Index dim, Index k);

}  // namespace qnm
