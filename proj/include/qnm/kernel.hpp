#pragma once

#include <vector>

#include "qnm/dissipation_model.hpp"
#include "qnm/lindblad.hpp"

namespace qnm {

// d x d array of R x R kernel blocks K_ab = 4 (d_b zeta)(d_a zeta)† with
// zeta = V Lambda^{1/2}. Blocks satisfy K_ba = K_ab† and K_aa is PSD.
class KernelSet {
 public:
  KernelSet(int param_dim, Index channels);

  int param_dim() const { return d_; }
  Index channels() const { return r_; }
  Mat& block(int a, int b) { return blocks_[idx(a, b)]; }
  const Mat& block(int a, int b) const { return blocks_[idx(a, b)]; }

  // (1/d) sum_a K_aa.
  Mat parameter_average() const;

 private:
  size_t idx(int a, int b) const { return static_cast<size_t>(a * d_ + b); }
  int d_;
  Index r_;
  std::vector<Mat> blocks_;
};

// Derivatives of the dissipative amplitude, d_a zeta, in the local frame.
// Entries for identically dark channels (rate and derivative both ~0) are 0;
// a vanishing rate with nonvanishing derivative raises ZeroRate.
std::vector<Mat> amplitude_derivatives(const DissipationModel& model,
                                       const RVec& theta);

// Kernel via the amplitude form; when Gamma is full rank the inverse form
// (dGamma + {K,Gamma}) Gamma^{-1} (...)† is evaluated as a cross-check and a
// mismatch beyond 1e-7 relative raises KernelMismatch.
KernelSet dissipation_kernel(const DissipationModel& model, const RVec& theta);

// QFI matrix flow: F'_ab = Re Tr(K_ab C), symmetrized.
RMat qfi_flow(const KernelSet& kernel, const CorrelatorMatrix& c);

// QGT flow: Q'_ab = (1/4) Tr(K_ab C), Hermitian.
Mat qgt_flow(const KernelSet& kernel, const CorrelatorMatrix& c);

}  // namespace qnm
