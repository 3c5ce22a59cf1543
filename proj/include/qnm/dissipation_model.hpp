#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qnm/hilbert.hpp"
#include "qnm/linalg.hpp"
#include "qnm/types.hpp"

namespace qnm {

// Ordered set of linearly independent jump operators on a common space.
class JumpBasis {
 public:
  JumpBasis(HilbertSpace space, std::vector<Mat> ops,
            std::vector<std::string> labels = {});

  const HilbertSpace& space() const { return space_; }
  Index num_channels() const { return static_cast<Index>(ops_.size()); }
  const Mat& op(Index i) const { return ops_[static_cast<size_t>(i)]; }
  const std::vector<Mat>& ops() const { return ops_; }
  const std::string& label(Index i) const { return labels_[static_cast<size_t>(i)]; }
  bool all_hermitian(double tol = 1e-10) const;

 private:
  HilbertSpace space_;
  std::vector<Mat> ops_;
  std::vector<std::string> labels_;
};

struct EigenModel {
  RVec rates;   // ascending not required; nonnegative
  Mat frame;    // unitary, columns are eigenvectors
};

enum class DerivativeProvider { Analytic, FiniteDifference };

// Parametrized dissipator. Two modes:
//   EIGENMODEL: user supplies smooth rates(theta) and frame(theta);
//   GAMMA:      user supplies gamma(theta), diagonalized on demand with a
//               deterministic gauge fix (hard error on spectral degeneracy).
class DissipationModel {
 public:
  struct EigenFns {
    std::function<RVec(const RVec&)> rates;
    std::function<Mat(const RVec&)> frame;                 // null => identity
    std::function<RVec(const RVec&, int)> d_rates;         // optional analytic
    std::function<Mat(const RVec&, int)> d_frame;          // optional analytic
  };
  struct GammaFns {
    std::function<Mat(const RVec&)> gamma;
    std::function<Mat(const RVec&, int)> d_gamma;          // optional analytic
  };

  static DissipationModel eigenmodel(JumpBasis basis, int param_dim, EigenFns fns,
                                     bool rate_only = false);
  static DissipationModel gamma_model(JumpBasis basis, int param_dim, GammaFns fns);

  DissipationModel& with_control(std::function<Mat(double)> hc);
  DissipationModel& with_fd_step(double h);

  const JumpBasis& basis() const { return basis_; }
  int param_dim() const { return param_dim_; }
  Index num_channels() const { return basis_.num_channels(); }
  Index system_dim() const { return basis_.space().dim(); }
  bool declared_rate_only() const { return rate_only_; }
  bool has_control() const { return static_cast<bool>(control_); }
  Mat control(double t) const;

  // Gamma(theta) = V Lambda V†, Hermitian PSD (1e-10 floor enforced).
  Mat gamma_at(const RVec& theta) const;

  // (Lambda, V) with deterministic gauge. GAMMA mode orders eigenvalues
  // ascending, phase-fixes each column (largest-magnitude entry real
  // positive) and raises DegenerateSpectrum below the gap tolerance.
  EigenModel eigenmodel_at(const RVec& theta) const;

  // d Gamma / d theta_alpha, symmetrized to Hermitian.
  Mat dgamma(const RVec& theta, int alpha) const;

  // d Lambda / d theta_alpha (diagonal entries).
  RVec drates(const RVec& theta, int alpha) const;

  // Eigenframe connection K_alpha = (dV) V† in the local basis,
  // anti-Hermitian. Finite-difference paths gauge-align columns first.
  Mat connection(const RVec& theta, int alpha) const;

  // || dGamma − V (dLambda) V† − [K_alpha, Gamma] ||_F
  double rate_equation_residual(const RVec& theta, int alpha) const;

  // J_k = sum_i V_ik L_i.
  std::vector<Mat> canonical_jumps(const RVec& theta) const;

  double fd_step(const RVec& theta, int alpha) const;

 private:
  DissipationModel(JumpBasis basis, int param_dim)
      : basis_(std::move(basis)), param_dim_(param_dim) {}

  Mat frame_at(const RVec& theta) const;   // EIGENMODEL frame or gauge-fixed V
  Mat dframe_fd(const RVec& theta, int alpha) const;

  JumpBasis basis_;
  int param_dim_;
  bool rate_only_ = false;
  bool eigen_mode_ = true;
  EigenFns efns_;
  GammaFns gfns_;
  std::function<Mat(double)> control_;
  double fd_scale_ = 1e-5;
};

// Gauge alignment: multiply each column of v by a phase so that the overlap
// with the matching column of ref is real positive. Raises GaugeAlignment
// when an overlap magnitude drops below 0.9 (step crossed a level crossing).
Mat align_frame(const Mat& ref, Mat v);

}  // namespace qnm
