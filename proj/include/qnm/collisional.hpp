#pragma once

#include "qnm/dissipation_model.hpp"
#include "qnm/lindblad.hpp"
#include "qnm/qfi.hpp"

namespace qnm {

// Discrete-time dilation parameters: n_bins collisions of width delta_t
// against fresh bath bins of R bosonic modes truncated to bath_levels.
struct CollisionalConfig {
  double delta_t = 1e-2;
  int n_bins = 1;
  int bath_levels = 2;
  double fd_step = 1e-4;    // parameter step for overlap curvature

  double total_time() const { return delta_t * n_bins; }
};

// Joint unitary of one collision on system (x) bin:
//   exp(-i dt H_c(t_j)) exp(-i sqrt(dt) H_j),
//   H_j = sum_k sqrt(g_k) (J_k (x) b_k† + J_k† (x) b_k).
Mat bin_unitary(const DissipationModel& model, const RVec& theta, double t_j,
                const CollisionalConfig& cfg);

// One collision of the reduced state: Tr_bin[U (rho (x) vac) U†].
Mat kraus_step(const Mat& rho, const DissipationModel& model, const RVec& theta,
               double t_j, const CollisionalConfig& cfg);

// <Psi(theta_bra)|Psi(theta_ket)> of the n_bins-collision purification,
// contracted bin by bin through the two-sided transfer object
//   M_j = Tr_bin[U_j(theta_ket) (M_{j-1} (x) vac) U_j†(theta_bra)].
// Memory stays at system-dim^2 regardless of n_bins.
Cplx two_sided_overlap(const DissipationModel& model, const RVec& theta_ket,
                       const RVec& theta_bra, const PureState& psi0,
                       const CollisionalConfig& cfg);

// Quantum geometric tensor of the purification from finite differences of
// overlaps: diagonal from the fidelity deficit 8(1-|o|)/delta^2 (averaged
// over +-delta), off-diagonal real parts by polarization along e_a +- e_b,
// imaginary parts from the centered overlap stencil with the connection term
// subtracted. StepTooLarge when an overlap deficit leaves the quadratic
// regime (1-|o| > 0.1).
QGTMatrix fd_purification_qgt(const DissipationModel& model, const RVec& theta,
                              const PureState& psi0, const CollisionalConfig& cfg);

// Full purified state on system (x) bin_1 (x) ... (x) bin_n. Guarded to
// total dimension <= 2^16.
PureState explicit_purification(const DissipationModel& model, const RVec& theta,
                                const PureState& psi0, const CollisionalConfig& cfg);

// Two-point Richardson extrapolation for O(delta_t) bias: given values at
// n_bins and 2*n_bins (same total time), returns 2*v2 - v1.
inline double richardson(double v_coarse, double v_fine) {
  return 2.0 * v_fine - v_coarse;
}
inline RMat richardson(const RMat& v_coarse, const RMat& v_fine) {
  return 2.0 * v_fine - v_coarse;
}

}  // namespace qnm
