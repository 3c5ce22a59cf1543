#pragma once

#include <vector>

#include "qnm/kernel.hpp"

namespace qnm {

struct QFIMatrix {
  RMat entries;     // real symmetric, PSD within floor
  double horizon;   // sensing time the matrix refers to
};

struct QGTMatrix {
  Mat entries;      // complex Hermitian; real part = F_Q / 4
  RMat qfi() const { return 4.0 * entries.real(); }
};

struct ConnectivityReport {
  double max_entry_norm;
  Index row_connectivity;
  long support_size;
  double zero_tol;
};

// Integrates the QFI flow along an RK4 trajectory with composite Simpson
// (even step count enforced). Also evaluates the linear-in-time cap
// 4 t sum_{a,k} ||d_a(sqrt(gamma_k) J_k)||^2 and asserts tr F <= cap (1+1e-8),
// which reduces to 4 t sum (d_a sqrt(gamma_k))^2 ||J_k||^2 for rate-only
// models.
struct IntegratedQFI {
  QFIMatrix qfi;
  double cap;
  Trajectory trajectory;
};
IntegratedQFI qfi_integrate(const DissipationModel& model, const PureState& psi0,
                            const RVec& theta, double t, int steps,
                            bool connected = false);

// Explicit rate-only flow 4 sum_k (d_a sqrt g_k)(d_b sqrt g_k) Tr(J_k†J_k rho).
// NotRateOnly when any connection norm exceeds 1e-8.
RMat eigenrate_flow(const DissipationModel& model, const RVec& theta, const Mat& rho);

// Per-parameter diagonal precision cap T sum_k (d_a g_k)^2 / g_k ||J_k||^2.
RVec eigenrate_precision_bound(const DissipationModel& model, const RVec& theta,
                               double t_total);

// Support statistics of a jump-index-space matrix. zero_tol < 0 selects the
// default 1e-10 * max-entry.
ConnectivityReport connectivity(const Mat& m, double zero_tol = -1.0);

// T ||Kbar||_max ||L||_max^2 R min(r_Kbar, r_C) with r_C the maximal row
// connectivity of the correlator along the trajectory.
double heisenberg_bound(const DissipationModel& model, const RVec& theta,
                        const Trajectory& traj, double t_total);

struct OptimalRate {
  double rate;        // lambda_max of A = sum_k c_k J_k† J_k
  PureState probe;    // deterministic top eigenvector (lexicographic tie-break)
  Mat a_operator;
};
OptimalRate optimal_rate(const DissipationModel& model, const RVec& theta);

// Exact mixed-state QFI from the spectral SLD formula,
//   F_ab = sum_{m,n: p_m+p_n > 1e-12} 2 Re <m|d_a rho|n><n|d_b rho|m> / (p_m+p_n).
RMat sld_qfi(const DensityMatrix& rho, const std::vector<Mat>& drho);

}  // namespace qnm
