#pragma once

#include <vector>

#include "qnm/dissipation_model.hpp"
#include "qnm/hilbert.hpp"

namespace qnm {

struct Trajectory {
  std::vector<double> times;   // strictly increasing, t0 = 0
  std::vector<Mat> states;     // density matrices per node
  RVec theta;

  size_t num_nodes() const { return times.size(); }
  const Mat& final_state() const { return states.back(); }
};

// Right-hand side of the master equation in the physical frame:
//   -i[H_c(t), rho] + sum_ij Gamma_ij (L_i rho L_j† − ½{L_j† L_i, rho}).
Mat lindblad_rhs(const Mat& rho, const DissipationModel& model, const RVec& theta,
                 double t = 0.0);
Mat lindblad_rhs(const Mat& rho, const Mat& gamma, const JumpBasis& basis,
                 const Mat& hc);

// Fixed-step classic RK4. Each node is Hermitized and trace-renormalized
// (drift must stay below 1e-10 per step). StepTooLarge when positivity is
// violated beyond -1e-6.
Trajectory propagate(const PureState& psi0, const DissipationModel& model,
                     const RVec& theta, double t_final, int steps);
Trajectory propagate(const DensityMatrix& rho0, const DissipationModel& model,
                     const RVec& theta, double t_final, int steps);

struct CorrelatorMatrix {
  Mat entries;      // R x R, Hermitian PSD
  bool connected;
};

// C_ij = Tr(L_i† L_j rho); connected variant recenters Hermitian jumps by
// their means first (NotHermitianJumps otherwise).
CorrelatorMatrix correlator(const Mat& rho, const JumpBasis& basis, bool connected);

}  // namespace qnm
