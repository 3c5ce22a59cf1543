#include "qnm/lindblad.hpp"

#include <cmath>

namespace qnm {

Mat lindblad_rhs(const Mat& rho, const Mat& gamma, const JumpBasis& basis,
                 const Mat& hc) {
  const Index r = basis.num_channels();
  Mat out = -I_UNIT * (hc * rho - rho * hc);
  for (Index i = 0; i < r; ++i) {
    // Accumulate sum_j Gamma_ij L_j† once per row.
    Mat gl = Mat::Zero(rho.rows(), rho.cols());
    for (Index j = 0; j < r; ++j) gl += gamma(i, j) * basis.op(j).adjoint();
    const Mat& li = basis.op(i);
    Mat t = li * rho * gl;
    Mat gll = gl * li;
    out += t - 0.5 * (gll * rho + rho * gll);
  }
  return out;
}

Mat lindblad_rhs(const Mat& rho, const DissipationModel& model, const RVec& theta,
                 double t) {
  return lindblad_rhs(rho, model.gamma_at(theta), model.basis(), model.control(t));
}

namespace {

Trajectory propagate_impl(Mat rho, const DissipationModel& model, const RVec& theta,
                          double t_final, int steps) {
  if (steps < 1) throw ModelEvaluation("propagate: steps < 1");
  if (t_final < 0) throw ModelEvaluation("propagate: negative time");

  Trajectory traj;
  traj.theta = theta;
  traj.times.push_back(0.0);
  traj.states.push_back(rho);
  if (t_final == 0.0) return traj;

  const Mat gamma = model.gamma_at(theta);
  const double h = t_final / steps;
  const bool has_hc = model.has_control();
  Mat hc0 = model.control(0.0);

  for (int s = 0; s < steps; ++s) {
    const double t0 = s * h;
    Mat hc_a = has_hc ? model.control(t0) : hc0;
    Mat hc_b = has_hc ? model.control(t0 + 0.5 * h) : hc0;
    Mat hc_c = has_hc ? model.control(t0 + h) : hc0;

    Mat k1 = lindblad_rhs(rho, gamma, model.basis(), hc_a);
    Mat k2 = lindblad_rhs(rho + 0.5 * h * k1, gamma, model.basis(), hc_b);
    Mat k3 = lindblad_rhs(rho + 0.5 * h * k2, gamma, model.basis(), hc_b);
    Mat k4 = lindblad_rhs(rho + h * k3, gamma, model.basis(), hc_c);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    rho = herm(rho);
    double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-10)
      throw StepTooLarge("propagate: trace drift exceeds 1e-10 per step");
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-6)
      throw StepTooLarge("propagate: positivity violated; increase steps");

    traj.times.push_back(t0 + h);
    traj.states.push_back(rho);
  }
  return traj;
}

}  // namespace

Trajectory propagate(const PureState& psi0, const DissipationModel& model,
                     const RVec& theta, double t_final, int steps) {
  if (psi0.space != model.basis().space())
    throw DimensionMismatch("propagate: state/model space mismatch");
  return propagate_impl(psi0.projector(), model, theta, t_final, steps);
}

Trajectory propagate(const DensityMatrix& rho0, const DissipationModel& model,
                     const RVec& theta, double t_final, int steps) {
  if (rho0.space != model.basis().space())
    throw DimensionMismatch("propagate: state/model space mismatch");
  return propagate_impl(rho0.m, model, theta, t_final, steps);
}

CorrelatorMatrix correlator(const Mat& rho, const JumpBasis& basis, bool connected) {
  const Index r = basis.num_channels();
  std::vector<Mat> ops(basis.ops());
  if (connected) {
    if (!basis.all_hermitian())
      throw NotHermitianJumps("correlator: connected form needs Hermitian jumps");
    for (Index i = 0; i < r; ++i) {
      Cplx mean = (ops[static_cast<size_t>(i)] * rho).trace();
      ops[static_cast<size_t>(i)] -=
          mean * Mat::Identity(rho.rows(), rho.cols());
    }
  }
  Mat c(r, r);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      c(i, j) = (ops[static_cast<size_t>(i)].adjoint() * ops[static_cast<size_t>(j)] * rho)
                    .trace();
  return {herm(c), connected};
}

}  // namespace qnm
