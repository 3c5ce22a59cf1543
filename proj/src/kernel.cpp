#include "qnm/kernel.hpp"

#include <cmath>

namespace qnm {

KernelSet::KernelSet(int param_dim, Index channels)
    : d_(param_dim), r_(channels),
      blocks_(static_cast<size_t>(param_dim * param_dim), Mat::Zero(channels, channels)) {}

Mat KernelSet::parameter_average() const {
  Mat avg = Mat::Zero(r_, r_);
  for (int a = 0; a < d_; ++a) avg += block(a, a);
  return avg / static_cast<double>(d_);
}

std::vector<Mat> amplitude_derivatives(const DissipationModel& model,
                                       const RVec& theta) {
  auto [lam, v] = model.eigenmodel_at(theta);
  const Index r = model.num_channels();
  const double rate_scale = std::max(1e-300, lam.maxCoeff());

  RVec sqrt_lam(r);
  for (Index k = 0; k < r; ++k) sqrt_lam(k) = std::sqrt(std::max(0.0, lam(k)));

  std::vector<Mat> dzetas;
  for (int a = 0; a < model.param_dim(); ++a) {
    RVec dlam = model.drates(theta, a);
    Mat k_local = model.connection(theta, a);
    Mat k_can = v.adjoint() * k_local * v;

    RVec dsqrt(r);
    for (Index k = 0; k < r; ++k) {
      if (lam(k) > 1e-14 * rate_scale) {
        dsqrt(k) = dlam(k) / (2.0 * sqrt_lam(k));
      } else if (std::abs(dlam(k)) <= 1e-10 * std::max(1.0, rate_scale)) {
        dsqrt(k) = 0.0;   // identically dark channel
      } else {
        throw ZeroRate("amplitude_derivatives: vanishing rate with moving derivative");
      }
    }
    // d zeta = V (K' Lambda^{1/2} + d Lambda^{1/2})
    Mat dz = v * (k_can * sqrt_lam.asDiagonal().toDenseMatrix() +
                  Mat(dsqrt.cast<Cplx>().asDiagonal()));
    dzetas.push_back(std::move(dz));
  }
  return dzetas;
}

KernelSet dissipation_kernel(const DissipationModel& model, const RVec& theta) {
  const int d = model.param_dim();
  const Index r = model.num_channels();
  KernelSet out(d, r);
  auto dz = amplitude_derivatives(model, theta);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      out.block(a, b) = 4.0 * dz[static_cast<size_t>(b)] * dz[static_cast<size_t>(a)].adjoint();

  // Full-rank cross-check against the inverse form.
  Mat gamma = model.gamma_at(theta);
  auto [lam, v] = hermitian_eig(gamma);
  if (lam.minCoeff() > 1e-10 * std::max(1e-300, lam.maxCoeff())) {
    Mat ginv = v * lam.cwiseInverse().asDiagonal() * v.adjoint();
    std::vector<Mat> lhs;
    for (int a = 0; a < d; ++a) {
      Mat dg = model.dgamma(theta, a);
      Mat k = model.connection(theta, a);
      lhs.push_back(dg + k * gamma + gamma * k);
    }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Mat alt = lhs[static_cast<size_t>(b)] * ginv * lhs[static_cast<size_t>(a)].adjoint();
        double scale = std::max(frob(out.block(a, b)), frob(alt));
        if (scale > 1e-12 && frob(out.block(a, b) - alt) > 1e-7 * scale)
          throw KernelMismatch("dissipation_kernel: amplitude and inverse forms disagree");
      }
  }
  return out;
}

RMat qfi_flow(const KernelSet& kernel, const CorrelatorMatrix& c) {
  if (c.entries.rows() != kernel.channels())
    throw DimensionMismatch("qfi_flow: correlator dim mismatch");
  const int d = kernel.param_dim();
  RMat f(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      f(a, b) = (kernel.block(a, b) * c.entries).trace().real();
  RMat sym = 0.5 * (f + f.transpose());
  if ((f - f.transpose()).norm() > 1e-9 * std::max(1.0, f.norm()))
    throw Error("qfi_flow: symmetry residual too large");
  return sym;
}

Mat qgt_flow(const KernelSet& kernel, const CorrelatorMatrix& c) {
  if (c.entries.rows() != kernel.channels())
    throw DimensionMismatch("qgt_flow: correlator dim mismatch");
  const int d = kernel.param_dim();
  Mat q(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      q(a, b) = 0.25 * (kernel.block(a, b) * c.entries).trace();
  return herm(q);
}

}  // namespace qnm
