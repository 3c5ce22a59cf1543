#include "qnm/qfi.hpp"

#include <algorithm>
#include <cmath>

namespace qnm {

IntegratedQFI qfi_integrate(const DissipationModel& model, const PureState& psi0,
                            const RVec& theta, double t, int steps,
                            bool connected) {
  if (steps % 2 != 0) ++steps;   // composite Simpson needs an even count
  const int d = model.param_dim();

  KernelSet kernel = dissipation_kernel(model, theta);
  Trajectory traj = propagate(psi0, model, theta, t, steps);

  RMat f = RMat::Zero(d, d);
  if (t > 0) {
    const double h = t / steps;
    for (int s = 0; s <= steps; ++s) {
      double w = (s == 0 || s == steps) ? 1.0 : (s % 2 == 1 ? 4.0 : 2.0);
      CorrelatorMatrix c =
          correlator(traj.states[static_cast<size_t>(s)], model.basis(), connected);
      f += (w * h / 3.0) * qfi_flow(kernel, c);
    }
  }

  // Linear-in-time cap: 4 t sum_{a,k} || sum_i (d_a zeta)_{ik} L_i ||^2.
  auto dz = amplitude_derivatives(model, theta);
  const Index r = model.num_channels();
  double cap = 0.0;
  for (int a = 0; a < d; ++a) {
    for (Index k = 0; k < r; ++k) {
      Mat dk = Mat::Zero(model.system_dim(), model.system_dim());
      for (Index i = 0; i < r; ++i)
        dk += dz[static_cast<size_t>(a)](i, k) * model.basis().op(i);
      double nrm = spectral_norm(dk);
      cap += 4.0 * t * nrm * nrm;
    }
  }
  if (f.trace() > cap * (1.0 + 1e-8))
    throw Error("qfi_integrate: integrated QFI exceeds linear-in-time cap");

  return {QFIMatrix{f, t}, cap, std::move(traj)};
}

RMat eigenrate_flow(const DissipationModel& model, const RVec& theta, const Mat& rho) {
  const int d = model.param_dim();
  const Index r = model.num_channels();
  for (int a = 0; a < d; ++a)
    if (frob(model.connection(theta, a)) > 1e-8)
      throw NotRateOnly("eigenrate_flow: eigenframe connection is nonzero");

  auto [lam, v] = model.eigenmodel_at(theta);
  auto jumps = model.canonical_jumps(theta);
  const double rate_scale = std::max(1e-300, lam.maxCoeff());

  RMat dsqrt(d, r);
  for (int a = 0; a < d; ++a) {
    RVec dlam = model.drates(theta, a);
    for (Index k = 0; k < r; ++k) {
      if (lam(k) > 1e-14 * rate_scale)
        dsqrt(a, k) = dlam(k) / (2.0 * std::sqrt(lam(k)));
      else if (std::abs(dlam(k)) <= 1e-10 * std::max(1.0, rate_scale))
        dsqrt(a, k) = 0.0;
      else
        throw ZeroRate("eigenrate_flow: vanishing rate with moving derivative");
    }
  }

  RVec mu(r);
  for (Index k = 0; k < r; ++k) {
    const Mat& j = jumps[static_cast<size_t>(k)];
    mu(k) = (j.adjoint() * j * rho).trace().real();
  }

  RMat f = RMat::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (Index k = 0; k < r; ++k)
        f(a, b) += 4.0 * dsqrt(a, k) * dsqrt(b, k) * mu(k);
  return f;
}

RVec eigenrate_precision_bound(const DissipationModel& model, const RVec& theta,
                               double t_total) {
  const int d = model.param_dim();
  const Index r = model.num_channels();
  for (int a = 0; a < d; ++a)
    if (frob(model.connection(theta, a)) > 1e-8)
      throw NotRateOnly("eigenrate_precision_bound: not a rate-only model");

  auto [lam, v] = model.eigenmodel_at(theta);
  auto jumps = model.canonical_jumps(theta);
  RVec norms(r);
  for (Index k = 0; k < r; ++k)
    norms(k) = spectral_norm(jumps[static_cast<size_t>(k)]);

  RVec bound = RVec::Zero(d);
  for (int a = 0; a < d; ++a) {
    RVec dlam = model.drates(theta, a);
    for (Index k = 0; k < r; ++k) {
      if (lam(k) <= 1e-14) {
        if (std::abs(dlam(k)) > 1e-14)
          throw ZeroRate("eigenrate_precision_bound: divergent bound at zero rate");
        continue;
      }
      bound(a) += t_total * dlam(k) * dlam(k) / lam(k) * norms(k) * norms(k);
    }
  }
  return bound;
}

ConnectivityReport connectivity(const Mat& m, double zero_tol) {
  double max_entry = 0.0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      max_entry = std::max(max_entry, std::abs(m(i, j)));
  if (zero_tol < 0) zero_tol = 1e-10 * max_entry;

  Index row_conn = 0;
  long support = 0;
  for (Index i = 0; i < m.rows(); ++i) {
    Index nnz = 0;
    for (Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > zero_tol) ++nnz;
    support += nnz;
    row_conn = std::max(row_conn, nnz);
  }
  return {max_entry, row_conn, support, zero_tol};
}

double heisenberg_bound(const DissipationModel& model, const RVec& theta,
                        const Trajectory& traj, double t_total) {
  KernelSet kernel = dissipation_kernel(model, theta);
  Mat kbar = kernel.parameter_average();
  ConnectivityReport kc = connectivity(kbar);

  double lmax = 0.0;
  for (Index i = 0; i < model.num_channels(); ++i)
    lmax = std::max(lmax, spectral_norm(model.basis().op(i)));

  Index rc = 0;
  for (const Mat& rho : traj.states)
    rc = std::max(rc, connectivity(correlator(rho, model.basis(), false).entries)
                          .row_connectivity);

  return t_total * kc.max_entry_norm * lmax * lmax *
         static_cast<double>(model.num_channels()) *
         static_cast<double>(std::min(kc.row_connectivity, rc));
}

OptimalRate optimal_rate(const DissipationModel& model, const RVec& theta) {
  const int d = model.param_dim();
  const Index r = model.num_channels();
  for (int a = 0; a < d; ++a)
    if (frob(model.connection(theta, a)) > 1e-8)
      throw NotRateOnly("optimal_rate: not a rate-only model");

  auto [lam, v] = model.eigenmodel_at(theta);
  auto jumps = model.canonical_jumps(theta);
  const double rate_scale = std::max(1e-300, lam.maxCoeff());

  Mat a_op = Mat::Zero(model.system_dim(), model.system_dim());
  for (Index k = 0; k < r; ++k) {
    double ck = 0.0;
    for (int a = 0; a < d; ++a) {
      double dl = model.drates(theta, a)(k);
      if (lam(k) > 1e-14 * rate_scale) {
        double ds = dl / (2.0 * std::sqrt(lam(k)));
        ck += 4.0 * ds * ds / d;
      } else if (std::abs(dl) > 1e-10 * std::max(1.0, rate_scale)) {
        throw ZeroRate("optimal_rate: divergent coefficient at zero rate");
      }
    }
    const Mat& j = jumps[static_cast<size_t>(k)];
    a_op += ck * (j.adjoint() * j);
  }

  auto [avals, avecs] = hermitian_eig(a_op);
  const Index n = avals.size();
  const double top = avals(n - 1);
  const double tie_tol = 1e-10 * std::max(1.0, std::abs(top));

  // Deterministic representative of the (possibly degenerate) top eigenspace:
  // project standard basis vectors in order and keep the first with real weight.
  Index g0 = n;
  while (g0 > 0 && top - avals(g0 - 1) <= tie_tol) --g0;
  Mat p = avecs.rightCols(n - g0);
  CVec probe;
  for (Index e = 0; e < n; ++e) {
    CVec cand = p * (p.adjoint() * basis_state(n, e));
    if (cand.norm() > 1e-8) {
      probe = cand / cand.norm();
      break;
    }
  }
  Index imax;
  probe.cwiseAbs().maxCoeff(&imax);
  probe *= std::conj(probe(imax)) / std::abs(probe(imax));

  return {top, PureState(model.basis().space(), probe), a_op};
}

RMat sld_qfi(const DensityMatrix& rho, const std::vector<Mat>& drho) {
  const int d = static_cast<int>(drho.size());
  for (const Mat& dr : drho) {
    double scale = std::max(1.0, frob(dr));
    if (frob(dr - dr.adjoint()) > 1e-10 * scale)
      throw NotState("sld_qfi: derivative not Hermitian");
    if (std::abs(dr.trace()) > 1e-10 * scale)
      throw NotState("sld_qfi: derivative not traceless");
  }
  auto [p, u] = hermitian_eig(rho.m);
  const Index n = p.size();

  std::vector<Mat> dt;
  for (const Mat& dr : drho) dt.push_back(Mat(u.adjoint() * dr * u));

  RMat f = RMat::Zero(d, d);
  for (Index m = 0; m < n; ++m)
    for (Index nn = 0; nn < n; ++nn) {
      double denom = p(m) + p(nn);
      if (denom <= 1e-12) continue;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          f(a, b) += 2.0 *
                     (dt[static_cast<size_t>(a)](m, nn) * dt[static_cast<size_t>(b)](nn, m))
                         .real() /
                     denom;
    }
  return 0.5 * (f + f.transpose());
}

}  // namespace qnm
