#pragma once

#include <doctest.h>

#include "qnm/dissipation_model.hpp"
#include "qnm/hilbert.hpp"
#include "qnm/random.hpp"

namespace qnm::test {

inline PureState plus_state() {
  CVec v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(HilbertSpace::qubits(1), v);
}

inline PureState ket(Index dim, Index k) {
  return PureState(HilbertSpace::single(dim), basis_state(dim, k));
}

// Single-channel dephasing: L = sigma_z, rate gamma(theta) = theta_0.
inline DissipationModel dephasing_model() {
  JumpBasis basis(HilbertSpace::qubits(1), {pauli_z()}, {"sz"});
  DissipationModel::EigenFns fns;
  fns.rates = [](const RVec& th) {
    RVec g(1);
    g << th(0);
    return g;
  };
  fns.d_rates = [](const RVec&, int) {
    RVec g(1);
    g << 1.0;
    return g;
  };
  return DissipationModel::eigenmodel(std::move(basis), 1, std::move(fns), true);
}

// Amplitude damping: L = sigma_-, rate theta_0.
inline DissipationModel damping_model() {
  JumpBasis basis(HilbertSpace::qubits(1), {sigma_minus()}, {"sm"});
  DissipationModel::EigenFns fns;
  fns.rates = [](const RVec& th) {
    RVec g(1);
    g << th(0);
    return g;
  };
  fns.d_rates = [](const RVec&, int) {
    RVec g(1);
    g << 1.0;
    return g;
  };
  return DissipationModel::eigenmodel(std::move(basis), 1, std::move(fns), true);
}

// Two channels with theta-dependent rates and a rotating eigenframe:
// rates = (exp(w0 th0), exp(w1 th0)), V = exp(th1 * G) for anti-Hermitian G.
// Analytic derivatives throughout; parameters d = 2.
inline DissipationModel rotating_frame_model(const HilbertSpace& space,
                                             std::vector<Mat> jumps, double w0 = 1.0,
                                             double w1 = -0.5) {
  JumpBasis basis(space, std::move(jumps));
  Mat g(2, 2);
  g << 0.0, -1.0, 1.0, 0.0;   // real rotation generator

  DissipationModel::EigenFns fns;
  fns.rates = [w0, w1](const RVec& th) {
    RVec r(2);
    r << std::exp(w0 * th(0)), std::exp(w1 * th(0)) * 2.0;
    return r;
  };
  fns.d_rates = [w0, w1](const RVec& th, int a) {
    RVec r(2);
    if (a == 0)
      r << w0 * std::exp(w0 * th(0)), w1 * std::exp(w1 * th(0)) * 2.0;
    else
      r << 0.0, 0.0;
    return r;
  };
  fns.frame = [g](const RVec& th) {
    double c = std::cos(th(1)), s = std::sin(th(1));
    Mat v(2, 2);
    v << c, -s, s, c;
    return v;
  };
  fns.d_frame = [g](const RVec& th, int a) {
    if (a == 0) return Mat(Mat::Zero(2, 2));
    double c = std::cos(th(1)), s = std::sin(th(1));
    Mat v(2, 2);
    v << -s, -c, c, -s;
    return v;
  };
  return DissipationModel::eigenmodel(std::move(basis), 2, std::move(fns), false);
}

// Random rate-only model: R channels on dim-n space, rates
// g_k(theta) = exp(c_k + sum_a w_ka theta_a).
inline DissipationModel random_rate_model(Rng& rng, Index dim, Index channels,
                                          int param_dim) {
  std::vector<Mat> jumps;
  for (Index k = 0; k < channels; ++k) {
    Mat l = random_matrix(rng, dim);
    jumps.push_back(l / spectral_norm(l));
  }
  RVec c(channels);
  RMat w(channels, param_dim);
  for (Index k = 0; k < channels; ++k) {
    c(k) = rng.uniform(-0.5, 0.5);
    for (int a = 0; a < param_dim; ++a) w(k, a) = rng.uniform(-1.0, 1.0);
  }
  DissipationModel::EigenFns fns;
  fns.rates = [c, w](const RVec& th) {
    RVec g(c.size());
    for (Index k = 0; k < c.size(); ++k) g(k) = std::exp(c(k) + w.row(k).dot(th));
    return g;
  };
  fns.d_rates = [c, w](const RVec& th, int a) {
    RVec g(c.size());
    for (Index k = 0; k < c.size(); ++k)
      g(k) = w(k, a) * std::exp(c(k) + w.row(k).dot(th));
    return g;
  };
  return DissipationModel::eigenmodel(JumpBasis(HilbertSpace::single(dim), jumps),
                                      param_dim, std::move(fns), true);
}

// Random frame-rotating model: theta_0 drives rates, theta_1 rotates a
// two-channel eigenframe through a fixed anti-Hermitian generator.
inline DissipationModel random_rotating_model(Rng& rng, Index dim, int param_dim = 2) {
  std::vector<Mat> jumps;
  for (Index k = 0; k < 2; ++k) {
    Mat l = random_matrix(rng, dim);
    jumps.push_back(l / spectral_norm(l));
  }
  RVec c(2), w(2);
  c << rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3);
  w << rng.uniform(0.3, 1.0), rng.uniform(-1.0, -0.3);
  double speed = rng.uniform(0.5, 1.5);

  DissipationModel::EigenFns fns;
  fns.rates = [c, w](const RVec& th) {
    RVec g(2);
    g << std::exp(c(0) + w(0) * th(0)), 2.0 * std::exp(c(1) + w(1) * th(0));
    return g;
  };
  fns.d_rates = [c, w](const RVec& th, int a) {
    RVec g(2);
    if (a == 0)
      g << w(0) * std::exp(c(0) + w(0) * th(0)),
          2.0 * w(1) * std::exp(c(1) + w(1) * th(0));
    else
      g << 0.0, 0.0;
    return g;
  };
  fns.frame = [speed](const RVec& th) {
    double ang = speed * th(1);
    Mat v(2, 2);
    v << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
    return v;
  };
  fns.d_frame = [speed](const RVec& th, int a) {
    if (a != 1) return Mat(Mat::Zero(2, 2));
    double ang = speed * th(1);
    Mat v(2, 2);
    v << -std::sin(ang), -std::cos(ang), std::cos(ang), -std::sin(ang);
    return Mat(speed * v);
  };
  return DissipationModel::eigenmodel(JumpBasis(HilbertSpace::single(dim), jumps),
                                      param_dim, std::move(fns), false);
}

}  // namespace qnm::test
