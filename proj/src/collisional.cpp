#include "qnm/collisional.hpp"

#include <cmath>
#include <vector>

namespace qnm {

namespace {

Index bin_dim(const DissipationModel& model, const CollisionalConfig& cfg) {
  Index bd = 1;
  for (Index k = 0; k < model.num_channels(); ++k) bd *= cfg.bath_levels;
  return bd;
}

void check_guard(const DissipationModel& model, const CollisionalConfig& cfg) {
  if (cfg.bath_levels < 2)
    throw ModelEvaluation("collisional: bath_levels must be >= 2");
  double dim = static_cast<double>(model.system_dim());
  for (Index k = 0; k < model.num_channels(); ++k) dim *= cfg.bath_levels;
  if (dim > double(1 << 20))
    throw DimensionGuard("collisional: system x bin dimension exceeds 2^20");
}

// Truncated boson lowering operator.
Mat lowering(int levels) {
  Mat b = Mat::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) b(n - 1, n) = std::sqrt(double(n));
  return b;
}

// Kraus blocks A_b = <b|U|vac>_bin as system-dim square matrices; the bin
// index is the least significant factor of U's ordering.
std::vector<Mat> kraus_blocks(const Mat& u, Index sys_dim, Index bdim) {
  std::vector<Mat> blocks;
  blocks.reserve(static_cast<size_t>(bdim));
  for (Index b = 0; b < bdim; ++b) {
    Mat a(sys_dim, sys_dim);
    for (Index s = 0; s < sys_dim; ++s)
      for (Index sp = 0; sp < sys_dim; ++sp)
        a(s, sp) = u(s * bdim + b, sp * bdim + 0);
    blocks.push_back(std::move(a));
  }
  return blocks;
}

}  // namespace

Mat bin_unitary(const DissipationModel& model, const RVec& theta, double t_j,
                const CollisionalConfig& cfg) {
  check_guard(model, cfg);
  const Index sys = model.system_dim();
  const Index r = model.num_channels();
  const Index bdim = bin_dim(model, cfg);

  auto [lam, v] = model.eigenmodel_at(theta);
  auto jumps = model.canonical_jumps(theta);

  HilbertSpace bin_space(
      std::vector<Index>(static_cast<size_t>(r), cfg.bath_levels));
  Mat b1 = lowering(cfg.bath_levels);

  Mat hj = Mat::Zero(sys * bdim, sys * bdim);
  for (Index k = 0; k < r; ++k) {
    double g = std::max(0.0, lam(k));
    if (g == 0.0) continue;
    Mat bk = embed(bin_space, k, b1);
    hj += std::sqrt(g) * (kron(jumps[static_cast<size_t>(k)], bk.adjoint()) +
                          kron(jumps[static_cast<size_t>(k)].adjoint(), bk));
  }

  Mat u = unitary_from_hermitian(hj, std::sqrt(cfg.delta_t));
  if (model.has_control()) {
    Mat uc = unitary_from_hermitian(model.control(t_j), cfg.delta_t);
    u = kron(uc, Mat::Identity(bdim, bdim)) * u;
  }
  return u;
}

Mat kraus_step(const Mat& rho, const DissipationModel& model, const RVec& theta,
               double t_j, const CollisionalConfig& cfg) {
  const Index sys = model.system_dim();
  const Index bdim = bin_dim(model, cfg);
  Mat u = bin_unitary(model, theta, t_j, cfg);
  auto blocks = kraus_blocks(u, sys, bdim);
  Mat out = Mat::Zero(sys, sys);
  for (const Mat& a : blocks) out += a * rho * a.adjoint();
  return out;
}

Cplx two_sided_overlap(const DissipationModel& model, const RVec& theta_ket,
                       const RVec& theta_bra, const PureState& psi0,
                       const CollisionalConfig& cfg) {
  if (psi0.space != model.basis().space())
    throw DimensionMismatch("two_sided_overlap: state/model space mismatch");
  const Index sys = model.system_dim();
  const Index bdim = bin_dim(model, cfg);

  Mat m = psi0.projector();
  const bool timedep = model.has_control();

  std::vector<Mat> ket_blocks, bra_blocks;
  if (!timedep) {
    ket_blocks = kraus_blocks(bin_unitary(model, theta_ket, 0.0, cfg), sys, bdim);
    bra_blocks = kraus_blocks(bin_unitary(model, theta_bra, 0.0, cfg), sys, bdim);
  }

  for (int j = 0; j < cfg.n_bins; ++j) {
    if (timedep) {
      double tj = j * cfg.delta_t;
      ket_blocks = kraus_blocks(bin_unitary(model, theta_ket, tj, cfg), sys, bdim);
      bra_blocks = kraus_blocks(bin_unitary(model, theta_bra, tj, cfg), sys, bdim);
    }
    Mat next = Mat::Zero(sys, sys);
    for (Index b = 0; b < bdim; ++b)
      next += ket_blocks[static_cast<size_t>(b)] * m *
              bra_blocks[static_cast<size_t>(b)].adjoint();
    m = std::move(next);
    if (spectral_norm(m) > 1.0 + 1e-9)
      throw Error("two_sided_overlap: transfer object norm exceeded 1");
  }
  return m.trace();
}

namespace {

// Directional fidelity-deficit estimate of the metric along `dir`:
// Q_dir = (2 - |o(+)| - |o(-)|) / delta^2 at steps theta +- delta*dir.
double directional_q(const DissipationModel& model, const RVec& theta,
                     const RVec& dir, const PureState& psi0,
                     const CollisionalConfig& cfg, double delta) {
  RVec tp = theta + delta * dir;
  RVec tm = theta - delta * dir;
  double op = std::abs(two_sided_overlap(model, tp, theta, psi0, cfg));
  double om = std::abs(two_sided_overlap(model, tm, theta, psi0, cfg));
  if (1.0 - op > 0.1 || 1.0 - om > 0.1)
    throw StepTooLarge("fd_purification_qgt: overlap deficit outside quadratic regime");
  return (2.0 - op - om) / (delta * delta);
}

}  // namespace

QGTMatrix fd_purification_qgt(const DissipationModel& model, const RVec& theta,
                              const PureState& psi0, const CollisionalConfig& cfg) {
  const int d = model.param_dim();
  const double delta = cfg.fd_step;
  Mat q = Mat::Zero(d, d);

  auto ov = [&](const RVec& bra, const RVec& ket) {
    return two_sided_overlap(model, ket, bra, psi0, cfg);
  };
  auto unit = [&](int a) {
    RVec e = RVec::Zero(d);
    e(a) = 1.0;
    return e;
  };

  for (int a = 0; a < d; ++a)
    q(a, a) = directional_q(model, theta, unit(a), psi0, cfg, delta);

  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      // Real part by polarization of directional metrics.
      double qp = directional_q(model, theta, unit(a) + unit(b), psi0, cfg, delta);
      double qm = directional_q(model, theta, unit(a) - unit(b), psi0, cfg, delta);
      double re = 0.25 * (qp - qm);

      // Imaginary part from the centered overlap stencil, with the
      // <dPsi|Psi><Psi|dPsi> connection term removed.
      RVec pa = theta + delta * unit(a), ma = theta - delta * unit(a);
      RVec pb = theta + delta * unit(b), mb = theta - delta * unit(b);
      Cplx dd = (ov(pa, pb) - ov(pa, mb) - ov(ma, pb) + ov(ma, mb)) /
                (4.0 * delta * delta);
      Cplx da_psi = (ov(pa, theta) - ov(ma, theta)) / (2.0 * delta);
      Cplx psi_db = (ov(theta, pb) - ov(theta, mb)) / (2.0 * delta);
      double im = (dd - da_psi * psi_db).imag();

      q(a, b) = Cplx(re, im);
      q(b, a) = Cplx(re, -im);
    }
  }
  return {q};
}

PureState explicit_purification(const DissipationModel& model, const RVec& theta,
                                const PureState& psi0, const CollisionalConfig& cfg) {
  const Index sys = model.system_dim();
  const Index bdim = bin_dim(model, cfg);
  double total = static_cast<double>(sys);
  for (int j = 0; j < cfg.n_bins; ++j) {
    total *= static_cast<double>(bdim);
    if (total > double(1 << 16))
      throw DimensionGuard("explicit_purification: global dimension exceeds 2^16");
  }

  const Index full = static_cast<Index>(total);
  CVec state = CVec::Zero(full);
  // Ordering sys (x) bin_1 (x) ... (x) bin_n; all bins start in vacuum.
  Index rest = full / sys;
  for (Index s = 0; s < sys; ++s) state(s * rest) = psi0.amps(s);

  for (int j = 0; j < cfg.n_bins; ++j) {
    Mat u = bin_unitary(model, theta, j * cfg.delta_t, cfg);
    // Apply u on (system, bin_j); spectators are bins != j.
    Index left = 1;                       // bins before j
    for (int k = 0; k < j; ++k) left *= bdim;
    Index right = rest / left / bdim;     // bins after j

    CVec next = CVec::Zero(full);
    CVec in(sys * bdim), out(sys * bdim);
    for (Index l = 0; l < left; ++l)
      for (Index rr = 0; rr < right; ++rr) {
        for (Index s = 0; s < sys; ++s)
          for (Index b = 0; b < bdim; ++b)
            in(s * bdim + b) = state(((s * left + l) * bdim + b) * right + rr);
        out.noalias() = u * in;
        for (Index s = 0; s < sys; ++s)
          for (Index b = 0; b < bdim; ++b)
            next(((s * left + l) * bdim + b) * right + rr) = out(s * bdim + b);
      }
    state = std::move(next);
  }

  std::vector<Index> dims{sys};
  for (int j = 0; j < cfg.n_bins; ++j) dims.push_back(bdim);
  state.normalize();
  return PureState(HilbertSpace(dims), state);
}

}  // namespace qnm
