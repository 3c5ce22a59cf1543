#include "qnm/dissipation_model.hpp"

#include <cmath>

namespace qnm {

JumpBasis::JumpBasis(HilbertSpace space, std::vector<Mat> ops,
                     std::vector<std::string> labels)
    : space_(std::move(space)), ops_(std::move(ops)), labels_(std::move(labels)) {
  if (ops_.empty()) throw DimensionMismatch("JumpBasis: no operators");
  for (const Mat& l : ops_)
    if (l.rows() != space_.dim() || l.cols() != space_.dim())
      throw DimensionMismatch("JumpBasis: operator dim mismatch");
  if (labels_.empty()) {
    for (size_t i = 0; i < ops_.size(); ++i) labels_.push_back("L" + std::to_string(i));
  }
  if (labels_.size() != ops_.size())
    throw DimensionMismatch("JumpBasis: label count mismatch");

  // Linear independence via the Gram matrix of vectorized operators.
  const Index r = num_channels();
  Mat gram(r, r);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      gram(i, j) = (ops_[static_cast<size_t>(i)].adjoint() * ops_[static_cast<size_t>(j)]).trace();
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < 1e-10 * std::max(1.0, es.eigenvalues().maxCoeff()))
    throw DimensionMismatch("JumpBasis: operators not linearly independent");
}

bool JumpBasis::all_hermitian(double tol) const {
  for (const Mat& l : ops_)
    if (frob(l - l.adjoint()) > tol * std::max(1.0, frob(l))) return false;
  return true;
}

DissipationModel DissipationModel::eigenmodel(JumpBasis basis, int param_dim,
                                              EigenFns fns, bool rate_only) {
  DissipationModel m(std::move(basis), param_dim);
  m.eigen_mode_ = true;
  m.efns_ = std::move(fns);
  m.rate_only_ = rate_only;
  if (!m.efns_.rates) throw ModelEvaluation("eigenmodel: rates callable missing");
  return m;
}

DissipationModel DissipationModel::gamma_model(JumpBasis basis, int param_dim,
                                               GammaFns fns) {
  DissipationModel m(std::move(basis), param_dim);
  m.eigen_mode_ = false;
  m.gfns_ = std::move(fns);
  if (!m.gfns_.gamma) throw ModelEvaluation("gamma_model: gamma callable missing");
  return m;
}

DissipationModel& DissipationModel::with_control(std::function<Mat(double)> hc) {
  control_ = std::move(hc);
  return *this;
}

DissipationModel& DissipationModel::with_fd_step(double h) {
  fd_scale_ = h;
  return *this;
}

Mat DissipationModel::control(double t) const {
  if (!control_) return Mat::Zero(system_dim(), system_dim());
  Mat h = control_(t);
  if (h.rows() != system_dim()) throw ModelEvaluation("control: dim mismatch");
  return h;
}

double DissipationModel::fd_step(const RVec& theta, int alpha) const {
  return fd_scale_ * std::max(1.0, std::abs(theta(alpha)));
}

Mat DissipationModel::frame_at(const RVec& theta) const {
  if (eigen_mode_) {
    const Index r = num_channels();
    if (!efns_.frame) return Mat::Identity(r, r);
    Mat v = efns_.frame(theta);
    if (frob(v.adjoint() * v - Mat::Identity(r, r)) > 1e-10 * std::sqrt(double(r)))
      throw ModelEvaluation("eigenmodel frame not unitary");
    return v;
  }
  return eigenmodel_at(theta).frame;
}

Mat DissipationModel::gamma_at(const RVec& theta) const {
  if (!theta.allFinite()) throw ModelEvaluation("gamma_at: non-finite theta");
  Mat g;
  if (eigen_mode_) {
    RVec lam = efns_.rates(theta);
    if (lam.size() != num_channels())
      throw ModelEvaluation("gamma_at: rates size mismatch");
    Mat v = frame_at(theta);
    g = v * lam.asDiagonal() * v.adjoint();
  } else {
    g = gfns_.gamma(theta);
    if (g.rows() != num_channels())
      throw ModelEvaluation("gamma_at: gamma size mismatch");
  }
  double scale = std::max(1e-300, frob(g));
  if (frob(g - g.adjoint()) > 1e-10 * scale)
    throw NotPSD("gamma_at: Gamma not Hermitian");
  g = herm(g);
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, es.eigenvalues().maxCoeff()))
    throw NotPSD("gamma_at: Gamma has negative eigenvalue beyond floor");
  return g;
}

EigenModel DissipationModel::eigenmodel_at(const RVec& theta) const {
  if (eigen_mode_) {
    RVec lam = efns_.rates(theta);
    for (Index k = 0; k < lam.size(); ++k)
      if (lam(k) < -1e-12) throw NotPSD("eigenmodel_at: negative rate");
    return {lam.cwiseMax(0.0), frame_at(theta)};
  }
  Mat g = gamma_at(theta);
  auto [vals, vecs] = hermitian_eig(g);
  const double gap_tol = 1e-8 * std::max(1e-300, spectral_norm(g));
  for (Index k = 0; k + 1 < vals.size(); ++k)
    if (vals(k + 1) - vals(k) < gap_tol)
      throw DegenerateSpectrum("eigenmodel_at: eigenvalue gap below tolerance");
  // Deterministic gauge: largest-magnitude entry of each column real positive.
  for (Index k = 0; k < vecs.cols(); ++k) {
    Index imax = 0;
    double best = -1.0;
    for (Index i = 0; i < vecs.rows(); ++i) {
      double a = std::abs(vecs(i, k));
      if (a > best + 1e-14) {
        best = a;
        imax = i;
      }
    }
    Cplx z = vecs(imax, k);
    if (std::abs(z) > 0) vecs.col(k) *= std::conj(z) / std::abs(z);
  }
  return {vals.cwiseMax(0.0), vecs};
}

Mat DissipationModel::dgamma(const RVec& theta, int alpha) const {
  if (eigen_mode_) {
    if (efns_.d_rates || efns_.d_frame) {
      RVec lam = efns_.rates(theta);
      Mat v = frame_at(theta);
      RVec dlam = drates(theta, alpha);
      Mat out = v * dlam.asDiagonal() * v.adjoint();
      if (efns_.frame) {
        Mat dv = efns_.d_frame ? efns_.d_frame(theta, alpha) : dframe_fd(theta, alpha);
        out += dv * lam.asDiagonal() * v.adjoint() + v * lam.asDiagonal() * dv.adjoint();
      }
      return herm(out);
    }
  } else if (gfns_.d_gamma) {
    return herm(gfns_.d_gamma(theta, alpha));
  }
  // Central difference on Gamma itself.
  const double h = fd_step(theta, alpha);
  RVec tp = theta, tm = theta;
  tp(alpha) += h;
  tm(alpha) -= h;
  return herm((gamma_at(tp) - gamma_at(tm)) / (2.0 * h));
}

RVec DissipationModel::drates(const RVec& theta, int alpha) const {
  if (eigen_mode_ && efns_.d_rates) return efns_.d_rates(theta, alpha);
  const double h = fd_step(theta, alpha);
  RVec tp = theta, tm = theta;
  tp(alpha) += h;
  tm(alpha) -= h;
  if (eigen_mode_) return (efns_.rates(tp) - efns_.rates(tm)) / (2.0 * h);
  return (eigenmodel_at(tp).rates - eigenmodel_at(tm).rates) / (2.0 * h);
}

Mat align_frame(const Mat& ref, Mat v) {
  for (Index k = 0; k < v.cols(); ++k) {
    Cplx ov = (ref.col(k).adjoint() * v.col(k))(0, 0);
    if (std::abs(ov) < 0.9)
      throw GaugeAlignment("align_frame: column overlap below 0.9");
    v.col(k) *= std::conj(ov) / std::abs(ov);
  }
  return v;
}

Mat DissipationModel::dframe_fd(const RVec& theta, int alpha) const {
  const double h = fd_step(theta, alpha);
  RVec tp = theta, tm = theta;
  tp(alpha) += h;
  tm(alpha) -= h;
  Mat v0 = frame_at(theta);
  Mat vp = align_frame(v0, frame_at(tp));
  Mat vm = align_frame(v0, frame_at(tm));
  return (vp - vm) / (2.0 * h);
}

Mat DissipationModel::connection(const RVec& theta, int alpha) const {
  const Index r = num_channels();
  Mat v = frame_at(theta);
  Mat dv;
  bool analytic = false;
  if (eigen_mode_) {
    if (!efns_.frame) return Mat::Zero(r, r);
    if (efns_.d_frame) {
      dv = efns_.d_frame(theta, alpha);
      analytic = true;
    } else {
      dv = dframe_fd(theta, alpha);
    }
  } else {
    dv = dframe_fd(theta, alpha);
  }
  Mat k = dv * v.adjoint();
  double tol = analytic ? 1e-10 : 1e-6;
  double scale = std::max(1.0, frob(k));
  if (frob(k + k.adjoint()) > tol * scale)
    throw GaugeAlignment("connection: anti-Hermiticity residual too large");
  return antiherm(k);
}

double DissipationModel::rate_equation_residual(const RVec& theta, int alpha) const {
  Mat dg = dgamma(theta, alpha);
  auto [lam, v] = eigenmodel_at(theta);
  RVec dlam = drates(theta, alpha);
  Mat k = connection(theta, alpha);
  Mat g = v * lam.asDiagonal() * v.adjoint();
  Mat assembled = v * dlam.asDiagonal() * v.adjoint() + k * g - g * k;
  return frob(dg - assembled);
}

std::vector<Mat> DissipationModel::canonical_jumps(const RVec& theta) const {
  Mat v = frame_at(theta);
  const Index r = num_channels();
  std::vector<Mat> js;
  js.reserve(static_cast<size_t>(r));
  for (Index k = 0; k < r; ++k) {
    Mat j = Mat::Zero(system_dim(), system_dim());
    for (Index i = 0; i < r; ++i) j += v(i, k) * basis_.op(i);
    js.push_back(std::move(j));
  }
  return js;
}

}  // namespace qnm
