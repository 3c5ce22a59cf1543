#include "qnm/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qnm {

EigResult hermitian_eig(const Mat& m, double tol) {
  double scale = std::max(1e-300, frob(m));
  if (frob(m - m.adjoint()) > tol * scale)
    throw NotHermitian("hermitian_eig: matrix not Hermitian within tol");
  Eigen::SelfAdjointEigenSolver<Mat> es(herm(m));
  if (es.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Mat psd_sqrt(const Mat& m) {
  auto [vals, vecs] = hermitian_eig(m);
  double floor = 1e-10 * std::max(1e-300, spectral_norm(m));
  RVec s(vals.size());
  for (Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -floor)
      throw NotPSD("psd_sqrt: eigenvalue below PSD floor");
    s(i) = std::sqrt(std::max(0.0, vals(i)));
  }
  return vecs * s.asDiagonal() * vecs.adjoint();
}

Mat solve_anticommutator(const Mat& p, const Mat& b, double support_tol) {
  if (p.rows() != b.rows() || p.cols() != b.cols())
    throw DimensionMismatch("solve_anticommutator: shape mismatch");
  auto [vals, vecs] = hermitian_eig(p);
  const Mat bh = herm(b);
  Mat bt = vecs.adjoint() * bh * vecs;   // B in P's eigenbasis
  const double trp = vals.sum();
  const double zero_thr = 1e-12 * std::max(1e-300, trp);

  // Weight of B on the kernel-kernel block is unreachable by {P, X}.
  double outside = 0.0;
  for (Index i = 0; i < vals.size(); ++i)
    for (Index j = 0; j < vals.size(); ++j)
      if (vals(i) + vals(j) <= zero_thr) outside += std::norm(bt(i, j));
  if (std::sqrt(outside) > support_tol * std::max(1e-300, frob(bh)))
    throw UnsupportedRHS("solve_anticommutator: RHS outside supp(P)");

  Mat x = Mat::Zero(p.rows(), p.cols());
  for (Index i = 0; i < vals.size(); ++i)
    for (Index j = 0; j < vals.size(); ++j) {
      double denom = vals(i) + vals(j);
      x(i, j) = denom > zero_thr ? bt(i, j) / denom : Cplx(0, 0);
    }
  return vecs * x * vecs.adjoint();
}

Mat partial_trace(const Mat& m, const std::vector<Index>& dims,
                  const std::vector<Index>& keep) {
  const Index n = static_cast<Index>(dims.size());
  Index total = 1;
  for (Index d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw DimensionMismatch("partial_trace: matrix dim mismatch");

  std::vector<bool> kept(static_cast<size_t>(n), false);
  for (Index k : keep) {
    if (k < 0 || k >= n) throw BadSubsystem("partial_trace: index out of range");
    if (kept[static_cast<size_t>(k)])
      throw BadSubsystem("partial_trace: repeated index");
    kept[static_cast<size_t>(k)] = true;
  }

  Index keep_dim = 1, trace_dim = 1;
  for (Index k = 0; k < n; ++k)
    (kept[static_cast<size_t>(k)] ? keep_dim : trace_dim) *= dims[static_cast<size_t>(k)];

  // Strides of each subsystem in the full row index.
  std::vector<Index> stride(static_cast<size_t>(n), 1);
  for (Index k = n - 2; k >= 0; --k)
    stride[static_cast<size_t>(k)] =
        stride[static_cast<size_t>(k + 1)] * dims[static_cast<size_t>(k + 1)];

  std::vector<Index> keep_idx, trace_idx;
  for (Index k = 0; k < n; ++k)
    (kept[static_cast<size_t>(k)] ? keep_idx : trace_idx).push_back(k);

  auto unrank = [&](Index flat, const std::vector<Index>& subs) {
    // Maps a flat index over the listed subsystems to its full-index offset.
    Index offset = 0;
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
      Index d = dims[static_cast<size_t>(*it)];
      offset += (flat % d) * stride[static_cast<size_t>(*it)];
      flat /= d;
    }
    return offset;
  };

  Mat out = Mat::Zero(keep_dim, keep_dim);
  for (Index r = 0; r < keep_dim; ++r) {
    Index ro = unrank(r, keep_idx);
    for (Index c = 0; c < keep_dim; ++c) {
      Index co = unrank(c, keep_idx);
      Cplx acc(0, 0);
      for (Index t = 0; t < trace_dim; ++t) {
        Index to = unrank(t, trace_idx);
        acc += m(ro + to, co + to);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Operator partial_trace(const Operator& op, const std::vector<Index>& keep) {
  Mat out = partial_trace(op.m, op.space.subsystem_dims(), keep);
  std::vector<Index> kept_dims;
  for (Index k : keep) kept_dims.push_back(op.space.subsystem_dim(k));
  return {HilbertSpace(kept_dims), out};
}

Mat unitary_from_hermitian(const Mat& h, double scale) {
  auto [vals, vecs] = hermitian_eig(h);
  CVec phases(vals.size());
  for (Index i = 0; i < vals.size(); ++i)
    phases(i) = std::exp(Cplx(0, -scale * vals(i)));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

double spectral_norm(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace qnm
