#pragma once

#include <vector>

#include "qnm/hilbert.hpp"
#include "qnm/types.hpp"

namespace qnm {

struct EigResult {
  RVec eigenvalues;   // ascending
  Mat eigenvectors;   // unitary, columns match eigenvalues
};

// Spectral decomposition of a Hermitian matrix. Throws NotHermitian when the
// symmetry violation exceeds tol (relative to the Frobenius norm).
EigResult hermitian_eig(const Mat& m, double tol = 1e-10);

// Unique PSD square root. Eigenvalues in (-1e-10*||M||, 0) are clipped to
// zero; anything below the floor raises NotPSD.
Mat psd_sqrt(const Mat& m);

// Solve {P, X} = B for Hermitian X with P PSD and B Hermitian supported on
// supp(P). In P's eigenbasis X_mn = B_mn / (p_m + p_n) when p_m + p_n exceeds
// 1e-12 * tr(P), else 0. Raises UnsupportedRHS when B has weight on the
// kernel-kernel block beyond support_tol * ||B||.
Mat solve_anticommutator(const Mat& p, const Mat& b, double support_tol = 1e-8);

// Partial trace keeping the listed subsystems (in their original order).
Mat partial_trace(const Mat& m, const std::vector<Index>& dims,
                  const std::vector<Index>& keep);
Operator partial_trace(const Operator& op, const std::vector<Index>& keep);

// exp(-i * scale * H) for Hermitian H, via the spectral decomposition.
Mat unitary_from_hermitian(const Mat& h, double scale);

// Largest singular value.
double spectral_norm(const Mat& m);

}  // namespace qnm
