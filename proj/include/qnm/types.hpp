#pragma once

#include <complex>
#include <Eigen/Dense>

namespace qnm {

using Cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Cplx I_UNIT{0.0, 1.0};

inline double frob(const Mat& m) { return m.norm(); }

// Hermitian part (A + A†)/2.
inline Mat herm(const Mat& a) { return 0.5 * (a + a.adjoint()); }

// Anti-Hermitian part (A − A†)/2.
inline Mat antiherm(const Mat& a) { return 0.5 * (a - a.adjoint()); }

}  // namespace qnm
