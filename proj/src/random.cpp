#include "qnm/random.hpp"

#include <cmath>

namespace qnm {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng Rng::derive(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= tag * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(s);
  s ^= index + 0x632be59bd9b4e019ULL;
  std::uint64_t c = splitmix64(s);
  return Rng(a ^ (b << 1) ^ (c >> 1));
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Cplx Rng::gaussian_cplx() {
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  double r = std::sqrt(-std::log(u1));
  return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

long Rng::poisson(double lambda) {
  // Sum of independent Poisson chunks is Poisson; chunking keeps the Knuth
  // product away from underflow for large means.
  long total = 0;
  while (lambda > 30.0) {
    double chunk = 30.0;
    double limit = std::exp(-chunk);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    total += k - 1;
    lambda -= chunk;
  }
  if (lambda > 0.0) {
    double limit = std::exp(-lambda);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    total += k - 1;
  }
  return total;
}

Mat random_matrix(Rng& rng, Index n) {
  Mat m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = rng.gaussian_cplx();
  return m;
}

Mat random_hermitian(Rng& rng, Index n) { return herm(random_matrix(rng, n)); }

Mat random_psd(Rng& rng, Index n) {
  Mat x = random_matrix(rng, n);
  return x.adjoint() * x;
}

Mat random_unitary(Rng& rng, Index n) {
  Mat x = random_matrix(rng, n);
  Eigen::HouseholderQR<Mat> qr(x);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (Index j = 0; j < n; ++j) {
    Cplx d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : Cplx(1, 0));
  }
  return q;
}

CVec random_state_vector(Rng& rng, Index n) {
  CVec v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.gaussian_cplx();
  v.normalize();
  return v;
}

Mat random_density(Rng& rng, Index n, Index rank) {
  if (rank <= 0 || rank > n) rank = n;
  Mat x(n, rank);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < rank; ++j) x(i, j) = rng.gaussian_cplx();
  Mat rho = x * x.adjoint();
  rho /= rho.trace().real();
  return herm(rho);
}

}  // namespace qnm
