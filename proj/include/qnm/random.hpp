#pragma once

#include <cstdint>

#include "qnm/types.hpp"

namespace qnm {

// Deterministic, self-contained RNG (splitmix64 core). Outputs are identical
// across platforms and independent of the standard library's distributions,
// so seeded runs produce byte-identical files.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derives a stream for (seed, tag, index); order-independent fan-out for
  // parallel work items.
  static Rng derive(std::uint64_t master, std::uint64_t tag, std::uint64_t index);

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();                      // standard normal, Box-Muller
  long poisson(double lambda);

  Cplx gaussian_cplx();                   // complex standard normal

 private:
  std::uint64_t state_;
};

// Random test-data generators (all deterministic given the Rng state).
Mat random_matrix(Rng& rng, Index n);                 // iid complex Gaussian
Mat random_hermitian(Rng& rng, Index n);
Mat random_psd(Rng& rng, Index n);                    // X†X, full rank a.s.
Mat random_unitary(Rng& rng, Index n);                // Haar via QR
CVec random_state_vector(Rng& rng, Index n);          // unit norm
Mat random_density(Rng& rng, Index n, Index rank = 0);

}  // namespace qnm
