#include <doctest.h>

#include "qnm/collisional.hpp"
#include "qnm/linalg.hpp"
#include "test_support.hpp"

using namespace qnm;
using namespace qnm::test;

TEST_SUITE("collisional") {

TEST_CASE("bin_unitary limits") {
  auto model = dephasing_model();
  RVec th(1);
  th << 1.0;
  CollisionalConfig cfg{0.0, 1, 2, 1e-4};
  Mat u = bin_unitary(model, th, 0.0, cfg);
  CHECK(frob(u - Mat::Identity(4, 4)) < 1e-12);

  // gamma = 0 leaves only the control rotation.
  JumpBasis basis(HilbertSpace::qubits(1), {pauli_z()});
  DissipationModel::EigenFns fns;
  fns.rates = [](const RVec&) { return RVec::Zero(1); };
  auto idle = DissipationModel::eigenmodel(std::move(basis), 1, std::move(fns), true);
  idle.with_control([](double) { return pauli_x(); });
  CollisionalConfig cfg2{0.05, 1, 2, 1e-4};
  Mat u2 = bin_unitary(idle, RVec::Zero(1), 0.0, cfg2);
  Mat expect = kron(unitary_from_hermitian(pauli_x(), 0.05), Mat::Identity(2, 2));
  CHECK(frob(u2 - expect) < 1e-12);
}

TEST_CASE("bin_unitary unitarity for random model") {
  Rng rng(111);
  auto model = random_rotating_model(rng, 3);
  RVec th(2);
  th << 0.3, 0.2;
  CollisionalConfig cfg{0.05, 1, 2, 1e-4};
  Mat u = bin_unitary(model, th, 0.0, cfg);
  CHECK(frob(u.adjoint() * u - Mat::Identity(u.rows(), u.rows())) < 1e-10);
}

TEST_CASE("kraus_step matches lindblad increment at first order") {
  auto model = dephasing_model();
  RVec th(1);
  th << 1.0;
  Mat rho = plus_state().projector();

  CollisionalConfig cfg0{0.0, 1, 2, 1e-4};
  CHECK(frob(kraus_step(rho, model, th, 0.0, cfg0) - rho) < 1e-12);

  CollisionalConfig cfg{1e-3, 1, 2, 1e-4};
  Mat stepped = kraus_step(rho, model, th, 0.0, cfg);
  Mat increment = stepped - rho;
  Mat expected = cfg.delta_t * lindblad_rhs(rho, model, th);
  CHECK(std::abs(increment(0, 1) - expected(0, 1)) <
        1e-5 * std::abs(expected(0, 1)) + 1e-12);
}

TEST_CASE("kraus_step increment converges at second order") {
  Rng rng(113);
  auto model = random_rotating_model(rng, 3);
  RVec th(2);
  th << 0.3, 0.4;
  Mat rho = random_density(rng, 3);
  Mat rhs = lindblad_rhs(rho, model, th);

  std::vector<double> dts{4e-3, 2e-3, 1e-3};
  std::vector<double> errs;
  for (double dt : dts) {
    CollisionalConfig cfg{dt, 1, 2, 1e-4};
    Mat stepped = kraus_step(rho, model, th, 0.0, cfg);
    errs.push_back(frob(stepped - rho - dt * rhs));
  }
  double slope = std::log(errs[0] / errs[2]) / std::log(dts[0] / dts[2]);
  CHECK(slope >= 1.9);
}

TEST_CASE("two_sided_overlap trivial cases") {
  auto model = dephasing_model();
  RVec th(1);
  th << 1.0;
  CollisionalConfig cfg{0.01, 20, 2, 1e-4};
  Cplx same = two_sided_overlap(model, th, th, plus_state(), cfg);
  CHECK(std::abs(same - Cplx(1, 0)) < 1e-10);

  // theta-independent model: overlap 1 for any pair.
  JumpBasis basis(HilbertSpace::qubits(1), {pauli_z()});
  DissipationModel::EigenFns fns;
  fns.rates = [](const RVec&) {
    RVec g(1);
    g << 0.7;
    return g;
  };
  auto flat = DissipationModel::eigenmodel(std::move(basis), 1, std::move(fns), true);
  RVec a(1), b(1);
  a << 0.1;
  b << 0.9;
  Cplx cross = two_sided_overlap(flat, a, b, plus_state(), cfg);
  CHECK(std::abs(cross - Cplx(1, 0)) < 1e-10);
}

TEST_CASE("two_sided_overlap equals explicit purification inner product") {
  Rng rng(127);
  auto model = dephasing_model();
  RVec ta(1), tb(1);
  ta << 1.0;
  tb << 1.3;
  CollisionalConfig cfg{0.02, 6, 2, 1e-4};

  Cplx fast = two_sided_overlap(model, ta, tb, plus_state(), cfg);
  PureState pa = explicit_purification(model, ta, plus_state(), cfg);
  PureState pb = explicit_purification(model, tb, plus_state(), cfg);
  Cplx slow = (pb.amps.adjoint() * pa.amps)(0, 0);
  CHECK(std::abs(fast - slow) < 1e-10);
}

TEST_CASE("explicit_purification edge cases and reduced state") {
  auto model = dephasing_model();
  RVec th(1);
  th << 1.0;

  CollisionalConfig none{0.02, 0, 2, 1e-4};
  PureState p0 = explicit_purification(model, th, plus_state(), none);
  CHECK(frob(Mat(p0.amps - plus_state().amps)) < 1e-14);

  CollisionalConfig cfg{0.02, 5, 2, 1e-4};
  PureState p = explicit_purification(model, th, plus_state(), cfg);
  Mat full = p.amps * p.amps.adjoint();
  Mat red = partial_trace(full, p.space.subsystem_dims(), {0});
  double target = 0.5 * std::exp(-2.0 * th(0) * cfg.total_time());
  CHECK(std::abs(red(0, 1).real() - target) < 2e-3);

  // Reduced state also tracks the RK4 propagation within O(delta_t).
  Mat prop = propagate(plus_state(), model, th, cfg.total_time(), 400).final_state();
  CHECK(frob(red - prop) < 5.0 * cfg.delta_t);
}

TEST_CASE("fd_purification_qgt flat model is zero") {
  JumpBasis basis(HilbertSpace::qubits(1), {pauli_z()});
  DissipationModel::EigenFns fns;
  fns.rates = [](const RVec&) {
    RVec g(1);
    g << 0.8;
    return g;
  };
  auto flat = DissipationModel::eigenmodel(std::move(basis), 1, std::move(fns), true);
  CollisionalConfig cfg{0.01, 10, 2, 1e-4};
  auto q = fd_purification_qgt(flat, RVec::Zero(1), plus_state(), cfg);
  CHECK(q.qfi().norm() < 1e-6);
}

TEST_CASE("fd_purification_qgt dephasing converges to t/theta") {
  auto model = dephasing_model();
  RVec th(1);
  th << 1.0;
  const double t = 0.2;

  CollisionalConfig c64{t / 64, 64, 2, 1e-4};
  double f64 = fd_purification_qgt(model, th, plus_state(), c64).qfi()(0, 0);
  CHECK(std::abs(f64 - t) / t < 0.03);

  CollisionalConfig c32{t / 32, 32, 2, 1e-4};
  CollisionalConfig c128{t / 128, 128, 2, 1e-4};
  double f32 = fd_purification_qgt(model, th, plus_state(), c32).qfi()(0, 0);
  double f128 = fd_purification_qgt(model, th, plus_state(), c128).qfi()(0, 0);
  double extrap = richardson(f64, f128);
  CHECK(std::abs(extrap - t) / t < 0.005);

  // O(delta_t) convergence: error roughly halves between 32 and 64 bins.
  double e32 = std::abs(f32 - t), e64 = std::abs(f64 - t);
  CHECK(e64 < 0.7 * e32);
}

TEST_CASE("fd_purification_qgt two-parameter rate model matches qfi_integrate") {
  Rng rng(131);
  RVec th(2);
  th << 0.2, -0.1;
  auto model = random_rate_model(rng, 2, 2, 2);
  const double t = 0.2;

  auto formula = qfi_integrate(model, plus_state(), th, t, 128);
  CollisionalConfig c128{t / 128, 128, 2, 1e-4};
  RMat oracle = fd_purification_qgt(model, th, plus_state(), c128).qfi();

  double scale = formula.qfi.entries.cwiseAbs().maxCoeff();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double ref = formula.qfi.entries(a, b);
      CHECK(std::abs(oracle(a, b) - ref) <=
            0.03 * std::max(std::abs(ref), 0.05 * scale));
    }
}

TEST_CASE("overlap contraction bound") {
  Rng rng(137);
  auto model = random_rotating_model(rng, 2);
  RVec a(2), b(2);
  a << 0.2, 0.3;
  b << 0.25, 0.27;
  CollisionalConfig cfg{0.01, 30, 2, 1e-4};
  Cplx o = two_sided_overlap(model, a, b, plus_state(), cfg);
  CHECK(std::abs(o) <= 1.0 + 1e-9);
}

}
