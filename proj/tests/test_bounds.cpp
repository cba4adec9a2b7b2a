#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <zer/bounds.hpp>
#include <zer/distiller.hpp>
#include <zer/gaussian.hpp>
#include <zer/model.hpp>

#include "support/oracles.hpp"

using namespace zer;

namespace {

CorrelationMatrix atomic_insulator(int cells) {
  ModelSpec s;
  s.cells = cells;
  s.orbitals_per_cell = 2;
  s.hoppings = {{0, 0, 0, Complex(-1.0, 0.0)}};
  s.filling = 0.5;
  return ground_state_correlation(s).C;
}

CorrelationMatrix dimer_state(int cells) {
  ModelSpec s;
  s.cells = cells;
  s.orbitals_per_cell = 2;
  s.hoppings = {{1, 1, 0, Complex(-0.6, 0.0)}};
  s.filling = 0.5;
  return ground_state_correlation(s).C;
}
}  // namespace

TEST_CASE("width-1 regions tile the ring with orthonormal aggregated modes") {
  const int L = 8;
  const CorrelationMatrix C = atomic_insulator(L);
  const LocalDistillation d =
      local_distill(C, reference_region(L, 2, 1), 1e-4);
  REQUIRE(d.filled_vectors.cols() == 1);
  REQUIRE(d.empty_vectors.cols() == 1);

  const Matrix phi_e = aggregate_local_modes(d, L, 2, 1, true);
  const Matrix phi_f = aggregate_local_modes(d, L, 2, 1, false);
  REQUIRE(phi_e.cols() == L);
  CHECK(oracles::max_abs(phi_e.adjoint() * phi_e - Matrix::Identity(L, L)) <
        1e-12);

  const BoundReport r = entanglement_bound(C, phi_e, phi_f, 1e-4, 0.0);
  CHECK(r.z_e == 1);
  CHECK(r.z_f == 1);
  CHECK(std::abs(r.lambda_min_sq - 1.0) < 1e-12);
  CHECK(std::abs(r.mu_min_sq - 1.0) < 1e-12);
  // the product state realizes the thresholds exactly: measured occupations
  // vanish, so the tight bound is zero while the a-priori one is L * S(eps)
  CHECK(r.eps_e < 1e-12);
  CHECK(r.eps_f < 1e-12);
  CHECK(r.bound_total < 1e-10);
  CHECK(std::abs(r.bound_e_raw - L * binary_entropy(1e-4)) < 1e-12);
  CHECK(std::abs(r.bound_total_raw - 2.0 * L * binary_entropy(1e-4)) < 1e-12);
  CHECK(r.applicable_e);
  CHECK(r.applicable_f);
  CHECK(r.S_courier_measured == 0.0);
}

TEST_CASE("overlapping translates duplicate columns without breaking the "
          "bound") {
  const int L = 8;
  const CorrelationMatrix C = atomic_insulator(L);
  // width-2 regions contain the same pinned orbitals twice: consecutive
  // translates duplicate columns, so half of the singular values vanish
  const LocalDistillation d =
      local_distill(C, reference_region(L, 2, 2), 1e-4);
  REQUIRE(d.filled_vectors.cols() == 2);

  const Matrix phi_f = aggregate_local_modes(d, L, 2, 2, false);
  REQUIRE(phi_f.cols() == 2 * L);
  Eigen::SelfAdjointEigenSolver<Matrix> es(phi_f.adjoint() * phi_f);
  int null = 0, two = 0;
  for (int i = 0; i < 2 * L; ++i) {
    if (es.eigenvalues()(i) < 1e-12) ++null;
    if (std::abs(es.eigenvalues()(i) - 2.0) < 1e-12) ++two;
  }
  CHECK(null == L);
  CHECK(two == L);

  const Matrix phi_e = aggregate_local_modes(d, L, 2, 2, true);
  const BoundReport r = entanglement_bound(C, phi_e, phi_f, 1e-4, 0.0);
  // the rank-deficit drop keeps the smallest surviving value, 2
  CHECK(std::abs(r.mu_min_sq - 2.0) < 1e-10);
  CHECK(std::abs(r.lambda_min_sq - 2.0) < 1e-10);
  CHECK(r.applicable_f);
  CHECK(std::abs(r.bound_total_raw -
                 4.0 * L * binary_entropy(1e-4 / 2.0)) < 1e-12);
}

TEST_CASE("bound report matches an independent singular value computation") {
  const int L = 16;
  const CorrelationMatrix C = dimer_state(L);
  const LocalDistillation d =
      local_distill(C, reference_region(L, 2, 2), 1e-5);
  const Matrix phi_f = aggregate_local_modes(d, L, 2, 2, false);
  const Matrix phi_e = aggregate_local_modes(d, L, 2, 2, true);

  const BoundReport r = entanglement_bound(C, phi_e, phi_f, 1e-5, 0.123);
  CHECK(r.S_courier_measured == doctest::Approx(0.123));

  Eigen::SelfAdjointEigenSolver<Matrix> es(phi_f.adjoint() * phi_f);
  double min_kept = -1.0;
  const double top = es.eigenvalues()(es.eigenvalues().size() - 1);
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-20 * top && min_kept < 0.0)
      min_kept = es.eigenvalues()(i);
  CHECK(std::abs(r.mu_min_sq - min_kept) < 1e-10);

  // the dimer bond modes tile disjointly: the Gram matrix is the identity
  CHECK(std::abs(r.mu_min_sq - 1.0) < 1e-10);
  // and the state realizes the frozen modes exactly
  CHECK(r.eps_f < 1e-12);
  CHECK(r.bound_total < 1e-10);
  CHECK(r.bound_total_raw ==
        doctest::Approx(2.0 * L * binary_entropy(1e-5)).epsilon(1e-10));
}

TEST_CASE("measured occupations stay below the threshold that found them") {
  // weakly coupled dimerized two-orbital chain: frozen modes are close to,
  // but not exactly at, occupation 0 and 1
  ModelSpec s;
  s.cells = 16;
  s.orbitals_per_cell = 2;
  s.hoppings = {{0, 0, 1, Complex(-0.1, 0.0)}, {1, 1, 0, Complex(-1.0, 0.0)}};
  s.filling = 0.5;
  const CorrelationMatrix C = ground_state_correlation(s).C;
  const double eps = 1e-2;
  const LocalDistillation d =
      local_distill(C, reference_region(16, 2, 2), eps);
  REQUIRE(d.filled_vectors.cols() >= 1);
  REQUIRE(d.empty_vectors.cols() >= 1);

  const Matrix phi_e = aggregate_local_modes(d, 16, 2, 2, true);
  const Matrix phi_f = aggregate_local_modes(d, 16, 2, 2, false);
  const BoundReport r = entanglement_bound(C, phi_e, phi_f, eps, 0.0);

  CHECK(r.eps_e > 0.0);
  CHECK(r.eps_f > 0.0);
  CHECK(r.eps_e <= eps);
  CHECK(r.eps_f <= eps);
  CHECK(r.bound_total > 0.0);
  CHECK(r.bound_total <= r.bound_total_raw + 1e-12);
  CHECK(r.bound_total == doctest::Approx(r.bound_e + r.bound_f));

  // growing the threshold can only grow the a-priori bound
  const BoundReport r2 = entanglement_bound(C, phi_e, phi_f, 2 * eps, 0.0);
  CHECK(r2.bound_total_raw >= r.bound_total_raw);
}

TEST_CASE("the bound argument saturates at half when the premise fails") {
  Matrix A = 0.5 * Matrix::Identity(4, 4);
  const CorrelationMatrix C = make_correlation(A, 4, 1);
  Matrix phi_e = Matrix::Zero(4, 1);
  phi_e(0, 0) = Complex(0.1, 0.0);  // tiny singular value, eps/lambda^2 >> 1/2
  const BoundReport r =
      entanglement_bound(C, phi_e, Matrix(4, 0), 0.3, 0.0);
  CHECK_FALSE(r.applicable_e);
  CHECK(r.applicable_f);  // absent group stays applicable
  CHECK(r.bound_e == doctest::Approx(std::log(2.0)));
  CHECK(r.z_f == 0);
  CHECK(r.bound_f == 0.0);
  CHECK(r.bound_total == doctest::Approx(std::log(2.0)));
}

TEST_CASE("aggregate rejects an absent group, bound accepts empty matrices") {
  const CorrelationMatrix C = dimer_state(8);
  LocalDistillation d = local_distill(C, reference_region(8, 2, 2), 1e-5);
  d.empty_vectors = Matrix(static_cast<int>(d.region.size()), 0);
  CHECK_THROWS_AS(aggregate_local_modes(d, 8, 2, 2, true),
                  std::invalid_argument);

  const BoundReport r =
      entanglement_bound(C, Matrix(16, 0), Matrix(16, 0), 1e-5, 0.0);
  CHECK(r.bound_total == 0.0);
  CHECK(r.bound_total_raw == 0.0);
  CHECK(r.z_e == 0);
  CHECK(r.z_f == 0);

  CHECK_THROWS_AS(entanglement_bound(C, Matrix(7, 2), Matrix(16, 0), 1e-5, 0.0),
                  std::invalid_argument);
}
