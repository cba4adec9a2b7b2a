#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>
#include <zer/gaussian.hpp>
#include <zer/model.hpp>

#include "support/oracles.hpp"

using namespace zer;

namespace {
constexpr double kPi = std::numbers::pi;

CorrelationMatrix from_spectrum(const RealVector& xi, unsigned seed) {
  const int n = static_cast<int>(xi.size());
  const Matrix U = oracles::random_unitary(n, seed);
  Matrix C = U * xi.asDiagonal() * U.adjoint();
  return make_correlation(std::move(C), n, 1);
}
}  // namespace

TEST_CASE("restrict keeps the selected principal submatrix and its labels") {
  Matrix A(3, 3);
  A << Complex(0.5), Complex(0.1, 0.2), Complex(0.0), Complex(0.1, -0.2),
      Complex(0.5), Complex(0.3), Complex(0.0), Complex(0.3), Complex(0.5);
  const CorrelationMatrix C = make_correlation(A, 3, 1);
  const CorrelationMatrix R = restrict_modes(C, {0, 2});
  REQUIRE(R.size() == 2);
  CHECK(R.data(0, 0) == A(0, 0));
  CHECK(R.data(0, 1) == A(0, 2));
  CHECK(R.data(1, 0) == A(2, 0));
  CHECK(R.labels[1] == ModeLabel{2, 0});

  CHECK_THROWS_AS(restrict_modes(C, {}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_modes(C, {0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_modes(C, {-1}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_modes(C, {1, 1}), std::invalid_argument);
}

TEST_CASE("two neighbouring sites of the metallic chain") {
  const GroundState gs = ground_state_correlation([] {
    ModelSpec s;
    s.cells = 1024;
    s.hoppings = {{1, 0, 0, Complex(-1.0, 0.0)}};
    return s;
  }());
  const CorrelationMatrix R = restrict_modes(gs.C, {0, 1});
  const RealVector xi = entanglement_spectrum(R);
  REQUIRE(xi.size() == 2);
  // eigenvalues 1/2 +- 1/pi of the 2x2 block
  CHECK(std::abs(xi(0) - (0.5 + 1.0 / kPi)) < 2e-3);
  CHECK(std::abs(xi(1) - (0.5 - 1.0 / kPi)) < 2e-3);

  // the entanglement hamiltonian of the block has energies ln((1-xi)/xi)
  const Matrix h = entanglement_hamiltonian(R);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const double e = std::log((1.0 - xi(0)) / xi(0));
  CHECK(std::abs(es.eigenvalues()(0) - e) < 1e-9);
  CHECK(std::abs(es.eigenvalues()(1) + e) < 1e-9);
  CHECK(std::abs(std::abs(e) - 1.5049) < 2e-3);
}

TEST_CASE("binary entropy endpoints and reference values") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(std::abs(binary_entropy(0.5) - std::log(2.0)) < 1e-14);
  CHECK(std::abs(binary_entropy(1e-4) - 1.021037e-3) < 1e-8);
  // symmetric around 1/2
  CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-14));
  // clipped outside [0,1] rather than NaN
  CHECK(binary_entropy(-1e-9) == 0.0);
  CHECK(binary_entropy(1.0 + 1e-9) == 0.0);
}

TEST_CASE("entanglement entropy sums mode entropies") {
  RealVector xi(4);
  xi << 1.0, 0.5, 0.5, 0.0;
  CHECK(std::abs(entanglement_entropy(xi) - 2.0 * std::log(2.0)) < 1e-14);
}

TEST_CASE("entropy of a region equals the entropy of its complement") {
  ModelSpec s;
  s.cells = 16;
  s.hoppings = {{1, 0, 0, Complex(-1.0, 0.0)}};
  s.filling = 5.0 / 16.0;
  const GroundState gs = ground_state_correlation(s);
  std::vector<int> region, rest;
  for (int i = 0; i < 16; ++i) (i < 5 ? region : rest).push_back(i);
  const double sa =
      entanglement_entropy(entanglement_spectrum(restrict_modes(gs.C, region)));
  const double sb =
      entanglement_entropy(entanglement_spectrum(restrict_modes(gs.C, rest)));
  CHECK(sa > 0.1);  // the cut is genuinely entangled
  CHECK(std::abs(sa - sb) < 1e-8);
}

TEST_CASE("entanglement hamiltonian is consistent with the spectrum map") {
  RealVector xi(4);
  xi << 0.9, 0.7, 0.4, 0.05;
  const CorrelationMatrix C = from_spectrum(xi, 7);
  const Matrix h = entanglement_hamiltonian(C);
  // the defining relation: C^T = (1 + e^h)^{-1} applied to h's eigenbasis
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector back(4);
  for (int i = 0; i < 4; ++i) back(i) = 1.0 / (1.0 + std::exp(es.eigenvalues()(i)));
  std::sort(back.begin(), back.end(), std::greater<double>());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(back(i) - xi(i)) < 1e-10);
  // and reconstructing C from h must return the input
  const Matrix hT = h.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> esT(hT);
  Matrix Cback = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    Cback += (1.0 / (1.0 + std::exp(esT.eigenvalues()(i)))) *
             esT.eigenvectors().col(i) * esT.eigenvectors().col(i).adjoint();
  CHECK(oracles::max_abs(Cback - C.data) < 1e-10);
}

TEST_CASE("entanglement hamiltonian rejects exactly frozen modes") {
  RealVector xi(3);
  xi << 1.0, 0.5, 0.3;
  const CorrelationMatrix C = from_spectrum(xi, 3);
  CHECK_THROWS_AS(entanglement_hamiltonian(C), std::domain_error);
}

TEST_CASE("rotation acts through the transpose picture and keeps spectra") {
  RealVector xi(5);
  xi << 0.95, 0.8, 0.5, 0.2, 0.01;
  const CorrelationMatrix C = from_spectrum(xi, 11);
  const Matrix u = oracles::random_unitary(5, 23);
  const CorrelationMatrix Cr = rotate(C, u);

  // spectrum invariant
  const RealVector xir = entanglement_spectrum(Cr);
  const RealVector xis = entanglement_spectrum(C);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(xir(i) - xis(i)) < 1e-10);
  CHECK(std::abs(Cr.data.trace().real() - C.data.trace().real()) < 1e-10);

  // the defining relation C'^T = u^dag C^T u
  CHECK(oracles::max_abs(Cr.data.transpose() -
                         u.adjoint() * C.data.transpose() * u) < 1e-12);

  // identity is a no-op
  CHECK(oracles::max_abs(rotate(C, Matrix::Identity(5, 5)).data - C.data) == 0.0);

  // rotating a single-mode state into a chosen direction: occupation of the
  // first rotated mode is v^dag C^T v for the first column v of u
  const double occ = std::real(
      (u.col(0).adjoint() * C.data.transpose() * u.col(0))(0, 0));
  CHECK(std::abs(Cr.data(0, 0).real() - occ) < 1e-12);

  CHECK_THROWS_AS(rotate(C, Matrix::Identity(4, 4)), std::invalid_argument);
  Matrix bad = Matrix::Identity(5, 5);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(rotate(C, bad), std::invalid_argument);
}
