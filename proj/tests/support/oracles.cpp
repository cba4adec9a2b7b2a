#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace oracles {

using zer::Complex;
using zer::Matrix;

Matrix dense_hamiltonian(const zer::ModelSpec& spec) {
  const int L = spec.cells;
  const int m = spec.orbitals_per_cell;
  const int n = L * m;
  // close the hopping list under Hermitian conjugation (own mini version,
  // independent of the library's)
  std::map<std::tuple<int, int, int>, Complex> amp;
  for (const auto& h : spec.hoppings) amp[{h.dcell, h.alpha, h.beta}] += h.t;
  auto closed = amp;
  for (const auto& [key, t] : amp) {
    const auto [d, a, b] = key;
    const std::tuple<int, int, int> partner{-d, b, a};
    if (partner == key) continue;  // on-site diagonal, must be real
    if (!amp.count(partner)) closed[partner] = std::conj(t);
  }
  Matrix H = Matrix::Zero(n, n);
  for (const auto& [key, t] : closed) {
    const auto [d, a, b] = key;
    for (int x = 0; x < L; ++x) {
      const int y = ((x + d) % L + L) % L;
      H(x * m + a, y * m + b) += t;
    }
  }
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::runtime_error("dense oracle: assembled H not Hermitian");
  return H;
}

Matrix dense_ground_correlation(const zer::ModelSpec& spec) {
  const Matrix H = dense_hamiltonian(spec);
  const int n = static_cast<int>(H.rows());
  const int N = zer::filled_count(spec);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense oracle: eigensolver failed");
  const auto& E = es.eigenvalues();
  if (N < n && E(N) - E(N - 1) < 1e-12) {
    std::ostringstream msg;
    msg << "dense oracle: degenerate Fermi boundary, E(" << N - 1 << ")=" << E(N - 1)
        << " vs E(" << N << ")=" << E(N);
    throw std::runtime_error(msg.str());
  }
  const Matrix V = es.eigenvectors().leftCols(N);
  return (V * V.adjoint()).conjugate();
}

Matrix dimer_correlation(int cells, double t2) {
  const int n = 2 * cells;
  Matrix C = Matrix::Zero(n, n);
  // bond between orbital 1 of cell x and orbital 0 of cell x+1; the filled
  // bonding state is (e1 + s e2)/sqrt(2) with s = -sign(t2)
  const double s = t2 < 0 ? 1.0 : -1.0;
  for (int x = 0; x < cells; ++x) {
    const int i = x * 2 + 1;
    const int j = ((x + 1) % cells) * 2 + 0;
    C(i, i) = 0.5;
    C(j, j) = 0.5;
    C(i, j) = 0.5 * s;
    C(j, i) = 0.5 * s;
  }
  return C;
}

Matrix translate_sum(const Matrix& h_local, int cells, int orbitals,
                     int region_width) {
  const int n = cells * orbitals;
  Matrix H = Matrix::Zero(n, n);
  for (int x = 0; x < cells; ++x) {
    for (int a = 0; a < region_width; ++a) {
      for (int b = 0; b < region_width; ++b) {
        const int xa = ((x + a) % cells) * orbitals;
        const int xb = ((x + b) % cells) * orbitals;
        H.block(xa, xb, orbitals, orbitals) +=
            h_local.block(a * orbitals, b * orbitals, orbitals, orbitals);
      }
    }
  }
  return H;
}

std::vector<int> filled_momentum_indices(const std::vector<double>& dispersion,
                                         int n_filled) {
  std::vector<int> order(dispersion.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (dispersion[a] != dispersion[b]) return dispersion[a] < dispersion[b];
    return a < b;
  });
  std::vector<int> filled(order.begin(), order.begin() + n_filled);
  std::sort(filled.begin(), filled.end());
  return filled;
}

Matrix random_hermitian(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = Complex(d(gen), d(gen));
  return 0.5 * (A + A.adjoint());
}

Matrix random_unitary(int n, unsigned seed) {
  std::mt19937 gen(seed + 1);
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = Complex(d(gen), d(gen));
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  // fix phases so the factorization is unique given the input
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex r = R(j, j);
    if (std::abs(r) > 0) Q.col(j) *= r / std::abs(r);
  }
  return Q;
}

Matrix random_projector(int n, int rank, unsigned seed) {
  const Matrix Q = random_unitary(n, seed).leftCols(rank);
  return Q * Q.adjoint();
}

double max_abs(const Matrix& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

}  // namespace oracles
