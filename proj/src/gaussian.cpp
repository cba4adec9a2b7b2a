#include "zer/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zer {

namespace {
constexpr double kDeltaClip = 1e-12;   // eigenvalue clip before logarithms
constexpr double kEntropyFloor = 1e-15;
constexpr double kUnitaryTol = 1e-10;
}  // namespace

CorrelationMatrix restrict_modes(const CorrelationMatrix& C,
                                 const std::vector<int>& modes) {
  const int n = C.size();
  if (modes.empty())
    throw std::invalid_argument("restrict: empty mode set");
  std::vector<char> seen(n, 0);
  for (int i : modes) {
    if (i < 0 || i >= n) {
      std::ostringstream msg;
      msg << "restrict: mode index " << i << " outside [0," << n << ")";
      throw std::invalid_argument(msg.str());
    }
    if (seen[i]++) {
      std::ostringstream msg;
      msg << "restrict: duplicate mode index " << i;
      throw std::invalid_argument(msg.str());
    }
  }
  CorrelationMatrix out;
  const int r = static_cast<int>(modes.size());
  out.data.resize(r, r);
  out.labels.resize(r);
  for (int i = 0; i < r; ++i) {
    out.labels[i] = C.labels.empty() ? ModeLabel{modes[i], 0}
                                     : C.labels[modes[i]];
    for (int j = 0; j < r; ++j) out.data(i, j) = C.data(modes[i], modes[j]);
  }
  out.lattice_constant_exponent = C.lattice_constant_exponent;
  return out;
}

RealVector entanglement_spectrum(const CorrelationMatrix& C) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(C.data);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("entanglement spectrum: eigensolver failed");
  RealVector xi = es.eigenvalues().reverse();
  for (int i = 0; i < xi.size(); ++i) xi(i) = std::clamp(xi(i), 0.0, 1.0);
  return xi;
}

double binary_entropy(double x) {
  x = std::clamp(x, 0.0, 1.0);
  double s = 0.0;
  for (double v : {x, 1.0 - x})
    if (v > kEntropyFloor) s -= v * std::log(v);
  return s;
}

double entanglement_entropy(const RealVector& xi) {
  double s = 0.0;
  for (int i = 0; i < xi.size(); ++i) s += binary_entropy(xi(i));
  return s;
}

Matrix entanglement_hamiltonian(const CorrelationMatrix& C) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(C.data);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("entanglement hamiltonian: eigensolver failed");
  RealVector xi = es.eigenvalues();
  std::vector<int> singular;
  for (int i = 0; i < xi.size(); ++i) {
    const double v = std::clamp(xi(i), 0.0, 1.0);
    if (v < kDeltaClip || v > 1.0 - kDeltaClip) singular.push_back(i);
    xi(i) = v;
  }
  if (!singular.empty()) {
    std::ostringstream msg;
    msg << "entanglement hamiltonian: infinite entanglement energy for mode"
        << (singular.size() > 1 ? "s" : "");
    for (int i : singular) msg << " " << i;
    msg << " (occupation at 0 or 1)";
    throw std::domain_error(msg.str());
  }
  RealVector energies(xi.size());
  for (int i = 0; i < xi.size(); ++i)
    energies(i) = std::log((1.0 - xi(i)) / xi(i));
  const Matrix& V = es.eigenvectors();
  return (V * energies.asDiagonal() * V.adjoint()).transpose();
}

CorrelationMatrix rotate(const CorrelationMatrix& C, const Matrix& u) {
  if (u.rows() != C.data.rows() || u.cols() != C.data.cols()) {
    std::ostringstream msg;
    msg << "rotate: unitary is " << u.rows() << "x" << u.cols()
        << " but the state has " << C.data.rows() << " modes";
    throw std::invalid_argument(msg.str());
  }
  const double uni =
      (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
  if (uni > kUnitaryTol) {
    std::ostringstream msg;
    msg << "rotate: matrix is not unitary, |u^dag u - 1|_max = " << uni;
    throw std::invalid_argument(msg.str());
  }
  CorrelationMatrix out;
  // C'^T = u^dag C^T u  <=>  C' = u^T C u*
  out.data = u.transpose() * C.data * u.conjugate();
  out.labels = C.labels;
  out.lattice_constant_exponent = C.lattice_constant_exponent;
  return out;
}

}  // namespace zer
