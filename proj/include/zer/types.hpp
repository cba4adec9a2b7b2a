#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace zer {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// (cell, orbital) label of a single-particle mode
using ModeLabel = std::pair<int, int>;

// Two-point function C_{ij} = <c_i^dag c_j> of a fermionic Gaussian state.
// Hermitian, spectrum in [0,1]; a projector for pure states.
struct CorrelationMatrix {
  Matrix data;
  std::vector<ModeLabel> labels;
  int lattice_constant_exponent = 0;

  int size() const { return static_cast<int>(data.rows()); }
};

// labels for L cells x m orbitals in cell-major order (x*m + a)
std::vector<ModeLabel> canonical_labels(int cells, int orbitals);

CorrelationMatrix make_correlation(Matrix data, int cells, int orbitals,
                                   int lattice_constant_exponent = 0);

}  // namespace zer
