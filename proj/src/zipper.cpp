#include "zer/zipper.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zer {

namespace {
constexpr double kUnitaryTol = 1e-10;
}

Matrix assemble_zipper(const WannierBasis& filled, const WannierBasis& courier,
                       const WannierBasis& empty) {
  const Eigen::Index n = std::max(
      {filled.vectors.rows(), courier.vectors.rows(), empty.vectors.rows()});
  const Eigen::Index total =
      filled.vectors.cols() + courier.vectors.cols() + empty.vectors.cols();
  if (total != n) {
    std::ostringstream msg;
    msg << "zipper: groups supply " << total << " columns for an " << n
        << "-mode space";
    throw std::invalid_argument(msg.str());
  }
  Matrix u(n, n);
  Eigen::Index c = 0;
  for (const auto* g : {&filled, &courier, &empty}) {
    if (g->vectors.cols() == 0) continue;
    if (g->vectors.rows() != n)
      throw std::invalid_argument("zipper: group dimensions disagree");
    u.middleCols(c, g->vectors.cols()) = g->vectors;
    c += g->vectors.cols();
  }
  const double uni =
      (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (uni > kUnitaryTol) {
    std::ostringstream msg;
    msg << "zipper: assembled columns are not jointly unitary, deviation "
        << uni;
    throw std::runtime_error(msg.str());
  }
  return u;
}

FactorizationResidual factorization_residual(const CorrelationMatrix& C_rot,
                                             const FrozenCounts& counts) {
  const int L = counts.cells;
  const int nf = counts.z_f * L;
  const int nc = counts.n_courier * L;
  const int ne = counts.z_e * L;
  if (nf + nc + ne != C_rot.size())
    throw std::invalid_argument("zipper: counts do not match the matrix size");
  FactorizationResidual res;
  if (nf > 0)
    res.frozen = (C_rot.data.topLeftCorner(nf, nf) - Matrix::Identity(nf, nf))
                     .cwiseAbs()
                     .maxCoeff();
  if (ne > 0)
    res.frozen = std::max(
        res.frozen,
        C_rot.data.bottomRightCorner(ne, ne).cwiseAbs().maxCoeff());
  Matrix off = C_rot.data;
  off.topLeftCorner(nf, nf).setZero();
  off.block(nf, nf, nc, nc).setZero();
  off.bottomRightCorner(ne, ne).setZero();
  res.offblock = off.size() > 0 ? off.cwiseAbs().maxCoeff() : 0.0;
  return res;
}

CorrelationMatrix round_to_factorized(const CorrelationMatrix& C_rot,
                                      const FrozenCounts& counts,
                                      double abort_threshold,
                                      RealVector* courier_spectrum) {
  const FactorizationResidual res = factorization_residual(C_rot, counts);
  if (res.frozen > abort_threshold) {
    std::ostringstream msg;
    msg << "zipper: frozen-block residual " << res.frozen
        << " exceeds the abort threshold " << abort_threshold;
    throw std::runtime_error(msg.str());
  }
  const int L = counts.cells;
  const int nf = counts.z_f * L;
  const int nc = counts.n_courier * L;
  Matrix B = C_rot.data.block(nf, nf, nc, nc);
  B = 0.5 * (B + B.adjoint()).eval();
  CorrelationMatrix out;
  if (nc == 0) {
    out = make_correlation(Matrix::Zero(0, 0), 0, 0,
                           C_rot.lattice_constant_exponent);
    if (courier_spectrum) courier_spectrum->resize(0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(B);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("zipper: courier eigensolver failed");
  RealVector xs = es.eigenvalues();
  if (courier_spectrum) *courier_spectrum = xs;
  // keep the renormalized state pure: every courier occupation moves to the
  // nearest of {0,1} (the dominant weight along that direction)
  RealVector rounded(nc);
  for (int i = 0; i < nc; ++i) rounded(i) = xs(i) >= 0.5 ? 1.0 : 0.0;
  Matrix Bp = es.eigenvectors() * rounded.asDiagonal() *
              es.eigenvectors().adjoint();
  return make_correlation(std::move(Bp), L, counts.n_courier,
                          C_rot.lattice_constant_exponent);
}

CorrelationMatrix block_cells(const CorrelationMatrix& C, int cells,
                              int orbitals, int factor) {
  if (factor < 1)
    throw std::invalid_argument("zipper: blocking factor must be positive");
  if (cells % factor != 0) {
    std::ostringstream msg;
    msg << "zipper: cannot block " << cells << " cells by a factor of "
        << factor;
    throw std::invalid_argument(msg.str());
  }
  if (C.size() != cells * orbitals)
    throw std::invalid_argument("zipper: lattice shape does not match C");
  // pure relabeling: flat index x*m + a maps to (x/f)*(f*m) + (x%f)*m + a,
  // which is the same number, so the data is untouched
  return make_correlation(C.data, cells / factor, orbitals * factor,
                          C.lattice_constant_exponent + 1);
}

}  // namespace zer
