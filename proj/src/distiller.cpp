#include "zer/distiller.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zer/gaussian.hpp"

namespace zer {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTranslationTol = 1e-8;
}  // namespace

std::vector<int> reference_region(int cells, int orbitals, int region_width) {
  if (region_width < 1 || region_width > cells) {
    std::ostringstream msg;
    msg << "distiller: region width " << region_width
        << " invalid for " << cells << " cells";
    throw std::invalid_argument(msg.str());
  }
  std::vector<int> region(static_cast<size_t>(region_width) * orbitals);
  for (size_t i = 0; i < region.size(); ++i) region[i] = static_cast<int>(i);
  return region;
}

LocalDistillation local_distill(const CorrelationMatrix& C,
                                const std::vector<int>& region,
                                double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    std::ostringstream msg;
    msg << "distiller: threshold must lie in (0, 1/2), got " << epsilon;
    throw std::invalid_argument(msg.str());
  }
  const CorrelationMatrix CR = restrict_modes(C, region);
  Eigen::SelfAdjointEigenSolver<Matrix> es(CR.data);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("distiller: restricted eigensolver failed");
  const RealVector& xi = es.eigenvalues();
  const Matrix& U = es.eigenvectors();

  std::vector<int> filled, empty;
  for (int i = 0; i < xi.size(); ++i) {
    if (xi(i) > 1.0 - epsilon) filled.push_back(i);
    else if (xi(i) < epsilon) empty.push_back(i);
  }
  LocalDistillation out;
  out.region = region;
  out.epsilon = epsilon;
  out.xi = xi;
  const int r = static_cast<int>(region.size());
  out.filled_vectors.resize(r, static_cast<int>(filled.size()));
  for (size_t j = 0; j < filled.size(); ++j)
    out.filled_vectors.col(j) = U.col(filled[j]);
  out.empty_vectors.resize(r, static_cast<int>(empty.size()));
  for (size_t j = 0; j < empty.size(); ++j)
    out.empty_vectors.col(j) = U.col(empty[j]);
  out.h_local = out.empty_vectors * out.empty_vectors.adjoint() -
                out.filled_vectors * out.filled_vectors.adjoint();
  return out;
}

GlobalDistiller global_distiller(const LocalDistillation& local,
                                 const CorrelationMatrix& C, int cells,
                                 int orbitals, int region_width) {
  const int L = cells;
  const int m = orbitals;
  const int n = L * m;
  if (C.size() != n)
    throw std::invalid_argument("distiller: lattice shape does not match C");
  // the construction translates the reference distiller to every cell, so C
  // itself must be translation invariant: block (x, x+d) independent of x
  double tv = 0.0;
  for (int x = 1; x < L && tv <= kTranslationTol; ++x)
    for (int d = 0; d < L; ++d)
      tv = std::max(tv, (C.data.block(x * m, ((x + d) % L) * m, m, m) -
                         C.data.block(0, (d % L) * m, m, m))
                            .cwiseAbs()
                            .maxCoeff());
  if (tv > kTranslationTol) {
    std::ostringstream msg;
    msg << "distiller: state is not translation invariant, deviation " << tv;
    throw std::runtime_error(msg.str());
  }

  GlobalDistiller out;
  // accumulate cell-block diagonals of h_local, aliased onto the ring
  std::vector<Matrix> H(L, Matrix::Zero(m, m));
  for (int a = 0; a < region_width; ++a)
    for (int b = 0; b < region_width; ++b)
      H[((b - a) % L + L) % L] +=
          local.h_local.block(a * m, b * m, m, m);

  out.dense = Matrix::Zero(n, n);
  for (int x = 0; x < L; ++x)
    for (int d = 0; d < L; ++d)
      out.dense.block(x * m, ((x + d) % L) * m, m, m) = H[d];

  out.bloch.assign(L, Matrix::Zero(m, m));
  for (int t = 0; t < L; ++t) {
    const double k = 2.0 * kPi * t / L;
    for (int d = 0; d < L; ++d) {
      if (H[d].isZero(0.0)) continue;
      out.bloch[t] += std::exp(Complex(0.0, -k * d)) * H[d];
    }
  }
  return out;
}

DistillerBands classify_bands(const std::vector<Matrix>& bloch,
                              double delta_null, double gap_min) {
  const int L = static_cast<int>(bloch.size());
  if (L == 0) throw std::invalid_argument("distiller: no Bloch blocks");
  const int m = static_cast<int>(bloch.front().rows());

  DistillerBands out;
  out.eigenvalues.resize(L, m);
  out.eigenvectors.resize(L);
  out.labels.assign(L, std::vector<BandLabel>(m));
  out.gap = std::numeric_limits<double>::infinity();

  int zf0 = -1, ze0 = -1;
  bool any_frozen = false;
  for (int t = 0; t < L; ++t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(bloch[t]);
    if (es.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "distiller: Bloch eigensolver failed at momentum index " << t;
      throw std::runtime_error(msg.str());
    }
    out.eigenvalues.row(t) = es.eigenvalues();
    out.eigenvectors[t] = es.eigenvectors();
    int zf = 0, ze = 0;
    for (int b = 0; b < m; ++b) {
      const double lam = out.eigenvalues(t, b);
      if (lam < -delta_null) {
        out.labels[t][b] = BandLabel::filled;
        ++zf;
      } else if (lam > delta_null) {
        out.labels[t][b] = BandLabel::empty;
        ++ze;
      } else {
        out.labels[t][b] = BandLabel::courier;
      }
      if (out.labels[t][b] != BandLabel::courier) {
        any_frozen = true;
        out.gap = std::min(out.gap, std::abs(lam));
      }
    }
    if (t == 0) {
      zf0 = zf;
      ze0 = ze;
    } else if (zf != zf0 || ze != ze0) {
      out.counts_uniform = false;
    }
  }
  out.z_f = zf0;
  out.z_e = ze0;
  out.n_courier = m - zf0 - ze0;
  out.rejected = !out.counts_uniform || (any_frozen && out.gap < gap_min);
  return out;
}

}  // namespace zer
