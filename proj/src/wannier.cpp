#include "zer/wannier.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zer {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kConditionLimit = 1e8;

// ring distance between a (possibly fractional) position and cell x
double ring_distance(double a, double b, int L) {
  double d = std::fmod(a - b, static_cast<double>(L));
  if (d < 0) d += L;
  return std::min(d, L - d);
}

// symmetric orthonormalization of the columns; throws when the Gram matrix
// is too ill-conditioned for the result to be trustworthy
void loewdin(Matrix& V) {
  const Matrix G = V.adjoint() * V;
  Eigen::SelfAdjointEigenSolver<Matrix> es(G);
  const RealVector& w = es.eigenvalues();
  if (w(0) <= 0.0 || w(w.size() - 1) / w(0) > kConditionLimit) {
    std::ostringstream msg;
    msg << "wannier: orthonormalization failed, Gram condition number "
        << (w(0) > 0 ? w(w.size() - 1) / w(0)
                     : std::numeric_limits<double>::infinity())
        << "; the step should be rejected";
    throw std::runtime_error(msg.str());
  }
  RealVector inv_sqrt(w.size());
  for (int i = 0; i < w.size(); ++i) inv_sqrt(i) = 1.0 / std::sqrt(w(i));
  V = V * (es.eigenvectors() * inv_sqrt.asDiagonal() *
           es.eigenvectors().adjoint());
}

void fix_column_phase(Matrix& V, int col) {
  int imax = 0;
  double amax = 0.0;
  for (int i = 0; i < V.rows(); ++i) {
    const double a = std::abs(V(i, col));
    if (a > amax) {
      amax = a;
      imax = i;
    }
  }
  if (amax > 0) V.col(col) *= std::conj(V(imax, col) / amax);
}
}  // namespace

Matrix band_projector(const DistillerBands& bands, BandLabel group, int cells,
                      int orbitals) {
  const int L = cells;
  const int m = orbitals;
  int total = 0;
  // M_t = sum over the group's bands of u u^dag at momentum t
  std::vector<Matrix> M(L, Matrix::Zero(m, m));
  for (int t = 0; t < L; ++t)
    for (int b = 0; b < m; ++b)
      if (bands.labels[t][b] == group) {
        const auto u = bands.eigenvectors[t].col(b);
        M[t] += u * u.adjoint();
        ++total;
      }
  if (total == 0)
    throw std::invalid_argument("wannier: band group is empty");
  // plane waves enter as e^{-i k y}, matching the Bloch convention
  std::vector<Matrix> PD(L, Matrix::Zero(m, m));
  for (int d = 0; d < L; ++d) {
    for (int t = 0; t < L; ++t) {
      const double k = 2.0 * kPi * t / L;
      PD[d] += std::exp(Complex(0.0, -k * d)) * M[t];
    }
    PD[d] /= static_cast<double>(L);
  }
  Matrix P(L * m, L * m);
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y)
      P.block(x * m, y * m, m, m) = PD[((x - y) % L + L) % L];
  return 0.5 * (P + P.adjoint());
}

void localization_stats(const Matrix& vectors, const RealVector& centers,
                        int cells, int orbitals, RealVector& spread,
                        RealVector& decay_rate) {
  const int L = cells;
  const int m = orbitals;
  const int nc = static_cast<int>(vectors.cols());
  spread.resize(nc);
  decay_rate.resize(nc);
  for (int j = 0; j < nc; ++j) {
    double total = 0.0, second = 0.0;
    std::vector<double> mass(L, 0.0);
    for (int x = 0; x < L; ++x) {
      double s = 0.0;
      for (int a = 0; a < m; ++a) s += std::norm(vectors(x * m + a, j));
      mass[x] = s;
      total += s;
      const double d = ring_distance(static_cast<double>(x), centers(j), L);
      second += s * d * d;
    }
    spread(j) = total > 0 ? second / total : 0.0;
    // least-squares fit of ln|column| against ring distance over the inner
    // half of the ring; delta-localized columns get an infinite rate
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    const int dmax = std::max(1, L / 4);
    for (int x = 0; x < L; ++x) {
      const double d = ring_distance(static_cast<double>(x), centers(j), L);
      if (d < 1.0 || d > dmax) continue;
      if (mass[x] < 1e-30 * total) continue;
      const double y = 0.5 * std::log(mass[x] / total);
      sx += d;
      sy += y;
      sxx += d * d;
      sxy += d * y;
      ++npts;
    }
    if (npts < 2 || sxx * npts - sx * sx <= 0) {
      decay_rate(j) = std::numeric_limits<double>::infinity();
    } else {
      const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
      decay_rate(j) = std::max(0.0, -slope);
    }
  }
}

WannierBasis wannierize(const Matrix& P, const RealVector& positions,
                        int cells) {
  const int n = static_cast<int>(P.rows());
  if (positions.size() != n)
    throw std::invalid_argument("wannier: positions length does not match P");
  if ((P * P - P).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("wannier: input is not a projector");
  const int L = cells;

  Eigen::SelfAdjointEigenSolver<Matrix> es(P);
  const RealVector& ev = es.eigenvalues();
  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (ev(i) > 0.5) ++rank;
  Matrix Q(n, rank);
  for (int i = n - rank, j = 0; i < n; ++i, ++j) Q.col(j) = es.eigenvectors().col(i);

  // projected cyclic position operator on range(P)
  Vector xc(n);
  for (int i = 0; i < n; ++i)
    xc(i) = std::exp(Complex(0.0, 2.0 * kPi * positions(i) / L));
  const Matrix A = Q.adjoint() * xc.asDiagonal() * Q;
  Eigen::ComplexEigenSolver<Matrix> ces(A);
  if (ces.info() != Eigen::Success)
    throw std::runtime_error("wannier: projected position eigensolver failed");

  // centers from the eigenphases, in cells on [0, L)
  std::vector<int> order(rank);
  RealVector centers(rank);
  Matrix raw = Q * ces.eigenvectors();
  for (int j = 0; j < rank; ++j) {
    double theta = std::arg(ces.eigenvalues()(j));
    if (theta < 0) theta += 2.0 * kPi;
    centers(j) = theta * L / (2.0 * kPi);
    order[j] = j;
  }
  // deterministic order: ascending center, near-ties broken by descending
  // overlap with the reference cell
  const int m = n / L;
  RealVector ref_overlap(rank);
  for (int j = 0; j < rank; ++j) {
    double s = 0.0;
    for (int a = 0; a < m; ++a) s += std::norm(raw(a, j));
    ref_overlap(j) = s;
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(centers(a) - centers(b)) > 1e-9 * L)
      return centers(a) < centers(b);
    return ref_overlap(a) > ref_overlap(b);
  });

  WannierBasis out;
  out.vectors.resize(n, rank);
  out.centers.resize(rank);
  for (int j = 0; j < rank; ++j) {
    out.vectors.col(j) = raw.col(order[j]).normalized();
    out.centers(j) = centers(order[j]);
  }
  loewdin(out.vectors);
  for (int j = 0; j < rank; ++j) fix_column_phase(out.vectors, j);
  localization_stats(out.vectors, out.centers, L, m, out.spread,
                     out.decay_rate);
  return out;
}

WannierBasis wannierize_bloch(const std::vector<Matrix>& frames, int cells,
                              int orbitals) {
  const int L = cells;
  const int m = orbitals;
  const int nb = static_cast<int>(frames.front().cols());
  const int n = L * m;

  // Wilson loop over the Brillouin zone
  std::vector<Matrix> links(L);
  for (int t = 0; t < L; ++t)
    links[t] = frames[t].adjoint() * frames[(t + 1) % L];
  Matrix W = Matrix::Identity(nb, nb);
  for (int t = 0; t < L; ++t) W = W * links[t];

  Eigen::ComplexEigenSolver<Matrix> ces(W.adjoint());
  if (ces.info() != Eigen::Success)
    throw std::runtime_error("wannier: Wilson loop eigensolver failed");
  RealVector theta(nb), centers(nb);
  for (int j = 0; j < nb; ++j) {
    theta(j) = -std::arg(ces.eigenvalues()(j));
    double c = theta(j) / (2.0 * kPi);
    c -= std::floor(c);
    centers(j) = c;  // intra-cell offset in [0,1)
  }
  std::vector<int> order(nb);
  for (int j = 0; j < nb; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return centers(a) < centers(b); });

  // parallel transport of the loop eigenframe, with the loop phase spread
  // evenly so the frame closes around the ring
  std::vector<Matrix> A(L);
  A[0].resize(nb, nb);
  for (int j = 0; j < nb; ++j)
    A[0].col(j) = ces.eigenvectors().col(order[j]).normalized();
  RealVector theta_sorted(nb), centers_sorted(nb);
  for (int j = 0; j < nb; ++j) {
    theta_sorted(j) = theta(order[j]);
    centers_sorted(j) = centers(order[j]);
  }
  for (int t = 0; t + 1 < L; ++t) {
    Matrix raw = links[t].adjoint() * A[t];
    for (int j = 0; j < nb; ++j) raw.col(j).normalize();
    A[t + 1] = raw;
  }
  for (int t = 0; t < L; ++t)
    for (int j = 0; j < nb; ++j)
      A[t].col(j) *= std::exp(Complex(0.0, t * theta_sorted(j) / L));
  for (int t = 0; t < L; ++t) loewdin(A[t]);

  // real-space columns, one family per loop eigenvector, one copy per cell
  std::vector<Matrix> B(L);
  for (int t = 0; t < L; ++t) B[t] = frames[t] * A[t];
  std::vector<Matrix> D(L, Matrix::Zero(m, nb));
  for (int d = 0; d < L; ++d) {
    for (int t = 0; t < L; ++t) {
      const double k = 2.0 * kPi * t / L;
      D[d] += std::exp(Complex(0.0, -k * d)) * B[t];
    }
    D[d] /= static_cast<double>(L);
  }
  WannierBasis out;
  out.vectors.resize(n, nb * L);
  out.centers.resize(nb * L);
  for (int x = 0; x < L; ++x)
    for (int j = 0; j < nb; ++j) {
      for (int y = 0; y < L; ++y)
        out.vectors.block(y * m, x * nb + j, m, 1) =
            D[((y - x) % L + L) % L].col(j);
      out.centers(x * nb + j) = x + centers_sorted(j);
    }
  // one phase per family keeps translation covariance exact
  for (int j = 0; j < nb; ++j) {
    int imax = 0;
    double amax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(out.vectors(i, j));
      if (a > amax) {
        amax = a;
        imax = i;
      }
    }
    if (amax > 0) {
      const Complex ph = std::conj(out.vectors(imax, j) / amax);
      for (int x = 0; x < L; ++x) out.vectors.col(x * nb + j) *= ph;
    }
  }
  localization_stats(out.vectors, out.centers, L, m, out.spread,
                     out.decay_rate);
  return out;
}

}  // namespace zer
