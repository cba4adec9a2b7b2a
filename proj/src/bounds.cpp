#include "zer/bounds.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "zer/gaussian.hpp"

namespace zer {

namespace {
constexpr double kSingularDrop = 1e-10;  // relative cutoff for rank deficits

// per-group contribution: z*L modes, each bounded by the binary entropy of
// (threshold / smallest kept squared singular value), clamped at one bit
void group_bound(const CorrelationMatrix& C, const Matrix& phi, bool hole,
                 double eps_raw, double& min_sq, double& eps_tight,
                 double& bound_tight, double& bound_raw, bool& applicable) {
  const Eigen::Index cols = phi.cols();
  Eigen::BDCSVD<Matrix> svd(phi);
  const RealVector& sv = svd.singularValues();
  if (sv(0) < kSingularDrop)
    throw std::runtime_error("bounds: aggregated modes are numerically zero");
  double smin = sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < kSingularDrop * sv(0)) break;  // rank-deficit drop
    smin = sv(i);
  }
  min_sq = smin * smin;
  // occupations of the aggregated columns in the actual state; the state acts
  // through C^T (the single-particle projector for a pure state)
  double worst = 0.0;
  const Matrix CTphi = C.data.transpose() * phi;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double occ = std::real(phi.col(j).dot(CTphi.col(j)));
    worst = std::max(worst, hole ? 1.0 - occ : occ);
  }
  eps_tight = worst;
  applicable = true;
  auto entropy_arg = [&](double eps) {
    double x = eps / min_sq;
    if (x > 0.5) {
      applicable = false;
      x = 0.5;
    }
    return x;
  };
  bound_tight = cols * binary_entropy(entropy_arg(eps_tight));
  bound_raw = cols * binary_entropy(entropy_arg(eps_raw));
}
}  // namespace

Matrix aggregate_local_modes(const LocalDistillation& local, int cells,
                             int orbitals, int region_width,
                             bool empty_group) {
  const Matrix& vecs = empty_group ? local.empty_vectors : local.filled_vectors;
  const int z = static_cast<int>(vecs.cols());
  if (z == 0)
    throw std::invalid_argument(
        "bounds: group has no local modes, its bound contribution is zero");
  const int L = cells;
  const int m = orbitals;
  Matrix phi = Matrix::Zero(L * m, static_cast<Eigen::Index>(z) * L);
  for (int x = 0; x < L; ++x)
    for (int a = 0; a < region_width; ++a)
      phi.block(((x + a) % L) * m, static_cast<Eigen::Index>(x) * z, m, z) +=
          vecs.middleRows(a * m, m);
  return phi;
}

BoundReport entanglement_bound(const CorrelationMatrix& C, const Matrix& phi_e,
                               const Matrix& phi_f, double epsilon,
                               double S_courier_measured) {
  BoundReport r;
  r.S_courier_measured = S_courier_measured;
  const int n = C.size();
  // regions slide one cell at a time, so each group carries z modes per cell
  const int L = C.labels.empty() ? 0 : C.labels.back().first + 1;
  if (phi_e.cols() > 0) {
    if (phi_e.rows() != n)
      throw std::invalid_argument("bounds: phi_e dimension mismatch");
    r.z_e = L > 0 ? static_cast<int>(phi_e.cols()) / L : 0;
    group_bound(C, phi_e, false, epsilon, r.lambda_min_sq, r.eps_e, r.bound_e,
                r.bound_e_raw, r.applicable_e);
  }
  if (phi_f.cols() > 0) {
    if (phi_f.rows() != n)
      throw std::invalid_argument("bounds: phi_f dimension mismatch");
    r.z_f = L > 0 ? static_cast<int>(phi_f.cols()) / L : 0;
    group_bound(C, phi_f, true, epsilon, r.mu_min_sq, r.eps_f, r.bound_f,
                r.bound_f_raw, r.applicable_f);
  }
  r.bound_total = r.bound_e + r.bound_f;
  r.bound_total_raw = r.bound_e_raw + r.bound_f_raw;
  return r;
}

}  // namespace zer
