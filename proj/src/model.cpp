#include "zer/model.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace zer {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kClosureTol = 1e-12;
}  // namespace

int filled_count(const ModelSpec& spec) {
  return static_cast<int>(
      std::lround(spec.filling * spec.cells * spec.orbitals_per_cell));
}

std::vector<Hopping> hermitian_closure(const ModelSpec& spec) {
  std::map<std::tuple<int, int, int>, Complex> amp;
  for (const auto& h : spec.hoppings) amp[{h.dcell, h.alpha, h.beta}] += h.t;
  std::map<std::tuple<int, int, int>, Complex> closed = amp;
  for (const auto& [key, t] : amp) {
    const auto [d, a, b] = key;
    const std::tuple<int, int, int> partner{-d, b, a};
    if (partner == key) {
      if (std::abs(t.imag()) > kClosureTol) {
        std::ostringstream msg;
        msg << "model: on-site amplitude (" << d << "," << a << "," << b
            << ") must be real, got imaginary part " << t.imag();
        throw std::invalid_argument(msg.str());
      }
      continue;
    }
    auto it = amp.find(partner);
    if (it == amp.end()) {
      closed[partner] = std::conj(t);
    } else if (std::abs(it->second - std::conj(t)) > kClosureTol) {
      std::ostringstream msg;
      msg << "model: hopping (" << d << "," << a << "," << b
          << ") conflicts with its Hermitian partner";
      throw std::invalid_argument(msg.str());
    }
  }
  std::vector<Hopping> out;
  out.reserve(closed.size());
  for (const auto& [key, t] : closed) {
    const auto [d, a, b] = key;
    out.push_back({d, a, b, t});
  }
  return out;
}

void validate_model(const ModelSpec& spec) {
  if (spec.cells < 2)
    throw std::invalid_argument("model: need at least 2 cells");
  if (spec.orbitals_per_cell < 1)
    throw std::invalid_argument("model: need at least 1 orbital per cell");
  if (!(spec.filling > 0.0 && spec.filling < 1.0)) {
    std::ostringstream msg;
    msg << "model: filling must lie in (0,1), got " << spec.filling;
    throw std::invalid_argument(msg.str());
  }
  for (const auto& h : spec.hoppings) {
    if (h.alpha < 0 || h.alpha >= spec.orbitals_per_cell || h.beta < 0 ||
        h.beta >= spec.orbitals_per_cell) {
      std::ostringstream msg;
      msg << "model: orbital index out of range in hopping (" << h.dcell << ","
          << h.alpha << "," << h.beta << ")";
      throw std::invalid_argument(msg.str());
    }
    if (2 * std::abs(h.dcell) >= spec.cells) {
      std::ostringstream msg;
      msg << "model: hopping range |" << h.dcell << "| must stay below L/2 = "
          << spec.cells / 2.0;
      throw std::invalid_argument(msg.str());
    }
  }
  hermitian_closure(spec);  // throws on closure conflicts
  const int N = filled_count(spec);
  if (N <= 0 || N >= spec.cells * spec.orbitals_per_cell) {
    std::ostringstream msg;
    msg << "model: filled level count " << N << " must lie strictly between 0 and "
        << spec.cells * spec.orbitals_per_cell;
    throw std::invalid_argument(msg.str());
  }
}

Matrix bloch_hamiltonian(const ModelSpec& spec, double k) {
  const int m = spec.orbitals_per_cell;
  Matrix h = Matrix::Zero(m, m);
  for (const auto& hop : hermitian_closure(spec)) {
    h(hop.alpha, hop.beta) +=
        hop.t * std::exp(Complex(0.0, -k * hop.dcell));
  }
  return h;
}

GroundState ground_state_correlation(const ModelSpec& spec) {
  validate_model(spec);
  const int L = spec.cells;
  const int m = spec.orbitals_per_cell;
  const auto hoppings = hermitian_closure(spec);

  std::vector<RealVector> evals(L);
  std::vector<Matrix> evecs(L);
  for (int t = 0; t < L; ++t) {
    const double k = 2.0 * kPi * t / L;
    Matrix h = Matrix::Zero(m, m);
    for (const auto& hop : hoppings)
      h(hop.alpha, hop.beta) += hop.t * std::exp(Complex(0.0, -k * hop.dcell));
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "model: Bloch eigensolver failed at momentum index " << t;
      throw std::runtime_error(msg.str());
    }
    evals[t] = es.eigenvalues();
    evecs[t] = es.eigenvectors();
  }

  const int N = filled_count(spec);
  // global fill of the lowest N levels; ties broken by ascending momentum
  // index, then band index
  std::vector<std::tuple<double, int, int>> levels;
  levels.reserve(static_cast<size_t>(L) * m);
  for (int t = 0; t < L; ++t)
    for (int n = 0; n < m; ++n) levels.emplace_back(evals[t](n), t, n);
  std::sort(levels.begin(), levels.end());

  GroundState gs;
  gs.n_filled = N;
  gs.fermi_tie =
      std::abs(std::get<0>(levels[N - 1]) - std::get<0>(levels[N])) < 1e-12;
  if (gs.fermi_tie) {
    const double ef = std::get<0>(levels[N - 1]);
    for (int i = N - 1; i >= 0 && std::abs(std::get<0>(levels[i]) - ef) < 1e-12; --i)
      gs.tie_filled.emplace_back(std::get<1>(levels[i]), std::get<2>(levels[i]));
    for (size_t i = N; i < levels.size() && std::abs(std::get<0>(levels[i]) - ef) < 1e-12; ++i)
      gs.tie_unfilled.emplace_back(std::get<1>(levels[i]), std::get<2>(levels[i]));
    std::reverse(gs.tie_filled.begin(), gs.tie_filled.end());
  }

  // M_t = sum over occupied bands of u u^dag; correlation blocks are the
  // inverse transform C_D = (1/L) sum_t e^{-i k_t D} M_t^T
  std::vector<Matrix> M(L, Matrix::Zero(m, m));
  for (int i = 0; i < N; ++i) {
    const int t = std::get<1>(levels[i]);
    const int n = std::get<2>(levels[i]);
    const auto u = evecs[t].col(n);
    M[t] += u * u.adjoint();
  }
  std::vector<Matrix> CD(L, Matrix::Zero(m, m));
  for (int d = 0; d < L; ++d) {
    for (int t = 0; t < L; ++t) {
      const double k = 2.0 * kPi * t / L;
      CD[d] += std::exp(Complex(0.0, -k * d)) * M[t].transpose();
    }
    CD[d] /= static_cast<double>(L);
  }
  Matrix C(L * m, L * m);
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y)
      C.block(x * m, y * m, m, m) = CD[((y - x) % L + L) % L];
  C = 0.5 * (C + C.adjoint()).eval();

  gs.C = make_correlation(std::move(C), L, m, 0);
  return gs;
}

}  // namespace zer
