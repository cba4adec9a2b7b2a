#include "zer/rg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zer/gaussian.hpp"
#include "zer/wannier.hpp"
#include "zer/zipper.hpp"

namespace zer {

namespace {
constexpr double kPi = std::numbers::pi;

WannierBasis empty_basis(int n) {
  WannierBasis b;
  b.vectors.resize(n, 0);
  b.centers.resize(0);
  b.spread.resize(0);
  b.decay_rate.resize(0);
  return b;
}

// Bloch frames of one classified group, columns [first, first+count) at
// every momentum
std::vector<Matrix> group_frames(const DistillerBands& bands, int first,
                                 int count) {
  std::vector<Matrix> frames(bands.eigenvectors.size());
  for (size_t t = 0; t < frames.size(); ++t)
    frames[t] = bands.eigenvectors[t].middleCols(first, count);
  return frames;
}

double min_or_zero(const RealVector& v) {
  return v.size() == 0 ? 0.0 : v.minCoeff();
}

int spec_modes(const RGTrace& trace) {
  return trace.spec.cells * trace.spec.orbitals_per_cell;
}
}  // namespace

const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::accepted: return "accepted";
    case StepStatus::trivial: return "trivial";
    case StepStatus::rejected_nonuniform: return "rejected_nonuniform";
    case StepStatus::rejected_gap: return "rejected_gap";
    case StepStatus::rejected_residual: return "rejected_residual";
  }
  return "unknown";
}

void validate_rg_config(const RGConfig& config) {
  if (config.epsilon_schedule.empty())
    throw std::invalid_argument("rg: epsilon schedule must not be empty");
  for (double e : config.epsilon_schedule)
    if (!(e > 0.0 && e < 0.5)) {
      std::ostringstream msg;
      msg << "rg: epsilon " << e << " outside (0, 1/2)";
      throw std::invalid_argument(msg.str());
    }
  if (config.region_width_cells < 1)
    throw std::invalid_argument("rg: region width must be positive");
  if (config.blocking_factor < 1)
    throw std::invalid_argument("rg: blocking factor must be positive");
  if (!(config.delta_null > 0.0))
    throw std::invalid_argument("rg: delta_null must be positive");
  if (!(config.gap_min > 0.0))
    throw std::invalid_argument("rg: gap_min must be positive");
  if (config.max_steps < 1)
    throw std::invalid_argument("rg: max_steps must be positive");
  if (config.core_size_threshold < 0)
    throw std::invalid_argument("rg: core size threshold must be >= 0");
  if (!(config.residual_abort_multiplier > 0.0))
    throw std::invalid_argument("rg: residual abort multiplier must be positive");
}

RGTrace run_zer(const ModelSpec& spec, const RGConfig& config) {
  validate_model(spec);
  validate_rg_config(config);

  RGTrace trace;
  trace.spec = spec;
  trace.config = config;

  GroundState gs = ground_state_correlation(spec);
  trace.n_filled = gs.n_filled;
  trace.fermi_tie = gs.fermi_tie;
  trace.tie_filled = gs.tie_filled;
  trace.tie_unfilled = gs.tie_unfilled;

  CorrelationMatrix C = std::move(gs.C);
  int L = spec.cells;
  int m = spec.orbitals_per_cell;
  const int n0 = L * m;
  trace.V = Matrix::Identity(n0, n0);
  trace.termination_reason = "max_steps";

  const int w = config.region_width_cells;
  const int f = config.blocking_factor;
  int no_progress = 0;

  for (int step = 1; step <= config.max_steps; ++step) {
    if (C.size() <= config.core_size_threshold) {
      trace.termination_reason = "core_threshold";
      break;
    }
    StepRecord rec;
    rec.step = step;

    // coarse-grain first, so the threshold schedule is indexed by scale
    if (L % f == 0 && L / f >= 2) {
      C = block_cells(C, L, m, f);
      L /= f;
      m *= f;
      rec.blocked = true;
    }
    rec.cells = L;
    rec.orbitals = m;
    const double eps = config.epsilon_schedule[std::min<size_t>(
        step - 1, config.epsilon_schedule.size() - 1)];
    rec.epsilon = eps;

    const int width = std::min(w, L);
    const LocalDistillation local =
        local_distill(C, reference_region(L, m, width), eps);
    rec.z_f_local = static_cast<int>(local.filled_vectors.cols());
    rec.z_e_local = static_cast<int>(local.empty_vectors.cols());

    bool accepted = false;
    if (rec.z_f_local + rec.z_e_local == 0) {
      rec.status = StepStatus::trivial;
    } else {
      ++trace.nontrivial_steps;
      const GlobalDistiller gd = global_distiller(local, C, L, m, width);
      const DistillerBands bands =
          classify_bands(gd.bloch, config.delta_null, config.gap_min);
      rec.z_f = bands.z_f;
      rec.n_courier = bands.n_courier;
      rec.z_e = bands.z_e;
      rec.gap = bands.gap;
      rec.band_eigenvalues = bands.eigenvalues;
      rec.band_labels = bands.labels;

      if (bands.rejected) {
        rec.status = bands.counts_uniform ? StepStatus::rejected_gap
                                          : StepStatus::rejected_nonuniform;
      } else {
        const int zf = bands.z_f, nc = bands.n_courier, ze = bands.z_e;
        WannierBasis w_f = zf > 0
                               ? wannierize_bloch(group_frames(bands, 0, zf), L, m)
                               : empty_basis(L * m);
        WannierBasis w_c =
            nc > 0 ? wannierize_bloch(group_frames(bands, zf, nc), L, m)
                   : empty_basis(L * m);
        WannierBasis w_e =
            ze > 0 ? wannierize_bloch(group_frames(bands, zf + nc, ze), L, m)
                   : empty_basis(L * m);
        const Matrix u = assemble_zipper(w_f, w_c, w_e);
        rec.unitarity_residual =
            (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()))
                .cwiseAbs()
                .maxCoeff();
        rec.centers_filled = w_f.centers;
        rec.centers_courier = w_c.centers;
        rec.centers_empty = w_e.centers;
        rec.decay_filled = min_or_zero(w_f.decay_rate);
        rec.decay_courier = min_or_zero(w_c.decay_rate);
        rec.decay_empty = min_or_zero(w_e.decay_rate);

        const CorrelationMatrix C_rot = rotate(C, u);
        const FrozenCounts counts{zf, nc, ze, L};
        const FactorizationResidual res = factorization_residual(C_rot, counts);
        rec.residual_offblock = res.offblock;
        rec.residual_frozen = res.frozen;

        const double abort_threshold = config.residual_abort_multiplier * eps;
        if (res.frozen > abort_threshold) {
          rec.status = StepStatus::rejected_residual;
        } else {
          RealVector courier_spectrum;
          CorrelationMatrix C_next = round_to_factorized(
              C_rot, counts, abort_threshold, &courier_spectrum);
          rec.S_courier_exact = entanglement_entropy(courier_spectrum);
          rec.courier_xi_min = min_or_zero(courier_spectrum);
          rec.courier_xi_max =
              courier_spectrum.size() ? courier_spectrum.maxCoeff() : 0.0;

          Matrix phi_e(C.size(), 0), phi_f(C.size(), 0);
          if (rec.z_e_local > 0)
            phi_e = aggregate_local_modes(local, L, m, width, true);
          if (rec.z_f_local > 0)
            phi_f = aggregate_local_modes(local, L, m, width, false);
          rec.bound = entanglement_bound(C, phi_e, phi_f, eps,
                                         rec.S_courier_exact);

          const int nf = zf * L;
          const int ncc = nc * L;
          trace.phi.push_back(trace.V * u.leftCols(nf));
          trace.phi_step.push_back(step);
          trace.V = trace.V * u.middleCols(nf, ncc);
          rec.isometry_residual =
              ncc > 0 ? (trace.V.adjoint() * trace.V -
                         Matrix::Identity(ncc, ncc))
                            .cwiseAbs()
                            .maxCoeff()
                      : 0.0;
          C = std::move(C_next);
          m = nc;
          rec.status = StepStatus::accepted;
          ++trace.accepted_steps;
          accepted = true;
          if (nc == 0) {
            trace.steps.push_back(std::move(rec));
            trace.termination_reason = "fully_distilled";
            trace.core = C;
            return trace;
          }
        }
      }
    }
    const bool progress = accepted || rec.blocked;
    trace.steps.push_back(std::move(rec));
    if (C.size() <= config.core_size_threshold) {
      trace.termination_reason = "core_threshold";
      break;
    }
    no_progress = progress ? 0 : no_progress + 1;
    if (no_progress >= 2) {
      trace.termination_reason = "consecutive_rejections";
      break;
    }
  }
  trace.core = C;
  return trace;
}

CorrelationMatrix reconstruct(const RGTrace& trace) {
  const int n0 = spec_modes(trace);
  Matrix T = Matrix::Zero(n0, n0);
  if (trace.core.size() > 0)
    T = trace.V * trace.core.data.transpose() * trace.V.adjoint();
  for (const auto& phi : trace.phi)
    if (phi.cols() > 0) T += phi * phi.adjoint();
  Matrix C = T.transpose();
  C = 0.5 * (C + C.adjoint()).eval();
  return make_correlation(std::move(C), trace.spec.cells,
                          trace.spec.orbitals_per_cell, 0);
}

std::vector<Matrix> level_decomposition(const RGTrace& trace) {
  const int n0 = spec_modes(trace);
  std::vector<Matrix> levels;
  levels.reserve(trace.phi.size() + 1);
  for (const auto& phi : trace.phi) {
    if (phi.cols() > 0)
      levels.push_back((phi * phi.adjoint()).transpose());
    else
      levels.push_back(Matrix::Zero(n0, n0));
  }
  if (trace.core.size() > 0)
    levels.push_back(
        (trace.V * trace.core.data.transpose() * trace.V.adjoint()).transpose());
  else
    levels.push_back(Matrix::Zero(n0, n0));
  return levels;
}

namespace {
// c_k = (1/sqrt(L)) sum_x e^{+i k x} c_x in this code's convention, so the
// transform applied to mode vectors carries e^{-i k x}
Matrix block_dft(int L, int m) {
  Matrix F = Matrix::Zero(static_cast<Eigen::Index>(L) * m,
                          static_cast<Eigen::Index>(L) * m);
  for (int t = 0; t < L; ++t) {
    const double k = 2.0 * kPi * t / L;
    for (int x = 0; x < L; ++x) {
      const Complex ph = std::exp(Complex(0.0, -k * x)) / std::sqrt(double(L));
      for (int a = 0; a < m; ++a) F(t * m + a, x * m + a) = ph;
    }
  }
  return F;
}
}  // namespace

RealVector momentum_occupation_exact(const CorrelationMatrix& C, int cells,
                                     int orbitals) {
  const int L = cells;
  const int m = orbitals;
  const Matrix F = block_dft(L, m);
  const Matrix H = F * C.data;
  RealVector nk = RealVector::Zero(L);
  for (int t = 0; t < L; ++t)
    for (int a = 0; a < m; ++a)
      nk(t) += std::real(H.row(t * m + a).conjugate().dot(
          F.row(t * m + a).conjugate()));
  return nk;
}

MomentumOccupation momentum_occupation(const RGTrace& trace) {
  const int L = trace.spec.cells;
  const int m = trace.spec.orbitals_per_cell;
  const Matrix F = block_dft(L, m);
  MomentumOccupation out;
  out.k.resize(L);
  for (int t = 0; t < L; ++t) out.k(t) = 2.0 * kPi * t / L;
  for (size_t i = 0; i < trace.phi.size(); ++i) {
    std::ostringstream name;
    name << "level " << trace.phi_step[i];
    out.level_names.push_back(name.str());
    RealVector nk = RealVector::Zero(L);
    if (trace.phi[i].cols() > 0) {
      // the level's correlation contribution is (Phi Phi^dag)^T, so the
      // transform acts on the conjugated embedding
      const Matrix G = F * trace.phi[i].conjugate();
      for (int t = 0; t < L; ++t)
        for (int a = 0; a < m; ++a)
          nk(t) += G.row(t * m + a).squaredNorm();
    }
    out.occupation.push_back(std::move(nk));
  }
  out.level_names.push_back("core");
  RealVector nk = RealVector::Zero(L);
  if (trace.core.size() > 0) {
    const Matrix A = F * trace.V.conjugate();
    const Matrix B = A * trace.core.data;
    for (int t = 0; t < L; ++t)
      for (int a = 0; a < m; ++a)
        nk(t) += std::real(A.row(t * m + a).dot(B.row(t * m + a)));
  }
  out.occupation.push_back(std::move(nk));
  return out;
}

}  // namespace zer
