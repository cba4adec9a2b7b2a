#pragma once

#include "zer/distiller.hpp"
#include "zer/types.hpp"

namespace zer {

// upper bound on the entanglement across the frozen|courier cut, from the
// local threshold and the singular values of the aggregated local modes
struct BoundReport {
  int z_e = 0;  // empty modes per region
  int z_f = 0;  // filled modes per region
  double lambda_min_sq = 0.0;  // smallest kept squared singular value, phi_e
  double mu_min_sq = 0.0;      // same for phi_f
  double eps_e = 0.0;  // max occupation over aggregated empty columns
  double eps_f = 0.0;  // max hole occupation over aggregated filled columns
  double bound_e = 0.0;
  double bound_f = 0.0;
  double bound_total = 0.0;
  // with the raw threshold epsilon instead of the measured eps_e / eps_f
  double bound_e_raw = 0.0;
  double bound_f_raw = 0.0;
  double bound_total_raw = 0.0;
  // the monotonicity argument needs eps/lambda_min^2 <= 1/2; when violated the
  // argument is clamped at 1/2 (one full bit per mode) and flagged here
  bool applicable_e = true;
  bool applicable_f = true;
  double S_courier_measured = 0.0;
};

// columns of every translate of the group's local eigenvectors, embedded in
// the full space; z * L columns, generally non-orthogonal
Matrix aggregate_local_modes(const LocalDistillation& local, int cells,
                             int orbitals, int region_width, bool empty_group);

// phi_e / phi_f may have zero columns (group absent); S_courier_measured is
// the entropy measured across the cut by the caller, stored for comparison
BoundReport entanglement_bound(const CorrelationMatrix& C, const Matrix& phi_e,
                               const Matrix& phi_f, double epsilon,
                               double S_courier_measured);

}  // namespace zer
