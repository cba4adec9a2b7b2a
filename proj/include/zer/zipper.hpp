#pragma once

#include "zer/types.hpp"
#include "zer/wannier.hpp"

namespace zer {

struct FrozenCounts {
  int z_f = 0;
  int n_courier = 0;
  int z_e = 0;
  int cells = 0;
};

// u = (psi_filled | psi_courier | psi_empty); empty groups are skipped.
// throws when the joint column set is not unitary to 1e-10
Matrix assemble_zipper(const WannierBasis& filled, const WannierBasis& courier,
                       const WannierBasis& empty);

struct FactorizationResidual {
  double offblock = 0.0;  // max |entry| outside the three diagonal blocks
  double frozen = 0.0;    // max(|filled block - 1|_max, |empty block|_max)
};

FactorizationResidual factorization_residual(const CorrelationMatrix& C_rot,
                                             const FrozenCounts& counts);

// drops the frozen blocks (filled -> identity, empty -> zero) and returns the
// re-Hermitized courier block with eigenvalues clipped to [0,1]; eigenvalues
// are additionally rounded to the nearest of {0,1} so the renormalized state
// stays pure. throws when residual_frozen exceeds abort_threshold.
// courier_spectrum, when given, receives the pre-rounding eigenvalues.
CorrelationMatrix round_to_factorized(const CorrelationMatrix& C_rot,
                                      const FrozenCounts& counts,
                                      double abort_threshold,
                                      RealVector* courier_spectrum = nullptr);

// merge `factor` cells into one supercell; pure relabeling, data unchanged
CorrelationMatrix block_cells(const CorrelationMatrix& C, int cells,
                              int orbitals, int factor);

}  // namespace zer
