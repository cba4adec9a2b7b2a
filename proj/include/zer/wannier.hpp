#pragma once

#include <vector>

#include "zer/distiller.hpp"
#include "zer/types.hpp"

namespace zer {

struct WannierBasis {
  Matrix vectors;       // n x n_b, orthonormal columns
  RealVector centers;   // per column, cells mod L
  RealVector spread;    // per column, second moment around the center (cells^2)
  RealVector decay_rate;  // per column, fitted exponential tail rate;
                          // +inf for delta-localized columns
};

// projector onto one classified band group, assembled from Bloch eigenvectors
Matrix band_projector(const DistillerBands& bands, BandLabel group, int cells,
                      int orbitals);

// localized orthonormal basis for range(P) from the projected cyclic position
// operator; positions are per-mode cell indices on a ring of length L
WannierBasis wannierize(const Matrix& P, const RealVector& positions, int cells);

// same output contract, built in momentum space from the Bloch frames of a
// band group (columns ordered cell-major: x * n_b + j); this is the path the
// RG driver uses, it keeps translation covariance exact by construction
WannierBasis wannierize_bloch(const std::vector<Matrix>& frames, int cells,
                              int orbitals);

// localization diagnostics for a set of columns (cell-major lattice)
void localization_stats(const Matrix& vectors, const RealVector& centers,
                        int cells, int orbitals, RealVector& spread,
                        RealVector& decay_rate);

}  // namespace zer
