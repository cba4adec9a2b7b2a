#pragma once

#include <vector>

#include "zer/types.hpp"

namespace zer {

// frozen-mode content of one region: eigenvectors of the restricted
// correlation matrix with occupation within epsilon of 1 (filled) or 0 (empty)
struct LocalDistillation {
  std::vector<int> region;  // mode indices, cell-major
  double epsilon = 0.0;
  Matrix filled_vectors;  // region_dim x z_f_local
  Matrix empty_vectors;   // region_dim x z_e_local
  RealVector xi;          // spectrum of C^R, ascending
  Matrix h_local;         // sum |e><e| - sum |f><f|
};

LocalDistillation local_distill(const CorrelationMatrix& C,
                                const std::vector<int>& region, double epsilon);

// first region_width cells of an L x m lattice
std::vector<int> reference_region(int cells, int orbitals, int region_width);

struct GlobalDistiller {
  Matrix dense;               // n x n sum of all L translates of h_local
  std::vector<Matrix> bloch;  // m x m block at each k_t = 2 pi t / L
};

// sums the L translates of h_local over the ring; the circulant block
// structure is built directly and must match the explicit sum.
// C is only used to verify translation invariance (tolerance 1e-8).
GlobalDistiller global_distiller(const LocalDistillation& local,
                                 const CorrelationMatrix& C, int cells,
                                 int orbitals, int region_width);

enum class BandLabel { filled, courier, empty };

struct DistillerBands {
  RealMatrix eigenvalues;             // L x m, ascending within each k
  std::vector<Matrix> eigenvectors;   // per k, columns follow eigenvalues
  std::vector<std::vector<BandLabel>> labels;  // per k, per band
  int z_f = 0;
  int n_courier = 0;
  int z_e = 0;
  double gap = 0.0;  // min |lambda| over frozen bands; inf when none
  bool counts_uniform = true;
  bool rejected = false;  // non-uniform counts or gap < gap_min
};

DistillerBands classify_bands(const std::vector<Matrix>& bloch,
                              double delta_null, double gap_min);

}  // namespace zer
