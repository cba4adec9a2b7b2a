#pragma once

#include <vector>

#include "zer/types.hpp"

namespace zer {

// hopping amplitude t for c^dag_{x+dcell,alpha} c_{x,beta}... concretely:
// H = sum_x sum_hoppings t * c^dag_{x,alpha} c_{x+dcell,beta} (+ h.c. closure)
struct Hopping {
  int dcell = 0;
  int alpha = 0;
  int beta = 0;
  Complex t{0.0, 0.0};
};

// translation-invariant 1D tight-binding model on a ring of L cells
struct ModelSpec {
  int cells = 0;
  int orbitals_per_cell = 1;
  std::vector<Hopping> hoppings;
  double filling = 0.5;
};

// number of occupied single-particle levels at the requested filling
int filled_count(const ModelSpec& spec);

// throws std::invalid_argument on inconsistent specs (bad sizes, filling
// outside (0,1), |dcell| >= L/2, or conflicting Hermitian partners)
void validate_model(const ModelSpec& spec);

// hopping list with conjugate partners added where missing, duplicates merged
std::vector<Hopping> hermitian_closure(const ModelSpec& spec);

// h(k) = sum_D e^{-i k D} H_D, an m x m Hermitian Bloch block
Matrix bloch_hamiltonian(const ModelSpec& spec, double k);

struct GroundState {
  CorrelationMatrix C;
  int n_filled = 0;
  // true when the Fermi level is exactly degenerate and the deterministic
  // tie-break (ascending momentum index, then band) was used
  bool fermi_tie = false;
  std::vector<ModeLabel> tie_filled;    // (momentum index, band) kept
  std::vector<ModeLabel> tie_unfilled;  // (momentum index, band) left empty
};

// fills the n_filled lowest Bloch levels and Fourier-transforms the
// momentum-space projector back to real space
GroundState ground_state_correlation(const ModelSpec& spec);

}  // namespace zer
