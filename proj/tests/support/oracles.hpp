#pragma once

#include <zer/model.hpp>
#include <zer/types.hpp>

// Independent reference implementations for cross-checking the library.
// Everything here is intentionally brute-force and shares no code with the
// momentum-space paths under test.
namespace oracles {

// dense real-space single-particle Hamiltonian assembled hopping by hopping
zer::Matrix dense_hamiltonian(const zer::ModelSpec& spec);

// ground-state correlation matrix from a full dense diagonalization.
// throws when the Fermi boundary is exactly degenerate (the comparison
// would be ill-posed).
zer::Matrix dense_ground_correlation(const zer::ModelSpec& spec);

// fully dimerized two-orbital chain (intra-cell hopping zero): analytic
// correlation matrix, a direct sum of 2x2 bond blocks (1/2)[[1,s],[s,1]]
zer::Matrix dimer_correlation(int cells, double t2);

// explicit sum of the L translates of a local operator h_local living on
// region_width consecutive cells (contrast with the circulant construction)
zer::Matrix translate_sum(const zer::Matrix& h_local, int cells, int orbitals,
                          int region_width);

// spectrum of momenta filled by brute force for a scalar dispersion;
// returns the sorted list of filled momentum indices
std::vector<int> filled_momentum_indices(const std::vector<double>& dispersion,
                                         int n_filled);

// deterministic pseudo-random test matrices
zer::Matrix random_hermitian(int n, unsigned seed);
zer::Matrix random_unitary(int n, unsigned seed);
// projector onto `rank` random orthonormal columns (a pure Gaussian C)
zer::Matrix random_projector(int n, int rank, unsigned seed);

double max_abs(const zer::Matrix& A);

}  // namespace oracles
