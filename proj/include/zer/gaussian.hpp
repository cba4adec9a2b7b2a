#pragma once

#include <vector>

#include "zer/types.hpp"

namespace zer {

// principal submatrix on the given modes, labels inherited
CorrelationMatrix restrict_modes(const CorrelationMatrix& C,
                                 const std::vector<int>& modes);

// eigenvalues of C clipped to [0,1], descending
RealVector entanglement_spectrum(const CorrelationMatrix& C);

// -x ln x - (1-x) ln(1-x), zero at the endpoints
double binary_entropy(double x);

// sum of binary entropies over a spectrum (nats)
double entanglement_entropy(const RealVector& xi);

// (ln((1-C)/C))^T via the eigendecomposition of C; throws when some
// eigenvalue sits exactly at 0 or 1 beyond the 1e-12 clip
Matrix entanglement_hamiltonian(const CorrelationMatrix& C);

// C' with C'^T = u^dag C^T u; u must be unitary to 1e-10
CorrelationMatrix rotate(const CorrelationMatrix& C, const Matrix& u);

}  // namespace zer
