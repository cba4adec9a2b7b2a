#include "zer/types.hpp"

#include <sstream>
#include <stdexcept>

namespace zer {

std::vector<ModeLabel> canonical_labels(int cells, int orbitals) {
  std::vector<ModeLabel> labels;
  labels.reserve(static_cast<size_t>(cells) * orbitals);
  for (int x = 0; x < cells; ++x)
    for (int a = 0; a < orbitals; ++a) labels.emplace_back(x, a);
  return labels;
}

CorrelationMatrix make_correlation(Matrix data, int cells, int orbitals,
                                   int lattice_constant_exponent) {
  if (data.rows() != data.cols()) {
    std::ostringstream msg;
    msg << "correlation matrix must be square, got " << data.rows() << "x"
        << data.cols();
    throw std::invalid_argument(msg.str());
  }
  if (data.rows() != static_cast<Eigen::Index>(cells) * orbitals) {
    std::ostringstream msg;
    msg << "correlation matrix size " << data.rows() << " does not match "
        << cells << " cells x " << orbitals << " orbitals";
    throw std::invalid_argument(msg.str());
  }
  CorrelationMatrix C;
  C.data = std::move(data);
  C.labels = canonical_labels(cells, orbitals);
  C.lattice_constant_exponent = lattice_constant_exponent;
  return C;
}

}  // namespace zer
