#pragma once

#include <cstddef>
#include <vector>

namespace rfspectra {

struct RealSymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major; vectors[i*n + c] = component c of
                                // the eigenvector paired with values[i];
                                // empty unless requested
};

/// Dense real symmetric eigensolver: cyclic Jacobi with threshold sweeps.
/// Converged when the off-diagonal Frobenius norm falls below
/// 1e-12 * ||M||_F; throws NumericalError after 64 sweeps without
/// convergence. Operates on a private copy of `matrix` (row-major n x n).
RealSymmetricEigen jacobi_eigen(std::vector<double> matrix, std::size_t n,
                                bool want_vectors = false);

}  // namespace rfspectra
