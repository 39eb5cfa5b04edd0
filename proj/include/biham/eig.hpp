#pragma once

#include <vector>

#include "biham/config.hpp"
#include "biham/matrix.hpp"

namespace biham {

/// A = V diag(l) V', eigenvalues ascending, V unitary column-wise.
struct EigResult {
  std::vector<double> eigenvalues;
  CMatrix vectors;
  double residual = 0;  // max_i ||A v_i - l_i v_i||
};

/// Same over the quaternions (right eigenvectors: G v = v l, l real).
struct QEigResult {
  std::vector<double> eigenvalues;
  QMatrix vectors;
  double residual = 0;
};

/// Complex Hermitian eigendecomposition by cyclic Jacobi sweeps with unitary
/// plane rotations. Iterates until the off-diagonal Frobenius norm drops below
/// tol.jacobi_off_rel * ||A||_F. Throws on non-Hermitian input or if the
/// residual gate tol.eig_residual_rel fails.
EigResult hermitian_eig(const CMatrix& a, const Tolerances& tol = {});

/// Quaternionic Hermitian eigendecomposition through the complex counterpart:
/// eigenvalues of the 2n x 2n counterpart come in doubled clusters; one member
/// of each doubled pair is pulled back to a quaternionic eigenvector and the
/// cluster is re-orthonormalized under the quaternionic inner product.
QEigResult quat_hermitian_eig(const QMatrix& g, const Tolerances& tol = {});

/// Group sorted eigenvalues into degeneracy clusters; a new cluster starts
/// when the gap to the previous value exceeds gap_rel * spectral radius.
/// Returns the multiplicities in ascending-eigenvalue order.
std::vector<std::size_t> cluster_degeneracies(const std::vector<double>& sorted_eigs,
                                              double gap_rel = Tolerances{}.cluster_gap_rel);

/// Representative value of each cluster (mean), matching cluster_degeneracies.
std::vector<double> cluster_values(const std::vector<double>& sorted_eigs,
                                   double gap_rel = Tolerances{}.cluster_gap_rel);

}  // namespace biham
