#pragma once

#include <cstdint>

namespace biham {

/// Every tolerance the library consults, in one place. Reports echo the values
/// actually used so that runs are auditable. Defaults are deliberate choices,
/// not guesses; see the individual comments.
struct Tolerances {
  // rank / null-space pivoting: a pivot counts when >= rank_pivot_rel * largest pivot
  double rank_pivot_rel = 1e-10;
  // cyclic Jacobi sweep convergence: off-diagonal Frobenius < jacobi_off_rel * ||A||_F
  double jacobi_off_rel = 1e-12;
  // input validation: ||A - A'|| <= hermitian_check_rel * ||A|| to accept A as Hermitian
  double hermitian_check_rel = 1e-9;
  // eigen residual gate: max_i ||A v_i - l_i v_i|| <= eig_residual_rel * ||A||
  double eig_residual_rel = 1e-10;
  // eigenvalue clustering: new cluster when the gap exceeds cluster_gap_rel * spectral radius
  double cluster_gap_rel = 1e-8;
  // scalar Newton for the radial chart inverse
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  // adaptive Simpson target (relative)
  double quad_rel_tol = 1e-9;
  // central-difference step for scalar gradients
  double fd_step_grad = 1e-6;
  // central-difference step for vector-field Jacobians (these feed the
  // variational equation inside flow transport, where their error enters
  // multiplied by lie_step, and the field-bracket differences)
  double fd_step_jac = 1e-4;
  // transport step for flow-based Lie derivatives
  double lie_step = 1e-5;
  bool lie_richardson = false;
  // deformed-algebra invertibility gate: reject K with cond_2(K) above this
  double cond_limit = 1e8;
  // integrator gates
  double unitarity_tol = 1e-9;
  double ck_tol = 1e-9;
  double integrator_dt = 1e-4;
};

}  // namespace biham
