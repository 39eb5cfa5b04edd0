#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "biham/config.hpp"
#include "biham/matrix.hpp"

namespace biham {

/// Time-dependent control functions of a two-level drive.  omega is the
/// level splitting, omega0/omega1 the real and imaginary parts of the
/// coupling.  All three are arbitrary real functions of time.
struct Drive {
  std::function<double(double)> omega;
  std::function<double(double)> omega0;
  std::function<double(double)> omega1;

  static Drive constants(double w, double o0, double o1);
  /// Step functions: each table holds (time, value) knots sorted by time;
  /// the value at t is the one of the last knot not after t (the first
  /// knot's value before the table starts).
  static Drive piecewise(std::vector<std::pair<double, double>> w,
                         std::vector<std::pair<double, double>> o0,
                         std::vector<std::pair<double, double>> o1);
};

/// The three anti-Hermitian basis matrices with [G_l, G_m] = -eps_{lmn} G_n.
std::array<CMatrix, 3> su2_generators();

/// i * [[w/2, conj(W)], [W, -w/2]] with W = omega0 + i*omega1, evaluated at t.
CMatrix hamiltonian_matrix(const Drive& h, double t);

/// One point of an evolution: the propagator is determined by two complex
/// numbers (f, l) with |f|^2 + |l|^2 = 1.
struct CKState {
  double t = 0;
  Cx f{1, 0};
  Cx l{0, 0};

  /// [[conj(f), l], [-conj(l), f]]
  CMatrix matrix() const;
};

struct Trajectory {
  std::vector<CKState> states;
  /// worst raw-step deviation of U'U from the identity, before renormalization
  double max_unitarity_defect = 0;
  /// worst raw-step deviation from the two-parameter propagator shape
  double max_ck_defect = 0;
};

/// Integrate dU/dt = -H(t) U from U(0) = I with classical 4th-order steps,
/// renormalizing to the nearest unitary after each step.
Trajectory evolve(const Drive& h, double total_time, double dt, const Tolerances& tol = {});

/// Closed-form propagator for constant controls: exp(-i H t) for the
/// Hermitian H = [[w/2, conj(W)], [W, -w/2]].
CMatrix constant_oracle(double omega, Cx coupling, double t);

/// The positive Hermitian quaternionic family [[a, j z], [-j z, a]]
/// commuting with every propagator of the two-level evolution.
struct CommutantG {
  double a = 1;
  Cx z{0, 0};

  QMatrix matrix() const;
};

/// Validates a > |z| (positivity) and builds the pair.
CommutantG commutant_matrix(double a, Cx z);

/// max-entry norm of U'GU - G with U embedded entrywise as quaternionic.
double check_biunitary(const CMatrix& u, const CommutantG& g);

struct TransitionProbabilities {
  double p = 0;        ///< |l|^2, the complex-description probability
  double p_prime = 0;  ///< (|z|^2 |f|^2 + a^2 |l|^2) / a^2
};

/// Both transition probabilities; the second is computed from first
/// principles as |<-|GU|+>|^2 normalized by <-|G|-><+|G|+> = a^2.
TransitionProbabilities transition_probabilities(const CKState& state, const CommutantG& g);

/// The fixed unitary (1/2) [[1+i, j-k], [1-i, j+k]].
QMatrix diagonalize_d();

/// Residuals of the conjugation identities under diagonalize_d().  The
/// commutant identity targets diag(a+|z|, a-|z|), which the fixed transform
/// attains when z lies on the positive imaginary axis; elsewhere the residual
/// reports how far the target is missed.
///
/// For the three basis generators two things are reported.  The conjugated
/// generators do come out quaternion-scalar (equal diagonal, zero
/// off-diagonal): that residual is generator_scalar_defects, and the actual
/// diagonal values are generator_images (they work out to -k/2, -j/2, +i/2,
/// an su(2) triple of unit-quaternion halves).  generator_defects measures
/// the distance to the targets diag(i,i), diag(j,j), diag(k,k) instead;
/// those targets are unreachable in principle, since conjugation by a
/// unitary preserves the Frobenius norm and the generators have norm
/// 1/sqrt(2) while the targets have norm sqrt(2), so these residuals stay
/// at order one.
struct DiagonalizationReport {
  double dd_defect = 0;                    ///< ||D D' - I||
  std::array<double, 3> generator_defects{};  ///< vs diag(i,i), diag(j,j), diag(k,k)
  std::array<double, 3> generator_scalar_defects{};  ///< vs scalar diagonal shape
  std::array<Quaternion, 3> generator_images{};      ///< actual diagonal values
  double propagator_defect = 0;            ///< worst off-diagonal/diagonal-split over states
  double commutant_defect = 0;             ///< vs diag(a+|z|, a-|z|)
};

DiagonalizationReport diagonalization_report(const std::vector<CKState>& states,
                                             const CommutantG& g);

/// Entrywise complex-to-quaternion embedding.
QMatrix embed_complex(const CMatrix& m);

}  // namespace biham
