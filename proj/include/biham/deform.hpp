#pragma once

#include <cstdint>
#include <vector>

#include "biham/config.hpp"
#include "biham/matrix.hpp"

namespace biham {

/// Matrix algebra re-multiplied through a fixed invertible pivot K:
/// A o B = A K B. Associative, with two-sided identity K^{-1}.
struct DeformedAlgebraC {
  CMatrix k;
  CMatrix k_inv;
  double condition = 0;  // sqrt(max/min eigenvalue of K'K)
};

struct DeformedAlgebraQ {
  QMatrix k;
  QMatrix k_inv;
  double condition = 0;
};

/// Validates invertibility and conditioning (rejects condition numbers above
/// tol.cond_limit) before admitting K as a pivot.
DeformedAlgebraC make_deformed_c(CMatrix k, const Tolerances& tol = {});
DeformedAlgebraQ make_deformed_q(QMatrix k, const Tolerances& tol = {});

CMatrix deformed_product(const CMatrix& a, const CMatrix& b, const DeformedAlgebraC& alg);
QMatrix deformed_product(const QMatrix& a, const QMatrix& b, const DeformedAlgebraQ& alg);

/// K^{-1}, the unit of the re-multiplied algebra.
CMatrix deformed_identity(const DeformedAlgebraC& alg);
QMatrix deformed_identity(const DeformedAlgebraQ& alg);

/// phi(A) = K^{-1} A: an algebra isomorphism from the ordinary product to the
/// deformed one, phi(AB) = phi(A) o phi(B), phi(I) = unit.
CMatrix iso_phi(const CMatrix& a, const DeformedAlgebraC& alg);
QMatrix iso_phi(const QMatrix& a, const DeformedAlgebraQ& alg);

/// [A,B]_K = A K B - B K A, the commutator of the deformed product.
CMatrix deformed_bracket(const CMatrix& a, const CMatrix& b, const DeformedAlgebraC& alg);
QMatrix deformed_bracket(const QMatrix& a, const QMatrix& b, const DeformedAlgebraQ& alg);

/// The two adjoints attached to a metric pair: dagger (plain conjugate
/// transpose) and star(A) = G^{-1} A' G, the adjoint for the second form.
struct AdjointPairC {
  CMatrix g;
  CMatrix g_inv;
};
struct AdjointPairQ {
  QMatrix g;
  QMatrix g_inv;
};

/// G must be Hermitian and positive definite.
AdjointPairC make_adjoint_pair_c(CMatrix g, const Tolerances& tol = {});
AdjointPairQ make_adjoint_pair_q(QMatrix g, const Tolerances& tol = {});

CMatrix second_adjoint(const CMatrix& a, const AdjointPairC& pair);
QMatrix second_adjoint(const QMatrix& a, const AdjointPairQ& pair);

/// Solution space of [A,K] = 0 (use_deformed = false) or [A,K]_K = 0
/// (use_deformed = true), as a real-linear space. For invertible K the two
/// spaces coincide.
struct SubalgebraResult {
  int real_dim = 0;
  std::vector<CMatrix> basis_c;
  std::vector<QMatrix> basis_q;
};
SubalgebraResult subalgebra_s(const CMatrix& k, bool use_deformed, const Tolerances& tol = {});
SubalgebraResult subalgebra_s(const QMatrix& k, bool use_deformed, const Tolerances& tol = {});

/// Tests whether A -> [H, A] obeys the Leibniz rule for the K-product. The
/// defect [H, A o B] - [H,A] o B - A o [H,B] collapses to A (HK - KH) B, so
/// the answer is yes exactly when H and K commute; both the sampled defect
/// and its gap to that closed form are reported.
struct DerivationCheck {
  bool is_derivation = false;
  double max_defect = 0;      // largest sampled Leibniz defect
  double oracle_gap = 0;      // largest |defect - A(HK-KH)B| over the samples
  double hk_commutator = 0;   // ||HK - KH||
};
DerivationCheck derivation_check(const CMatrix& h, const CMatrix& k, int trials,
                                 std::uint64_t seed, const Tolerances& tol = {});
DerivationCheck derivation_check(const QMatrix& h, const QMatrix& k, int trials,
                                 std::uint64_t seed, const Tolerances& tol = {});

}  // namespace biham
