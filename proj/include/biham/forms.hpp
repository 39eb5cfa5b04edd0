#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biham/config.hpp"
#include "biham/eig.hpp"
#include "biham/matrix.hpp"

namespace biham {

enum class Field { complex_field, quaternionic };

/// Positive-definite sesquilinear form h(x,y) = x' H y over C or H. Exactly
/// one of the two matrices is populated, matching `field`.
struct HermitianForm {
  Field field = Field::complex_field;
  CMatrix hc;
  QMatrix hq;

  static HermitianForm complex_form(CMatrix h) { return {Field::complex_field, std::move(h), {}}; }
  static HermitianForm quaternionic_form(QMatrix h) { return {Field::quaternionic, {}, std::move(h)}; }
  std::size_t dim() const { return field == Field::complex_field ? hc.rows() : hq.rows(); }
};

/// G = H1^{-1} H2 together with its spectral data. G is self-adjoint for both
/// forms and positive; its eigenvectors are h1-orthonormal.
struct ConnectingOperator {
  Field field = Field::complex_field;
  CMatrix gc;
  QMatrix gq;
  std::vector<double> spectrum;          // ascending
  std::vector<double> cluster_means;     // one per degeneracy cluster
  std::vector<std::size_t> degeneracies; // multiplicities per cluster
  CMatrix eigvecs_c;                     // h1-orthonormal eigenvector columns
  QMatrix eigvecs_q;

  std::size_t dim() const { return field == Field::complex_field ? gc.rows() : gq.rows(); }
  bool distinct_spectrum() const {
    for (auto d : degeneracies)
      if (d != 1) return false;
    return true;
  }
};

/// Validates positivity of both forms and assembles the connecting operator.
ConnectingOperator connecting_operator(const HermitianForm& h1, const HermitianForm& h2,
                                       const Tolerances& tol = {});

/// Degeneracy signature plus the stabilizer label, e.g. (2,1) -> "U(2)xU(1)"
/// or "U(2,Q)xU(1,Q)" over the quaternions.
std::string biunitary_label(const std::vector<std::size_t>& degeneracies, Field field);

struct CyclicResult {
  bool cyclic = false;
  bool witness_available = false;
  CVec witness_c;  // populated for complex inputs when a witness exists/was given
  QVec witness_q;
};

/// Krylov-rank cyclicity test. When x0 is absent a witness is synthesized as
/// the sum of eigenvectors; a degenerate spectrum admits no cyclic vector at
/// all, in which case the result is false with no witness.
CyclicResult is_cyclic(const ConnectingOperator& g, const CVec* x0_c, const QVec* x0_q,
                       const Tolerances& tol = {});

/// Sum of eigenvectors with unit coefficients; throws (domain) when the
/// spectrum is degenerate.
CVec cyclic_vector_c(const ConnectingOperator& g, const Tolerances& tol = {});
QVec cyclic_vector_q(const ConnectingOperator& g, const Tolerances& tol = {});

/// Commutant {X : [G,X] = 0} inside the full matrix algebra over the same
/// scalars, as a real-linear space: real dimension plus a basis.
struct CommutantResult {
  int real_dim = 0;
  std::vector<CMatrix> basis_c;
  std::vector<QMatrix> basis_q;
};
CommutantResult commutant(const ConnectingOperator& g, const Tolerances& tol = {});

/// Real dimension of the bicommutant (everything commuting with the whole
/// commutant basis).
int bicommutant_dimension(const ConnectingOperator& g, const CommutantResult& comm,
                          const Tolerances& tol = {});

/// Everything the generic-position analysis produces, in one record.
struct GenericityReport {
  Field field = Field::complex_field;
  std::size_t dim = 0;
  std::vector<double> spectrum;
  std::vector<double> cluster_means;
  std::vector<std::size_t> degeneracies;
  bool distinct_spectrum = false;
  bool cyclic = false;
  bool witness_available = false;
  CVec witness_c;
  QVec witness_q;
  int commutant_real_dim = 0;
  int bicommutant_real_dim = 0;
  bool def3_holds = false;  // commutant == bicommutant as real spaces
  std::string group_label;
  double selfadjoint_defect_h1 = 0;  // || H1 G - (H1 G)' ||
  double selfadjoint_defect_h2 = 0;  // || H2 G - (H2 G)' ||
};

GenericityReport genericity_report(const HermitianForm& h1, const HermitianForm& h2,
                                   const Tolerances& tol = {});

/// Weighted Krylov matrix M_{l m} = mu_l lambda_l^m, the matrix of iterates
/// diag(lambda)^m applied to x0 = sum_l e_l mu_l, written in the eigenbasis.
QMatrix weighted_krylov(const std::vector<double>& lambda, const QVec& mu);

/// Determinant of the 2n x 2n complex counterpart of the weighted Krylov
/// matrix: closed form (prod_l |mu_l|^2) * V(lambda)^2 against a brute-force
/// LU determinant of the counterpart.
struct CounterpartDet {
  double closed_form = 0;
  double brute_force = 0;     // real part; imaginary part below is a sanity value
  double imag_leak = 0;
  double relative_gap = 0;
};
CounterpartDet vandermonde_counterpart_det(const std::vector<double>& lambda, const QVec& mu);

}  // namespace biham
