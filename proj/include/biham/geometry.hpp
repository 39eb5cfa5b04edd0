#pragma once

#include <functional>
#include <vector>

#include "biham/config.hpp"
#include "biham/matrix.hpp"

namespace biham {

/// Phase-space point with coordinates ordered (q_1..q_n, p_1..p_n).
using Point = RVec;

/// Fields are plain evaluators over that chart; they own `dim` so callers can
/// validate point sizes up front. Evaluators are pure (safe to sample in
/// parallel) and total away from any documented singular locus.
struct VectorField {
  std::size_t dim = 0;
  std::function<RVec(const Point&)> eval;
};

struct TensorField11 {
  std::size_t dim = 0;
  std::function<RMatrix(const Point&)> eval;  // mixed components, J^i_j
};

struct TwoFormField {
  std::size_t dim = 0;
  std::function<RMatrix(const Point&)> eval;  // antisymmetric covariant components
};

struct MetricField {
  std::size_t dim = 0;
  std::function<RMatrix(const Point&)> eval;  // symmetric covariant components
};

struct ScalarField {
  std::size_t dim = 0;
  std::function<double(const Point&)> eval;
};

struct ComplexScalarField {
  std::size_t dim = 0;
  std::function<Cx(const Point&)> eval;
};

/// Compatible metric / two-form / complex-structure bundle: g = omega(J., .),
/// J^2 = -I, omega closed.
struct AdmissibleTriple {
  MetricField g;
  TwoFormField omega;
  TensorField11 j;
};

/// The flat structures: g = sum dq^2 + dp^2, omega = sum dq^dp, J mapping
/// (dq, dp) directions as a rotation, plus the dilation field and the inverse
/// two-form. `inverse_form * omega = I` exactly.
struct StandardStructures {
  AdmissibleTriple triple;
  VectorField dilation;          // x -> x
  RMatrix inverse_form;          // constant omega^{-1}
};
StandardStructures standard_structures(std::size_t n);

/// x -> x, the generator of dilations.
VectorField dilation_field(std::size_t n);

/// H = 1/2 sum_k (q_k^2 + p_k^2).
ScalarField oscillator_hamiltonian(std::size_t n);

/// Harmonic-oscillator energy of one (q_k, p_k) pair.
double pair_energy(const Point& x, std::size_t k);

/// W^{-1}, rejecting degenerate forms.
RMatrix poisson_bivector_matrix(const RMatrix& w, const Tolerances& tol = {});

/// Solves omega(Gamma, .) = dH pointwise: Gamma = W^{-T} grad H, with the
/// gradient by central differences. With the flat structures and the
/// oscillator H this is exactly (p, -q).
VectorField hamiltonian_field(const ScalarField& h, const TwoFormField& omega,
                              const Tolerances& tol = {});

/// Radial rescaling applied pair by pair:
///   (Q_k, P_k) = (q_k, p_k) * (1 + lam * s_k),  s_k = (q_k^2 + p_k^2) / 2.
/// lam >= 0 keeps it a global diffeomorphism. The inverse runs a scalar
/// Newton iteration per pair on s (1 + lam s)^2 = S.
Point lambda_chart(const Point& x, double lam);
Point inverse_lambda_chart(const Point& x, double lam, const Tolerances& tol = {});

/// Jacobian of the pair map at (q, p), closed form.
RMatrix lambda_chart_jacobian_pair(double q, double p, double lam);

/// Oriented area stretch of one pair: pullback of dQ^dP is (this) * dq^dp.
/// Equals (1 + lam s)(1 + 3 lam s) with s the pair energy.
double deformed_area_factor(double q, double p, double lam);

/// Closed-form pullbacks of the flat structures through the chart:
/// g = Dphi' Dphi, omega = (area factor) dq^dp per pair, J = Dphi^{-1} J Dphi.
/// The Poisson coefficient of a pair is 1 / area factor.
AdmissibleTriple deformed_triple(double lam, std::size_t n);
MetricField deformed_metric(double lam, std::size_t n);
TwoFormField deformed_symplectic(double lam, std::size_t n);
TensorField11 deformed_complex_structure(double lam, std::size_t n);

/// Numerical pullback of a constant covariant 2-tensor through the chart,
/// using finite-difference chart Jacobians; cross-checks the closed forms.
RMatrix numeric_pullback_cov2(const RMatrix& downstream, const Point& x, double lam,
                              const Tolerances& tol = {});

/// f(s) = sqrt((1/s) int_0^s F) - 1, the radial profile whose squared
/// stretch reproduces a prescribed area density F(s) > 0; f(0) =
/// sqrt(F(0)) - 1. Quadrature is adaptive Simpson at tol.quad_rel_tol.
double darboux_profile(const std::function<double(double)>& f_of_s, double s,
                       const Tolerances& tol = {});

/// Central-difference flow-transport Lie derivatives: advance +-eps along X
/// with one RK4 step, pull the object back through the flow's finite-
/// difference Jacobian, difference, divide by 2 eps. tol.lie_richardson adds
/// one extrapolation level.
TwoFormField lie_derivative(const VectorField& x, const TwoFormField& t,
                            const Tolerances& tol = {});
MetricField lie_derivative(const VectorField& x, const MetricField& t,
                           const Tolerances& tol = {});
TensorField11 lie_derivative(const VectorField& x, const TensorField11& t,
                             const Tolerances& tol = {});
VectorField lie_derivative(const VectorField& x, const VectorField& y,
                           const Tolerances& tol = {});

/// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i with finite-difference Jacobians.
VectorField field_bracket(const VectorField& x, const VectorField& y,
                          const Tolerances& tol = {});

/// One classical RK4 step / a fixed-step trajectory for a vector field.
Point rk4_step(const VectorField& x, const Point& p0, double dt);
Point rk4_flow(const VectorField& x, Point p0, double time, double dt);

/// Exterior-derivative components (d alpha)_{ij} = d_i alpha_j - d_j alpha_i
/// of a one-form given by an evaluator, via central differences.
RMatrix exterior_derivative_oneform(const std::function<RVec(const Point&)>& alpha,
                                    const Point& x, double step);

/// Recovers the two-form hiding in dd_J of the metric's quadratic generator
/// 1/2 g(Delta, Delta): forms alpha(X) = -dG(J X), takes d alpha, and fits
/// the constant c with d alpha = c * omega_ref over the sample points. A fit
/// that is not constant to within `fit_tol` is refused.
struct DJRecovery {
  RMatrix form;            // d alpha at the first sample point
  double constant = 0;     // fitted c
  double max_deviation = 0;
};
DJRecovery dj_recovery(const MetricField& g, const TensorField11& j, const VectorField& delta,
                       const TwoFormField& omega_ref, const std::vector<Point>& samples,
                       double fit_tol = 1e-6, const Tolerances& tol = {});

/// Linear objects attached to a matrix: the field x -> Ax and the constant
/// mixed tensor with components A.
VectorField linear_vector_field(const RMatrix& a);
TensorField11 constant_tensor(const RMatrix& a, std::size_t dim);

/// The diagonal map diag(Q_k/q_k, P_k/p_k) carrying the dilation field of
/// the (q, p) chart to the dilation field of the image chart. Undefined on
/// the coordinate axes (any q_k = 0 or p_k = 0): evaluation there is a
/// domain error.
TensorField11 linear_structure_map(double lam, std::size_t n);

/// Pauli matrices sigma_0..sigma_3.
CMatrix pauli(int k);

/// Real picture of a complex n x n matrix M = R + i S acting on
/// (q_1 + i p_1, ..): block matrix [[R, -S], [S, R]] in the (q.., p..)
/// ordering, so multiplication by i becomes the standard complex structure.
RMatrix realify_complex(const CMatrix& m);

/// Gradient-pairing context for the function algebra on R^{2n}: a metric and
/// a Poisson bivector, plus the step used for all gradients.
struct BracketContext {
  std::size_t dim = 0;
  MetricField g;
  std::function<RMatrix(const Point&)> poisson;  // {f,h} = grad f' Pi grad h
  double grad_step = 1e-6;
};
BracketContext standard_bracket_context(std::size_t n);
/// Per-pair deformed metric blocks with Poisson coefficients 1/(area factor).
BracketContext deformed_bracket_context(double lam, std::size_t n);

/// f_A(x) = 1/2 x' A (G(x) + i Omega(x)) x, the quadratic function a matrix
/// generates through a Hermitian pairing of metric and two-form.
ComplexScalarField quadratic_function(const RMatrix& a, const MetricField& g,
                                      const TwoFormField& omega);

/// [f, h] = (f, h)_g + i {f, h}: symmetric gradient pairing through g^{-1}
/// plus i times the Poisson bracket, both by central differences.
ComplexScalarField hermitian_bracket(const ComplexScalarField& fa, const ComplexScalarField& fb,
                                     const BracketContext& ctx);

/// Poisson bracket of two real scalar fields in a context.
ScalarField poisson_bracket(const ScalarField& f, const ScalarField& h,
                            const BracketContext& ctx);

}  // namespace biham
