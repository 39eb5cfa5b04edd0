#include "biham/geometry.hpp"

#include <cmath>
#include <type_traits>

#include "biham/errors.hpp"

namespace biham {

namespace {

void check_point(const Point& x, std::size_t dim, const char* where) {
  if (x.size() != dim)
    fail(ErrorKind::invalid_argument, std::string("point dimension mismatch in ") + where);
}

std::size_t pair_count(std::size_t dim) {
  if (dim == 0 || dim % 2 != 0)
    fail(ErrorKind::invalid_argument, "phase-space dimension must be even and positive");
  return dim / 2;
}

RVec vsub(const RVec& a, const RVec& b) {
  RVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RVec vscale(RVec a, double s) {
  for (auto& e : a) e *= s;
  return a;
}

RMatrix standard_form_matrix(std::size_t n) {
  RMatrix w(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    w(k, n + k) = 1;
    w(n + k, k) = -1;
  }
  return w;
}

RMatrix standard_j_matrix(std::size_t n) {
  // same component pattern as the form: (JX)_q = X_p, (JX)_p = -X_q
  return standard_form_matrix(n);
}

// central 2-point derivative of a scalar evaluator along coordinate i
double fd_partial(const std::function<double(const Point&)>& f, Point x, std::size_t i,
                  double h) {
  x[i] += h;
  const double fp = f(x);
  x[i] -= 2 * h;
  const double fm = f(x);
  return (fp - fm) / (2 * h);
}

RVec fd_gradient(const std::function<double(const Point&)>& f, const Point& x, double h) {
  RVec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = fd_partial(f, x, i, h);
  return g;
}

// 5-point stencil, truncation O(h^4); used where a derivative of an already
// finite-differenced quantity must stay quiet
RVec fd_gradient5(const std::function<double(const Point&)>& f, const Point& x, double h) {
  RVec g(x.size());
  Point y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = y[i];
    y[i] = xi + 2 * h;
    const double f2p = f(y);
    y[i] = xi + h;
    const double f1p = f(y);
    y[i] = xi - h;
    const double f1m = f(y);
    y[i] = xi - 2 * h;
    const double f2m = f(y);
    y[i] = xi;
    g[i] = (-f2p + 8 * f1p - 8 * f1m + f2m) / (12 * h);
  }
  return g;
}

}  // namespace

VectorField dilation_field(std::size_t n) {
  const std::size_t dim = 2 * n;
  return {dim, [dim](const Point& x) {
            check_point(x, dim, "dilation field");
            return x;
          }};
}

ScalarField oscillator_hamiltonian(std::size_t n) {
  const std::size_t dim = 2 * n;
  return {dim, [dim](const Point& x) {
            check_point(x, dim, "oscillator hamiltonian");
            double s = 0;
            for (double c : x) s += c * c;
            return s / 2;
          }};
}

double pair_energy(const Point& x, std::size_t k) {
  const std::size_t n = pair_count(x.size());
  if (k >= n) fail(ErrorKind::invalid_argument, "pair index out of range");
  return (x[k] * x[k] + x[n + k] * x[n + k]) / 2;
}

StandardStructures standard_structures(std::size_t n) {
  if (n == 0) fail(ErrorKind::invalid_argument, "need at least one degree of freedom");
  const std::size_t dim = 2 * n;
  const RMatrix w = standard_form_matrix(n);
  const RMatrix j = standard_j_matrix(n);
  const RMatrix id = RMatrix::identity(dim);

  StandardStructures out;
  out.triple.g = {dim, [id, dim](const Point& x) {
                    check_point(x, dim, "standard metric");
                    return id;
                  }};
  out.triple.omega = {dim, [w, dim](const Point& x) {
                        check_point(x, dim, "standard form");
                        return w;
                      }};
  out.triple.j = {dim, [j, dim](const Point& x) {
                    check_point(x, dim, "standard complex structure");
                    return j;
                  }};
  out.dilation = dilation_field(n);
  out.inverse_form = poisson_bivector_matrix(w);
  return out;
}

RMatrix poisson_bivector_matrix(const RMatrix& w, const Tolerances&) {
  return rinverse(w);  // rinverse rejects a degenerate form
}

VectorField hamiltonian_field(const ScalarField& h, const TwoFormField& omega,
                              const Tolerances& tol) {
  if (h.dim != omega.dim)
    fail(ErrorKind::invalid_argument, "hamiltonian and form dimensions differ");
  const double step = tol.fd_step_grad;
  auto heval = h.eval;
  auto weval = omega.eval;
  const std::size_t dim = h.dim;
  return {dim, [heval, weval, step, dim](const Point& x) {
            check_point(x, dim, "hamiltonian field");
            const RVec grad = fd_gradient(heval, x, step);
            // omega(Gamma, .) = dH  <=>  W' Gamma = grad H
            return rsolve(weval(x).transpose(), grad);
          }};
}

Point lambda_chart(const Point& x, double lam) {
  if (lam < 0) fail(ErrorKind::invalid_argument, "chart parameter must be non-negative");
  const std::size_t n = pair_count(x.size());
  Point y = x;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = (x[k] * x[k] + x[n + k] * x[n + k]) / 2;
    const double factor = 1 + lam * s;
    y[k] = x[k] * factor;
    y[n + k] = x[n + k] * factor;
  }
  return y;
}

Point inverse_lambda_chart(const Point& x, double lam, const Tolerances& tol) {
  if (lam < 0) fail(ErrorKind::invalid_argument, "chart parameter must be non-negative");
  const std::size_t n = pair_count(x.size());
  Point y = x;
  for (std::size_t k = 0; k < n; ++k) {
    const double big_s = (x[k] * x[k] + x[n + k] * x[n + k]) / 2;
    if (big_s == 0) continue;
    // solve s (1 + lam s)^2 = S for the pre-image energy; the left side is
    // increasing and convex for lam >= 0, so Newton from s = S stays put
    double s = big_s;
    bool done = false;
    for (int it = 0; it < tol.newton_max_iter; ++it) {
      const double u = 1 + lam * s;
      const double residual = s * u * u - big_s;
      if (std::abs(residual) <= tol.newton_tol * std::max(1.0, big_s)) {
        done = true;
        break;
      }
      s -= residual / (u * (1 + 3 * lam * s));
    }
    if (!done) fail(ErrorKind::numeric, "chart inversion did not converge");
    const double factor = 1 + lam * s;
    y[k] = x[k] / factor;
    y[n + k] = x[n + k] / factor;
  }
  return y;
}

RMatrix lambda_chart_jacobian_pair(double q, double p, double lam) {
  RMatrix d(2, 2);
  d(0, 0) = 1 + lam * (3 * q * q + p * p) / 2;
  d(0, 1) = lam * q * p;
  d(1, 0) = lam * q * p;
  d(1, 1) = 1 + lam * (q * q + 3 * p * p) / 2;
  return d;
}

double deformed_area_factor(double q, double p, double lam) {
  const double s = (q * q + p * p) / 2;
  return (1 + lam * s) * (1 + 3 * lam * s);
}

MetricField deformed_metric(double lam, std::size_t n) {
  if (lam < 0) fail(ErrorKind::invalid_argument, "chart parameter must be non-negative");
  const std::size_t dim = 2 * n;
  return {dim, [lam, n, dim](const Point& x) {
            check_point(x, dim, "deformed metric");
            RMatrix g(dim, dim);
            for (std::size_t k = 0; k < n; ++k) {
              const RMatrix d = lambda_chart_jacobian_pair(x[k], x[n + k], lam);
              const RMatrix gg = d.transpose() * d;
              g(k, k) = gg(0, 0);
              g(k, n + k) = gg(0, 1);
              g(n + k, k) = gg(1, 0);
              g(n + k, n + k) = gg(1, 1);
            }
            return g;
          }};
}

TwoFormField deformed_symplectic(double lam, std::size_t n) {
  if (lam < 0) fail(ErrorKind::invalid_argument, "chart parameter must be non-negative");
  const std::size_t dim = 2 * n;
  return {dim, [lam, n, dim](const Point& x) {
            check_point(x, dim, "deformed form");
            RMatrix w(dim, dim);
            for (std::size_t k = 0; k < n; ++k) {
              const double c = deformed_area_factor(x[k], x[n + k], lam);
              w(k, n + k) = c;
              w(n + k, k) = -c;
            }
            return w;
          }};
}

TensorField11 deformed_complex_structure(double lam, std::size_t n) {
  if (lam < 0) fail(ErrorKind::invalid_argument, "chart parameter must be non-negative");
  const std::size_t dim = 2 * n;
  return {dim, [lam, n, dim](const Point& x) {
            check_point(x, dim, "deformed complex structure");
            RMatrix j(dim, dim);
            for (std::size_t k = 0; k < n; ++k) {
              const RMatrix d = lambda_chart_jacobian_pair(x[k], x[n + k], lam);
              const double a = d(0, 0), b = d(0, 1), dd = d(1, 1);
              const double c = a * dd - b * b;
              // Dphi^{-1} J Dphi, expanded for the symmetric 2x2 Jacobian
              j(k, k) = b * (a + dd) / c;
              j(k, n + k) = (dd * dd + b * b) / c;
              j(n + k, k) = -(a * a + b * b) / c;
              j(n + k, n + k) = -b * (a + dd) / c;
            }
            return j;
          }};
}

AdmissibleTriple deformed_triple(double lam, std::size_t n) {
  return {deformed_metric(lam, n), deformed_symplectic(lam, n),
          deformed_complex_structure(lam, n)};
}

RMatrix numeric_pullback_cov2(const RMatrix& downstream, const Point& x, double lam,
                              const Tolerances& tol) {
  const std::size_t dim = x.size();
  if (downstream.rows() != dim || downstream.cols() != dim)
    fail(ErrorKind::invalid_argument, "tensor dimension mismatch in pullback");
  const double h = tol.fd_step_jac;
  RMatrix jac(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Point xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const Point fp = lambda_chart(xp, lam), fm = lambda_chart(xm, lam);
    for (std::size_t r = 0; r < dim; ++r) jac(r, i) = (fp[r] - fm[r]) / (2 * h);
  }
  return jac.transpose() * downstream * jac;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double rel_tol, int depth) {
  const double m = (a + b) / 2;
  const double lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  if (flm <= 0 || frm <= 0)
    fail(ErrorKind::domain, "area density must stay positive");
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * rel_tol * std::abs(left + right))
    return left + right + delta / 15;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, rel_tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, rel_tol, depth - 1);
}

}  // namespace

double darboux_profile(const std::function<double(double)>& f_of_s, double s,
                       const Tolerances& tol) {
  if (s < 0) fail(ErrorKind::invalid_argument, "radial argument must be non-negative");
  const double f0 = f_of_s(0.0);
  if (f0 <= 0) fail(ErrorKind::domain, "area density must stay positive");
  if (s == 0) return std::sqrt(f0) - 1;
  const double fs = f_of_s(s);
  if (fs <= 0) fail(ErrorKind::domain, "area density must stay positive");
  const double m = s / 2;
  const double fm = f_of_s(m);
  if (fm <= 0) fail(ErrorKind::domain, "area density must stay positive");
  const double whole = s / 6 * (f0 + 4 * fm + fs);
  const double integral =
      adaptive_simpson(f_of_s, 0.0, s, f0, fm, fs, whole, tol.quad_rel_tol, 48);
  return std::sqrt(integral / s) - 1;
}

Point rk4_step(const VectorField& x, const Point& p0, double dt) {
  check_point(p0, x.dim, "rk4 step");
  const RVec k1 = x.eval(p0);
  Point p = p0;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = p0[i] + dt / 2 * k1[i];
  const RVec k2 = x.eval(p);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = p0[i] + dt / 2 * k2[i];
  const RVec k3 = x.eval(p);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = p0[i] + dt * k3[i];
  const RVec k4 = x.eval(p);
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = p0[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return p;
}

Point rk4_flow(const VectorField& x, Point p0, double time, double dt) {
  if (dt <= 0) fail(ErrorKind::invalid_argument, "step size must be positive");
  if (time == 0) return p0;
  const double direction = time > 0 ? 1.0 : -1.0;
  const double span = std::abs(time);
  const int steps = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
  const double h = direction * span / steps;
  for (int i = 0; i < steps; ++i) p0 = rk4_step(x, p0, h);
  return p0;
}

namespace {

Point flow_eps(const VectorField& x, const Point& p, double eps) {
  return rk4_step(x, p, eps);
}

RMatrix field_jacobian(const VectorField& x, const Point& p, double h) {
  const std::size_t dim = p.size();
  RMatrix jac(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Point pp = p, pm = p;
    pp[i] += h;
    pm[i] -= h;
    const RVec fp = x.eval(pp), fm = x.eval(pm);
    for (std::size_t r = 0; r < dim; ++r) jac(r, i) = (fp[r] - fm[r]) / (2 * h);
  }
  return jac;
}

// Jacobian of the one-step flow map, integrated alongside the step itself
// (variational equation).  Differencing the flow map directly would divide
// its rounding noise by the step length later, in the transport quotient;
// this keeps that noise multiplied by it instead.
RMatrix flow_jacobian(const VectorField& x, const Point& p, double eps, double jac_step) {
  const std::size_t dim = p.size();
  const RMatrix id = RMatrix::identity(dim);
  auto shift = [&](const RVec& k, double w) {
    Point q = p;
    for (std::size_t i = 0; i < dim; ++i) q[i] += w * k[i];
    return q;
  };
  const RVec k1 = x.eval(p);
  const RMatrix m1 = field_jacobian(x, p, jac_step);
  const Point p2 = shift(k1, eps / 2);
  const RVec k2 = x.eval(p2);
  const RMatrix m2 = field_jacobian(x, p2, jac_step) * (id + m1 * (eps / 2));
  const Point p3 = shift(k2, eps / 2);
  const RVec k3 = x.eval(p3);
  const RMatrix m3 = field_jacobian(x, p3, jac_step) * (id + m2 * (eps / 2));
  const Point p4 = shift(k3, eps);
  const RVec k4 = x.eval(p4);
  const RMatrix m4 = field_jacobian(x, p4, jac_step) * (id + m3 * eps);
  return id + (m1 + m2 * 2.0 + m3 * 2.0 + m4) * (eps / 6);
}

// pullback of a covariant 2-tensor through the eps-flow
RMatrix pull_cov2(const VectorField& x, const std::function<RMatrix(const Point&)>& t,
                  const Point& p, double eps, double jac_step) {
  const RMatrix d = flow_jacobian(x, p, eps, jac_step);
  return d.transpose() * t(flow_eps(x, p, eps)) * d;
}

RMatrix pull_mixed(const VectorField& x, const std::function<RMatrix(const Point&)>& t,
                   const Point& p, double eps, double jac_step) {
  const RMatrix d = flow_jacobian(x, p, eps, jac_step);
  return rinverse(d) * t(flow_eps(x, p, eps)) * d;
}

RVec pull_vec(const VectorField& x, const std::function<RVec(const Point&)>& y, const Point& p,
              double eps, double jac_step) {
  const RMatrix d = flow_jacobian(x, p, eps, jac_step);
  return rsolve(d, y(flow_eps(x, p, eps)));
}

template <class Obj, class PullAt>
Obj lie_quotient(double eps, bool richardson, PullAt pull) {
  auto once = [&pull](double e) {
    Obj diff = pull(+e);
    const Obj back = pull(-e);
    if constexpr (std::is_same_v<Obj, RVec>) {
      diff = vscale(vsub(diff, back), 1.0 / (2 * e));
    } else {
      diff -= back;
      diff *= 1.0 / (2 * e);
    }
    return diff;
  };
  if (!richardson) return once(eps);
  Obj coarse = once(eps);
  Obj fine = once(eps / 2);
  if constexpr (std::is_same_v<Obj, RVec>) {
    return vscale(vsub(vscale(fine, 4.0), coarse), 1.0 / 3.0);
  } else {
    fine *= 4.0;
    fine -= coarse;
    fine *= 1.0 / 3.0;
    return fine;
  }
}

}  // namespace

TwoFormField lie_derivative(const VectorField& x, const TwoFormField& t, const Tolerances& tol) {
  if (x.dim != t.dim) fail(ErrorKind::invalid_argument, "field dimensions differ");
  auto xe = x;
  auto te = t.eval;
  const double eps = tol.lie_step, jstep = tol.fd_step_jac;
  const bool rich = tol.lie_richardson;
  return {x.dim, [xe, te, eps, jstep, rich](const Point& p) {
            return lie_quotient<RMatrix>(
                eps, rich, [&](double e) { return pull_cov2(xe, te, p, e, jstep); });
          }};
}

MetricField lie_derivative(const VectorField& x, const MetricField& t, const Tolerances& tol) {
  if (x.dim != t.dim) fail(ErrorKind::invalid_argument, "field dimensions differ");
  auto xe = x;
  auto te = t.eval;
  const double eps = tol.lie_step, jstep = tol.fd_step_jac;
  const bool rich = tol.lie_richardson;
  return {x.dim, [xe, te, eps, jstep, rich](const Point& p) {
            return lie_quotient<RMatrix>(
                eps, rich, [&](double e) { return pull_cov2(xe, te, p, e, jstep); });
          }};
}

TensorField11 lie_derivative(const VectorField& x, const TensorField11& t,
                             const Tolerances& tol) {
  if (x.dim != t.dim) fail(ErrorKind::invalid_argument, "field dimensions differ");
  auto xe = x;
  auto te = t.eval;
  const double eps = tol.lie_step, jstep = tol.fd_step_jac;
  const bool rich = tol.lie_richardson;
  return {x.dim, [xe, te, eps, jstep, rich](const Point& p) {
            return lie_quotient<RMatrix>(
                eps, rich, [&](double e) { return pull_mixed(xe, te, p, e, jstep); });
          }};
}

VectorField lie_derivative(const VectorField& x, const VectorField& y, const Tolerances& tol) {
  if (x.dim != y.dim) fail(ErrorKind::invalid_argument, "field dimensions differ");
  auto xe = x;
  auto ye = y.eval;
  const double eps = tol.lie_step, jstep = tol.fd_step_jac;
  const bool rich = tol.lie_richardson;
  return {x.dim, [xe, ye, eps, jstep, rich](const Point& p) {
            return lie_quotient<RVec>(eps, rich,
                                      [&](double e) { return pull_vec(xe, ye, p, e, jstep); });
          }};
}

VectorField field_bracket(const VectorField& x, const VectorField& y, const Tolerances& tol) {
  if (x.dim != y.dim) fail(ErrorKind::invalid_argument, "field dimensions differ");
  auto xe = x.eval;
  auto ye = y.eval;
  const double h = tol.fd_step_jac;
  const std::size_t dim = x.dim;
  return {dim, [xe, ye, h, dim](const Point& p) {
            check_point(p, dim, "field bracket");
            const RVec xv = xe(p), yv = ye(p);
            RVec out(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
              Point pp = p, pm = p;
              pp[i] += h;
              pm[i] -= h;
              const RVec yp = ye(pp), ym = ye(pm);
              const RVec xp = xe(pp), xm = xe(pm);
              for (std::size_t r = 0; r < dim; ++r) {
                out[r] += (yp[r] - ym[r]) / (2 * h) * xv[i];
                out[r] -= (xp[r] - xm[r]) / (2 * h) * yv[i];
              }
            }
            return out;
          }};
}

RMatrix exterior_derivative_oneform(const std::function<RVec(const Point&)>& alpha,
                                    const Point& x, double step) {
  const std::size_t dim = x.size();
  RMatrix grad(dim, dim);  // grad(i, j) = d_i alpha_j, 5-point stencil
  Point y = x;
  for (std::size_t i = 0; i < dim; ++i) {
    const double xi = y[i];
    y[i] = xi + 2 * step;
    const RVec a2p = alpha(y);
    y[i] = xi + step;
    const RVec a1p = alpha(y);
    y[i] = xi - step;
    const RVec a1m = alpha(y);
    y[i] = xi - 2 * step;
    const RVec a2m = alpha(y);
    y[i] = xi;
    for (std::size_t j = 0; j < dim; ++j)
      grad(i, j) = (-a2p[j] + 8 * a1p[j] - 8 * a1m[j] + a2m[j]) / (12 * step);
  }
  RMatrix d(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) d(i, j) = grad(i, j) - grad(j, i);
  return d;
}

DJRecovery dj_recovery(const MetricField& g, const TensorField11& j, const VectorField& delta,
                       const TwoFormField& omega_ref, const std::vector<Point>& samples,
                       double fit_tol, const Tolerances&) {
  if (samples.empty()) fail(ErrorKind::invalid_argument, "need at least one sample point");
  const std::size_t dim = g.dim;
  auto ge = g.eval;
  auto je = j.eval;
  auto de = delta.eval;

  // quadratic generator of the metric along the dilation field
  auto gen = [ge, de, dim](const Point& p) {
    const RVec dv = de(p);
    const RMatrix gm = ge(p);
    double s = 0;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) s += dv[r] * gm(r, c) * dv[c];
    return s / 2;
  };

  // alpha = -(J') grad gen; inner gradient on a wide 5-point stencil so the
  // outer derivative below sees a smooth evaluator
  const double inner_h = 1e-3;
  auto alpha = [gen, je, inner_h, dim](const Point& p) {
    const RVec grad = fd_gradient5(gen, p, inner_h);
    const RMatrix jm = je(p);
    RVec a(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t r = 0; r < dim; ++r) a[i] -= grad[r] * jm(r, i);
    return a;
  };

  DJRecovery out;
  double num = 0, den = 0;
  std::vector<RMatrix> forms;
  forms.reserve(samples.size());
  for (const Point& p : samples) {
    check_point(p, dim, "dj recovery");
    const RMatrix da = exterior_derivative_oneform(alpha, p, 1e-3);
    const RMatrix w = omega_ref.eval(p);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        num += da(r, c) * w(r, c);
        den += w(r, c) * w(r, c);
      }
    forms.push_back(da);
  }
  if (den == 0) fail(ErrorKind::invalid_argument, "reference form vanishes on the samples");
  out.constant = num / den;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const RMatrix w = omega_ref.eval(samples[s]);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        out.max_deviation =
            std::max(out.max_deviation, std::abs(forms[s](r, c) - out.constant * w(r, c)));
  }
  if (out.max_deviation > fit_tol * std::max(1.0, std::abs(out.constant)))
    fail(ErrorKind::numeric, "recovered form is not a constant multiple of the reference");
  out.form = forms.front();
  return out;
}

VectorField linear_vector_field(const RMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::invalid_argument, "matrix must be square");
  const std::size_t dim = a.rows();
  return {dim, [a, dim](const Point& x) {
            check_point(x, dim, "linear field");
            return a * x;
          }};
}

TensorField11 constant_tensor(const RMatrix& a, std::size_t dim) {
  if (a.rows() != dim || a.cols() != dim)
    fail(ErrorKind::invalid_argument, "tensor component dimension mismatch");
  return {dim, [a, dim](const Point& x) {
            check_point(x, dim, "constant tensor");
            return a;
          }};
}

TensorField11 linear_structure_map(double lam, std::size_t n) {
  if (lam < 0) fail(ErrorKind::invalid_argument, "chart parameter must be non-negative");
  const std::size_t dim = 2 * n;
  return {dim, [lam, n, dim](const Point& x) {
            check_point(x, dim, "linear structure map");
            const Point y = lambda_chart(x, lam);
            RMatrix t(dim, dim);
            for (std::size_t k = 0; k < n; ++k) {
              if (std::abs(x[k]) < 1e-12 || std::abs(x[n + k]) < 1e-12)
                fail(ErrorKind::domain, "linear structure map is singular on the axes");
              t(k, k) = y[k] / x[k];
              t(n + k, n + k) = y[n + k] / x[n + k];
            }
            return t;
          }};
}

CMatrix pauli(int k) {
  CMatrix s(2, 2);
  switch (k) {
    case 0:
      s(0, 0) = 1;
      s(1, 1) = 1;
      break;
    case 1:
      s(0, 1) = 1;
      s(1, 0) = 1;
      break;
    case 2:
      s(0, 1) = Cx(0, -1);
      s(1, 0) = Cx(0, 1);
      break;
    case 3:
      s(0, 0) = 1;
      s(1, 1) = -1;
      break;
    default:
      fail(ErrorKind::invalid_argument, "Pauli index must be 0..3");
  }
  return s;
}

RMatrix realify_complex(const CMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::invalid_argument, "matrix must be square");
  const std::size_t n = m.rows();
  RMatrix out(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = m(r, c).real();
      out(r, n + c) = -m(r, c).imag();
      out(n + r, c) = m(r, c).imag();
      out(n + r, n + c) = m(r, c).real();
    }
  return out;
}

BracketContext standard_bracket_context(std::size_t n) {
  const std::size_t dim = 2 * n;
  BracketContext ctx;
  ctx.dim = dim;
  const RMatrix id = RMatrix::identity(dim);
  ctx.g = {dim, [id, dim](const Point& x) {
             check_point(x, dim, "bracket metric");
             return id;
           }};
  const RMatrix pi = standard_form_matrix(n);  // grad f' Pi grad h gives {q,p} = +1
  ctx.poisson = [pi, dim](const Point& x) {
    check_point(x, dim, "bracket bivector");
    return pi;
  };
  ctx.grad_step = Tolerances{}.fd_step_grad;
  return ctx;
}

BracketContext deformed_bracket_context(double lam, std::size_t n) {
  const std::size_t dim = 2 * n;
  BracketContext ctx;
  ctx.dim = dim;
  ctx.g = deformed_metric(lam, n);
  ctx.poisson = [lam, n, dim](const Point& x) {
    check_point(x, dim, "bracket bivector");
    RMatrix pi(dim, dim);
    for (std::size_t k = 0; k < n; ++k) {
      const double c = deformed_area_factor(x[k], x[n + k], lam);
      pi(k, n + k) = 1 / c;
      pi(n + k, k) = -1 / c;
    }
    return pi;
  };
  ctx.grad_step = Tolerances{}.fd_step_grad;
  return ctx;
}

ComplexScalarField quadratic_function(const RMatrix& a, const MetricField& g,
                                      const TwoFormField& omega) {
  const std::size_t dim = g.dim;
  if (a.rows() != dim || a.cols() != dim || omega.dim != dim)
    fail(ErrorKind::invalid_argument, "quadratic function dimension mismatch");
  auto ge = g.eval;
  auto we = omega.eval;
  return {dim, [a, ge, we, dim](const Point& x) {
            check_point(x, dim, "quadratic function");
            const RVec gx = ge(x) * x, wx = we(x) * x;
            const RVec agx = a * gx, awx = a * wx;
            double re = 0, im = 0;
            for (std::size_t i = 0; i < dim; ++i) {
              re += x[i] * agx[i];
              im += x[i] * awx[i];
            }
            return Cx(re / 2, im / 2);
          }};
}

namespace {

CVec complex_gradient(const std::function<Cx(const Point&)>& f, const Point& x, double h) {
  CVec g(x.size());
  Point y = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = y[i];
    y[i] = xi + h;
    const Cx fp = f(y);
    y[i] = xi - h;
    const Cx fm = f(y);
    y[i] = xi;
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

}  // namespace

ComplexScalarField hermitian_bracket(const ComplexScalarField& fa, const ComplexScalarField& fb,
                                     const BracketContext& ctx) {
  if (fa.dim != ctx.dim || fb.dim != ctx.dim)
    fail(ErrorKind::invalid_argument, "bracket dimension mismatch");
  auto fae = fa.eval;
  auto fbe = fb.eval;
  auto ge = ctx.g.eval;
  auto pe = ctx.poisson;
  const double h = ctx.grad_step;
  const std::size_t dim = ctx.dim;
  return {dim, [fae, fbe, ge, pe, h, dim](const Point& x) {
            check_point(x, dim, "hermitian bracket");
            const CVec ga = complex_gradient(fae, x, h);
            const CVec gb = complex_gradient(fbe, x, h);
            const RMatrix ginv = rinverse(ge(x));
            const RMatrix pi = pe(x);
            Cx sym(0), anti(0);
            for (std::size_t r = 0; r < dim; ++r)
              for (std::size_t c = 0; c < dim; ++c) {
                sym += ga[r] * ginv(r, c) * gb[c];
                anti += ga[r] * pi(r, c) * gb[c];
              }
            return sym + Cx(0, 1) * anti;
          }};
}

ScalarField poisson_bracket(const ScalarField& f, const ScalarField& h,
                            const BracketContext& ctx) {
  if (f.dim != ctx.dim || h.dim != ctx.dim)
    fail(ErrorKind::invalid_argument, "bracket dimension mismatch");
  auto fe = f.eval;
  auto he = h.eval;
  auto pe = ctx.poisson;
  const double step = ctx.grad_step;
  const std::size_t dim = ctx.dim;
  return {dim, [fe, he, pe, step, dim](const Point& x) {
            check_point(x, dim, "poisson bracket");
            const RVec gf = fd_gradient(fe, x, step);
            const RVec gh = fd_gradient(he, x, step);
            const RMatrix pi = pe(x);
            double out = 0;
            for (std::size_t r = 0; r < dim; ++r)
              for (std::size_t c = 0; c < dim; ++c) out += gf[r] * pi(r, c) * gh[c];
            return out;
          }};
}

}  // namespace biham
