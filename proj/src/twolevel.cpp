#include "biham/twolevel.hpp"

#include <algorithm>
#include <cmath>

#include "biham/errors.hpp"

namespace biham {

namespace {

std::function<double(double)> step_function(std::vector<std::pair<double, double>> knots,
                                            const char* which) {
  if (knots.empty()) fail(ErrorKind::invalid_argument, std::string(which) + ": empty drive table");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i - 1].first < knots[i].first))
      fail(ErrorKind::invalid_argument, std::string(which) + ": drive table times must increase");
  return [knots](double t) {
    auto it = std::upper_bound(knots.begin(), knots.end(), t,
                               [](double v, const std::pair<double, double>& k) { return v < k.first; });
    if (it == knots.begin()) return knots.front().second;
    return std::prev(it)->second;
  };
}

}  // namespace

Drive Drive::constants(double w, double o0, double o1) {
  return {[w](double) { return w; }, [o0](double) { return o0; }, [o1](double) { return o1; }};
}

Drive Drive::piecewise(std::vector<std::pair<double, double>> w,
                       std::vector<std::pair<double, double>> o0,
                       std::vector<std::pair<double, double>> o1) {
  return {step_function(std::move(w), "omega"), step_function(std::move(o0), "omega0"),
          step_function(std::move(o1), "omega1")};
}

std::array<CMatrix, 3> su2_generators() {
  CMatrix j1(2, 2), j2(2, 2), j3(2, 2);
  j1(0, 1) = Cx(0, 0.5);
  j1(1, 0) = Cx(0, 0.5);
  j2(0, 1) = Cx(0.5, 0);
  j2(1, 0) = Cx(-0.5, 0);
  j3(0, 0) = Cx(0, 0.5);
  j3(1, 1) = Cx(0, -0.5);
  return {j1, j2, j3};
}

CMatrix hamiltonian_matrix(const Drive& h, double t) {
  if (!h.omega || !h.omega0 || !h.omega1)
    fail(ErrorKind::invalid_argument, "drive has an unset control function");
  const double w = h.omega(t), o0 = h.omega0(t), o1 = h.omega1(t);
  CMatrix m(2, 2);
  m(0, 0) = Cx(0, w / 2);
  m(0, 1) = Cx(o1, o0);   // i * conj(o0 + i o1)
  m(1, 0) = Cx(-o1, o0);  // i * (o0 + i o1)
  m(1, 1) = Cx(0, -w / 2);
  return m;
}

CMatrix CKState::matrix() const {
  CMatrix u(2, 2);
  u(0, 0) = std::conj(f);
  u(0, 1) = l;
  u(1, 0) = -std::conj(l);
  u(1, 1) = f;
  return u;
}

Trajectory evolve(const Drive& h, double total_time, double dt, const Tolerances& tol) {
  if (!(dt > 0)) fail(ErrorKind::invalid_argument, "time step must be positive");
  if (total_time < 0) fail(ErrorKind::invalid_argument, "evolution time must be nonnegative");

  Trajectory traj;
  traj.states.push_back(CKState{0.0, Cx(1, 0), Cx(0, 0)});
  if (total_time == 0) return traj;

  const int steps = std::max(1, static_cast<int>(std::ceil(total_time / dt - 1e-12)));
  const double step = total_time / steps;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);

  auto rhs = [&h](double t, const CMatrix& u) { return hamiltonian_matrix(h, t) * u * Cx(-1); };

  CMatrix u = CMatrix::identity(2);
  for (int i = 0; i < steps; ++i) {
    const double t = step * i;
    const CMatrix k1 = rhs(t, u);
    const CMatrix k2 = rhs(t + step / 2, u + k1 * Cx(step / 2));
    const CMatrix k3 = rhs(t + step / 2, u + k2 * Cx(step / 2));
    const CMatrix k4 = rhs(t + step, u + k3 * Cx(step));
    const CMatrix raw = u + (k1 + k2 * Cx(2) + k3 * Cx(2) + k4) * Cx(step / 6);

    const double ck = std::max(std::abs(raw(0, 0) - std::conj(raw(1, 1))),
                               std::abs(raw(0, 1) + std::conj(raw(1, 0))));
    const double unit = (raw.adjoint() * raw - CMatrix::identity(2)).max_abs();
    traj.max_ck_defect = std::max(traj.max_ck_defect, ck);
    traj.max_unitarity_defect = std::max(traj.max_unitarity_defect, unit);
    if (ck > tol.ck_tol)
      fail(ErrorKind::numeric, "propagator lost its two-parameter shape during integration");

    Cx f = raw(1, 1), l = raw(0, 1);
    const double nrm = std::sqrt(std::norm(f) + std::norm(l));
    if (!(nrm > 0)) fail(ErrorKind::numeric, "propagator collapsed to zero during integration");
    f /= nrm;
    l /= nrm;
    CKState s{step * (i + 1), f, l};
    u = s.matrix();
    traj.states.push_back(s);
  }
  return traj;
}

CMatrix constant_oracle(double omega, Cx coupling, double t) {
  const double e = std::sqrt(omega * omega / 4 + std::norm(coupling));
  const double c = std::cos(e * t);
  const double sinc = (std::abs(e * t) < 1e-8)
                          ? t * (1 - (e * t) * (e * t) / 6)
                          : std::sin(e * t) / e;
  CMatrix ham(2, 2);
  ham(0, 0) = Cx(omega / 2, 0);
  ham(0, 1) = std::conj(coupling);
  ham(1, 0) = coupling;
  ham(1, 1) = Cx(-omega / 2, 0);
  return CMatrix::identity(2) * Cx(c) + ham * Cx(0, -sinc);
}

QMatrix CommutantG::matrix() const {
  QMatrix g(2, 2);
  g(0, 0) = Quaternion(a);
  g(1, 1) = Quaternion(a);
  g(0, 1) = Quaternion(0, 0, z.real(), -z.imag());   // j * z
  g(1, 0) = Quaternion(0, 0, -z.real(), z.imag());
  return g;
}

CommutantG commutant_matrix(double a, Cx z) {
  if (!(a > std::abs(z)))
    fail(ErrorKind::domain, "commutant family needs a > |z| for positivity");
  return CommutantG{a, z};
}

QMatrix embed_complex(const CMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      q(i, j) = Quaternion(m(i, j).real(), m(i, j).imag(), 0, 0);
  return q;
}

double check_biunitary(const CMatrix& u, const CommutantG& g) {
  if (u.rows() != 2 || u.cols() != 2)
    fail(ErrorKind::invalid_argument, "bi-unitarity check expects a 2x2 propagator");
  const QMatrix qu = embed_complex(u);
  const QMatrix gm = g.matrix();
  return (qu.adjoint() * gm * qu - gm).max_abs();
}

TransitionProbabilities transition_probabilities(const CKState& state, const CommutantG& g) {
  TransitionProbabilities out;
  out.p = std::norm(state.l);
  // amplitude <-|GU|+> in the quaternionic description, row 2 column 1
  const QMatrix gu = g.matrix() * embed_complex(state.matrix());
  out.p_prime = gu(1, 0).norm2() / (g.a * g.a);
  return out;
}

QMatrix diagonalize_d() {
  QMatrix d(2, 2);
  d(0, 0) = Quaternion(0.5, 0.5, 0, 0);
  d(0, 1) = Quaternion(0, 0, 0.5, -0.5);
  d(1, 0) = Quaternion(0.5, -0.5, 0, 0);
  d(1, 1) = Quaternion(0, 0, 0.5, 0.5);
  return d;
}

DiagonalizationReport diagonalization_report(const std::vector<CKState>& states,
                                             const CommutantG& g) {
  DiagonalizationReport rep;
  const QMatrix d = diagonalize_d();
  const QMatrix da = d.adjoint();

  rep.dd_defect = (d * da - QMatrix::identity(2)).max_abs();

  const std::array<CMatrix, 3> gens = su2_generators();
  const std::array<Quaternion, 3> units{Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0),
                                        Quaternion(0, 0, 0, 1)};
  for (int k = 0; k < 3; ++k) {
    QMatrix target(2, 2);
    target(0, 0) = units[k];
    target(1, 1) = units[k];
    const QMatrix conj = d * embed_complex(gens[k]) * da;
    rep.generator_defects[k] = (conj - target).max_abs();
    rep.generator_scalar_defects[k] =
        std::max({conj(0, 1).norm(), conj(1, 0).norm(), (conj(0, 0) - conj(1, 1)).norm()});
    rep.generator_images[k] = conj(0, 0);
  }

  for (const CKState& s : states) {
    const QMatrix m = d * embed_complex(s.matrix()) * da;
    // expected scalar diagonal: conj(f) - j * conj(l)
    const Quaternion want(s.f.real(), -s.f.imag(), -s.l.real(), -s.l.imag());
    double defect = std::max(m(0, 1).norm(), m(1, 0).norm());
    defect = std::max(defect, (m(0, 0) - m(1, 1)).norm());
    defect = std::max(defect, (m(0, 0) - want).norm());
    rep.propagator_defect = std::max(rep.propagator_defect, defect);
  }

  QMatrix gtarget(2, 2);
  gtarget(0, 0) = Quaternion(g.a + std::abs(g.z));
  gtarget(1, 1) = Quaternion(g.a - std::abs(g.z));
  rep.commutant_defect = (d * g.matrix() * da - gtarget).max_abs();
  return rep;
}

}  // namespace biham
