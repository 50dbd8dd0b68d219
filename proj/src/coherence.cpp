#include "mnv/coherence.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mnv/errors.hpp"
#include "mnv/mathieu.hpp"

namespace mnv {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double entropy_nats_of(const DensityMatrix& rho) { return rho.entropy_nats(); }

}  // namespace

cplx QuenchSpec::nu1(double t) const {
  // Sign follows the zeta1, zeta2 >= 0 branch, under which (nu1, nu2) is the
  // p1-eigenvector of the propagated state.
  const double tn = std::tan(theta);
  return tn * std::exp(cplx(0.0, -omega12 * t)) / std::sqrt(tn * tn + 1.0);
}

double QuenchSpec::nu2() const {
  const double tn = std::tan(theta);
  return 1.0 / std::sqrt(tn * tn + 1.0);
}

QuenchSpec quench_eigensystem(int n, double l, double p1, double p2, double delta_w0,
                              double omega0, double alpha, double Q) {
  if (p1 < 0.0 || p2 < 0.0 || std::abs(p1 + p2 - 1.0) > 1e-12)
    throw UnnormalizedInput("quench_eigensystem: weights must be in [0,1] and sum to 1");

  QuenchSpec s;
  s.p1 = p1;
  s.p2 = p2;
  s.delta_w0 = delta_w0;
  s.omega0 = omega0;
  s.alpha = alpha;
  s.Q = Q;
  s.n = n;
  s.l = l;

  const MathieuMode m = mode(Parity::CE, n, l);
  s.a_n = m.characteristic;
  s.e_overlap = overlap_cos2(m, m);
  s.b = omega0 / 2 + 0.5 * Q * s.e_overlap * std::cos(alpha);
  s.c = 0.5 * Q * s.e_overlap * std::sin(alpha);
  s.kappa = std::hypot(s.b, s.c);
  if (std::abs(s.c) < 1e-300) {
    // SingularLambda limit: the pre-quench eigenvectors are the basis vectors.
    s.lambda = std::numeric_limits<double>::infinity();
    s.alpha1 = 0.0;
    s.beta1 = 1.0;
  } else {
    s.lambda = (s.b + s.kappa) / s.c;
    s.alpha1 = 1.0 / std::sqrt(s.lambda * s.lambda + 1.0);
    s.beta1 = s.lambda / std::sqrt(s.lambda * s.lambda + 1.0);
  }
  s.E1 = s.a_n + s.kappa;
  s.E2 = s.a_n - s.kappa;

  s.J = -delta_w0 * (s.alpha1 * s.alpha1 - s.beta1 * s.beta1);
  s.Y = -2.0 * delta_w0 * s.alpha1 * s.beta1;
  const double x = s.E1 - s.E2 + 2.0 * s.J;
  const double disc = std::hypot(x, 2.0 * s.Y);
  s.EH1 = 0.5 * (s.E1 + s.E2 + disc);
  s.EH2 = 0.5 * (s.E1 + s.E2 - disc);
  s.omega12 = disc;
  if (std::abs(s.Y) < 1e-14 * std::max(1.0, std::abs(x))) {
    // No off-diagonal quench: identity rotation.
    s.L = std::numeric_limits<double>::quiet_NaN();
    s.theta = std::numbers::pi / 2;
  } else {
    s.L = (x + disc) / (2.0 * s.Y);
    // Theta in [0, pi/2] fixed by zeta1, zeta2 >= 0; coherence depends only on
    // sin^2, cos^2 so the sign of L is observationally irrelevant.
    s.theta = std::atan(std::abs(s.L));
  }
  s.zeta1 = std::sin(s.theta);
  s.zeta2 = std::cos(s.theta);
  return s;
}

DensityMatrix rho_quench(const QuenchSpec& s, double t) {
  const double z1 = s.zeta1, z2 = s.zeta2;
  DensityMatrix rho;
  rho.m = CMat(2);
  rho.m(0, 0) = s.p1 * z1 * z1 + s.p2 * z2 * z2;
  rho.m(1, 1) = s.p1 * z2 * z2 + s.p2 * z1 * z1;
  const cplx off = std::exp(cplx(0.0, -s.omega12 * t)) * (z1 * z2 * (s.p1 - s.p2));
  rho.m(0, 1) = off;
  rho.m(1, 0) = std::conj(off);
  return rho;
}

double coherence_relative_entropy(const QuenchSpec& s) {
  const double sin2 = s.zeta1 * s.zeta1, cos2 = s.zeta2 * s.zeta2;
  const double w1 = s.p1 * sin2 + s.p2 * cos2;
  const double w2 = s.p1 * cos2 + s.p2 * sin2;
  return xlogx(s.p1) + xlogx(s.p2) - xlogx(w1) - xlogx(w2);
}

double coherence_generic(const DensityMatrix& rho, const CMat& basis) {
  const int d = rho.dim();
  if (basis.dim() != d) throw NonOrthonormalBasis("coherence_generic: basis dimension mismatch");
  // Gram check on the columns.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx dot = 0.0;
      for (int k = 0; k < d; ++k) dot += std::conj(basis(k, i)) * basis(k, j);
      if (std::abs(dot - (i == j ? cplx(1.0) : cplx(0.0))) > 1e-10)
        throw NonOrthonormalBasis("coherence_generic: basis is not orthonormal");
    }

  DensityMatrix rho_d;
  rho_d.m = CMat(d);
  for (int k = 0; k < d; ++k) {
    cplx w = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        w += std::conj(basis(i, k)) * rho.m(i, j) * basis(j, k);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        rho_d.m(i, j) += w * basis(i, k) * std::conj(basis(j, k));
  }
  return entropy_nats_of(rho_d) - entropy_nats_of(rho);
}

PurityBound purity_bound_check(const DensityMatrix& rho) {
  DensityMatrix diag;
  diag.m = CMat(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) diag.m(i, i) = rho.m(i, i);
  PurityBound out;
  out.coherence = entropy_nats_of(diag) - entropy_nats_of(rho);
  out.bound = std::sqrt(std::max(2.0 * rho.purity() - 1.0, 0.0));
  out.ok = out.coherence <= out.bound + 1e-12;
  return out;
}

HomoclinicDistance homoclinic_distance(int n, double l) {
  if (l <= 0.0) throw Error("homoclinic_distance: requires l > 0");
  const int order = 2 * n + 1;
  const MathieuMode m = mode(Parity::CE, order, l);

  double series = 0.0;
  for (int r = 0; r + 1 < m.truncation; ++r) {
    const double prev = (r >= 1) ? m.coeffs[r - 1] : m.coeffs[0];  // A_{-1} := A_1
    series += m.coeffs[r] * (m.coeffs[r + 1] + prev);
  }
  series *= 0.25;

  // Independent quadrature route for the ratio diagnostic.
  constexpr int kPts = 4096;
  const double h = 2.0 * std::numbers::pi / kPts;
  double quad = 0.0;
  for (int i = 0; i <= kPts; ++i) {
    const double phi = i * h;
    const double w = (i == 0 || i == kPts) ? 0.5 : 1.0;
    const double psi = m.eval(phi);
    quad += w * psi * 2.0 * l * std::cos(2.0 * phi) * psi;
  }
  quad *= h;

  HomoclinicDistance out;
  out.series_term = series;
  out.quadrature_term = quad / l / std::numbers::pi;
  out.ratio = (series != 0.0) ? out.quadrature_term / series
                              : std::numeric_limits<double>::quiet_NaN();
  out.value = m.characteristic / l - series;
  return out;
}

}  // namespace mnv
