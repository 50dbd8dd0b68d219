#include "mnv/hamiltonians.hpp"

#include <cmath>

#include "mnv/errors.hpp"

namespace mnv {

namespace {

bool region_advisory(int n, double l, Region target) {
  if (n < 1) return true;
  return classify_region(n, l).region == target;
}

// Closed-form eigensystem of [[a+b, c], [c, a-b]] attached in ascending order.
void attach_g0_eigensystem(RegionHamiltonian& h, double a, double b, double c) {
  const double kappa = std::hypot(b, c);
  h.closed_eigenvalues = {a - kappa, a + kappa};
  h.closed_eigenvectors = CMat(2);
  if (std::abs(c) < 1e-300) {
    // Diagonal already; order columns by eigenvalue.
    const int lo = (b >= 0.0) ? 1 : 0;
    h.closed_eigenvectors(lo, 0) = 1.0;
    h.closed_eigenvectors(1 - lo, 1) = 1.0;
    return;
  }
  const double lambda = (b + kappa) / c;
  const double alpha1 = 1.0 / std::sqrt(lambda * lambda + 1.0);
  const double beta1 = lambda / std::sqrt(lambda * lambda + 1.0);
  // a + kappa: (beta1, alpha1); a - kappa: (-alpha1, beta1)
  h.closed_eigenvectors(0, 1) = beta1;
  h.closed_eigenvectors(1, 1) = alpha1;
  h.closed_eigenvectors(0, 0) = -alpha1;
  h.closed_eigenvectors(1, 0) = beta1;
}

}  // namespace

double RegionHamiltonian::coeff(const std::string& key) const {
  const auto it = coeffs.find(key);
  if (it == coeffs.end()) throw Error("RegionHamiltonian: unknown coefficient " + key);
  return it->second;
}

RegionHamiltonian h_g0(Parity branch, int n, double l, double omega0, double alpha, double Q) {
  const MathieuMode m = mode(branch, n, l);
  const double overlap = overlap_cos2(m, m);
  const double diag = m.characteristic;
  const double b = omega0 / 2 + 0.5 * Q * overlap * std::cos(alpha);
  const double c = 0.5 * Q * overlap * std::sin(alpha);

  RegionHamiltonian h;
  h.kind = (branch == Parity::CE) ? HamiltonianKind::G0_CE : HamiltonianKind::G0_SE;
  h.region = Region::GZero;
  h.dim = 2;
  h.n = n;
  h.l = l;
  h.omega0 = omega0;
  h.alpha = alpha;
  h.Q = Q;
  h.matrix = CMat(2);
  h.matrix(0, 0) = diag + b;
  h.matrix(0, 1) = c;
  h.matrix(1, 0) = c;
  h.matrix(1, 1) = diag - b;
  if (branch == Parity::CE)
    h.coeffs = {{"a", diag}, {"b", b}, {"c", c}, {"e", overlap}};
  else
    h.coeffs = {{"a_x", diag}, {"b_x", b}, {"c_x", c}, {"f", overlap}};
  h.region_matches = region_advisory(n, l, Region::GZero);
  attach_g0_eigensystem(h, diag, b, c);
  return h;
}

RegionHamiltonian h_gminus(int n, double l, double omega0, double alpha, double Q,
                           bool diagonal_mean) {
  const double an = characteristic(Parity::CE, n, l);
  const double bn = characteristic(Parity::SE, n, l);
  const GMinusCouplings cc = coupling_gminus(n, l);
  const double a1 = diagonal_mean ? 0.5 * (an + bn) : an + bn;
  const double b1 = omega0 / 2 + 0.25 * Q * cc.r * std::cos(alpha);
  const double c1 = 0.25 * Q * cc.f1 * std::cos(alpha);
  const double d1 = 0.25 * Q * cc.f1 * std::sin(alpha);
  const double e1 = 0.25 * Q * cc.r * std::sin(alpha);
  const double lambda1 = std::hypot(b1 - c1, d1 - e1);
  const double lambda2 = std::hypot(b1 + c1, d1 + e1);

  RegionHamiltonian h;
  h.kind = HamiltonianKind::GMinus;
  h.region = Region::GMinus;
  h.dim = 4;
  h.n = n;
  h.l = l;
  h.omega0 = omega0;
  h.alpha = alpha;
  h.Q = Q;
  h.matrix = CMat(4);
  const double mloc[4][4] = {{a1 + b1, e1, c1, d1},
                             {e1, a1 - b1, d1, -c1},
                             {c1, d1, a1 + b1, e1},
                             {d1, -c1, e1, a1 - b1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h.matrix(i, j) = mloc[i][j];
  h.coeffs = {{"a1", a1},         {"b1", b1},         {"c1", c1},
              {"d1", d1},         {"e1", e1},         {"lambda1", lambda1},
              {"lambda2", lambda2}, {"r", cc.r},      {"f1", cc.f1}};
  h.region_matches = region_advisory(n, l, Region::GMinus);

  // Eigenvalues a1 -+ lambda_i; eigenvectors from the two sigma_x sectors:
  // (u, -u)/sqrt(2) for lambda1, (u, u)/sqrt(2) for lambda2, with u the
  // corresponding 2x2 sector eigenvector.
  struct Entry {
    double value;
    double vec[4];
  };
  std::vector<Entry> entries;
  auto sector_vec = [](double beta, double eps, double sign_lambda, double lambda, double* u0,
                       double* u1) {
    // Eigenvector of [[beta, eps], [eps, -beta]] for eigenvalue sign*lambda.
    double x = beta + sign_lambda * lambda;
    double y = eps;
    if (std::abs(x) < 1e-300 && std::abs(y) < 1e-300) {
      // Degenerate sector (lambda = 0 with beta = eps = 0): any basis works.
      x = (sign_lambda > 0) ? 1.0 : 0.0;
      y = (sign_lambda > 0) ? 0.0 : 1.0;
    }
    const double nrm = std::hypot(x, y);
    *u0 = x / nrm;
    *u1 = y / nrm;
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const double sign : {-1.0, +1.0}) {
    double u0, u1;
    sector_vec(b1 - c1, e1 - d1, sign, lambda1, &u0, &u1);
    entries.push_back({a1 + sign * lambda1,
                       {u0 * inv_sqrt2, u1 * inv_sqrt2, -u0 * inv_sqrt2, -u1 * inv_sqrt2}});
    sector_vec(b1 + c1, e1 + d1, sign, lambda2, &u0, &u1);
    entries.push_back({a1 + sign * lambda2,
                       {u0 * inv_sqrt2, u1 * inv_sqrt2, u0 * inv_sqrt2, u1 * inv_sqrt2}});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.value < y.value; });
  h.closed_eigenvalues.resize(4);
  h.closed_eigenvectors = CMat(4);
  for (int j = 0; j < 4; ++j) {
    h.closed_eigenvalues[j] = entries[j].value;
    for (int i = 0; i < 4; ++i) h.closed_eigenvectors(i, j) = entries[j].vec[i];
  }
  return h;
}

RegionHamiltonian h_gplus(int n, double l, double omega0, double alpha, double Q) {
  const MathieuMode ce = mode(Parity::CE, n, l);
  const MathieuMode se1 = mode(Parity::SE, n + 1, l);
  const double e_ce = overlap_cos2(ce, ce);
  const double f_se1 = overlap_cos2(se1, se1);
  // Degenerate-pair diagonal, by the same convention the G- main text fixes
  // (E_n = a_n + b_n there): here the pair is (ce_n, se_{n+1}).
  const double E = ce.characteristic + se1.characteristic;
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double sum_brace = e_ce + f_se1;
  const double diff_brace = e_ce - f_se1;

  // Element-by-element assembly: every coupling entry is
  // (Q/2)[brace](1/2)(trig alpha).
  const double q4 = 0.25 * Q;
  const double A11 = E + omega0 / 2 + q4 * sum_brace * ca;
  const double A12 = q4 * sum_brace * sa;
  const double A13 = q4 * diff_brace * ca;
  const double A14 = q4 * diff_brace * sa;
  const double A22 = E - omega0 / 2 - q4 * sum_brace * ca;
  const double A23 = q4 * diff_brace * sa;
  const double A24 = -q4 * diff_brace * ca;
  const double A33 = E + omega0 / 2 + q4 * sum_brace * ca;
  const double A34 = q4 * sum_brace * sa;
  const double A44 = E - omega0 / 2 - q4 * sum_brace * ca;

  RegionHamiltonian h;
  h.kind = HamiltonianKind::GPlus;
  h.region = Region::GPlus;
  h.dim = 4;
  h.n = n;
  h.l = l;
  h.omega0 = omega0;
  h.alpha = alpha;
  h.Q = Q;
  h.matrix = CMat(4);
  const double mloc[4][4] = {{A11, A12, A13, A14},
                             {A12, A22, A23, A24},
                             {A13, A23, A33, A34},
                             {A14, A24, A34, A44}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h.matrix(i, j) = mloc[i][j];
  h.coeffs = {{"E", E},
              {"b1", omega0 / 2 + q4 * sum_brace * ca},
              {"c1", q4 * diff_brace * ca},
              {"d1", q4 * diff_brace * sa},
              {"e1", q4 * sum_brace * sa},
              {"e_ce", e_ce},
              {"f_se1", f_se1}};
  h.region_matches = region_advisory(n, l, Region::GPlus);
  return h;
}

RegionHamiltonian h_multilevel(int n, double l, double omega0, double alpha, double Q,
                               OverlapDomain domain) {
  const MultilevelCouplings cc = coupling_multilevel(n, l, domain);
  const double a2 = characteristic(Parity::CE, n, l);
  const double f2 = characteristic(Parity::SE, n + 1, l);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double b2 = omega0 / 2 + 0.5 * Q * cc.r2 * ca;
  const double c2 = 0.5 * Q * cc.r2 * sa;
  const double d2 = 0.5 * Q * cc.s2 * ca;
  const double e2 = 0.5 * Q * cc.s2 * sa;
  const double g2 = omega0 / 2 + 0.5 * Q * cc.t2 * ca;
  const double h2 = 0.5 * Q * cc.t2 * sa;

  RegionHamiltonian h;
  h.kind = HamiltonianKind::Multilevel;
  h.region = Region::GZero;
  h.dim = 4;
  h.n = n;
  h.l = l;
  h.omega0 = omega0;
  h.alpha = alpha;
  h.Q = Q;
  h.domain = domain;
  h.matrix = CMat(4);
  const double mloc[4][4] = {{a2 + b2, c2, d2, e2},
                             {c2, a2 - b2, e2, -d2},
                             {d2, e2, f2 + g2, h2},
                             {e2, -d2, h2, f2 - g2}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h.matrix(i, j) = mloc[i][j];
  h.coeffs = {{"a2", a2}, {"b2", b2}, {"c2", c2}, {"d2", d2}, {"e2", e2},
              {"f2", f2}, {"g2", g2}, {"h2", h2}, {"r2", cc.r2}, {"t2", cc.t2},
              {"s2", cc.s2}};
  h.region_matches = region_advisory(n, l, Region::GZero);
  return h;
}

}  // namespace mnv
