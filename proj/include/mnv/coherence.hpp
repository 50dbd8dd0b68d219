// coherence.hpp — the sudden-quench protocol: quenched eigensystem, the
// propagated mixed state, relative-entropy coherence (natural log throughout,
// by construction), the purity bound, and the quantum
// homoclinic distance.

#pragma once

#include "mnv/dynamics.hpp"
#include "mnv/linalg.hpp"

namespace mnv {

struct QuenchSpec {
  // Inputs.
  double p1, p2;    // initial mixture weights, p1 + p2 = 1
  double delta_w0;  // Zeeman quench amplitude
  double omega0, alpha, Q;
  int n;
  double l;

  // Pre-quench G0 eigensystem.
  double a_n;        // Mathieu characteristic
  double e_overlap;  // <ce_n|cos 2φ|ce_n>
  double b, c, kappa;
  double lambda;  // (b + kappa)/c; +inf in the c = 0 limit
  double alpha1, beta1;
  double E1, E2;  // a_n ± kappa

  // Post-quench.
  double J, Y;
  double L;               // eigenvector slope; NaN when Y = 0 (identity rotation)
  double theta;           // in [0, pi/2], sin(theta) = zeta1, cos(theta) = zeta2
  double zeta1, zeta2;    // both >= 0 by the branch choice
  double EH1, EH2;        // post-quench eigenvalues, EH1 >= EH2
  double omega12;         // EH1 - EH2 >= 0

  // Diagonalization coefficients of rho(t) in the {psi1, psi2} basis.
  cplx nu1(double t) const;
  double nu2() const;
};

QuenchSpec quench_eigensystem(int n, double l, double p1, double p2, double delta_w0,
                              double omega0, double alpha, double Q);

// rho(t) in the quenched eigenbasis {psi1, psi2}; spectrum {p1, p2} at all t.
DensityMatrix rho_quench(const QuenchSpec& spec, double t);

// Closed-form C(rho|rho_d), time independent, natural log.
double coherence_relative_entropy(const QuenchSpec& spec);

// S(rho_d) - S(rho) in nats with rho_d the diagonal truncation in the given
// orthonormal basis (columns of `basis`).
double coherence_generic(const DensityMatrix& rho, const CMat& basis);

struct PurityBound {
  double coherence;  // in the state's own basis
  double bound;      // sqrt(2P - 1)
  bool ok;
};

PurityBound purity_bound_check(const DensityMatrix& rho);

struct HomoclinicDistance {
  double value;            // a_{2n+1}/l - series_term
  double series_term;      // (1/4) sum A_{2r+1}(A_{2r+3} + A_{2r-1}), A_{-1} := A_1
  double quadrature_term;  // (1/l) <ce|2l cos 2φ|ce> / pi by direct quadrature
  double ratio;            // quadrature_term / series_term
};

// Quantum rescaled distance from the homoclinic tangle for the odd order
// 2n + 1; requires l > 0.
HomoclinicDistance homoclinic_distance(int n, double l);

}  // namespace mnv
