// hamiltonians.hpp — region-specific spin–pendulum Hamiltonians (G0 2x2 CE/SE,
// G- 4x4, G+ 4x4, multilevel G0 4x4) with their named scalar coefficients and,
// where the closed forms exist, the attached eigensystem.
//
// Basis ordering puts the initial product state first; the spin label carried
// by that state has <sigma_z> = +1. Energies are in units of omega0 = 1 unless
// stated otherwise.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "mnv/linalg.hpp"
#include "mnv/mathieu.hpp"

namespace mnv {

enum class HamiltonianKind { G0_CE, G0_SE, GMinus, GPlus, Multilevel };

struct RegionHamiltonian {
  HamiltonianKind kind;
  Region region;  // region the builder targets
  int dim;        // 2 or 4
  CMat matrix;    // real symmetric, stored complex

  // Named scalar coefficients, keyed as in the closed forms:
  //   G0 CE:      a, b, c, e
  //   G0 SE:      a_x, b_x, c_x, f
  //   G-:         a1, b1, c1, d1, e1, lambda1, lambda2, r, f1
  //   G+:         E, b1, c1, d1, e1, e_ce, f_se1
  //   multilevel: a2..h2, r2, t2, s2
  std::map<std::string, double> coeffs;

  // Inputs the builder was called with.
  int n;
  double l, omega0, alpha, Q;
  OverlapDomain domain = OverlapDomain::Full2Pi;

  // Advisory: whether classify_region agrees with the builder's target
  // region (sweeps legitimately cross boundaries, so this never throws).
  bool region_matches = true;

  // Closed-form eigensystem (G0 and G- builders only; empty otherwise).
  std::vector<double> closed_eigenvalues;  // ascending
  CMat closed_eigenvectors;                // columns, matching order

  double coeff(const std::string& key) const;
};

RegionHamiltonian h_g0(Parity branch, int n, double l, double omega0, double alpha, double Q);

// diagonal_mean replaces the a1 = a_n + b_n diagonal by the mean (a_n + b_n)/2
// for sensitivity studies; the default keeps the sum.
RegionHamiltonian h_gminus(int n, double l, double omega0, double alpha, double Q,
                           bool diagonal_mean = false);

RegionHamiltonian h_gplus(int n, double l, double omega0, double alpha, double Q);

RegionHamiltonian h_multilevel(int n, double l, double omega0, double alpha, double Q,
                               OverlapDomain domain = OverlapDomain::Full2Pi);

}  // namespace mnv
