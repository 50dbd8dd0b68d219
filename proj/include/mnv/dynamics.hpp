// dynamics.hpp — density matrices, spin observables, closed-form propagation
// for the G0 and G- regions, numeric multilevel propagation, and the generic
// spectral unitary oracle every closed form is checked against.

#pragma once

#include <array>
#include <vector>

#include "mnv/hamiltonians.hpp"
#include "mnv/linalg.hpp"

namespace mnv {

struct DensityMatrix {
  CMat m;  // dim 2 or 4

  int dim() const { return m.dim(); }
  double purity() const;        // Re Tr rho^2
  double entropy_bits() const;  // von Neumann, log2
  double entropy_nats() const;
  double trace_defect() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;
  std::vector<double> eigenvalues() const;
  // Hermitian to tol_herm, unit trace to tol_trace, eigenvalues >= -tol_psd.
  void validate(double tol_herm = 1e-12, double tol_trace = 1e-12,
                double tol_psd = 1e-10) const;
};

struct SpinObservables {
  double t;
  double sx, sy, sz;
  double purity;
  double entropy;  // base-2
};

// Pauli traces of a qubit state; sigma_z = +1 on the first basis vector.
SpinObservables observables(const DensityMatrix& rho_b, double t);

struct G0State {
  DensityMatrix rho;  // 2x2 spin state (the G0 joint state factorizes)
  SpinObservables obs;
};

// Closed-form evolution from |ce_n>|0> (or |se_n>|0>) under a G0 Hamiltonian.
// kappa = 0 returns the constant initial state.
G0State propagate_g0(const RegionHamiltonian& h, double t);

struct AmplitudeFrequency {
  double amplitude;  // oscillation amplitude of <sigma_x> about its mean, bc/kappa^2
  double frequency;  // cycles per unit time, kappa/pi
};

AmplitudeFrequency g0_amplitude_frequency(const RegionHamiltonian& h);

struct GMinusState {
  std::array<cplx, 4> zeta;
  DensityMatrix rho_b;  // reduced 2x2 spin state
  SpinObservables obs;
};

// Closed-form evolution from |phi_n^-> |0> under a G- Hamiltonian.
GMinusState propagate_gminus(const RegionHamiltonian& h, double t);

// Small-coupling diagnostic: <sigma_x> ~ 2(b1 e1 + c1 d1) sin^2(lambda2 t)/lambda2^2.
double gminus_sx_approx(const RegionHamiltonian& h, double t);

struct MultilevelState {
  std::array<cplx, 4> amps;  // S_1..S_4
  DensityMatrix rho_b;       // reduced 2x2 spin state
  SpinObservables obs;
};

// Numeric evolution from |ce_n>|0> under the multilevel 4x4 (exact
// diagonalization; no closed form exists).
MultilevelState propagate_multilevel(const RegionHamiltonian& h, double t);

// exp(-iHt) psi0 by spectral decomposition; H must be Hermitian and psi0
// normalized. Throws NonHermitian otherwise.
std::vector<cplx> unitary_oracle(const CMat& H, const std::vector<cplx>& psi0, double t);

}  // namespace mnv
