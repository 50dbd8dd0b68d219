// open_system.hpp — dissipative dynamics: the Markovian Lindblad channel
// (authoritative RK4 integrator plus damped closed-form profiles that differ
// from the integrator at gamma > 0 and are kept for figure parity), and the
// N-reservoir non-Markovian spin bath with its backflow witness.

#pragma once

#include <vector>

#include "mnv/dynamics.hpp"
#include "mnv/linalg.hpp"

namespace mnv {

struct LindbladParams {
  double gamma;  // dephasing rate, units of omega0
  double b, c;   // G0 Hamiltonian coefficients

  double kappa() const;
};

struct LindbladSample {
  double t;
  DensityMatrix rho;
};

// RK4 integration of the component ODEs
//   drho00 = -gamma rho00 + i c (rho01 - rho10)
//   drho01 = -gamma/2 rho01 + i(-2b rho01 + c(rho00 - rho11))
// from rho(0) = diag(1, 0), sampled on `grid` (ascending, starting at 0).
// The internal substep obeys min(0.01/kappa, 0.01/max(gamma, 1e-9)); passing
// max_step larger than that bound throws StepTooLarge, 0 selects it
// automatically.
std::vector<LindbladSample> lindblad_integrate(const LindbladParams& p,
                                               const std::vector<double>& grid,
                                               double max_step = 0.0);

// Exponential-damped closed-form profile. Its rho01 is the conjugate of the
// ODE solution's and its damped-frequency structure differs from the
// integrator for gamma > 0; kept for figure parity, never asserted against
// the integrator.
DensityMatrix lindblad_closed_form(const LindbladParams& p, double t);

// Closed-form purity expression; algebraically equals Tr(rho_closed^2).
double lindblad_purity_formula(const LindbladParams& p, double t);

struct ReservoirParams {
  int N;         // reservoir count
  double tau;    // inverse correlation time
  double g;      // system-reservoir coupling
  double delta;  // detuning omega_eff - omega^c

  // kappa_x = sqrt((tau - i delta)^2 - 2 N g tau), principal branch.
  cplx kappa_x() const;
  double kappa_prime() const;   // Re kappa_x  (>= 0)
  double kappa_dprime() const;  // -Im kappa_x (>= 0 for delta >= 0)
  double kappa1() const;        // tau kappa' + delta kappa''
  double kappa2() const;        // delta kappa' - tau kappa''

  void check() const;
};

// c1(t) = c1(0) e^{-(tau - i delta)t/2} [cosh(kx t/2) + ((tau-i delta)/kx) sinh(kx t/2)],
// with the kx -> 0 bracket limit 1 + (tau - i delta)t/2.
cplx bath_c1(const ReservoirParams& p, cplx c1_0, double t);

// |c1(t)|^2 from the expanded real form (identity cross-check path).
double bath_c1_abs2_expanded(const ReservoirParams& p, double c1_0_abs, double t);

// Reduced spin state [[1-|c1|^2, c0 c1*], [c0* c1, |c1|^2]].
DensityMatrix bath_rho(const ReservoirParams& p, cplx c0_0, cplx c1_0, double t);

// F(N,t) = d|c1|/dt by analytic differentiation of the complex closed form,
// with |c1(0)| = 1.
double bath_F(const ReservoirParams& p, double t);

// The expanded expression for d|c1|/dt (cross-check path).
double bath_F_expanded(const ReservoirParams& p, double t);

// delta = 0: floor(tau/(2g) + 1). delta != 0: the largest N with
// max_{t <= t_max} F(N, t) <= 0 on a dt = 0.01 grid.
int critical_reservoirs(double tau, double g, double delta, double t_max = 50.0);

// P = 1 + 2|c1(t)|^2 (|c1(t)|^2 + |c0(0)|^2 - 1); equals Tr(bath_rho^2).
double bath_purity(const ReservoirParams& p, cplx c0_0, cplx c1_0, double t);

}  // namespace mnv
