// pendulum.hpp — physical cantilever/NV parameters mapped to the effective
// pendulum constants, plus the classical reference solutions (elliptic
// orbits, separatrix instanton, homoclinic tangle-width bound, nonlinearity
// criterion).

#pragma once

namespace mnv {

struct CantileverParams {
  double mass = 0.0;         // kg
  double omega_r = 0.0;      // oscillator angular frequency, rad/s
  double beta = 0.0;         // cubic constant
  double mu = 0.0;           // quartic constant
  double V0 = 0.0;           // drive amplitude
  double omega_drive = 0.0;  // drive angular frequency, rad/s
  double g = 0.0;            // spin-oscillator coupling
  double omega_R = 0.0;      // Rabi frequency
  double delta_spin = 0.0;   // microwave detuning

  // tan(alpha) = -omega_R/delta_spin on the (-pi/2, pi/2] branch.
  double alpha() const;
  double omega0() const;  // sqrt(omega_R^2 + delta_spin^2)
};

struct PendulumParams {
  double I0;           // resonant action
  double omega_prime;  // d(Omega_NL)/dI at I0
  double U;            // effective barrier
  double l;            // rescaled barrier 8U/omega_prime
  double Q;            // spin coupling
};

struct ClassicalOrbit {
  double E;
  double U;
  double omega_prime;
  double nu;  // perturbation frequency parameter for the tangle bound

  // Elliptic modulus k = sqrt(2U/(E+U)); k < 1 is rotation, k > 1 libration.
  double k() const;
};

// Solves the linear resonance condition omega_r + omega_prime*I0 = omega for
// I0 and evaluates the effective constants. Throws NoResonantAction when the
// condition has no positive solution (mu = 0 or drive at/below omega_r).
PendulumParams map_to_pendulum(const CantileverParams& p);

struct Nonlinearity {
  double value;   // |I/Omega(I) * dOmega/dI|
  bool moderate;  // eps < value < 1/eps
};

Nonlinearity nonlinearity_criterion(double I, const CantileverParams& p, double eps = 1e-3);

// Action deviation ΔI(t) of the pendulum orbit at energy E. Exact solution of
// H = (omega'/2)ΔI² + U cos φ:
//   E > U:  ΔI = sqrt(2(E+U)/ω') dn( sqrt(ω'(E+U)/2) t, k ),
//   E < U:  ΔI = sqrt(2(E+U)/ω') cn( sqrt(ω'U) t, 1/k ),
// with k = sqrt(2U/(E+U)). Throws SeparatrixEnergy within the guard band
// |E - U| <= guard*|U|.
double classical_orbit(const ClassicalOrbit& orbit, double t, double separatrix_guard = 1e-12);

// Orbit period in t (elliptic period of the branch above).
double classical_orbit_period(const ClassicalOrbit& orbit);

// Separatrix (k -> 1) solution: 2 sqrt(U/ω') / cosh( sqrt(U ω') t ).
double instanton(double U, double omega_prime, double t);

struct TangleWidth {
  double lhs;    // |E - U/omega'|/U
  double bound;  // exp(-pi nu sqrt(omega')/sqrt(U))
  bool satisfied;
};

TangleWidth tangle_width(double E, double U, double omega_prime, double nu);

}  // namespace mnv
