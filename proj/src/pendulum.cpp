#include "mnv/pendulum.hpp"

#include <cmath>
#include <numbers>

#include "mnv/elliptic.hpp"
#include "mnv/errors.hpp"

namespace mnv {

double CantileverParams::alpha() const {
  if (delta_spin == 0.0) return std::numbers::pi / 2;
  return std::atan(-omega_R / delta_spin);
}

double CantileverParams::omega0() const { return std::hypot(omega_R, delta_spin); }

double ClassicalOrbit::k() const { return std::sqrt(2.0 * U / (E + U)); }

PendulumParams map_to_pendulum(const CantileverParams& p) {
  if (p.mass <= 0.0 || p.omega_r <= 0.0)
    throw Error("map_to_pendulum: need mass > 0 and omega_r > 0");
  const double omega_prime =
      6.0 * std::numbers::pi * p.mu / (p.mass * p.mass * p.omega_r * p.omega_r);
  if (omega_prime == 0.0)
    throw NoResonantAction("map_to_pendulum: mu = 0, the resonance condition loses its "
                           "action dependence");
  const double I0 = (p.omega_drive - p.omega_r) / omega_prime;
  if (!(I0 > 0.0))
    throw NoResonantAction("map_to_pendulum: no positive resonant action for this drive");
  const double s = std::sqrt(I0 / (p.mass * p.omega_r));
  PendulumParams out;
  out.I0 = I0;
  out.omega_prime = omega_prime;
  out.U = p.V0 * s;
  out.Q = p.g * s;
  out.l = 8.0 * out.U / omega_prime;
  return out;
}

Nonlinearity nonlinearity_criterion(double I, const CantileverParams& p, double eps) {
  if (I <= 0.0) throw Error("nonlinearity_criterion: action must be positive");
  const double omega_prime =
      6.0 * std::numbers::pi * p.mu / (p.mass * p.mass * p.omega_r * p.omega_r);
  const double omega_of_I = p.omega_r + omega_prime * I;
  Nonlinearity out;
  out.value = std::abs(I * omega_prime / omega_of_I);
  out.moderate = (out.value > eps) && (out.value < 1.0 / eps);
  return out;
}

double classical_orbit(const ClassicalOrbit& orbit, double t, double separatrix_guard) {
  const double E = orbit.E, U = orbit.U, wp = orbit.omega_prime;
  if (wp <= 0.0) throw Error("classical_orbit: omega_prime must be positive");
  if (E + U <= 0.0) throw Error("classical_orbit: energy below the potential minimum");
  if (std::abs(E - U) <= separatrix_guard * std::abs(U))
    throw SeparatrixEnergy("classical_orbit: energy within the separatrix guard band");
  const double amp = std::sqrt(2.0 * (E + U) / wp);
  if (E > U) {
    const double m = 2.0 * U / (E + U);  // k^2
    return amp * jacobi_elliptic(std::sqrt(wp * (E + U) / 2.0) * t, m).dn;
  }
  const double m = (E + U) / (2.0 * U);  // (1/k)^2
  return amp * jacobi_elliptic(std::sqrt(wp * U) * t, m).cn;
}

double classical_orbit_period(const ClassicalOrbit& orbit) {
  const double E = orbit.E, U = orbit.U, wp = orbit.omega_prime;
  if (E > U) {
    const double m = 2.0 * U / (E + U);
    return 2.0 * elliptic_K(m) / std::sqrt(wp * (E + U) / 2.0);  // dn period 2K
  }
  const double m = (E + U) / (2.0 * U);
  return 4.0 * elliptic_K(m) / std::sqrt(wp * U);  // cn period 4K
}

double instanton(double U, double omega_prime, double t) {
  if (U <= 0.0 || omega_prime <= 0.0)
    throw Error("instanton: U and omega_prime must be positive");
  return 2.0 * std::sqrt(U / omega_prime) / std::cosh(std::sqrt(U * omega_prime) * t);
}

TangleWidth tangle_width(double E, double U, double omega_prime, double nu) {
  if (U <= 0.0 || omega_prime <= 0.0)
    throw Error("tangle_width: U and omega_prime must be positive");
  TangleWidth out;
  // The left-hand side is used exactly as defined, dimensional oddity included.
  out.lhs = std::abs(E - U / omega_prime) / U;
  out.bound = std::exp(-std::numbers::pi * nu * std::sqrt(omega_prime) / std::sqrt(U));
  out.satisfied = out.lhs <= out.bound;
  return out;
}

}  // namespace mnv
