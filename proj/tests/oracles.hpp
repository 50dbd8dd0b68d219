// oracles.hpp — test-only reference implementations, kept independent of the
// library code paths they check: Sturm-bisection Mathieu characteristics and
// inverse-iteration coefficients at high truncation, ODE shooting, quadrature
// overlaps, RK4 Schrödinger and pendulum integrators, finite differences.

#pragma once

#include <vector>

#include "mnv/linalg.hpp"
#include "mnv/mathieu.hpp"

namespace oracle {

// Characteristic value from the tridiagonal recurrence at truncation M by
// Sturm-sequence bisection (no QL involved).
double mathieu_characteristic(mnv::Parity parity, int n, double l, int M = 256);

// Fourier coefficients at truncation M by inverse iteration around the
// bisection eigenvalue; normalized and sign-fixed with the library's
// conventions.
std::vector<double> mathieu_coefficients(mnv::Parity parity, int n, double l, int M = 256);

// psi(phi) by RK4 shooting of psi'' + (E - 2l cos 2phi) psi = 0 from phi = 0,
// seeded with the mode's value/derivative at 0.
double mathieu_eval_shooting(const mnv::MathieuMode& m, double phi, int steps = 1024);

// Trapezoid quadrature of modeA * cos(2phi) * modeB over the domain.
double overlap_quadrature(const mnv::MathieuMode& a, const mnv::MathieuMode& b,
                          mnv::OverlapDomain domain, int points = 4096);

// RK4 integration of i dpsi/dt = H psi.
std::vector<mnv::cplx> schrodinger_rk4(const mnv::CMat& H, std::vector<mnv::cplx> psi,
                                       double t, double dt = 1e-3);

// Pendulum EOM dI' = U sin(phi), phi' = omega' dI from the orbit's turning
// point (phi = pi, dI maximal for the given energy).
double pendulum_rk4(double E, double U, double omega_prime, double t, double dt = 1e-5);

}  // namespace oracle
