#include "mnv/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mnv/errors.hpp"

namespace mnv {

namespace {

constexpr double kAgmTol = 1e-14;
constexpr int kAgmMax = 32;

}  // namespace

JacobiElliptic jacobi_elliptic(double u, double m) {
  if (m < 0.0 || m > 1.0) throw Error("jacobi_elliptic: modulus m outside [0, 1]");
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double s = std::tanh(u);
    const double c = 1.0 / std::cosh(u);
    return {s, c, c};
  }

  double a[kAgmMax + 1], c[kAgmMax + 1];
  double an = 1.0, bn = std::sqrt(1.0 - m);
  a[0] = an;
  c[0] = std::sqrt(m);
  int nlev = 0;
  for (int i = 1; i <= kAgmMax; ++i) {
    const double am = 0.5 * (an + bn);
    const double gm = std::sqrt(an * bn);
    c[i] = 0.5 * (an - bn);
    a[i] = am;
    an = am;
    bn = gm;
    nlev = i;
    if (std::abs(c[i]) < kAgmTol * a[i]) break;
  }

  double phi = std::ldexp(1.0, nlev) * a[nlev] * u;
  double phi_prev = phi;
  for (int i = nlev; i >= 1; --i) {
    phi_prev = phi;
    const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }
  // phi is phi_0, phi_prev is phi_1
  JacobiElliptic out;
  out.sn = std::sin(phi);
  out.cn = std::cos(phi);
  const double denom = std::cos(phi_prev - phi);
  out.dn = (std::abs(denom) > 1e-300) ? out.cn / denom : std::sqrt(1.0 - m * out.sn * out.sn);
  return out;
}

double elliptic_K(double m) {
  if (m < 0.0 || m >= 1.0) throw Error("elliptic_K: modulus m outside [0, 1)");
  double an = 1.0, bn = std::sqrt(1.0 - m);
  for (int i = 0; i < kAgmMax && std::abs(an - bn) > kAgmTol * an; ++i) {
    const double am = 0.5 * (an + bn);
    bn = std::sqrt(an * bn);
    an = am;
  }
  return std::numbers::pi / (2.0 * an);
}

}  // namespace mnv
