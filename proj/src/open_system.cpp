#include "mnv/open_system.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mnv/errors.hpp"

namespace mnv {

namespace {

DensityMatrix qubit_density(double r00, double r11, cplx r01) {
  DensityMatrix rho;
  rho.m = CMat(2);
  rho.m(0, 0) = r00;
  rho.m(0, 1) = r01;
  rho.m(1, 0) = std::conj(r01);
  rho.m(1, 1) = r11;
  return rho;
}

// State layout (rho00, rho11, Re rho01, Im rho01).
using State = std::array<double, 4>;

State lindblad_rhs(const LindbladParams& p, const State& s) {
  const double r00 = s[0], r11 = s[1], x = s[2], y = s[3];
  State d;
  d[0] = -p.gamma * r00 - 2.0 * p.c * y;
  d[1] = p.gamma * r00 + 2.0 * p.c * y;
  d[2] = -0.5 * p.gamma * x + 2.0 * p.b * y;
  d[3] = -0.5 * p.gamma * y - 2.0 * p.b * x + p.c * (r00 - r11);
  return d;
}

State rk4_step(const LindbladParams& p, const State& s, double h) {
  const State k1 = lindblad_rhs(p, s);
  State tmp;
  for (int i = 0; i < 4; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
  const State k2 = lindblad_rhs(p, tmp);
  for (int i = 0; i < 4; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
  const State k3 = lindblad_rhs(p, tmp);
  for (int i = 0; i < 4; ++i) tmp[i] = s[i] + h * k3[i];
  const State k4 = lindblad_rhs(p, tmp);
  State out;
  for (int i = 0; i < 4; ++i)
    out[i] = s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// sinh(kx t/2)/kx, finite as kx -> 0.
cplx sinhc_half(cplx kx, double t) {
  const cplx w = kx * (t / 2.0);
  if (std::abs(w) < 1e-8) {
    // sinh(w)/w = 1 + w^2/6 + ...
    return (t / 2.0) * (1.0 + w * w / 6.0);
  }
  return std::sinh(w) / kx;
}

}  // namespace

double LindbladParams::kappa() const { return std::hypot(b, c); }

std::vector<LindbladSample> lindblad_integrate(const LindbladParams& p,
                                               const std::vector<double>& grid,
                                               double max_step) {
  if (p.gamma < 0.0) throw Error("lindblad_integrate: gamma must be >= 0");
  if (grid.empty() || grid.front() != 0.0)
    throw Error("lindblad_integrate: grid must start at t = 0");
  const double kap = p.kappa();
  double bound = 0.01 / std::max(p.gamma, 1e-9);
  if (kap > 0.0) bound = std::min(bound, 0.01 / kap);
  // The default step runs well below the bound so the gamma = 0 limit tracks
  // the unitary closed form to 1e-8 over hundreds of cycles.
  double h_target = 0.25 * bound;
  if (max_step > 0.0) {
    if (max_step > bound)
      throw StepTooLarge("lindblad_integrate: requested step exceeds the stability bound");
    h_target = max_step;
  }

  std::vector<LindbladSample> out;
  out.reserve(grid.size());
  State s = {1.0, 0.0, 0.0, 0.0};
  double t = 0.0;
  out.push_back({0.0, qubit_density(s[0], s[1], cplx(s[2], s[3]))});
  for (size_t i = 1; i < grid.size(); ++i) {
    const double t_next = grid[i];
    if (t_next <= t) throw Error("lindblad_integrate: grid must increase");
    const double span = t_next - t;
    const int nsub = std::max(1, static_cast<int>(std::ceil(span / h_target)));
    const double h = span / nsub;
    for (int k = 0; k < nsub; ++k) s = rk4_step(p, s, h);
    t = t_next;
    out.push_back({t, qubit_density(s[0], s[1], cplx(s[2], s[3]))});
  }
  return out;
}

DensityMatrix lindblad_closed_form(const LindbladParams& p, double t) {
  const double b = p.b, c = p.c, g = p.gamma;
  const double kap = p.kappa();
  if (kap == 0.0) {
    const double eg = std::exp(-g * t);
    return qubit_density(eg, 1.0 - eg, 0.0);
  }
  const double k2 = kap * kap;
  const double co = std::cos(kap * t), s = std::sin(kap * t);
  const double r11 = (b * b + c * c * co * co) / k2 * std::exp(-g * t);
  const double r22 = 1.0 + (c * c * s * s / k2 - 1.0) * std::exp(-g * t);
  const cplx r12 = cplx(c * (b - b * std::cos(2.0 * kap * t)),
                        -c * kap * std::sin(2.0 * kap * t)) /
                   (2.0 * k2) * std::exp(-0.5 * g * t);
  return qubit_density(r11, r22, r12);
}

double lindblad_purity_formula(const LindbladParams& p, double t) {
  const double b = p.b, c = p.c, g = p.gamma;
  const double kap = p.kappa();
  if (kap == 0.0) {
    const double eg = std::exp(-g * t);
    return eg * eg + (1.0 - eg) * (1.0 - eg);
  }
  const double k2 = kap * kap;
  const double egt = std::exp(g * t);
  const double num = 8.0 * b * b * k2 + 3.0 * std::pow(c, 4) -
                     (8.0 * b * b * k2 + 3.0 * std::pow(c, 4)) * egt +
                     4.0 * k2 * k2 * egt * egt +
                     c * c * (egt - 1.0) *
                         (-4.0 * (b * b + k2) * std::cos(2.0 * kap * t) -
                          c * c * std::cos(4.0 * kap * t));
  return num / (4.0 * k2 * k2) * std::exp(-2.0 * g * t);
}

void ReservoirParams::check() const {
  if (N < 1) throw Error("ReservoirParams: N must be >= 1");
  if (tau < 0.0 || g < 0.0) throw Error("ReservoirParams: tau and g must be >= 0");
}

cplx ReservoirParams::kappa_x() const {
  const cplx z(tau, -delta);
  return std::sqrt(z * z - 2.0 * N * g * tau);
}

double ReservoirParams::kappa_prime() const { return kappa_x().real(); }

double ReservoirParams::kappa_dprime() const { return -kappa_x().imag(); }

double ReservoirParams::kappa1() const {
  return tau * kappa_prime() + delta * kappa_dprime();
}

double ReservoirParams::kappa2() const {
  return delta * kappa_prime() - tau * kappa_dprime();
}

cplx bath_c1(const ReservoirParams& p, cplx c1_0, double t) {
  p.check();
  const cplx z(p.tau, -p.delta);
  const cplx kx = p.kappa_x();
  cplx bracket;
  if (std::abs(kx) < 1e-300) {
    bracket = 1.0 + z * (t / 2.0);
  } else {
    bracket = std::cosh(kx * (t / 2.0)) + z * sinhc_half(kx, t);
  }
  return c1_0 * std::exp(-z * (t / 2.0)) * bracket;
}

double bath_c1_abs2_expanded(const ReservoirParams& p, double c1_0_abs, double t) {
  p.check();
  const double kp = p.kappa_prime(), kpp = p.kappa_dprime();
  const double kx2 = kp * kp + kpp * kpp;
  if (kx2 < 1e-300) {
    const cplx z(p.tau, -p.delta);
    const cplx v = std::exp(-z * (t / 2.0)) * (1.0 + z * (t / 2.0));
    return c1_0_abs * c1_0_abs * std::norm(v);
  }
  const double k1 = p.kappa1() / kx2, k2 = p.kappa2() / kx2;
  const double ch = std::cosh(0.5 * kp * t), sh = std::sinh(0.5 * kp * t);
  const double co = std::cos(0.5 * kpp * t), si = std::sin(0.5 * kpp * t);
  const double A = ch * co + k1 * sh * co - k2 * ch * si;
  const double B = sh * si + k1 * ch * si + k2 * sh * co;
  return c1_0_abs * c1_0_abs * std::exp(-p.tau * t) * (A * A + B * B);
}

DensityMatrix bath_rho(const ReservoirParams& p, cplx c0_0, cplx c1_0, double t) {
  if (std::abs(std::norm(c0_0) + std::norm(c1_0) - 1.0) > 1e-12)
    throw UnnormalizedInput("bath_rho: |c0|^2 + |c1|^2 must equal 1");
  const cplx c1t = bath_c1(p, c1_0, t);
  return qubit_density(1.0 - std::norm(c1t), std::norm(c1t), c0_0 * std::conj(c1t));
}

double bath_F(const ReservoirParams& p, double t) {
  p.check();
  const cplx z(p.tau, -p.delta);
  const cplx kx = p.kappa_x();
  const cplx c1 = bath_c1(p, 1.0, t);
  // d/dt of the closed form collapses to -N g tau (sinh(kx t/2)/kx) e^{-zt/2}.
  const cplx dc1 = -static_cast<double>(p.N) * p.g * p.tau * sinhc_half(kx, t) *
                   std::exp(-z * (t / 2.0));
  const double mag = std::abs(c1);
  return (dc1 * std::conj(c1)).real() / std::max(mag, 1e-300);
}

double bath_F_expanded(const ReservoirParams& p, double t) {
  p.check();
  const double kp = p.kappa_prime(), kpp = p.kappa_dprime();
  const double kx2 = kp * kp + kpp * kpp;
  const double k1 = p.kappa1() / kx2, k2 = p.kappa2() / kx2;
  const double ch = std::cosh(0.5 * kp * t), sh = std::sinh(0.5 * kp * t);
  const double co = std::cos(0.5 * kpp * t), si = std::sin(0.5 * kpp * t);
  const double A = ch * co + k1 * sh * co - k2 * ch * si;
  const double B = sh * si + k1 * ch * si + k2 * sh * co;
  const double dA = 0.5 * kp * (sh * co + k1 * ch * co - k2 * sh * si) +
                    0.5 * kpp * (-ch * si - k1 * sh * si - k2 * ch * co);
  const double dB = 0.5 * kp * (ch * si + k1 * sh * si + k2 * ch * co) +
                    0.5 * kpp * (sh * co + k1 * ch * co - k2 * sh * si);
  const double abs_c1 = std::sqrt(std::exp(-p.tau * t) * (A * A + B * B));
  if (abs_c1 < 1e-300) return 0.0;
  return -0.5 * p.tau * abs_c1 +
         std::exp(-p.tau * t) * (A * dA + B * dB) / abs_c1;
}

int critical_reservoirs(double tau, double g, double delta, double t_max) {
  if (g <= 0.0) throw Error("critical_reservoirs: g must be positive");
  if (delta == 0.0) return static_cast<int>(std::floor(tau / (2.0 * g) + 1.0));
  constexpr int kMaxN = 64;
  int last_markovian = 0;
  for (int N = 1; N <= kMaxN; ++N) {
    ReservoirParams p{N, tau, g, delta};
    bool backflow = false;
    for (double t = 0.01; t <= t_max; t += 0.01) {
      if (bath_F(p, t) > 1e-12) {
        backflow = true;
        break;
      }
    }
    if (backflow) break;
    last_markovian = N;
  }
  return last_markovian;
}

double bath_purity(const ReservoirParams& p, cplx c0_0, cplx c1_0, double t) {
  const double c1sq = std::norm(bath_c1(p, c1_0, t));
  return 1.0 + 2.0 * c1sq * (c1sq + std::norm(c0_0) - 1.0);
}

}  // namespace mnv
