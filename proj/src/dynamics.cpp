#include "mnv/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "mnv/errors.hpp"

namespace mnv {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double entropy_from_eigs(const std::vector<double>& eigs, double log_base) {
  double s = 0.0;
  for (double p : eigs) s -= xlogx(std::max(p, 0.0));
  return s / std::log(log_base);
}

// sin(lambda t)/lambda, finite at lambda = 0.
double sinc_scaled(double lambda, double t) {
  const double x = lambda * t;
  if (std::abs(x) < 1e-8) return t * (1.0 - x * x / 6.0);
  return std::sin(x) / lambda;
}

DensityMatrix qubit_density(double r00, double r11, cplx r01) {
  DensityMatrix rho;
  rho.m = CMat(2);
  rho.m(0, 0) = r00;
  rho.m(0, 1) = r01;
  rho.m(1, 0) = std::conj(r01);
  rho.m(1, 1) = r11;
  return rho;
}

// Reads the G0 coefficients regardless of the CE/SE key naming.
void g0_abc(const RegionHamiltonian& h, double* a, double* b, double* c) {
  if (h.kind == HamiltonianKind::G0_CE) {
    *a = h.coeff("a");
    *b = h.coeff("b");
    *c = h.coeff("c");
  } else if (h.kind == HamiltonianKind::G0_SE) {
    *a = h.coeff("a_x");
    *b = h.coeff("b_x");
    *c = h.coeff("c_x");
  } else {
    throw Error("propagate_g0: not a G0 Hamiltonian");
  }
}

}  // namespace

double DensityMatrix::purity() const { return (m * m).trace().real(); }

std::vector<double> DensityMatrix::eigenvalues() const { return eigh(m).values; }

double DensityMatrix::entropy_bits() const { return entropy_from_eigs(eigenvalues(), 2.0); }

double DensityMatrix::entropy_nats() const {
  return entropy_from_eigs(eigenvalues(), std::numbers::e);
}

double DensityMatrix::trace_defect() const { return std::abs(m.trace() - cplx(1.0)); }

double DensityMatrix::hermiticity_defect() const { return m.hermiticity_defect(); }

double DensityMatrix::min_eigenvalue() const {
  const std::vector<double> e = eigenvalues();
  return e.empty() ? 0.0 : e.front();
}

void DensityMatrix::validate(double tol_herm, double tol_trace, double tol_psd) const {
  if (hermiticity_defect() > tol_herm) throw Error("DensityMatrix: not Hermitian");
  if (trace_defect() > tol_trace) throw Error("DensityMatrix: trace != 1");
  if (min_eigenvalue() < -tol_psd) throw Error("DensityMatrix: not positive semidefinite");
}

SpinObservables observables(const DensityMatrix& rho_b, double t) {
  if (rho_b.dim() != 2) throw Error("observables: expected a qubit state");
  SpinObservables o;
  o.t = t;
  o.sx = 2.0 * rho_b.m(0, 1).real();
  o.sy = -2.0 * rho_b.m(0, 1).imag();
  o.sz = rho_b.m(0, 0).real() - rho_b.m(1, 1).real();
  o.purity = rho_b.purity();
  o.entropy = rho_b.entropy_bits();
  return o;
}

G0State propagate_g0(const RegionHamiltonian& h, double t) {
  double a, b, c;
  g0_abc(h, &a, &b, &c);
  const double kappa = std::hypot(b, c);
  G0State out;
  if (kappa == 0.0) {
    out.rho = qubit_density(1.0, 0.0, 0.0);
    out.obs = observables(out.rho, t);
    return out;
  }
  const double k2 = kappa * kappa;
  const double s = std::sin(kappa * t), co = std::cos(kappa * t);
  const double r00 = (b * b + c * c * co * co) / k2;
  const double r11 = c * c * s * s / k2;
  const cplx r01(b * c * s * s / k2, 0.5 * c * std::sin(2.0 * kappa * t) / kappa);
  out.rho = qubit_density(r00, r11, r01);
  out.obs = observables(out.rho, t);
  return out;
}

AmplitudeFrequency g0_amplitude_frequency(const RegionHamiltonian& h) {
  double a, b, c;
  g0_abc(h, &a, &b, &c);
  const double kappa = std::hypot(b, c);
  if (kappa == 0.0)
    throw Error("g0_amplitude_frequency: degenerate frequency (b = c = 0)");
  return {b * c / (kappa * kappa), kappa / std::numbers::pi};
}

GMinusState propagate_gminus(const RegionHamiltonian& h, double t) {
  if (h.kind != HamiltonianKind::GMinus)
    throw Error("propagate_gminus: not a G- Hamiltonian");
  const double a1 = h.coeff("a1"), b1 = h.coeff("b1"), c1 = h.coeff("c1");
  const double d1 = h.coeff("d1"), e1 = h.coeff("e1");
  const double l1 = h.coeff("lambda1"), l2 = h.coeff("lambda2");

  const double s1 = sinc_scaled(l1, t), s2 = sinc_scaled(l2, t);
  const double co1 = std::cos(l1 * t), co2 = std::cos(l2 * t);
  const cplx phase = std::exp(cplx(0.0, -a1 * t));
  const cplx i(0.0, 1.0);

  GMinusState out;
  out.zeta[0] = phase * (0.5 * (co1 + co2) - 0.5 * i * b1 * (s1 + s2) + 0.5 * i * c1 * (s1 - s2));
  out.zeta[1] = phase * (-0.5 * i * e1 * (s1 + s2) + 0.5 * i * d1 * (s1 - s2));
  out.zeta[2] = phase * (-0.5 * i * c1 * (s1 + s2) + 0.5 * (co2 - co1) + 0.5 * i * b1 * (s1 - s2));
  out.zeta[3] = phase * (-0.5 * i * d1 * (s1 + s2) + 0.5 * i * e1 * (s1 - s2));

  const double r00 = std::norm(out.zeta[0]) + std::norm(out.zeta[2]);
  const double r11 = std::norm(out.zeta[1]) + std::norm(out.zeta[3]);
  const cplx r01 = out.zeta[0] * std::conj(out.zeta[1]) + out.zeta[2] * std::conj(out.zeta[3]);
  out.rho_b = qubit_density(r00, r11, r01);
  out.obs = observables(out.rho_b, t);
  return out;
}

double gminus_sx_approx(const RegionHamiltonian& h, double t) {
  const double b1 = h.coeff("b1"), c1 = h.coeff("c1");
  const double d1 = h.coeff("d1"), e1 = h.coeff("e1");
  const double l2 = h.coeff("lambda2");
  if (l2 == 0.0) return 0.0;
  const double s = std::sin(l2 * t);
  return 2.0 * (b1 * e1 + c1 * d1) * s * s / (l2 * l2);
}

MultilevelState propagate_multilevel(const RegionHamiltonian& h, double t) {
  if (h.kind != HamiltonianKind::Multilevel)
    throw Error("propagate_multilevel: not a multilevel Hamiltonian");
  const std::vector<cplx> psi0 = {1.0, 0.0, 0.0, 0.0};
  const std::vector<cplx> psi = unitary_oracle(h.matrix, psi0, t);
  MultilevelState out;
  for (int i = 0; i < 4; ++i) out.amps[i] = psi[i];
  const double r00 = std::norm(psi[0]) + std::norm(psi[2]);
  const double r11 = std::norm(psi[1]) + std::norm(psi[3]);
  const cplx r01 = psi[0] * std::conj(psi[1]) + psi[2] * std::conj(psi[3]);
  out.rho_b = qubit_density(r00, r11, r01);
  out.obs = observables(out.rho_b, t);
  return out;
}

std::vector<cplx> unitary_oracle(const CMat& H, const std::vector<cplx>& psi0, double t) {
  const double scale = std::max(H.max_abs(), 1.0);
  if (H.hermiticity_defect() > 1e-12 * scale)
    throw NonHermitian("unitary_oracle: input matrix is not Hermitian");
  double nrm = 0.0;
  for (const cplx& v : psi0) nrm += std::norm(v);
  if (std::abs(nrm - 1.0) > 1e-8)
    throw Error("unitary_oracle: initial state is not normalized");

  const EigenSystem es = eigh(H);
  // psi(t) = V exp(-i Lambda t) V^dagger psi0
  std::vector<cplx> proj(H.dim(), 0.0);
  for (int k = 0; k < H.dim(); ++k)
    for (int i = 0; i < H.dim(); ++i)
      proj[k] += std::conj(es.vectors(i, k)) * psi0[i];
  std::vector<cplx> out(H.dim(), 0.0);
  for (int k = 0; k < H.dim(); ++k) {
    const cplx ph = std::exp(cplx(0.0, -es.values[k] * t)) * proj[k];
    for (int i = 0; i < H.dim(); ++i) out[i] += es.vectors(i, k) * ph;
  }
  return out;
}

}  // namespace mnv
