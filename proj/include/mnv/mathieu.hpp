// mathieu.hpp — Mathieu characteristic values, Fourier-coefficient modes,
// cos(2φ) overlap integrals and the G-/G0/G+ region classification.
//
// Conventions: the working equation is ψ'' + (E - 2l cos 2φ)ψ = 0 with
// 2π-periodic even (ce_n, characteristic a_n) and odd (se_n, characteristic
// b_n) solutions, normalized so that ∫₀^{2π} ce_n² dφ = ∫₀^{2π} se_n² dφ = π,
// i.e. 2A₀² + Σ_{r≥1} A² = 1 for even ce orders and Σ coeff² = 1 otherwise.
// The first nonzero Fourier coefficient is taken positive.

#pragma once

#include <vector>

namespace mnv {

enum class Parity { CE, SE };

// Integration domain for overlap integrals. HalfPi means [0, π].
enum class OverlapDomain { Full2Pi, HalfPi };

enum class Region { GMinus, GZero, GPlus };

struct RegionLabel {
  Region region;
  double degeneracy_gap;  // min(|a_n - b_n|, |a_n - b_{n+1}|)
};

const char* region_name(Region r);

// One eigenfunction of the Mathieu-Schrödinger equation as a truncated
// trigonometric series.
struct MathieuMode {
  Parity parity;
  int n;
  double l;
  int truncation;            // number of retained coefficients
  double characteristic;     // a_n(l) or b_n(l)
  std::vector<double> coeffs;

  // Harmonic order multiplying φ in the i-th series term.
  int harmonic(int i) const;
  // Series value at φ.
  double eval(double phi) const;
  // Squared norm under the π-normalization (1 up to roundoff).
  double norm_squared() const;
};

int default_truncation(int n);

// a_n(l) (CE) or b_n(l) (SE) from the truncated symmetric tridiagonal
// recurrence, with a doubling convergence test (target 1e-10, escalating the
// truncation up to a ceiling; throws NonConverged beyond it). M < 0 selects
// the default truncation.
double characteristic(Parity parity, int n, double l, int M = -1);

// Normalized, sign-fixed mode together with its characteristic value.
MathieuMode mode(Parity parity, int n, double l, int M = -1);

double eval(const MathieuMode& m, double phi);

// ∫_D modeA(φ) cos(2φ) modeB(φ) dφ in closed form from the coefficient
// vectors. Both modes must share the same barrier l.
double overlap_cos2(const MathieuMode& a, const MathieuMode& b,
                    OverlapDomain domain = OverlapDomain::Full2Pi);

struct G0Couplings {
  double e;  // <ce_n|cos 2φ|ce_n>
  double f;  // <se_n|cos 2φ|se_n>
};

struct GMinusCouplings {
  double r;   // e + f
  double f1;  // e - f  (difference convention)
};

struct MultilevelCouplings {
  double r2;  // <ce_n|cos 2φ|ce_n>
  double t2;  // <se_{n+1}|cos 2φ|se_{n+1}>
  double s2;  // <ce_n|cos 2φ|se_{n+1}> on the chosen domain
};

G0Couplings coupling_g0(int n, double l);
GMinusCouplings coupling_gminus(int n, double l);
MultilevelCouplings coupling_multilevel(int n, double l,
                                        OverlapDomain domain = OverlapDomain::Full2Pi);

// G- iff |a_n - b_n| < eps_deg (ties resolve here), G+ iff |a_n - b_{n+1}| <
// eps_deg, else G0.
RegionLabel classify_region(int n, double l, double eps_deg = 0.05);

}  // namespace mnv
