#include "mnv/mathieu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mnv/errors.hpp"
#include "mnv/linalg.hpp"

namespace mnv {

namespace {

constexpr int kTruncationCeiling = 4096;
constexpr double kDoublingTol = 1e-10;

// The four recurrence classes. Even ce orders carry the √2-symmetrized A0 row.
enum class SeriesClass { CeEven, CeOdd, SeOdd, SeEven };

SeriesClass series_class(Parity parity, int n) {
  if (parity == Parity::CE) return (n % 2 == 0) ? SeriesClass::CeEven : SeriesClass::CeOdd;
  return (n % 2 == 1) ? SeriesClass::SeOdd : SeriesClass::SeEven;
}

void check_args(Parity parity, int n, double l, int M) {
  if (n < 0 || (parity == Parity::SE && n == 0))
    throw InvalidOrder("mathieu: order n=" + std::to_string(n) +
                       (parity == Parity::SE ? " invalid for se" : " invalid"));
  if (l < 0.0) throw Error("mathieu: barrier l must be >= 0");
  if (M < n + 16) throw Error("mathieu: truncation M must be >= n + 16");
}

// Diagonal/off-diagonal of the symmetric tridiagonal recurrence matrix.
void build_tridiag(SeriesClass cls, double l, int M, std::vector<double>& d,
                   std::vector<double>& e) {
  d.assign(M, 0.0);
  e.assign(M > 1 ? M - 1 : 0, l);
  switch (cls) {
    case SeriesClass::CeEven:
      for (int r = 0; r < M; ++r) d[r] = 4.0 * r * r;
      if (M > 1) e[0] = std::sqrt(2.0) * l;
      break;
    case SeriesClass::CeOdd:
      for (int r = 0; r < M; ++r) d[r] = (2.0 * r + 1) * (2.0 * r + 1);
      d[0] += l;
      break;
    case SeriesClass::SeOdd:
      for (int r = 0; r < M; ++r) d[r] = (2.0 * r + 1) * (2.0 * r + 1);
      d[0] -= l;
      break;
    case SeriesClass::SeEven:
      for (int r = 0; r < M; ++r) d[r] = (2.0 * r + 2) * (2.0 * r + 2);
      break;
  }
}

// Index of the requested order inside the ascending eigenvalue list.
int eigen_index(SeriesClass cls, int n) {
  switch (cls) {
    case SeriesClass::CeEven: return n / 2;
    case SeriesClass::CeOdd: return (n - 1) / 2;
    case SeriesClass::SeOdd: return (n - 1) / 2;
    case SeriesClass::SeEven: return n / 2 - 1;
  }
  return 0;
}

double eigenvalue_at(SeriesClass cls, int n, double l, int M) {
  std::vector<double> d, e;
  build_tridiag(cls, l, M, d, e);
  tridiag_eigh(d, e, nullptr);
  return d[eigen_index(cls, n)];
}

// Runs the doubling test, escalating M until |v(M) - v(2M)| < tol.
// Returns the converged truncation.
int converged_truncation(SeriesClass cls, int n, double l, int M) {
  while (true) {
    const double v1 = eigenvalue_at(cls, n, l, M);
    const double v2 = eigenvalue_at(cls, n, l, 2 * M);
    if (std::abs(v1 - v2) < kDoublingTol) return M;
    if (2 * M > kTruncationCeiling)
      throw NonConverged("mathieu: doubling test failed at truncation ceiling (n=" +
                         std::to_string(n) + ", l=" + std::to_string(l) + ")");
    M *= 2;
  }
}

double trig_pair_integral_full(bool a_is_sin, int p, bool b_is_sin, int q) {
  constexpr double pi = std::numbers::pi;
  if (a_is_sin != b_is_sin) return 0.0;
  if (a_is_sin) return (p == q && p != 0) ? pi : 0.0;
  if (p == 0 && q == 0) return 2.0 * pi;
  return (p == q) ? pi : 0.0;
}

double trig_pair_integral_half(bool a_is_sin, int p, bool b_is_sin, int q) {
  constexpr double pi = std::numbers::pi;
  if (a_is_sin && b_is_sin) return (p == q && p != 0) ? pi / 2 : 0.0;
  if (!a_is_sin && !b_is_sin) {
    if (p == 0 && q == 0) return pi;
    return (p == q) ? pi / 2 : 0.0;
  }
  const int s = a_is_sin ? p : q;  // sine frequency
  const int c = a_is_sin ? q : p;  // cosine frequency
  if (s == 0) return 0.0;
  if ((s + c) % 2 == 0) return 0.0;
  return 2.0 * s / (static_cast<double>(s) * s - static_cast<double>(c) * c);
}

double trig_pair_integral(OverlapDomain dom, bool a_is_sin, int p, bool b_is_sin, int q) {
  return dom == OverlapDomain::Full2Pi ? trig_pair_integral_full(a_is_sin, p, b_is_sin, q)
                                       : trig_pair_integral_half(a_is_sin, p, b_is_sin, q);
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::GMinus: return "G-";
    case Region::GZero: return "G0";
    case Region::GPlus: return "G+";
  }
  return "?";
}

int MathieuMode::harmonic(int i) const {
  switch (series_class(parity, n)) {
    case SeriesClass::CeEven: return 2 * i;
    case SeriesClass::CeOdd: return 2 * i + 1;
    case SeriesClass::SeOdd: return 2 * i + 1;
    case SeriesClass::SeEven: return 2 * i + 2;
  }
  return 0;
}

double MathieuMode::eval(double phi) const {
  double s = 0.0;
  if (parity == Parity::CE) {
    for (int i = 0; i < truncation; ++i) s += coeffs[i] * std::cos(harmonic(i) * phi);
  } else {
    for (int i = 0; i < truncation; ++i) s += coeffs[i] * std::sin(harmonic(i) * phi);
  }
  return s;
}

double MathieuMode::norm_squared() const {
  double s = 0.0;
  for (int i = 0; i < truncation; ++i) {
    const double w = (harmonic(i) == 0) ? 2.0 : 1.0;
    s += w * coeffs[i] * coeffs[i];
  }
  return s;
}

int default_truncation(int n) { return std::max(48, n + 32); }

double characteristic(Parity parity, int n, double l, int M) {
  if (M < 0) M = default_truncation(n);
  check_args(parity, n, l, M);
  const SeriesClass cls = series_class(parity, n);
  const int Mc = converged_truncation(cls, n, l, M);
  return eigenvalue_at(cls, n, l, Mc);
}

MathieuMode mode(Parity parity, int n, double l, int M) {
  if (M < 0) M = default_truncation(n);
  check_args(parity, n, l, M);
  const SeriesClass cls = series_class(parity, n);
  const int Mc = converged_truncation(cls, n, l, M);

  std::vector<double> d, e;
  build_tridiag(cls, l, Mc, d, e);
  std::vector<std::vector<double>> z(Mc, std::vector<double>(Mc, 0.0));
  for (int i = 0; i < Mc; ++i) z[i][i] = 1.0;
  tridiag_eigh(d, e, &z);

  const int k = eigen_index(cls, n);
  MathieuMode m;
  m.parity = parity;
  m.n = n;
  m.l = l;
  m.truncation = Mc;
  m.characteristic = d[k];
  m.coeffs.resize(Mc);
  for (int i = 0; i < Mc; ++i) m.coeffs[i] = z[i][k];
  if (cls == SeriesClass::CeEven) m.coeffs[0] /= std::sqrt(2.0);

  double nrm = std::sqrt(m.norm_squared());
  double peak = 0.0;
  for (double c : m.coeffs) peak = std::max(peak, std::abs(c));
  double lead = 0.0;
  for (double c : m.coeffs) {
    if (std::abs(c) > 1e-12 * peak) {
      lead = c;
      break;
    }
  }
  if (lead < 0.0) nrm = -nrm;
  for (double& c : m.coeffs) c /= nrm;
  return m;
}

double eval(const MathieuMode& m, double phi) { return m.eval(phi); }

double overlap_cos2(const MathieuMode& a, const MathieuMode& b, OverlapDomain domain) {
  if (a.l != b.l)
    throw MismatchedBarrier("overlap_cos2: modes built at different barrier heights");
  const bool a_sin = a.parity == Parity::SE;
  const bool b_sin = b.parity == Parity::SE;

  double total = 0.0;
  for (int i = 0; i < a.truncation; ++i) {
    const double ca = a.coeffs[i];
    if (ca == 0.0) continue;
    const int p = a.harmonic(i);
    // trig(pφ)cos(2φ) = ½ trig((p+2)φ) + ½ trig((p-2)φ), folding negative
    // frequencies: cos(-x) = cos(x), sin(-x) = -sin(x).
    struct Term {
      int freq;
      double weight;
    } terms[2];
    terms[0] = {p + 2, 0.5};
    if (!a_sin) {
      terms[1] = {std::abs(p - 2), 0.5};
    } else {
      terms[1] = (p >= 2) ? Term{p - 2, 0.5} : Term{2 - p, -0.5};
    }
    for (int j = 0; j < b.truncation; ++j) {
      const double cb = b.coeffs[j];
      if (cb == 0.0) continue;
      const int q = b.harmonic(j);
      for (const Term& t : terms)
        total += ca * cb * t.weight * trig_pair_integral(domain, a_sin, t.freq, b_sin, q);
    }
  }
  return total;
}

G0Couplings coupling_g0(int n, double l) {
  const MathieuMode ce = mode(Parity::CE, n, l);
  const MathieuMode se = mode(Parity::SE, n, l);
  return {overlap_cos2(ce, ce), overlap_cos2(se, se)};
}

GMinusCouplings coupling_gminus(int n, double l) {
  const G0Couplings g = coupling_g0(n, l);
  return {g.e + g.f, g.e - g.f};
}

MultilevelCouplings coupling_multilevel(int n, double l, OverlapDomain domain) {
  const MathieuMode ce = mode(Parity::CE, n, l);
  const MathieuMode se = mode(Parity::SE, n + 1, l);
  return {overlap_cos2(ce, ce), overlap_cos2(se, se), overlap_cos2(ce, se, domain)};
}

RegionLabel classify_region(int n, double l, double eps_deg) {
  if (n < 1) throw InvalidOrder("classify_region: n must be >= 1");
  const double an = characteristic(Parity::CE, n, l);
  const double bn = characteristic(Parity::SE, n, l);
  const double bn1 = characteristic(Parity::SE, n + 1, l);
  const double gap_minus = std::abs(an - bn);
  const double gap_plus = std::abs(an - bn1);
  RegionLabel out;
  out.degeneracy_gap = std::min(gap_minus, gap_plus);
  if (gap_minus < eps_deg)
    out.region = Region::GMinus;
  else if (gap_plus < eps_deg)
    out.region = Region::GPlus;
  else
    out.region = Region::GZero;
  return out;
}

}  // namespace mnv
