#include <cmath>
#include <numbers>
#include <tuple>
#include <random>

#include "doctest.h"
#include "mnv/coherence.hpp"
#include "mnv/errors.hpp"

using namespace mnv;
constexpr double kPi = std::numbers::pi;
const double kAlpha = std::atan(-(2.0 * kPi * 1e6) / 1e3);

namespace {

QuenchSpec fixture_spec(int n = 3, double l = 7.535) {
  return quench_eigensystem(n, l, 0.9, 0.1, 0.8, 1.0, kAlpha, 5.0);
}

QuenchSpec random_spec(std::mt19937& rng) {
  std::uniform_real_distribution<double> ul(0.5, 15.0), up(0.05, 0.95), uq(0.5, 8.0),
      ud(-1.5, 1.5), ua(0.1, kPi - 0.1);
  std::uniform_int_distribution<int> un(1, 5);
  const double p1 = up(rng);
  return quench_eigensystem(un(rng), ul(rng), p1, 1.0 - p1, ud(rng), 1.0, ua(rng), uq(rng));
}

}  // namespace

TEST_CASE("quench eigensystem limits") {
  // no quench: identity rotation
  const QuenchSpec s0 = quench_eigensystem(3, 7.535, 0.9, 0.1, 0.0, 1.0, kAlpha, 5.0);
  CHECK(s0.J == 0.0);
  CHECK(s0.Y == 0.0);
  CHECK(s0.theta == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(s0.omega12 == doctest::Approx(s0.E1 - s0.E2).epsilon(1e-14));
  CHECK(coherence_relative_entropy(s0) == 0.0);

  // omega0 = 0 makes b = O(cos alpha) tiny against c: lambda ~ 1, alpha1 ~ beta1,
  // so the diagonal quench J collapses
  const QuenchSpec sj = quench_eigensystem(3, 7.535, 0.9, 0.1, 0.8, 0.0, kPi / 2, 5.0);
  CHECK(std::abs(sj.alpha1 - sj.beta1) < 1e-12);
  CHECK(std::abs(sj.J) < 1e-12);

  // weights must be a distribution
  CHECK_THROWS_AS(quench_eigensystem(3, 7.535, 0.7, 0.1, 0.8, 1.0, kAlpha, 5.0),
                  UnnormalizedInput);
}

TEST_CASE("quench eigensystem frozen fixture (n=3, l=7.535)") {
  const QuenchSpec s = fixture_spec();
  CHECK(s.e_overlap == doctest::Approx(1.2907229887529188).epsilon(1e-10));
  CHECK(s.b == doctest::Approx(0.5005135623530519).epsilon(1e-10));
  CHECK(s.c == doctest::Approx(-3.2268074310143033).epsilon(1e-10));
  CHECK(s.E1 == doctest::Approx(17.07532195982907).epsilon(1e-10));
  CHECK(s.E2 == doctest::Approx(10.54453333273403).epsilon(1e-10));
  CHECK(s.J == doctest::Approx(0.12262251092347749).epsilon(1e-10));
  CHECK(s.Y == doctest::Approx(0.7905464691052779).epsilon(1e-10));
  CHECK(s.L == doctest::Approx(8.68645053277729).epsilon(1e-10));
  CHECK(s.theta == doctest::Approx(1.4561790711263611).epsilon(1e-10));
  CHECK(s.EH1 == doctest::Approx(17.288953619555297).epsilon(1e-10));
  CHECK(s.EH2 == doctest::Approx(10.3309016730078).epsilon(1e-10));
  CHECK(s.omega12 == doctest::Approx(6.958051946547498).epsilon(1e-10));
  CHECK(coherence_relative_entropy(s) ==
        doctest::Approx(0.022400848569740117).epsilon(1e-10));
  CHECK(std::abs(s.zeta1 * s.zeta1 + s.zeta2 * s.zeta2 - 1.0) < 1e-14);
  CHECK(s.omega12 >= 0.0);
}

TEST_CASE("post-quench eigenvalues match a direct 2x2 eigensolve") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const QuenchSpec s = random_spec(rng);
    CMat h(2);
    h(0, 0) = s.E1 + s.J;
    h(0, 1) = s.Y;
    h(1, 0) = s.Y;
    h(1, 1) = s.E2 - s.J;
    const EigenSystem es = eigh(h);
    CHECK(std::abs(s.EH2 - es.values[0]) < 1e-12 * (1.0 + std::abs(es.values[0])));
    CHECK(std::abs(s.EH1 - es.values[1]) < 1e-12 * (1.0 + std::abs(es.values[1])));
  }
}

TEST_CASE("rho_quench spectrum is {p1, p2} at all times") {
  const QuenchSpec s = fixture_spec();
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ut(0.0, 100.0);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix rho = rho_quench(s, ut(rng));
    CHECK_NOTHROW(rho.validate());
    const std::vector<double> ev = rho.eigenvalues();
    CHECK(std::abs(ev[0] - 0.1) < 1e-10);
    CHECK(std::abs(ev[1] - 0.9) < 1e-10);
  }
  const std::vector<double> ev = rho_quench(s, 7.3).eigenvalues();
  CHECK(std::abs(ev[1] - 0.9) < 1e-10);

  // equal weights give the maximally mixed state at every t
  const QuenchSpec half = quench_eigensystem(3, 7.535, 0.5, 0.5, 0.8, 1.0, kAlpha, 5.0);
  for (double t : {0.0, 3.3}) {
    const DensityMatrix rho = rho_quench(half, t);
    CHECK(std::abs(rho.m(0, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(rho.m(0, 1)) < 1e-15);
  }
}

TEST_CASE("closed-form coherence equals the generic relative entropy") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> ut(0.0, 50.0);
  const CMat identity = CMat::identity(2);
  for (int trial = 0; trial < 100; ++trial) {
    const QuenchSpec s = random_spec(rng);
    const double closed = coherence_relative_entropy(s);
    const double generic = coherence_generic(rho_quench(s, ut(rng)), identity);
    CHECK(std::abs(closed - generic) < 1e-10);
  }
  // time invariance
  const QuenchSpec s = fixture_spec();
  const double c0 = coherence_generic(rho_quench(s, 0.0), identity);
  for (int k = 0; k < 10; ++k)
    CHECK(std::abs(coherence_generic(rho_quench(s, ut(rng)), identity) - c0) < 1e-12);
}

TEST_CASE("coherence closed form zeros") {
  // p1 = p2
  const QuenchSpec half = quench_eigensystem(3, 7.535, 0.5, 0.5, 0.8, 1.0, kAlpha, 5.0);
  CHECK(std::abs(coherence_relative_entropy(half)) < 1e-12);
  // theta = 0 reduces the weights to p1, p2
  QuenchSpec s = fixture_spec();
  s.theta = 0.0;
  s.zeta1 = 0.0;
  s.zeta2 = 1.0;
  CHECK(std::abs(coherence_relative_entropy(s)) < 1e-15);
}

TEST_CASE("coherence_generic reference values and errors") {
  DensityMatrix diag;
  diag.m = CMat(2);
  diag.m(0, 0) = 0.7;
  diag.m(1, 1) = 0.3;
  CHECK(std::abs(coherence_generic(diag, CMat::identity(2))) < 1e-14);

  DensityMatrix plus;
  plus.m = CMat(2);
  plus.m(0, 0) = plus.m(0, 1) = plus.m(1, 0) = plus.m(1, 1) = 0.5;
  CHECK(coherence_generic(plus, CMat::identity(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CMat skew(2);
  skew(0, 0) = 1.0;
  skew(0, 1) = 0.5;
  skew(1, 1) = 1.0;
  CHECK_THROWS_AS(coherence_generic(plus, skew), NonOrthonormalBasis);

  // nonnegativity on random states
  std::mt19937 rng(57);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double p = u(rng), mag = 0.9 * std::sqrt(p * (1.0 - p)), ph = 2.0 * kPi * u(rng);
    DensityMatrix rho;
    rho.m = CMat(2);
    rho.m(0, 0) = p;
    rho.m(1, 1) = 1.0 - p;
    rho.m(0, 1) = mag * std::exp(cplx(0.0, ph));
    rho.m(1, 0) = std::conj(rho.m(0, 1));
    CHECK(coherence_generic(rho, CMat::identity(2)) >= -1e-12);
  }
}

TEST_CASE("purity bound") {
  DensityMatrix mixed;
  mixed.m = CMat(2);
  mixed.m(0, 0) = mixed.m(1, 1) = 0.5;
  const PurityBound pb = purity_bound_check(mixed);
  CHECK(pb.coherence == doctest::Approx(0.0));
  CHECK(pb.bound == doctest::Approx(0.0));
  CHECK(pb.ok);

  DensityMatrix plus;
  plus.m = CMat(2);
  plus.m(0, 0) = plus.m(0, 1) = plus.m(1, 0) = plus.m(1, 1) = 0.5;
  const PurityBound pp = purity_bound_check(plus);
  CHECK(pp.bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pp.ok);  // ln 2 < 1

  // every quench state obeys the bound
  std::mt19937 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const QuenchSpec s = random_spec(rng);
    CHECK(purity_bound_check(rho_quench(s, 1.7)).ok);
  }
}

TEST_CASE("nu coefficients diagonalize the propagated state") {
  const QuenchSpec s = fixture_spec();
  for (double t : {0.0, 2.7, 13.4}) {
    const DensityMatrix rho = rho_quench(s, t);
    const std::vector<cplx> v = {s.nu1(t), s.nu2()};
    const std::vector<cplx> rv = rho.m * v;
    for (int i = 0; i < 2; ++i) CHECK(std::abs(rv[i] - s.p1 * v[i]) < 1e-13);
  }
}

TEST_CASE("homoclinic distance decreases across each coherence window") {
  for (const auto& [n, lo, hi] : {std::tuple{2, 0.3, 7.51}, {3, 1.15, 13.93},
                                  {4, 3.18, 18.4}}) {
    double prev = homoclinic_distance(n, lo).value;
    for (double l = lo + 0.5; l <= hi; l += 0.5) {
      const double cur = homoclinic_distance(n, l).value;
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("homoclinic distance") {
  CHECK_THROWS_AS(homoclinic_distance(1, 0.0), Error);
  // diverges as l -> 0+
  CHECK(homoclinic_distance(1, 1e-3).value > 1e3);
  // frozen fixture n = 1, l = 10 (order 3)
  const HomoclinicDistance h = homoclinic_distance(1, 10.0);
  CHECK(h.value == doctest::Approx(1.4169126849862381).epsilon(1e-10));
  CHECK(h.series_term == doctest::Approx(0.13336575198701958).epsilon(1e-9));
  // the series form differs from the quadrature route by the constant
  // factor 4 under the pi-normalization
  CHECK(h.ratio == doctest::Approx(4.0).epsilon(1e-7));
}
