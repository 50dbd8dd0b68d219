#include <cmath>
#include <numbers>
#include <tuple>
#include <utility>

#include "doctest.h"
#include "mnv/errors.hpp"
#include "mnv/mathieu.hpp"
#include "oracles.hpp"

using namespace mnv;
constexpr double kPi = std::numbers::pi;

TEST_CASE("free-rotor characteristics: a_n(0) = b_n(0) = n^2") {
  for (int n = 0; n <= 10; ++n) {
    CHECK(std::abs(characteristic(Parity::CE, n, 0.0) - n * n) < 1e-12);
    if (n >= 1) CHECK(std::abs(characteristic(Parity::SE, n, 0.0) - n * n) < 1e-12);
  }
  CHECK(characteristic(Parity::CE, 1, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(characteristic(Parity::SE, 4, 0.0) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("characteristics match the high-truncation bisection oracle") {
  for (const auto& [p, n, l] : {std::tuple{Parity::CE, 1, 1.0}, {Parity::CE, 3, 7.535},
                                {Parity::SE, 2, 5.0}, {Parity::CE, 6, 20.0},
                                {Parity::SE, 5, 12.5}}) {
    const double lib = characteristic(p, n, l);
    const double ref = oracle::mathieu_characteristic(p, n, l, 256);
    CHECK(std::abs(lib - ref) < 1e-10);
  }
}

TEST_CASE("invalid orders and barriers are rejected") {
  CHECK_THROWS_AS(characteristic(Parity::SE, 0, 1.0), InvalidOrder);
  CHECK_THROWS_AS(characteristic(Parity::CE, -1, 1.0), InvalidOrder);
  CHECK_THROWS_AS(characteristic(Parity::CE, 1, -0.5), Error);
}

TEST_CASE("doubling test escalates and eventually reports non-convergence") {
  CHECK_THROWS_AS(characteristic(Parity::CE, 0, 1e9), NonConverged);
}

TEST_CASE("free-rotor modes reduce to single harmonics") {
  const MathieuMode ce2 = mode(Parity::CE, 2, 0.0);
  for (int i = 0; i < ce2.truncation; ++i) {
    if (ce2.harmonic(i) == 2)
      CHECK(ce2.coeffs[i] == doctest::Approx(1.0).epsilon(1e-13));
    else
      CHECK(std::abs(ce2.coeffs[i]) < 1e-13);
  }
  const MathieuMode se3 = mode(Parity::SE, 3, 0.0);
  for (int i = 0; i < se3.truncation; ++i) {
    if (se3.harmonic(i) == 3)
      CHECK(se3.coeffs[i] == doctest::Approx(1.0).epsilon(1e-13));
    else
      CHECK(std::abs(se3.coeffs[i]) < 1e-13);
  }
}

TEST_CASE("mode coefficients match the inverse-iteration oracle") {
  const MathieuMode m = mode(Parity::CE, 1, 5.0, 64);
  const std::vector<double> ref = oracle::mathieu_coefficients(Parity::CE, 1, 5.0, 256);
  CHECK(std::abs(m.coeffs[0] - ref[0]) < 1e-10);  // leading A1
  for (int i = 0; i < 12; ++i) CHECK(std::abs(m.coeffs[i] - ref[i]) < 1e-10);
}

TEST_CASE("mode normalization and sign conventions") {
  for (const auto& [p, n, l] : {std::tuple{Parity::CE, 0, 3.0}, {Parity::CE, 4, 10.785},
                                {Parity::SE, 1, 0.3}, {Parity::SE, 4, 9.0}}) {
    const MathieuMode m = mode(p, n, l);
    CHECK(std::abs(m.norm_squared() - 1.0) < 1e-12);
    for (int i = 0; i < m.truncation; ++i) {
      if (std::abs(m.coeffs[i]) > 1e-10) {
        CHECK(m.coeffs[i] > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("series satisfies the ODE: residual RMS below 1e-8 on a 512-point grid") {
  for (const auto& [p, n, l] : {std::tuple{Parity::CE, 3, 7.535}, {Parity::SE, 4, 10.785},
                                {Parity::CE, 0, 1.0}}) {
    const MathieuMode m = mode(p, n, l);
    double rms = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double phi = 2.0 * kPi * i / 512;
      double dd = 0.0;
      for (int j = 0; j < m.truncation; ++j) {
        const int k = m.harmonic(j);
        const double b =
            (p == Parity::CE) ? std::cos(k * phi) : std::sin(k * phi);
        dd += -static_cast<double>(k) * k * m.coeffs[j] * b;
      }
      const double res = dd + (m.characteristic - 2.0 * l * std::cos(2.0 * phi)) * m.eval(phi);
      rms += res * res;
    }
    rms = std::sqrt(rms / 512);
    CHECK(rms < 1e-8);
  }
}

TEST_CASE("eval symmetry and the shooting oracle") {
  const MathieuMode se = mode(Parity::SE, 2, 4.0);
  CHECK(se.eval(0.0) == 0.0);
  const MathieuMode ce = mode(Parity::CE, 1, 1.0);
  for (double phi : {0.3, 1.1, 2.5}) CHECK(ce.eval(phi) == doctest::Approx(ce.eval(-phi)).epsilon(1e-13));
  // periodicity
  CHECK(ce.eval(0.7) == doctest::Approx(ce.eval(0.7 + 2.0 * kPi)).epsilon(1e-12));
  // ODE shooting from the eigenvalue
  CHECK(std::abs(ce.eval(kPi / 3) - oracle::mathieu_eval_shooting(ce, kPi / 3)) < 1e-8);
  const MathieuMode se3 = mode(Parity::SE, 3, 2.0);
  CHECK(std::abs(se3.eval(1.0) - oracle::mathieu_eval_shooting(se3, 1.0)) < 1e-8);
}

TEST_CASE("orthogonality from coefficient vectors") {
  // pi-normalization: <ce_m|ce_n> = pi delta_mn, <ce_m|se_n> = 0.
  const double l = 6.0;
  for (int m = 0; m <= 4; ++m) {
    const MathieuMode cm = mode(Parity::CE, m, l);
    for (int n = 0; n <= 4; ++n) {
      const MathieuMode cn = mode(Parity::CE, n, l);
      double dot = 0.0;
      if ((m % 2) == (n % 2)) {
        for (int i = 0; i < std::min(cm.truncation, cn.truncation); ++i) {
          const double w = cm.harmonic(i) == 0 ? 2.0 : 1.0;
          dot += w * cm.coeffs[i] * cn.coeffs[i];
        }
      }
      dot *= kPi;
      CHECK(std::abs(dot - (m == n ? kPi : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("overlap_cos2 closed forms") {
  const MathieuMode ce1 = mode(Parity::CE, 1, 0.0);
  CHECK(overlap_cos2(ce1, ce1) == doctest::Approx(kPi / 2).epsilon(1e-13));
  const MathieuMode ce2 = mode(Parity::CE, 2, 0.0);
  const MathieuMode se3 = mode(Parity::SE, 3, 0.0);
  CHECK(overlap_cos2(ce2, se3) == 0.0);
  // the odd-sine diagonal overlap carries a negative boundary term
  const MathieuMode se1 = mode(Parity::SE, 1, 0.0);
  CHECK(overlap_cos2(se1, se1) == doctest::Approx(-kPi / 2).epsilon(1e-13));

  const MathieuMode ce3 = mode(Parity::CE, 3, 7.535);
  CHECK(std::abs(overlap_cos2(ce3, ce3) -
                 oracle::overlap_quadrature(ce3, ce3, OverlapDomain::Full2Pi)) < 1e-9);
  const MathieuMode se4 = mode(Parity::SE, 4, 7.535);
  for (OverlapDomain dom : {OverlapDomain::Full2Pi, OverlapDomain::HalfPi})
    CHECK(std::abs(overlap_cos2(ce3, se4, dom) -
                   oracle::overlap_quadrature(ce3, se4, dom)) < 1e-9);

  const MathieuMode ce3b = mode(Parity::CE, 3, 7.0);
  CHECK_THROWS_AS(overlap_cos2(ce3, ce3b), MismatchedBarrier);
}

TEST_CASE("coupling coefficients per region") {
  // e -> pi/2 as l -> 0 for n = 1
  CHECK(coupling_g0(1, 1e-9).e == doctest::Approx(kPi / 2).epsilon(1e-6));

  const GMinusCouplings g = coupling_gminus(2, 0.1);
  const MathieuMode ce = mode(Parity::CE, 2, 0.1);
  const MathieuMode se = mode(Parity::SE, 2, 0.1);
  const double eq = oracle::overlap_quadrature(ce, ce, OverlapDomain::Full2Pi);
  const double fq = oracle::overlap_quadrature(se, se, OverlapDomain::Full2Pi);
  CHECK(std::abs(g.r - (eq + fq)) < 1e-9);
  CHECK(std::abs(g.f1 - (eq - fq)) < 1e-9);

  // s2 vanishes identically over the full period, by parity
  for (const auto& [n, l] : {std::pair{2, 3.855}, {3, 7.535}, {5, 2.0}}) {
    CHECK(coupling_multilevel(n, l, OverlapDomain::Full2Pi).s2 == 0.0);
    CHECK(coupling_multilevel(n, l, OverlapDomain::HalfPi).s2 != 0.0);
  }
}

TEST_CASE("interlacing a_0 < b_1 <= a_1 < b_2 <= a_2 < ...") {
  for (double l : {0.25, 1.0, 5.0, 12.0, 21.5, 30.0}) {
    double prev = characteristic(Parity::CE, 0, l);
    for (int n = 1; n <= 8; ++n) {
      const double b = characteristic(Parity::SE, n, l);
      const double a = characteristic(Parity::CE, n, l);
      CHECK(prev < b);
      CHECK(b <= a + 1e-12);
      prev = a;
    }
  }
}

TEST_CASE("region classification fixtures") {
  for (const auto& [n, l] : {std::pair{2, 3.855}, {3, 7.535}, {4, 10.785}})
    CHECK(classify_region(n, l, 0.05).region == Region::GZero);
  for (const auto& [n, l] : {std::pair{2, 0.1}, {3, 0.57}, {4, 1.585}})
    CHECK(classify_region(n, l, 0.05).region == Region::GMinus);
  // exact degeneracy at l = 0 resolves toward G-
  CHECK(classify_region(2, 0.0, 1e-9).region == Region::GMinus);
  // ties (both gaps inside the threshold) break toward G-
  CHECK(classify_region(2, 0.5, 100.0).region == Region::GMinus);
  // deep split-level merge toward b_{n+1}: G+
  CHECK(classify_region(1, 20.0, 0.05).region == Region::GPlus);
  CHECK(classify_region(2, 0.1, 0.05).degeneracy_gap ==
        doctest::Approx(std::abs(characteristic(Parity::CE, 2, 0.1) -
                                 characteristic(Parity::SE, 2, 0.1)))
            .epsilon(1e-12));
}
