#include <cmath>
#include <complex>

#include "doctest.h"
#include "eri/special.hpp"

using eri::Complex;

namespace {

// Test-side oracle: straight factorial power/log series in long double,
// independent of the implementation (usable up to t ~ 20).
long double oracle_j0(long double t) {
  long double q = t * t / 4.0L, term = 1.0L, s = 1.0L;
  for (int p = 1; p < 80; ++p) {
    term *= -q / ((long double)p * p);
    s += term;
  }
  return s;
}
long double oracle_j1(long double t) {
  long double q = t * t / 4.0L, term = 1.0L, s = 1.0L;
  for (int p = 1; p < 80; ++p) {
    term *= -q / ((long double)p * (p + 1));
    s += term;
  }
  return s * t / 2.0L;
}
long double oracle_y0(long double t) {
  const long double eg = 0.5772156649015328606L;
  long double q = t * t / 4.0L, term = 1.0L, h = 0.0L, s = 0.0L;
  for (int p = 1; p < 80; ++p) {
    term *= -q / ((long double)p * p);
    h += 1.0L / p;
    s -= term * h;
  }
  return (2.0L / M_PIl) * ((std::log(t / 2.0L) + eg) * oracle_j0(t) + s);
}

double j0_first_zero() {
  // bisection on the oracle
  long double a = 2.0L, b = 3.0L;
  for (int it = 0; it < 200; ++it) {
    long double mid = 0.5L * (a + b);
    if (oracle_j0(a) * oracle_j0(mid) <= 0.0L)
      b = mid;
    else
      a = mid;
  }
  return (double)(0.5L * (a + b));
}

}  // namespace

TEST_CASE("bessel_j special values") {
  CHECK(eri::bessel_j(0, 0.0) == 1.0);
  CHECK(eri::bessel_j(1, 0.0) == 0.0);
  double z = j0_first_zero();
  CHECK(z == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(std::fabs(eri::bessel_j(0, z)) <= 1e-12);
}

TEST_CASE("bessel_j matches the series oracle across the crossover") {
  for (double t : {0.1, 0.5, 1.0, 3.0, 7.0, 12.0, 14.9, 15.1, 17.0, 20.0}) {
    CHECK(eri::bessel_j(0, t) == doctest::Approx((double)oracle_j0(t)).epsilon(5e-12));
    CHECK(eri::bessel_j(1, t) == doctest::Approx((double)oracle_j1(t)).epsilon(5e-12));
  }
}

TEST_CASE("bessel_j domain errors") {
  CHECK_THROWS_AS(eri::bessel_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(eri::bessel_j(2, 1.0), std::domain_error);
}

TEST_CASE("bessel_j large-argument asymptotic form") {
  for (double t : {50.0, 200.0, 1000.0, 1e4}) {
    for (int n : {0, 1}) {
      double lead = std::sqrt(2.0 / (M_PI * t)) * std::cos(t - n * M_PI / 2 - M_PI / 4);
      CHECK(std::fabs(eri::bessel_j(n, t) - lead) <= 2.0 / t * std::sqrt(2.0 / (M_PI * t)));
    }
  }
}

TEST_CASE("hankel1 against the series oracle") {
  Complex h = eri::hankel1(0, 1.0);
  CHECK(h.real() == doctest::Approx((double)oracle_j0(1.0L)).epsilon(1e-13));
  CHECK(h.real() == doctest::Approx(0.7651976866).epsilon(1e-9));
  CHECK(h.imag() == doctest::Approx((double)oracle_y0(1.0L)).epsilon(1e-13));
}

TEST_CASE("hankel1 derivative relation H0' = -H1") {
  for (double t : {0.7, 3.3, 18.0, 120.0}) {
    double hs = 1e-4;
    Complex d = (-eri::hankel1(0, t + 2 * hs) + 8.0 * eri::hankel1(0, t + hs) -
                 8.0 * eri::hankel1(0, t - hs) + eri::hankel1(0, t - 2 * hs)) /
                (12.0 * hs);
    Complex m1 = -eri::hankel1(1, t);
    CHECK(std::abs(d - m1) <= 1e-10 * std::max(1.0, std::abs(m1)));
  }
}

TEST_CASE("hankel1 large-argument phase") {
  double t = 200.0;
  Complex lead = std::sqrt(2.0 / (M_PI * t)) *
                 std::exp(Complex(0.0, t - M_PI / 4.0));
  CHECK(std::abs(eri::hankel1(0, t) - lead) / std::abs(lead) <= 1.0 / t);
}

TEST_CASE("hankel1 small-argument logarithmic behavior") {
  // (i/4) H0(eps) ~ (1/2pi) ln(1/eps) + i/4 - (1/2pi) ln(1/2) - C/(2pi) at k=1
  const double eg = 0.57721566490153286;
  double eps = 1e-6;
  Complex lhs = Complex(0.0, 0.25) * eri::hankel1(0, eps);
  Complex rhs(std::log(1.0 / eps) / (2.0 * M_PI) - std::log(0.5) / (2.0 * M_PI) -
                  eg / (2.0 * M_PI),
              0.25);
  CHECK(std::abs(lhs - rhs) <= 1e-10);
  CHECK_THROWS_AS(eri::hankel1(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(eri::hankel1(0, -1.0), std::domain_error);
}
