#ifndef ERI_SPECIAL_HPP
#define ERI_SPECIAL_HPP

// Bessel functions J0, J1, Y0, Y1 and the Hankel function H^(1) of orders 0, 1.
// Power/log series in long double below t = 15, Hankel asymptotic expansion
// above. Absolute error stays below 1e-12 for t <= 1e4.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "eri/vec.hpp"

namespace eri {

namespace detail {

inline constexpr long double kEulerGamma = 0.5772156649015328606065120900824024L;
inline constexpr double kSeriesAsymptoticCrossover = 15.0;

struct BesselPair {
  double j = 0.0, y = 0.0;
};

inline BesselPair series_order0(double t) {
  const long double q = (long double)t * t / 4.0L;
  long double term = 1.0L, j = 1.0L, ysum = 0.0L, harmonic = 0.0L;
  for (int p = 1; p < 64; ++p) {
    term *= -q / ((long double)p * p);
    harmonic += 1.0L / p;
    j += term;
    ysum -= term * harmonic;
    if (std::fabs((double)term) < 1e-20) break;
  }
  const long double lg = std::log((long double)t / 2.0L) + kEulerGamma;
  BesselPair out;
  out.j = (double)j;
  out.y = (double)((2.0L / M_PIl) * (lg * j + ysum));
  return out;
}

inline BesselPair series_order1(double t) {
  const long double q = (long double)t * t / 4.0L;
  long double term = 1.0L, j = 1.0L;
  for (int p = 1; p < 64; ++p) {
    term *= -q / ((long double)p * (p + 1));
    j += term;
    if (std::fabs((double)term) < 1e-20) break;
  }
  j *= (long double)t / 2.0L;
  // sum of (-1)^p (H_p + H_{p+1}) q^p / (p! (p+1)!)
  long double s = 0.0L, st = 1.0L, hp = 0.0L, hp1 = 1.0L;
  for (int p = 0; p < 64; ++p) {
    s += st * (hp + hp1);
    st *= -q / ((long double)(p + 1) * (p + 2));
    hp += 1.0L / (p + 1);
    hp1 += 1.0L / (p + 2);
    if (std::fabs((double)st) * (p + 4) < 1e-20) break;
  }
  const long double lg = std::log((long double)t / 2.0L) + kEulerGamma;
  BesselPair out;
  out.j = (double)j;
  out.y = (double)((2.0L / M_PIl) * lg * j - 2.0L / (M_PIl * t) -
                   (long double)t / (2.0L * M_PIl) * s);
  return out;
}

// Hankel asymptotic series P_n + iQ_n, truncated at the smallest term.
inline BesselPair asymptotic(int order, double t) {
  const long double mu = 4.0L * order * order;
  long double P = 0.0L, Q = 0.0L;
  long double a = 1.0L, prev = 1e300L;
  for (int k = 0; k < 40; ++k) {
    if (std::fabs((double)a) > prev) break;
    prev = std::fabs((double)a);
    if (k % 2 == 0)
      P += ((k / 2) % 2 == 0 ? a : -a);
    else
      Q += (((k - 1) / 2) % 2 == 0 ? a : -a);
    a *= (mu - (long double)(2 * k + 1) * (2 * k + 1)) / ((long double)(k + 1) * 8.0L * t);
    if (std::fabs((double)a) < 1e-20) {
      if (k % 2 == 0)
        Q += (((k) / 2) % 2 == 0 ? a : -a);
      break;
    }
  }
  const long double chi = (long double)t - order * M_PIl / 2.0L - M_PIl / 4.0L;
  const long double f = std::sqrt(2.0L / (M_PIl * t));
  BesselPair out;
  out.j = (double)(f * (P * std::cos(chi) - Q * std::sin(chi)));
  out.y = (double)(f * (P * std::sin(chi) + Q * std::cos(chi)));
  return out;
}

inline BesselPair bessel_jy(int order, double t) {
  if (order != 0 && order != 1) throw std::domain_error("bessel order must be 0 or 1");
  if (t < kSeriesAsymptoticCrossover)
    return order == 0 ? series_order0(t) : series_order1(t);
  return asymptotic(order, t);
}

}  // namespace detail

inline double bessel_j(int order, double t) {
  if (order != 0 && order != 1) throw std::domain_error("bessel order must be 0 or 1");
  if (t < 0.0) throw std::domain_error("bessel_j: negative argument");
  if (t == 0.0) return order == 0 ? 1.0 : 0.0;
  return detail::bessel_jy(order, t).j;
}

inline double bessel_y(int order, double t) {
  if (t <= 0.0) throw std::domain_error("bessel_y: argument must be positive");
  return detail::bessel_jy(order, t).y;
}

// H^(1)_order(t) = J_order(t) + i Y_order(t)
inline Complex hankel1(int order, double t) {
  if (t <= 0.0) throw std::domain_error("hankel1: argument must be positive");
  const auto jy = detail::bessel_jy(order, t);
  return {jy.j, jy.y};
}

}  // namespace eri

#endif
