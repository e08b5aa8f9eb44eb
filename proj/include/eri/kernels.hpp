#ifndef ERI_KERNELS_HPP
#define ERI_KERNELS_HPP

// Closed-form kernels of 2D elastodynamics: the Helmholtz fundamental
// solution, the Navier Green's tensor and its P/S split, the analytic
// gradient, generalized-stress kernels, and half-circle quadratures for
// the imaginary part of the Green's tensor.

#include <array>
#include <cmath>
#include <stdexcept>

#include "eri/medium.hpp"
#include "eri/special.hpp"
#include "eri/vec.hpp"

namespace eri {

// evaluations below this separation raise; the log singularity must never
// be hit by rounding
inline constexpr double kMinSeparation = 1e-12;

inline double checked_distance(const Vec2& x, const Vec2& y) {
  double r = (x - y).norm();
  if (r < kMinSeparation)
    throw std::domain_error("kernel evaluated at (nearly) coincident points");
  return r;
}

// fundamental solution of the 2D Helmholtz equation, (i/4) H0(k|x-y|)
inline Complex helmholtz_phi(double k, const Vec2& x, const Vec2& y) {
  double r = checked_distance(x, y);
  return Complex(0.0, 0.25) * hankel1(0, k * r);
}

namespace detail {

// first three radial derivatives of (i/4) H0(k r)
struct PhiDerivs {
  Complex d1, d2, d3;
};

inline PhiDerivs phi_radial_derivs(double k, double r) {
  const Complex h0 = hankel1(0, k * r);
  const Complex h1 = hankel1(1, k * r);
  const Complex i4(0.0, 0.25);
  PhiDerivs d;
  d.d1 = -i4 * k * h1;
  d.d2 = -i4 * k * k * h0 + i4 * k * h1 / r;
  d.d3 = i4 * k * k * k * h1 + i4 * k * k * h0 / r - 2.0 * i4 * k * h1 / (r * r);
  return d;
}

// Hessian of a radial function: g'' rr^T + (g'/r)(I - rr^T)
inline Mat2C radial_hessian(Complex g1, Complex g2, double r, const Vec2& rhat) {
  Mat2C rr = Mat2C::outer(rhat, rhat);
  return g2 * rr + (g1 / r) * (Mat2C::identity() - rr);
}

}  // namespace detail

// Free-space Green's tensor of the Navier equation, from the four-term
// Hankel decomposition.
inline Mat2C gamma(const ElasticMedium& m, const Vec2& x, const Vec2& y) {
  const double r = checked_distance(x, y);
  const Vec2 rhat = (x - y) / r;
  const double w2 = m.omega * m.omega;
  const Complex i1(0.0, 1.0);
  const Complex h0p = hankel1(0, m.kp * r), h0s = hankel1(0, m.ks * r);
  const Complex h1p = hankel1(1, m.kp * r), h1s = hankel1(1, m.ks * r);
  const Complex coef_rr = 0.25 * i1 / w2 * (m.kp * m.kp * h0p - m.ks * m.ks * h0s) -
                          0.5 * i1 / (w2 * r) * (m.kp * h1p - m.ks * h1s);
  const Complex coef_id = 0.25 * i1 / (w2 * r) * (m.kp * h1p - m.ks * h1s) +
                          0.25 * i1 / m.mu * h0s;
  return coef_id * Mat2C::identity() + coef_rr * Mat2C::outer(rhat, rhat);
}

// (Gamma_p, Gamma_s) with Gamma_p + Gamma_s == gamma
inline std::pair<Mat2C, Mat2C> gamma_split(const ElasticMedium& m, const Vec2& x,
                                           const Vec2& y) {
  const double r = checked_distance(x, y);
  const Vec2 rhat = (x - y) / r;
  const double w2 = m.omega * m.omega;
  const auto dp = detail::phi_radial_derivs(m.kp, r);
  const auto ds = detail::phi_radial_derivs(m.ks, r);
  const Mat2C hess_p = detail::radial_hessian(dp.d1, dp.d2, r, rhat);
  const Mat2C hess_s = detail::radial_hessian(ds.d1, ds.d2, r, rhat);
  const Mat2C gp = (-1.0 / w2) * hess_p;
  const Mat2C gs =
      (helmholtz_phi(m.ks, x, y) / m.mu) * Mat2C::identity() + (1.0 / w2) * hess_s;
  return {gp, gs};
}

// G[l](j,k) = d gamma_jk / d x_l
inline std::array<Mat2C, 2> gamma_gradient(const ElasticMedium& m, const Vec2& x,
                                           const Vec2& y) {
  const double r = checked_distance(x, y);
  const Vec2 rhat = (x - y) / r;
  const double w2 = m.omega * m.omega;
  const auto dp = detail::phi_radial_derivs(m.kp, r);
  const auto ds = detail::phi_radial_derivs(m.ks, r);
  const Complex a = ds.d3 - dp.d3;
  const Complex b = ((ds.d2 - dp.d2) - (ds.d1 - dp.d1) / r) / r;
  std::array<Mat2C, 2> out;
  const double rh[2] = {rhat.x, rhat.y};
  for (int l = 0; l < 2; ++l)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Complex third = b * ((l == j ? rh[k] : 0.0) + (l == k ? rh[j] : 0.0) +
                             (j == k ? rh[l] : 0.0)) +
                        (a - 3.0 * b) * rh[l] * rh[j] * rh[k];
        Complex val = third / w2;
        if (j == k) val += ds.d1 * rh[l] / m.mu;
        out[l].at(j, k) = val;
      }
  return out;
}

// generalized stress P u = (mu + mu_t) du/dn + lambda_t n div u
//                          - mu_t n_perp divperp u,  divperp = (-d2, d1)
inline Vec2C stress_apply(const GeneralizedStressParams& p, const ElasticMedium& m,
                          const Jac2C& jac, const Vec2& normal) {
  if (std::fabs(normal.norm() - 1.0) > 1e-12)
    throw std::domain_error("stress_apply: normal must be a unit vector");
  const Vec2C dudn = jac * normal;
  const Complex div = jac(0, 0) + jac(1, 1);
  const Complex divperp = jac(1, 0) - jac(0, 1);
  const Vec2 nperp = normal.perp();
  return (m.mu + p.mu_t) * dudn + (p.lambda_t * div) * Vec2C(normal) -
         (p.mu_t * divperp) * Vec2C(nperp);
}

// Pi1(x,y): column k is P^(x) applied to gamma(.,y) e_k, normal given at x
inline Mat2C pi1(const ElasticMedium& m, const GeneralizedStressParams& p, const Vec2& x,
                 const Vec2& y, const Vec2& normal_at_x) {
  const auto grad = gamma_gradient(m, x, y);
  Mat2C out;
  for (int k = 0; k < 2; ++k) {
    Jac2C jac;
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) jac.at(j, l) = grad[l](j, k);
    Vec2C col = stress_apply(p, m, jac, normal_at_x);
    out.at(0, k) = col.x;
    out.at(1, k) = col.y;
  }
  return out;
}

// Pi2(x,y): P^(y) applied to the rows of gamma(x,.); equals pi1(y,x,n)^T
inline Mat2C pi2(const ElasticMedium& m, const GeneralizedStressParams& p, const Vec2& x,
                 const Vec2& y, const Vec2& normal_at_y) {
  return pi1(m, p, y, x, normal_at_y).transpose();
}

enum class HalfCircle { plus, minus, full };

// Plane-wave quadrature for Im Gamma over a half or full circle of
// directions; trapezoid with M+1 nodes per half, halved endpoint weights.
// The "full" variant converges spectrally to Im(gamma); the half variants
// are complex conjugates of each other.
inline Mat2C im_gamma_half(const ElasticMedium& m, const Vec2& x, const Vec2& y,
                           HalfCircle part, int M) {
  if (M < 8) throw std::domain_error("im_gamma_half: M must be >= 8");
  if (part == HalfCircle::full) {
    return im_gamma_half(m, x, y, HalfCircle::plus, M) +
           im_gamma_half(m, x, y, HalfCircle::minus, M);
  }
  const double phi0 = (part == HalfCircle::plus) ? 0.0 : -M_PI;
  const double dphi = M_PI / M;
  const Vec2 diff = x - y;
  Mat2C acc;
  for (int k = 0; k <= M; ++k) {
    const double phi = phi0 + k * dphi;
    const double w = (k == 0 || k == M) ? 0.5 * dphi : dphi;
    const Vec2 d{std::cos(phi), std::sin(phi)};
    const Mat2C dd = Mat2C::outer(d, d);
    const Complex ep = std::exp(Complex(0.0, m.kp * diff.dot(d)));
    const Complex es = std::exp(Complex(0.0, m.ks * diff.dot(d)));
    acc = acc + w * (ep / (m.lambda + 2.0 * m.mu) * dd +
                     es / m.mu * (Mat2C::identity() - dd));
  }
  return acc * Complex(1.0 / (8.0 * M_PI), 0.0);
}

// coincidence value of Im Gamma: (1/8)(1/(lambda+2mu) + 1/mu) I
inline Mat2C im_gamma_coincident(const ElasticMedium& m) {
  double c = 0.125 * (1.0 / (m.lambda + 2.0 * m.mu) + 1.0 / m.mu);
  return c * Mat2C::identity();
}

}  // namespace eri

#endif
