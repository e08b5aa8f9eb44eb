#ifndef ERI_VERIFY_HPP
#define ERI_VERIFY_HPP

// Numerical verification harness: Funk-Hecke, the Helmholtz-Kirchhoff-type
// line identity, reciprocity of the forward solver, the Dirichlet boundary
// condition, and Navier-equation residuals under finite differences.

#include <functional>
#include <sstream>
#include <string>

#include "eri/forward.hpp"
#include "eri/kernels.hpp"

namespace eri {

struct IdentityReport {
  std::string name;
  std::string parameters;
  double left_norm = 0.0;
  double right_norm = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  std::string to_line() const {
    std::ostringstream os;
    os.precision(6);
    os << (pass ? "PASS " : "FAIL ") << name << " [" << parameters << "] "
       << "left=" << left_norm << " right=" << right_norm << " abs=" << abs_error
       << " rel=" << rel_error << " tol=" << tolerance;
    return os.str();
  }
};

inline IdentityReport make_report(std::string name, std::string parameters, double left,
                                  double right, double abs_error, double tolerance) {
  IdentityReport r;
  r.name = std::move(name);
  r.parameters = std::move(parameters);
  r.left_norm = left;
  r.right_norm = right;
  r.abs_error = abs_error;
  r.rel_error = abs_error / std::max(std::fabs(right), 1e-300);
  r.tolerance = tolerance;
  r.pass = r.rel_error <= tolerance;
  return r;
}

// Funk-Hecke: J0(k|x-y|) == (1/2pi) integral of e^{ik(x-y).d} over the unit
// circle, trapezoid with M nodes (periodic). Judged on absolute error.
inline IdentityReport check_funk_hecke(double k, const Vec2& x, const Vec2& y, int M,
                                       double tol = 1e-10) {
  if (M < 8) throw std::domain_error("check_funk_hecke: M must be >= 8");
  const Vec2 diff = x - y;
  Complex acc{0.0, 0.0};
  for (int j = 0; j < M; ++j) {
    double phi = 2.0 * M_PI * j / M;
    Vec2 d{std::cos(phi), std::sin(phi)};
    acc += std::exp(Complex(0.0, k * diff.dot(d)));
  }
  acc /= (double)M;
  double right = bessel_j(0, k * diff.norm());
  double abs_err = std::abs(acc - right);
  IdentityReport r = make_report(
      "funk-hecke", "k=" + std::to_string(k) + " r=" + std::to_string(diff.norm()) +
                        " M=" + std::to_string(M),
      std::abs(acc), right, abs_err, tol);
  // spectral quadrature: judge the absolute error (J0 passes through zero)
  r.pass = abs_err <= tol;
  return r;
}

// Helmholtz-Kirchhoff-type identity on the truncated line x2 = H:
//   int [Pi1(xi,x)^T conj(Gamma(xi,y)) - Gamma(xi,x)^T conj(Pi1(xi,y))] ds
//     == 2i Im_+ Gamma(y,x),
// with the T_H normal (0,1); exact only for infinite aperture.
inline IdentityReport check_hk_identity(const ElasticMedium& m,
                                        const GeneralizedStressParams& p, const Vec2& x,
                                        const Vec2& y, double H, double A, int n_quad,
                                        double tol = 0.1, int M = 256) {
  if (!(x.y < H) || !(y.y < H))
    throw std::domain_error("check_hk_identity: points must lie strictly below T_H");
  const Vec2 normal{0.0, 1.0};
  Mat2C left;
  const double h = 2.0 * A / n_quad;
  for (int i = 0; i <= n_quad; ++i) {
    const Vec2 xi{-A + i * h, H};
    const double w = (i == 0 || i == n_quad) ? 0.5 * h : h;
    const Mat2C term = pi1(m, p, xi, x, normal).transpose().matmul(
                           gamma(m, xi, y).conj()) -
                       gamma(m, xi, x).transpose().matmul(
                           pi1(m, p, xi, y, normal).conj());
    left = left + w * term;
  }
  const Mat2C right =
      Complex(0.0, 2.0) * im_gamma_half(m, y, x, HalfCircle::plus, M);
  double abs_err = max_abs_diff(left, right);
  return make_report("hk-identity",
                     "H=" + std::to_string(H) + " A=" + std::to_string(A) +
                         " n=" + std::to_string(n_quad),
                     left.max_abs(), right.max_abs(), abs_err, tol);
}

// Reciprocity of the forward solver: u^s(x; y, p).q == u^s(y; x, q).p.
inline IdentityReport check_reciprocity(const SurfaceProfile& surface,
                                        const ElasticMedium& m,
                                        const GeneralizedStressParams& params,
                                        const BIEConfig& bie, const Vec2& x,
                                        const Vec2& y, const Vec2& pol_p,
                                        const Vec2& pol_q, double tol = 1e-3) {
  BoundaryMesh mesh = build_mesh(surface, bie);
  DensitySolver solver(assemble_system(surface, mesh, m, params, bie.eta));
  const int n = mesh.size();
  Eigen::MatrixXcd rhs(2 * n, 2);
  for (int i = 0; i < n; ++i) {
    Vec2C gy = gamma(m, mesh.points[i], y) * pol_p;
    Vec2C gx = gamma(m, mesh.points[i], x) * pol_q;
    rhs(2 * i, 0) = -2.0 * mesh.taper[i] * gy.x;
    rhs(2 * i + 1, 0) = -2.0 * mesh.taper[i] * gy.y;
    rhs(2 * i, 1) = -2.0 * mesh.taper[i] * gx.x;
    rhs(2 * i + 1, 1) = -2.0 * mesh.taper[i] * gx.y;
  }
  Eigen::MatrixXcd phi = solver.solve(rhs);
  Vec2C us_xy = evaluate_scattered(to_density(phi.col(0)), mesh, m, params, bie.eta, x);
  Vec2C us_yx = evaluate_scattered(to_density(phi.col(1)), mesh, m, params, bie.eta, y);
  Complex left = us_xy.dot(Vec2C(pol_q));
  Complex right = us_yx.dot(Vec2C(pol_p));
  return make_report("reciprocity",
                     "x=(" + std::to_string(x.x) + "," + std::to_string(x.y) + ") y=(" +
                         std::to_string(y.x) + "," + std::to_string(y.y) + ")",
                     std::abs(left), std::abs(right), std::abs(left - right), tol);
}

// Dirichlet residual |u^s + u^i| at off-node surface midpoints inside the
// taper-free window, relative to max |u^i| on the surface there.
inline IdentityReport check_boundary_condition(const SurfaceProfile& surface,
                                               const BoundaryMesh& mesh,
                                               const DensitySolution& density,
                                               const Vec2& source, int pol,
                                               const ElasticMedium& m,
                                               const GeneralizedStressParams& p,
                                               Complex eta, double tol = 1e-3,
                                               int n_check = 64) {
  const double af = mesh.s.back();
  // taper-free window from the mesh's own taper weights
  double window = af;
  for (int i = mesh.size() / 2; i < mesh.size(); ++i)
    if (mesh.taper[i] < 1.0) {
      window = std::fabs(mesh.s[i]);
      break;
    }
  const double ds = mesh.spacing();
  double max_res = 0.0, max_inc = 0.0;
  for (int c = 0; c < n_check; ++c) {
    // midpoints between nodes, spread over the window
    double t0 = -window + 2.0 * window * (c + 0.5) / n_check;
    t0 = mesh.s.front() + (std::round((t0 - mesh.s.front()) / ds) + 0.5) * ds;
    if (std::fabs(t0) > window - ds) continue;
    Vec2C us = boundary_trace(density, mesh, surface, m, p, eta, t0);
    Vec2C ui = incident_field(m, source, pol, {t0, surface.f(t0)});
    max_res = std::max(max_res, (us + ui).norm());
    max_inc = std::max(max_inc, ui.norm());
  }
  return make_report("boundary-condition",
                     "source=(" + std::to_string(source.x) + "," +
                         std::to_string(source.y) + ") pol=" + std::to_string(pol),
                     max_res, max_inc, max_res, tol);
}

// Navier residual mu Lap u + (lambda+mu) grad div u + omega^2 u under 5-point
// central finite differences (4th order), relative to |omega^2 u|.
inline IdentityReport check_navier_residual(
    const std::function<Vec2C(const Vec2&)>& field, const ElasticMedium& m,
    const Vec2& x, double step, double tol = 1e-6) {
  if (!(step > 0.0)) throw std::domain_error("check_navier_residual: step must be > 0");
  const double h = step;
  auto u = [&](double dx, double dy) { return field({x.x + dx, x.y + dy}); };
  const Vec2C u0 = u(0, 0);
  // (-u(2h) + 16 u(h) - 30 u(0) + 16 u(-h) - u(-2h)) / (12 h^2)
  auto second = [&](bool along_x, int c) {
    auto at = [&](double o) { return along_x ? u(o, 0) : u(0, o); };
    return (-at(2 * h)[c] + 16.0 * at(h)[c] - 30.0 * u0[c] + 16.0 * at(-h)[c] -
            at(-2 * h)[c]) /
           (12.0 * h * h);
  };
  auto d11 = [&](int c) { return second(true, c); };
  auto d22 = [&](int c) { return second(false, c); };
  // nested 4th-order first derivatives on the (+-h, +-2h) tensor stencil
  const double off[4] = {-2 * h, -h, h, 2 * h};
  const double cw[4] = {1.0 / (12 * h), -8.0 / (12 * h), 8.0 / (12 * h),
                        -1.0 / (12 * h)};
  auto d12 = [&](int c) {
    Complex acc{0.0, 0.0};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) acc += cw[a] * cw[b] * u(off[a], off[b])[c];
    return acc;
  };
  const double w2 = m.omega * m.omega;
  Vec2C res;
  // grad div u = (d11 u1 + d12 u2, d12 u1 + d22 u2)
  res.x = m.mu * (d11(0) + d22(0)) + (m.lambda + m.mu) * (d11(0) + d12(1)) + w2 * u0.x;
  res.y = m.mu * (d11(1) + d22(1)) + (m.lambda + m.mu) * (d12(0) + d22(1)) + w2 * u0.y;
  double scale = w2 * u0.norm();
  return make_report("navier-residual",
                     "x=(" + std::to_string(x.x) + "," + std::to_string(x.y) +
                         ") step=" + std::to_string(step),
                     res.norm(), scale, res.norm(), tol);
}

}  // namespace eri

#endif
