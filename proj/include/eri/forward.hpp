#ifndef ERI_FORWARD_HPP
#define ERI_FORWARD_HPP

// Truncated Nystrom solver for the combined-layer boundary integral
// equation (I + D - i eta S) phi = -2 g, and Cauchy-data generation on the
// measurement line for point-source incidence.

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eri/kernels.hpp"
#include "eri/mesh.hpp"
#include "eri/parallel.hpp"
#include "eri/surface.hpp"

namespace eri {

struct MeasurementGeometry {
  double H = 2.0;   // measurement line height
  double A = 20.0;  // half-aperture
  int N = 100;      // 2N+1 points

  int count() const { return 2 * N + 1; }
  double spacing() const { return A / N; }
  Vec2 point(int i) const { return {-A + i * spacing(), H}; }

  void validate() const {
    if (!(A > 0.0) || N < 1) throw std::domain_error("MeasurementGeometry: A > 0, N >= 1");
  }
};

struct NoiseDescriptor {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

// Scattered displacement and generalized-stress traces indexed by
// (source k, receiver i, polarization j).
struct CauchyDataSet {
  ElasticMedium medium{1.0, 1.0, 15.0};
  GeneralizedStressParams params = GeneralizedStressParams::pseudo_stress(medium);
  MeasurementGeometry geometry;
  std::string surface_name;
  NoiseDescriptor noise;

  std::vector<Vec2C> us;   // [(k*(2N+1)+i)*2 + j]
  std::vector<Vec2C> pus;

  int count() const { return geometry.count(); }
  std::size_t index(int k, int i, int j) const {
    return ((std::size_t)k * count() + i) * 2 + j;
  }
  Vec2C& us_at(int k, int i, int j) { return us[index(k, i, j)]; }
  const Vec2C& us_at(int k, int i, int j) const { return us[index(k, i, j)]; }
  Vec2C& pus_at(int k, int i, int j) { return pus[index(k, i, j)]; }
  const Vec2C& pus_at(int k, int i, int j) const { return pus[index(k, i, j)]; }

  void allocate() {
    std::size_t n = (std::size_t)count() * count() * 2;
    us.assign(n, Vec2C{});
    pus.assign(n, Vec2C{});
  }
};

// point-source incident field Gamma(x,y) e_j and its generalized stress
inline Vec2C incident_field(const ElasticMedium& m, const Vec2& y, int j, const Vec2& x) {
  return gamma(m, x, y).col(j);
}
inline Vec2C incident_stress(const ElasticMedium& m, const GeneralizedStressParams& p,
                             const Vec2& y, int j, const Vec2& x, const Vec2& normal) {
  return pi1(m, p, x, y, normal).col(j);
}

namespace detail {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        double dx = p1 / dp;
        xi -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      x[i] = xi;
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }
};

inline const GaussLegendre& gl12() {
  static const GaussLegendre gl(12);
  return gl;
}

// combined-layer kernel block 2 [Pi2(x, y(t)) - i eta Gamma(x, y(t))] sqrt(1+f'^2)
inline Mat2C combined_kernel(const ElasticMedium& m, const GeneralizedStressParams& p,
                             Complex eta, const Vec2& x, const SurfaceProfile& surf,
                             double t) {
  double fp = surf.f_prime(t);
  Vec2 y{t, surf.f(t)};
  Vec2 ny = Vec2{-fp, 1.0}.normalized();
  double jac = std::sqrt(1.0 + fp * fp);
  return 2.0 * jac * (pi2(m, p, x, y, ny) - Complex(0.0, 1.0) * eta * gamma(m, x, y));
}

// evaluation kernel [Pi2 - i eta Gamma] at a mesh node (for field evaluation)
inline Mat2C eval_kernel(const ElasticMedium& m, const GeneralizedStressParams& p,
                         Complex eta, const Vec2& x, const Vec2& y, const Vec2& ny) {
  return pi2(m, p, x, y, ny) - Complex(0.0, 1.0) * eta * gamma(m, x, y);
}

template <typename F>
inline Mat2C panel_gl(const F& f, double a, double b) {
  const auto& gl = gl12();
  Mat2C acc;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t q = 0; q < gl.x.size(); ++q)
    acc = acc + (half * gl.w[q]) * f(mid + half * gl.x[q]);
  return acc;
}

// integrate f over [a,b] with an integrable singularity at endpoint `sing`
// (log-type); geometric grading toward it, stopping above the kernel's
// minimum separation
template <typename F>
inline Mat2C graded_gl(const F& f, double a, double b, double sing) {
  constexpr double ratio = 0.15;
  Mat2C acc;
  // Stop the grading at an absolute distance from the singularity: closer in,
  // cancellation noise in the kernel (~1e-19/r^3) overtakes the ~R*log(1/R)
  // loss from skipping the sliver; both are ~2e-5 at R = 5e-7.
  constexpr double floor_len = 5e-7;
  if (std::fabs(sing - a) < std::fabs(sing - b)) {
    double hi = b;
    while (hi - a > floor_len) {
      double lo = a + (hi - a) * ratio;
      acc = acc + panel_gl(f, lo, hi);
      hi = lo;
    }
  } else {
    double lo = a;
    while (b - lo > floor_len) {
      double hi = b - (b - lo) * ratio;
      acc = acc + panel_gl(f, lo, hi);
      lo = hi;
    }
  }
  return acc;
}

}  // namespace detail

// Nystrom matrix for I + D - i eta S. Off-diagonal blocks use the trapezoid
// rule; blocks within `near_band` of the diagonal use product integration of
// the kernel against the piecewise-linear nodal basis, with panels graded
// toward the (log-singular) target node.
inline Eigen::MatrixXcd assemble_system(const SurfaceProfile& surface,
                                        const BoundaryMesh& mesh, const ElasticMedium& m,
                                        const GeneralizedStressParams& p, Complex eta,
                                        int near_band = 2) {
  const int n = mesh.size();
  const double ds = mesh.spacing();
  Eigen::MatrixXcd A(2 * n, 2 * n);
  parallel_for(n, [&](int i) {
    const Vec2 x = mesh.points[i];
    for (int j = 0; j < n; ++j) {
      Mat2C block;
      if (std::abs(i - j) > near_band) {
        block = mesh.weight(j) *
                detail::combined_kernel(m, p, eta, x, surface, mesh.s[j]);
      } else {
        // product integration against the hat function centered at s_j
        const double sj = mesh.s[j];
        auto f = [&](double t) {
          double hat = 1.0 - std::fabs(t - sj) / ds;
          return hat * detail::combined_kernel(m, p, eta, x, surface, t);
        };
        const double si = mesh.s[i];
        for (double a : {sj - ds, sj}) {
          double b = a + ds;
          if (a < mesh.s.front() - 1e-12 || b > mesh.s.back() + 1e-12) continue;
          if (si > a + 1e-12 && si < b - 1e-12) {
            block = block + detail::graded_gl(f, a, si, si) +
                    detail::graded_gl(f, si, b, si);
          } else if (std::fabs(si - a) < 1e-12 || std::fabs(si - b) < 1e-12) {
            block = block + detail::graded_gl(f, a, b, si);
          } else {
            block = block + detail::panel_gl(f, a, b);
          }
        }
      }
      A(2 * i, 2 * j) = block(0, 0);
      A(2 * i, 2 * j + 1) = block(0, 1);
      A(2 * i + 1, 2 * j) = block(1, 0);
      A(2 * i + 1, 2 * j + 1) = block(1, 1);
    }
    A(2 * i, 2 * i) += 1.0;
    A(2 * i + 1, 2 * i + 1) += 1.0;
  });
  return A;
}

// Factorization wrapper reused across right-hand sides.
class DensitySolver {
 public:
  explicit DensitySolver(Eigen::MatrixXcd matrix)
      : matrix_(std::move(matrix)), lu_(matrix_) {}

  // Solves M phi = rhs for each column; checks the relative residual.
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs, double tol = 1e-11) const {
    Eigen::MatrixXcd phi = lu_.solve(rhs);
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
      double bnorm = rhs.col(c).norm();
      if (bnorm == 0.0) continue;
      double res = (matrix_ * phi.col(c) - rhs.col(c)).norm() / bnorm;
      // written as !(res <= tol) so a NaN residual also throws
      if (!(res <= tol))
        throw std::runtime_error("solve_densities: residual " + std::to_string(res) +
                                 " exceeds tolerance (matrix may be near-singular)");
    }
    return phi;
  }

  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

// density at quadrature nodes for one right-hand side
using DensitySolution = std::vector<Vec2C>;

inline DensitySolution to_density(const Eigen::VectorXcd& col) {
  DensitySolution d(col.size() / 2);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = {col(2 * i), col(2 * i + 1)};
  return d;
}

// u^s(x) from the combined-layer representation (x away from the surface)
inline Vec2C evaluate_scattered(const DensitySolution& density, const BoundaryMesh& mesh,
                                const ElasticMedium& m, const GeneralizedStressParams& p,
                                Complex eta, const Vec2& x) {
  Vec2C acc;
  for (int i = 0; i < mesh.size(); ++i) {
    Mat2C k = detail::eval_kernel(m, p, eta, x, mesh.points[i], mesh.normals[i]);
    acc = acc + (mesh.jacobians[i] * mesh.weight(i)) * (k * density[i]);
  }
  return acc;
}

// 4th-order central-difference Jacobian of u^s, then the generalized stress
inline Vec2C evaluate_scattered_stress(const DensitySolution& density,
                                       const BoundaryMesh& mesh, const ElasticMedium& m,
                                       const GeneralizedStressParams& p, Complex eta,
                                       const Vec2& x, const Vec2& normal,
                                       double step = 0.0) {
  const double h = step > 0.0 ? step : 1e-4 / m.ks;
  Jac2C jac;
  for (int l = 0; l < 2; ++l) {
    Vec2 e = l == 0 ? Vec2{h, 0.0} : Vec2{0.0, h};
    Vec2C up2 = evaluate_scattered(density, mesh, m, p, eta, x + 2.0 * e);
    Vec2C up1 = evaluate_scattered(density, mesh, m, p, eta, x + e);
    Vec2C um1 = evaluate_scattered(density, mesh, m, p, eta, x - e);
    Vec2C um2 = evaluate_scattered(density, mesh, m, p, eta, x - 2.0 * e);
    Vec2C d = (1.0 / (12.0 * h)) *
              (Complex(-1.0) * up2 + 8.0 * up1 - 8.0 * um1 + um2);
    jac.at(0, l) = d.x;
    jac.at(1, l) = d.y;
  }
  return stress_apply(p, m, jac, normal);
}

// Boundary limit of the combined-layer potential from above at parameter t0
// (which need not be a node): u^s|_S = phi/2 + PV integral. The density is
// hat-interpolated between nodes; the log singularity at t0 gets the same
// graded product integration as assembly.
inline Vec2C boundary_trace(const DensitySolution& density, const BoundaryMesh& mesh,
                            const SurfaceProfile& surface, const ElasticMedium& m,
                            const GeneralizedStressParams& p, Complex eta, double t0,
                            int near_band = 2) {
  const int n = mesh.size();
  const double ds = mesh.spacing();
  const Vec2 x{t0, surface.f(t0)};
  Vec2C acc;
  for (int j = 0; j < n; ++j) {
    Mat2C block;
    const double sj = mesh.s[j];
    if (std::fabs(sj - t0) > near_band * ds) {
      block = mesh.weight(j) * detail::combined_kernel(m, p, eta, x, surface, sj);
    } else {
      auto f = [&](double t) {
        double hat = 1.0 - std::fabs(t - sj) / ds;
        return hat * detail::combined_kernel(m, p, eta, x, surface, t);
      };
      for (double a : {sj - ds, sj}) {
        double b = a + ds;
        if (a < mesh.s.front() - 1e-12 || b > mesh.s.back() + 1e-12) continue;
        if (t0 > a + 1e-12 && t0 < b - 1e-12) {
          block = block + detail::graded_gl(f, a, t0, t0) +
                  detail::graded_gl(f, t0, b, t0);
        } else if (std::fabs(t0 - a) < 1e-9 * ds || std::fabs(t0 - b) < 1e-9 * ds) {
          block = block + detail::graded_gl(f, a, b, t0);
        } else {
          block = block + detail::panel_gl(f, a, b);
        }
      }
    }
    acc = acc + 0.5 * (block * density[j]);
  }
  // linear interpolation of the density at t0 for the jump term
  int i0 = (int)std::floor((t0 - mesh.s.front()) / ds);
  i0 = std::max(0, std::min(n - 2, i0));
  double w = (t0 - mesh.s[i0]) / ds;
  Vec2C phi0 = (1.0 - w) * density[i0] + w * density[i0 + 1];
  return acc + 0.5 * phi0;
}

namespace detail {

// deterministic standard-normal pairs (Box-Muller over mt19937_64)
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : rng_(seed) {}
  std::pair<double, double> pair() {
    double u1 = next_uniform(), u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

 private:
  double next_uniform() {
    for (;;) {
      double u = (rng_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }
  std::mt19937_64 rng_;
};

}  // namespace detail

// Additive Gaussian noise scaled per (source, polarization) slice by the
// maximum modulus over receivers and components.
inline CauchyDataSet add_noise(const CauchyDataSet& dataset, double delta,
                               std::uint64_t seed) {
  if (delta < 0.0) throw std::domain_error("add_noise: delta must be >= 0");
  CauchyDataSet out = dataset;
  out.noise = {delta, seed};
  if (delta == 0.0) return out;
  detail::NormalSource rng(seed);
  const int n = dataset.count();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < 2; ++j) {
      double max_us = 0.0, max_pus = 0.0;
      for (int i = 0; i < n; ++i) {
        const Vec2C& u = dataset.us_at(k, i, j);
        const Vec2C& t = dataset.pus_at(k, i, j);
        max_us = std::max({max_us, std::abs(u.x), std::abs(u.y)});
        max_pus = std::max({max_pus, std::abs(t.x), std::abs(t.y)});
      }
      for (int i = 0; i < n; ++i) {
        Vec2C& u = out.us_at(k, i, j);
        Vec2C& t = out.pus_at(k, i, j);
        for (Complex* c : {&u.x, &u.y}) {
          auto [z1, z2] = rng.pair();
          *c += delta * Complex(z1, z2) * max_us;
        }
        for (Complex* c : {&t.x, &t.y}) {
          auto [z1, z2] = rng.pair();
          *c += delta * Complex(z1, z2) * max_pus;
        }
      }
    }
  return out;
}

// Full pipeline: one factorization, all (source, polarization) right-hand
// sides, Cauchy data at every receiver.
inline CauchyDataSet generate_dataset(const SurfaceProfile& surface,
                                      const MeasurementGeometry& geometry,
                                      const ElasticMedium& m,
                                      const GeneralizedStressParams& p,
                                      const BIEConfig& bie) {
  geometry.validate();
  bie.validate();
  const double wl = m.shear_wavelength();
  if (geometry.H - surface.sup(bie.truncation_halfwidth) < 0.1 * wl)
    throw std::domain_error("generate_dataset: sources too close to the surface");

  BoundaryMesh mesh = build_mesh(surface, bie);
  Eigen::MatrixXcd sys = assemble_system(surface, mesh, m, p, bie.eta);
  DensitySolver solver(std::move(sys));

  const int nsrc = geometry.count();
  const int n = mesh.size();

  // The solved boundary trace equals rhs/2, so Dirichlet data g = -u^i|_S
  // (tapered) enters as rhs = 2 g = -2 u^i.
  Eigen::MatrixXcd rhs(2 * n, 2 * nsrc);
  parallel_for(nsrc, [&](int k) {
    const Vec2 src = geometry.point(k);
    for (int i = 0; i < n; ++i) {
      Mat2C g = gamma(m, mesh.points[i], src);
      for (int j = 0; j < 2; ++j) {
        Vec2C v = -2.0 * mesh.taper[i] * g.col(j);
        rhs(2 * i, 2 * k + j) = v.x;
        rhs(2 * i + 1, 2 * k + j) = v.y;
      }
    }
  });
  Eigen::MatrixXcd phi = solver.solve(rhs);

  CauchyDataSet data;
  data.medium = m;
  data.params = p;
  data.geometry = geometry;
  data.surface_name = surface.name;
  data.allocate();

  const double fd_step = 1e-4 / m.ks;
  const Vec2 line_normal{0.0, 1.0};
  // per receiver: evaluation rows at the center and the 8 FD stencil points,
  // contracted against all densities at once
  parallel_for(nsrc, [&](int i) {
    const Vec2 xr = geometry.point(i);
    auto eval_rows = [&](const Vec2& x) {
      Eigen::MatrixXcd rows(2, 2 * n);
      for (int l = 0; l < n; ++l) {
        Mat2C kb = detail::eval_kernel(m, p, bie.eta, x, mesh.points[l], mesh.normals[l]);
        double w = mesh.jacobians[l] * mesh.weight(l);
        rows(0, 2 * l) = w * kb(0, 0);
        rows(0, 2 * l + 1) = w * kb(0, 1);
        rows(1, 2 * l) = w * kb(1, 0);
        rows(1, 2 * l + 1) = w * kb(1, 1);
      }
      return Eigen::MatrixXcd(rows * phi);  // 2 x 2 nsrc
    };
    Eigen::MatrixXcd center = eval_rows(xr);
    std::array<Eigen::MatrixXcd, 2> ddx;  // derivative values per direction
    for (int l = 0; l < 2; ++l) {
      Vec2 e = l == 0 ? Vec2{fd_step, 0.0} : Vec2{0.0, fd_step};
      Eigen::MatrixXcd p2 = eval_rows(xr + 2.0 * e);
      Eigen::MatrixXcd p1 = eval_rows(xr + e);
      Eigen::MatrixXcd m1 = eval_rows(xr - e);
      Eigen::MatrixXcd m2 = eval_rows(xr - 2.0 * e);
      ddx[l] = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * fd_step);
    }
    for (int k = 0; k < nsrc; ++k)
      for (int j = 0; j < 2; ++j) {
        int c = 2 * k + j;
        data.us_at(k, i, j) = {center(0, c), center(1, c)};
        Jac2C jac(ddx[0](0, c), ddx[1](0, c), ddx[0](1, c), ddx[1](1, c));
        data.pus_at(k, i, j) = stress_apply(p, m, jac, line_normal);
      }
  });
  return data;
}

}  // namespace eri

#endif
