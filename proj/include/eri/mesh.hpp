#ifndef ERI_MESH_HPP
#define ERI_MESH_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "eri/surface.hpp"
#include "eri/vec.hpp"

namespace eri {

struct BIEConfig {
  Complex eta{15.0, 0.0};  // coupling parameter, Re(eta) > 0
  int node_count = 2048;
  double truncation_halfwidth = 30.0;  // A_f
  double taper_fraction = 0.2;

  void validate() const {
    if (!(eta.real() > 0.0)) throw std::domain_error("BIEConfig: Re(eta) must be > 0");
    if (node_count < 16) throw std::domain_error("BIEConfig: node_count must be >= 16");
    if (!(truncation_halfwidth > 0.0))
      throw std::domain_error("BIEConfig: truncation halfwidth must be > 0");
    if (taper_fraction < 0.0 || taper_fraction >= 0.5)
      throw std::domain_error("BIEConfig: taper_fraction must be in [0, 0.5)");
  }
};

// Uniform parametric mesh of the truncated surface.
struct BoundaryMesh {
  std::vector<double> s;        // parameters, uniform in [-A_f, A_f]
  std::vector<Vec2> points;     // (s_i, f(s_i))
  std::vector<Vec2> normals;    // unit, second component > 0
  std::vector<double> jacobians;  // sqrt(1 + f'(s_i)^2)
  std::vector<double> taper;    // cosine taper weights for the right-hand side

  int size() const { return (int)s.size(); }
  double spacing() const { return s[1] - s[0]; }
  // trapezoid weight in parameter
  double weight(int i) const {
    double ds = spacing();
    return (i == 0 || i == size() - 1) ? 0.5 * ds : ds;
  }
};

inline BoundaryMesh build_mesh(const SurfaceProfile& surface, const BIEConfig& config) {
  config.validate();
  const int n = config.node_count;
  const double af = config.truncation_halfwidth;
  BoundaryMesh mesh;
  mesh.s.resize(n);
  mesh.points.resize(n);
  mesh.normals.resize(n);
  mesh.jacobians.resize(n);
  mesh.taper.resize(n);
  const double taper_len = 2.0 * af * config.taper_fraction;
  for (int i = 0; i < n; ++i) {
    double si = -af + 2.0 * af * i / (n - 1);
    double fp = surface.f_prime(si);
    mesh.s[i] = si;
    mesh.points[i] = {si, surface.f(si)};
    mesh.normals[i] = Vec2{-fp, 1.0}.normalized();
    mesh.jacobians[i] = std::sqrt(1.0 + fp * fp);
    double w = 1.0;
    if (taper_len > 0.0 && std::fabs(si) > af - taper_len) {
      double xi = (std::fabs(si) - (af - taper_len)) / taper_len;
      w = 0.5 * (1.0 + std::cos(M_PI * xi));
    }
    mesh.taper[i] = w;
  }
  return mesh;
}

}  // namespace eri

#endif
