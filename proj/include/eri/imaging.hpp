#ifndef ERI_IMAGING_HPP
#define ERI_IMAGING_HPP

// Direct imaging function for rough-surface reconstruction from near-field
// Cauchy data, grid sweeps, and ridge extraction.

#include <stdexcept>
#include <string>
#include <vector>

#include "eri/forward.hpp"
#include "eri/kernels.hpp"
#include "eri/parallel.hpp"

namespace eri {

struct SamplingGrid {
  double x1_min = -6.0, x1_max = 6.0;
  double x2_min = 0.0, x2_max = 1.2;
  int nx1 = 241, nx2 = 61;

  void validate() const {
    if (nx1 < 2 || nx2 < 2) throw std::domain_error("SamplingGrid: nx1, nx2 >= 2");
    if (!(x1_min < x1_max) || !(x2_min < x2_max))
      throw std::domain_error("SamplingGrid: empty range");
  }
  double x1(int i) const { return x1_min + (x1_max - x1_min) * i / (nx1 - 1); }
  double x2(int j) const { return x2_min + (x2_max - x2_min) * j / (nx2 - 1); }
};

struct ImagingConfig {
  int M = 256;  // half-circle quadrature nodes
  bool normalize = false;

  void validate() const {
    if (M < 8) throw std::domain_error("ImagingConfig: M must be >= 8");
  }
};

// Real nonnegative indicator values over the sampling grid; value(i,j) is at
// (grid.x1(i), grid.x2(j)).
struct ImageGrid {
  SamplingGrid grid;
  std::vector<double> values;  // [i * nx2 + j]
  std::string dataset_id;

  double value(int i, int j) const { return values[(std::size_t)i * grid.nx2 + j]; }
  double& value(int i, int j) { return values[(std::size_t)i * grid.nx2 + j]; }
  double max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
};

namespace detail {

// Receiver-side kernel vectors conj(Gamma(x_i, z) e_j) and
// conj(Pi1(x_i, z) e_j), precomputed once per sampling point and reused
// across all sources.
struct ReceiverKernels {
  std::vector<Vec2C> g[2], pg[2];  // per polarization j
};

inline ReceiverKernels receiver_kernels(const ElasticMedium& m,
                                        const GeneralizedStressParams& p,
                                        const MeasurementGeometry& geo, const Vec2& z) {
  const Vec2 line_normal{0.0, 1.0};
  const int n = geo.count();
  ReceiverKernels rk;
  for (int j = 0; j < 2; ++j) {
    rk.g[j].resize(n);
    rk.pg[j].resize(n);
  }
  for (int i = 0; i < n; ++i) {
    const Vec2 xi = geo.point(i);
    const Mat2C gm = gamma(m, xi, z).conj();
    const Mat2C pm = pi1(m, p, xi, z, line_normal).conj();
    for (int j = 0; j < 2; ++j) {
      rk.g[j][i] = gm.col(j);
      rk.pg[j][i] = pm.col(j);
    }
  }
  return rk;
}

}  // namespace detail

// I(z): squared modulus of the aperture correlation of the Cauchy data with
// the point-spread kernels at z, minus the background term 2i e_j^T
// Im_- Gamma(z, y_k) e_j, summed over sources and polarizations with uniform
// line weight h.
inline double indicator_at(const CauchyDataSet& data, const ElasticMedium& m,
                           const GeneralizedStressParams& p, const Vec2& z,
                           const ImagingConfig& config) {
  config.validate();
  if (!(z.y < data.geometry.H))
    throw std::domain_error("indicator_at: z must lie below the measurement line");
  const int n = data.count();
  const double h = data.geometry.spacing();
  const auto rk = detail::receiver_kernels(m, p, data.geometry, z);
  double total = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < n; ++k) {
      Complex inner{0.0, 0.0};
      for (int i = 0; i < n; ++i)
        inner += data.pus_at(k, i, j).dot(rk.g[j][i]) -
                 data.us_at(k, i, j).dot(rk.pg[j][i]);
      const Mat2C im_minus = im_gamma_half(m, z, data.geometry.point(k),
                                           HalfCircle::minus, config.M);
      Complex term = h * inner - Complex(0.0, 2.0) * im_minus(j, j);
      total += h * std::norm(term);
    }
  }
  return total;
}

// Indicator over the whole grid; grid points are independent work items with
// disjoint writes, so serial and parallel runs agree bitwise.
inline ImageGrid compute_image(const CauchyDataSet& data, const ElasticMedium& m,
                               const GeneralizedStressParams& p, const SamplingGrid& grid,
                               const ImagingConfig& config) {
  grid.validate();
  config.validate();
  ImageGrid image;
  image.grid = grid;
  image.values.assign((std::size_t)grid.nx1 * grid.nx2, 0.0);
  parallel_for(grid.nx1 * grid.nx2, [&](int idx) {
    int i = idx / grid.nx2, j = idx % grid.nx2;
    image.values[idx] = indicator_at(data, m, p, {grid.x1(i), grid.x2(j)}, config);
  });
  if (config.normalize) {
    double mx = image.max_value();
    if (mx > 0.0)
      for (double& v : image.values) v /= mx;
  }
  return image;
}

// Per-column argmax; ties broken toward smaller x2.
inline std::vector<Vec2> extract_ridge(const ImageGrid& image) {
  const auto& g = image.grid;
  std::vector<Vec2> ridge;
  ridge.reserve(g.nx1);
  for (int i = 0; i < g.nx1; ++i) {
    int best = 0;
    for (int j = 1; j < g.nx2; ++j)
      if (image.value(i, j) > image.value(i, best)) best = j;
    ridge.push_back({g.x1(i), g.x2(best)});
  }
  return ridge;
}

}  // namespace eri

#endif
