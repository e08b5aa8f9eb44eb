#ifndef ERI_SURFACE_HPP
#define ERI_SURFACE_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace eri {

// Rough-surface profile x2 = f(x1) with analytic derivative.
struct SurfaceProfile {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> f_prime;

  double operator()(double x1) const { return f(x1); }

  static SurfaceProfile flat(double height = 0.0) {
    return {"flat", [height](double) { return height; }, [](double) { return 0.0; }};
  }

  static SurfaceProfile example1() {
    return {"example1",
            [](double x1) {
              return 0.5 + 0.03 * std::sin(2.5 * M_PI * (x1 - 1.0)) +
                     0.12 * std::sin(0.4 * M_PI * (x1 - 1.0));
            },
            [](double x1) {
              return 0.03 * 2.5 * M_PI * std::cos(2.5 * M_PI * (x1 - 1.0)) +
                     0.12 * 0.4 * M_PI * std::cos(0.4 * M_PI * (x1 - 1.0));
            }};
  }

  static SurfaceProfile example2() {
    auto g = [](double a, double t) { return std::exp(-a * t * t); };
    return {"example2",
            [g](double x1) {
              return 0.5 + 0.1 * g(25.0, 0.15 * x1 - 0.5) + 0.2 * g(49.0, 0.15 * x1 + 0.6) -
                     0.25 * g(4.0, x1);
            },
            [g](double x1) {
              double t1 = 0.15 * x1 - 0.5, t2 = 0.15 * x1 + 0.6;
              return 0.1 * g(25.0, t1) * (-50.0 * t1) * 0.15 +
                     0.2 * g(49.0, t2) * (-98.0 * t2) * 0.15 +
                     -0.25 * g(4.0, x1) * (-8.0 * x1);
            }};
  }

  static SurfaceProfile example3() {
    return {"example3",
            [](double x1) {
              return 0.5 + 0.1 * std::sin(M_PI * x1) + 0.1 * std::sin(0.5 * M_PI * x1);
            },
            [](double x1) {
              return 0.1 * M_PI * std::cos(M_PI * x1) +
                     0.05 * M_PI * std::cos(0.5 * M_PI * x1);
            }};
  }

  static SurfaceProfile by_name(const std::string& name) {
    if (name == "flat") return flat();
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    if (name == "example3") return example3();
    throw std::domain_error("unknown surface profile: " + name);
  }

  // sup of f over [-halfwidth, halfwidth] by dense sampling
  double sup(double halfwidth, int samples = 20001) const {
    double m = -1e300;
    for (int i = 0; i < samples; ++i) {
      double s = -halfwidth + 2.0 * halfwidth * i / (samples - 1);
      m = std::max(m, f(s));
    }
    return m;
  }
  double inf(double halfwidth, int samples = 20001) const {
    double m = 1e300;
    for (int i = 0; i < samples; ++i) {
      double s = -halfwidth + 2.0 * halfwidth * i / (samples - 1);
      m = std::min(m, f(s));
    }
    return m;
  }
};

}  // namespace eri

#endif
