#include <cmath>

#include "doctest.h"
#include "eri/mesh.hpp"

using namespace eri;

TEST_CASE("surface profiles by name") {
  CHECK(SurfaceProfile::by_name("flat").f(3.7) == 0.0);
  CHECK(SurfaceProfile::by_name("example1").name == "example1");
  CHECK_THROWS_AS(SurfaceProfile::by_name("nope"), std::domain_error);
  // example3 oscillates around 0.5 with amplitude <= 0.2
  SurfaceProfile e3 = SurfaceProfile::example3();
  CHECK(e3.sup(10.0) <= 0.7 + 1e-12);
  CHECK(e3.inf(10.0) >= 0.3 - 1e-12);
  // analytic derivative agrees with finite differences
  for (const char* name : {"example1", "example2", "example3"}) {
    SurfaceProfile s = SurfaceProfile::by_name(name);
    for (double t : {-3.2, -0.7, 0.0, 1.9, 6.4}) {
      double h = 1e-6;
      double fd = (s.f(t + h) - s.f(t - h)) / (2.0 * h);
      CHECK(s.f_prime(t) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("BIEConfig validation") {
  BIEConfig ok;
  CHECK_NOTHROW(ok.validate());
  BIEConfig bad = ok;
  bad.eta = {0.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = ok;
  bad.node_count = 8;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = ok;
  bad.truncation_halfwidth = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = ok;
  bad.taper_fraction = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("build_mesh geometry") {
  BIEConfig config;
  config.node_count = 257;
  config.truncation_halfwidth = 10.0;
  config.taper_fraction = 0.2;
  SurfaceProfile surf = SurfaceProfile::example3();
  BoundaryMesh mesh = build_mesh(surf, config);

  REQUIRE(mesh.size() == 257);
  CHECK(mesh.s.front() == doctest::Approx(-10.0).epsilon(1e-15));
  CHECK(mesh.s.back() == doctest::Approx(10.0).epsilon(1e-15));
  const double ds = mesh.spacing();
  for (int i = 0; i < mesh.size(); ++i) {
    if (i > 0) CHECK(mesh.s[i] - mesh.s[i - 1] == doctest::Approx(ds).epsilon(1e-12));
    CHECK(mesh.points[i].x == mesh.s[i]);
    CHECK(mesh.points[i].y == surf.f(mesh.s[i]));
    CHECK(mesh.normals[i].norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mesh.normals[i].y > 0.0);
    double fp = surf.f_prime(mesh.s[i]);
    CHECK(mesh.jacobians[i] ==
          doctest::Approx(std::sqrt(1.0 + fp * fp)).epsilon(1e-14));
    CHECK(mesh.taper[i] >= 0.0);
    CHECK(mesh.taper[i] <= 1.0);
  }
  // trapezoid weights: halved at the ends
  CHECK(mesh.weight(0) == doctest::Approx(0.5 * ds));
  CHECK(mesh.weight(mesh.size() - 1) == doctest::Approx(0.5 * ds));
  CHECK(mesh.weight(1) == doctest::Approx(ds));
  // taper: 0 at the ends, 1 in the interior, monotone over each flank
  CHECK(mesh.taper.front() <= 1e-12);
  CHECK(mesh.taper.back() <= 1e-12);
  CHECK(mesh.taper[mesh.size() / 2] == 1.0);
  for (int i = 1; i < mesh.size() / 2; ++i)
    CHECK(mesh.taper[i] >= mesh.taper[i - 1] - 1e-12);
  // taper-free window covers |s| <= (1 - 2 * fraction) * A_f
  for (int i = 0; i < mesh.size(); ++i)
    if (std::fabs(mesh.s[i]) < 10.0 * (1.0 - 2.0 * 0.2) - 1e-9)
      CHECK(mesh.taper[i] == 1.0);
}

TEST_CASE("zero taper fraction keeps all weights at one") {
  BIEConfig config;
  config.taper_fraction = 0.0;
  config.node_count = 64;
  BoundaryMesh mesh = build_mesh(SurfaceProfile::flat(0.5), config);
  for (double w : mesh.taper) CHECK(w == 1.0);
}
