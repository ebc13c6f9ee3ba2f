#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wlab/conformal_gauss.hpp"
#include "wlab/moebius.hpp"
#include "wlab/weierstrass.hpp"

using namespace wlab;

TEST_CASE("lorentz product and lifts") {
  LorentzVec e1{{1, 0, 0, 0, 0}}, e5{{0, 0, 0, 0, 1}};
  CHECK(inner(e1, e1) == 1.0);
  CHECK(inner(e5, e5) == -1.0);

  const Vec3 x(1.0, 2.0, 3.0);
  CHECK(std::abs(inner(point_lift(x), point_lift(x))) < 1e-14);
  CHECK(point_lift(Vec3::Zero())[3] == -0.5);
  CHECK(point_lift(Vec3::Zero())[4] == 0.5);
  for (const Vec3& p : {Vec3(0.3, -1.0, 2.0), Vec3(0, 0, 1)}) {
    const auto X = point_lift(p);
    CHECK(X[4] - X[3] == doctest::Approx(1.0).epsilon(1e-15));
  }
  // |x| = 1 implies X4 = 0
  CHECK(std::abs(point_lift(Vec3(1, 0, 0))[3]) < 1e-15);

  const auto P = sphere_lift(Vec3::Zero(), 1.0);
  CHECK(P[3] == -1.0);
  CHECK(P[4] == 0.0);
  for (double r : {0.5, 2.0})
    CHECK(inner(sphere_lift(Vec3(1, 2, -1), r), sphere_lift(Vec3(1, 2, -1), r)) ==
          doctest::Approx(1.0).epsilon(1e-13));
  // P5 - P4 = 1/r flips sign with the orientation
  CHECK(sphere_lift(Vec3::Zero(), 2.0)[4] - sphere_lift(Vec3::Zero(), 2.0)[3] ==
        doctest::Approx(0.5));
  CHECK(sphere_lift(Vec3::Zero(), -2.0)[4] - sphere_lift(Vec3::Zero(), -2.0)[3] ==
        doctest::Approx(-0.5));
  CHECK_THROWS_AS((void)sphere_lift(Vec3::Zero(), 0.0), error);
}

TEST_CASE("conformal gauss map") {
  // unit sphere: the central sphere is the surface itself
  auto sph = lookup_surface("sphere");
  for (cplx z : {cplx(0.1, 0.2), cplx(-1.0, 0.8)}) {
    const auto g = geometry_at(sph.immersion, z);
    const auto Y = conformal_gauss_map(g);
    CHECK(std::abs(Y[0]) < 1e-12);
    CHECK(std::abs(Y[1]) < 1e-12);
    CHECK(std::abs(Y[2]) < 1e-12);
    CHECK(Y[3] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(Y[4]) < 1e-12);
  }
  // minimal surface: Y = N (plane lift)
  auto cat = lookup_surface("catenoid");
  const auto g = geometry_at(cat.immersion, cplx(1.2, 0.5));
  const auto Y = conformal_gauss_map(g);
  CHECK(std::abs(Y[0] - g.nu.x()) < 1e-8);
  CHECK(std::abs(Y[4] - g.f.dot(g.nu)) < 1e-8);

  // quadric membership and enveloping on several catalog surfaces
  for (const char* name : {"sphere", "catenoid", "enneper", "ellipsoid(1.3,0.7)"}) {
    auto cs = lookup_surface(name);
    GeometryOptions go;
    go.check_conformal = false;
    for (cplx z : {cplx(0.4, 0.3), cplx(-0.8, 0.6)}) {
      const auto geo = geometry_at(cs.immersion, z, go);
      const auto y = conformal_gauss_map(geo);
      CHECK(std::abs(inner(y, y) - 1.0) < 1e-10);
      CHECK(std::abs(inner(y, point_lift(geo.f))) < 1e-10);
    }
  }
}

TEST_CASE("conformality identity of Y") {
  CHECK(conformality_residual(surfaces::sphere(1.0), cplx(0.3, 0.1)) < 1e-10);
  CHECK(conformality_residual(lookup_surface("catenoid").immersion, cplx(1.1, 0.2)) < 1e-7);
  CHECK(conformality_residual(surfaces::spheroid(1.3, 0.7), cplx(0.5, 0.4)) < 1e-8);

  // finite-difference jets converge at O(h^2)
  auto ell = surfaces::spheroid(1.3, 0.7);
  auto fd = [&](double h) {
    auto s = fd_immersion([ell](cplx z) { return ell.eval(z); }, h);
    return conformality_residual(s, cplx(0.5, 0.4));
  };
  const double r1 = fd(2e-2), r2 = fd(1e-2);
  CHECK(r2 < 0.35 * r1 + 1e-9);
}

TEST_CASE("quartic form vanishes exactly where it should") {
  // minimal surfaces and round spheres
  CHECK(std::abs(quartic_form(lookup_surface("catenoid").immersion, cplx(1.3, 0.2))) < 1e-9);
  CHECK(std::abs(quartic_form(lookup_surface("enneper").immersion, cplx(0.4, 0.7))) < 1e-10);
  CHECK(std::abs(quartic_form(surfaces::sphere(1.0), cplx(0.2, 0.5))) < 1e-12);

  // Moebius transforms of minimal surfaces: Q identically zero
  auto inv_cat = invert_surface(lookup_surface("catenoid"), Vec3::Zero());
  auto inv_enn = invert_surface(lookup_surface("enneper"), Vec3(0, 0, 1));
  for (cplx z : {cplx(0.9, 0.3), cplx(-0.4, 1.2), cplx(2.0, -0.7)}) {
    CHECK(quartic_scaled(inv_cat.immersion, z, 1.0) < 1e-6);
    CHECK(quartic_scaled(inv_enn.immersion, z, 1.0) < 1e-6);
  }

  // the Willmore torus has holomorphic but nonvanishing Q
  auto tor = surfaces::torus(std::sqrt(2.0), 1.0);
  CHECK(std::abs(quartic_form(tor, cplx(0.3, 0.2))) > 1e-3);

  // verdict invariance under a further inversion
  auto twice = invert_surface(inv_cat, Vec3(0.0, 0.0, 4.0));
  for (cplx z : {cplx(0.9, 0.3), cplx(-0.4, 1.2)})
    CHECK(quartic_scaled(twice.immersion, z, 1.0) < 1e-6);
}

TEST_CASE("two routes to Q agree at O(h^2)") {
  auto tor = surfaces::torus(std::sqrt(2.0), 1.0); // nonzero Q
  const cplx z(0.4, 0.3);
  const cplx exact = quartic_form(tor, z);
  const double e1 = std::abs(quartic_form_fd(tor, z, 2e-3) - exact);
  const double e2 = std::abs(quartic_form_fd(tor, z, 1e-3) - exact);
  CHECK(e1 < 1e-3 * std::abs(exact));
  CHECK(e2 < 0.35 * e1 + 1e-12);

  // and on a smooth non-Willmore surface
  auto ell = surfaces::spheroid(1.3, 0.7);
  const cplx ze(0.2, 0.6);
  const cplx qe = quartic_form(ell, ze);
  const double f1 = std::abs(quartic_form_fd(ell, ze, 4e-3) - qe);
  const double f2 = std::abs(quartic_form_fd(ell, ze, 2e-3) - qe);
  CHECK(f2 < 0.35 * f1 + 1e-10);
}

TEST_CASE("holomorphy residual separates willmore from non-willmore") {
  const double h = 1e-3;
  // round sphere: Q = 0 identically
  auto sph = holomorphy_residual(surfaces::sphere(1.0), {-1.0, 1.0, -1.0, 1.0}, 6, h);
  CHECK(sph.max_dbar < 1e-8);

  // Willmore torus: Q nonzero and holomorphic, so dbar vanishes at O(h^2)
  auto tor = surfaces::torus(std::sqrt(2.0), 1.0);
  auto t1 = holomorphy_residual(tor, {0.1, 1.1, -0.5, 0.5}, 6, 2e-3);
  auto t2 = holomorphy_residual(tor, {0.1, 1.1, -0.5, 0.5}, 6, 1e-3);
  CHECK(t1.max_q > 1e-3);
  CHECK(t2.max_dbar < 0.35 * t1.max_dbar + 1e-10);

  // inverted enneper: willmore away from the branch point
  auto inv_enn = invert_surface(lookup_surface("enneper"), Vec3(0, 0, 1));
  auto e = holomorphy_residual(inv_enn.immersion, {0.3, 1.3, 0.3, 1.3}, 5, h);
  CHECK(e.max_dbar < 1e-6);

  // spheroid: genuinely non-willmore, residual well above the sphere baseline
  auto ell = holomorphy_residual(surfaces::spheroid(1.3, 0.7), {0.1, 6.2, -0.8, 0.8}, 6, h);
  CHECK(ell.max_dbar > 10.0 * std::max(sph.max_dbar, 1e-12));
  CHECK(ell.max_dbar > 1e-3);
}

TEST_CASE("pole order probe") {
  std::vector<double> radii;
  for (int i = 0; i <= 6; ++i) radii.push_back(0.3 * std::pow(0.5, i));

  // synthetic fields
  auto probe2 = pole_order_probe_field([](cplx z) { return 1.0 / (z * z); }, cplx(0), radii);
  CHECK(probe2.exponent == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(probe2.passes);
  auto probe3 = pole_order_probe_field([](cplx z) { return 1.0 / (z * z * z); }, cplx(0), radii);
  CHECK(probe3.exponent == doctest::Approx(3.0).epsilon(1e-6));
  CHECK_FALSE(probe3.passes);

  // inverted catalog surfaces: Q identically zero
  auto inv_cat = invert_surface(lookup_surface("catenoid"), Vec3::Zero());
  auto pz = pole_order_probe(inv_cat.immersion, cplx(0.0), radii);
  CHECK(pz.identically_zero);
  CHECK(pz.passes);
}
