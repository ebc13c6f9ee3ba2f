#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wlab/weierstrass.hpp"

using namespace wlab;

namespace {
const double kS3 = 1.0 / std::sqrt(3.0);

double form_sum_norm(const WeierstrassData& d) {
  const auto phi = induced_forms(d);
  // phi1^2 + phi2^2 + phi3^2 must vanish identically
  RationalFn s = phi[0].x * phi[0].x + phi[1].x * phi[1].x + phi[2].x * phi[2].x;
  double scale = 0.0;
  for (const auto& f : phi) scale = std::max(scale, coeff_scale((f.x.num * f.x.num).c));
  return coeff_scale(s.num.c) / std::max(scale, 1e-300);
}
} // namespace

TEST_CASE("induced forms of the standard catalog data") {
  auto enneper = induced_forms(enneper_data());
  // phi_1 = (1 - z^2)/2 dz
  CHECK(std::abs(enneper[0].x.eval(cplx(2.0)) - cplx(-1.5)) < 1e-14);
  // phi_2 = i (1 + z^2)/2 dz
  CHECK(std::abs(enneper[1].x.eval(cplx(2.0)) - cplx(0.0, 2.5)) < 1e-14);
  // phi_3 = z dz
  CHECK(std::abs(enneper[2].x.eval(cplx(2.0)) - cplx(2.0)) < 1e-14);

  auto cat = induced_forms(catenoid_data());
  CHECK(std::abs(cat[2].x.eval(cplx(2.0)) - cplx(0.5)) < 1e-14); // z/z^2 = 1/z

  CHECK(form_sum_norm(enneper_data()) < 1e-13);
  CHECK(form_sum_norm(catenoid_data()) < 1e-13);
  CHECK(form_sum_norm(trinoid_data({0.0, 2.0, false, 1.0})) < 1e-11);
  CHECK(form_sum_norm(trinoid_data({0.7, 1.3, false, 1.0})) < 1e-11);
  CHECK(form_sum_norm(trinoid_data({0.0, 0.0, true, 1.0})) < 1e-11);
}

TEST_CASE("enneper immersion matches the closed form") {
  auto s = immersion_from_data(enneper_data());
  for (cplx z : {cplx(0.3, 0.2), cplx(-0.7, 1.1), cplx(0.0)}) {
    const Vec3 f = s.eval(z);
    const cplx z3 = z * z * z;
    CHECK(f.x() == doctest::Approx(0.5 * (z - z3 / 3.0).real()).epsilon(1e-12));
    CHECK(f.y() == doctest::Approx(0.5 * (cplx(0, 1) * (z + z3 / 3.0)).real()).epsilon(1e-12));
    CHECK(f.z() == doctest::Approx(0.5 * (z * z).real()).epsilon(1e-12));
  }
  CHECK(s.eval(cplx(0)).norm() < 1e-14); // basepoint maps to the origin
}

TEST_CASE("catenoid immersion matches the classical chart after a rigid motion") {
  auto cs = lookup_surface("catenoid");
  // catalog catenoid: f(e^w) = (-cosh v cos u, -cosh v sin u, v) for w = v + iu
  for (cplx w : {cplx(0.0, 0.0), cplx(0.6, 1.2), cplx(-0.9, 2.5)}) {
    const cplx z = std::exp(w);
    const Vec3 f = cs.immersion.eval(z);
    const double v = w.real(), u = w.imag();
    CHECK(f.x() == doctest::Approx(-std::cosh(v) * std::cos(u)).epsilon(1e-8));
    CHECK(f.y() == doctest::Approx(-std::cosh(v) * std::sin(u)).epsilon(1e-8));
    CHECK(f.z() == doctest::Approx(v).epsilon(1e-8));
  }
}

TEST_CASE("closed-form antiderivatives agree with numerical path integration") {
  for (const char* name : {"catenoid", "enneper", "trinoid(0,2)", "trinoid-sym(1)"}) {
    auto cs = lookup_surface(name);
    REQUIRE(cs.data.has_value());
    const Vec3 translate = name == std::string("catenoid") ? Vec3(-1, 0, 0) : Vec3::Zero();
    for (cplx z : {cplx(0.9, 0.4), cplx(-0.3, -1.4)}) {
      const Vec3 direct = cs.immersion.eval(z);
      const Vec3 quad = immersion_value_by_quadrature(*cs.data, z, translate);
      CHECK((direct - quad).norm() < 1e-8);
    }
  }
}

TEST_CASE("minimality and conformality of the catalog") {
  for (const char* name : {"catenoid", "enneper", "trinoid(0,2)", "trinoid-sym(1)"}) {
    auto cs = lookup_surface(name);
    for (cplx z : {cplx(0.8, 0.3), cplx(-1.1, 0.9), cplx(0.2, -1.6)}) {
      const auto g = geometry_at(cs.immersion, z);
      CHECK(std::abs(g.H) < 1e-8);
      CHECK(g.conf_residual < 1e-8);
    }
  }
}

TEST_CASE("end classification") {
  auto cat = catenoid_data();
  const auto e0 = end_classification(cat, PointOnSphere::finite(cplx(0)));
  CHECK(e0.branch_order_k == 0);
  CHECK(e0.embedded);
  CHECK_FALSE(e0.planar); // Res phi_3 = 1

  auto enn = enneper_data();
  const auto einf = end_classification(enn, PointOnSphere::infinity());
  CHECK(einf.branch_order_k == 2);
  CHECK(einf.planar);
  CHECK_FALSE(einf.embedded);

  auto tri = trinoid_data({0.0, 0.0, true, 1.0});
  for (const auto& p : tri.punctures) {
    const auto e = end_classification(tri, p);
    CHECK(e.branch_order_k == 0);
    CHECK(e.embedded);
  }
  CHECK_THROWS_AS((void)end_classification(enn, PointOnSphere::finite(cplx(3))), error);
}

TEST_CASE("period check") {
  CHECK(period_check(enneper_data()) < 1e-12);
  CHECK(period_check(catenoid_data()) < 1e-12);
  CHECK(period_check(trinoid_data({0.0, 2.0, false, 1.0})) < 1e-9);
  CHECK(period_check(trinoid_data({0.5, 1.5, false, 1.0})) < 1e-9);

  // g = z, omega = (1+i) dz/z^2 breaks period realness
  WeierstrassData broken = catenoid_data();
  broken.omega = Form1(cplx(1.0, 1.0) * broken.omega.x);
  CHECK(period_check(broken) > 1.0);
  CHECK_THROWS_AS((void)immersion_from_data(broken), error);
}

TEST_CASE("trinoid parameter solver") {
  const auto q = trinoid_coefficients({0.0, 2.0, false, 1.0});
  CHECK(q.a * q.a == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(q.d == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(q.c == 0.0);
  CHECK(q.theta == 1.0);

  // B^2 from r2 = sqrt(3), a^2 = 2/3
  CHECK(trinoid_B_squared(2.0 / 3.0, std::sqrt(3.0)) == doctest::Approx(1.0).epsilon(1e-14));

  const auto degen = trinoid_coefficients({0.0, 0.0, true, 1.0});
  CHECK(degen.a == doctest::Approx(kS3));
  CHECK(degen.d == 1.0);
  CHECK(degen.B == 1.0);
  CHECK_THROWS_AS((void)trinoid_coefficients({1.0, 0.0, false, 1.0}), error);

  // quartic constraint holds for the solved a^2
  for (double r1 : {0.0, 0.4, 1.2})
    for (double r2 : {0.7, 2.0}) {
      const auto t = trinoid_coefficients({r1, r2, false, 1.0});
      const double a2 = t.a * t.a;
      const double quartic = 12 * a2 * a2 - (r2 * r2 + 3 * r1 * r1 + 4) * a2 - r1 * r1;
      CHECK(std::abs(quartic) < 1e-10);
      CHECK(std::abs(a2 * (1 - 3 * t.d) * (1 - 3 * t.d) - r1 * r1) < 1e-10);
    }
}

TEST_CASE("basepoint maps to the origin for untranslated data") {
  auto tri = trinoid_data({0.0, 2.0, false, 1.0});
  auto s = immersion_from_data(tri);
  CHECK(s.eval(tri.basepoint).norm() < 1e-12);
}
