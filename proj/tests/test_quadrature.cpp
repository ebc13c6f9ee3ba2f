#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "wlab/quadrature.hpp"

using namespace wlab;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("unit sphere: W = 4 pi, area = 4 pi, int K = 4 pi") {
  auto cs = lookup_surface("sphere");
  QuadOptions opt;
  opt.tol = 1e-6;
  const auto w = integrate(cs, Density::h2, opt);
  CHECK(std::abs(w.value - 4.0 * kPi) < 1e-4 * 4.0 * kPi);
  const auto area = integrate(cs, Density::one, opt);
  CHECK(std::abs(area.value - 4.0 * kPi) < 1e-4 * 4.0 * kPi);
  const auto k = integrate(cs, Density::k, opt);
  CHECK(std::abs(k.value - 4.0 * kPi) < 1e-4 * 4.0 * kPi);
}

TEST_CASE("torus: compact chart, classical gauss-bonnet, area") {
  auto cs = lookup_surface("torus(2,0.5)");
  QuadOptions opt;
  opt.tol = 1e-7;
  const auto k = integrate(cs, Density::k, opt);
  CHECK(std::abs(k.value) < 1e-5); // chi = 0
  const auto area = integrate(cs, Density::one, opt);
  CHECK(area.value == doctest::Approx(4.0 * kPi * kPi * 2.0 * 0.5).epsilon(1e-5));
}

TEST_CASE("minimal catalog: total curvature integrals") {
  QuadOptions opt;
  opt.tol = 1e-5;

  auto cat = lookup_surface("catenoid");
  const auto a2 = integrate(cat, Density::a2, opt);
  CHECK(std::abs(a2.value - 8.0 * kPi) < 1e-3 * 8.0 * kPi);
  // willmore energy of a minimal surface vanishes
  CHECK(std::abs(integrate(cat, Density::h2, opt).value) < 1e-8);

  auto tri = lookup_surface("trinoid(0,2)");
  const auto t2 = integrate(tri, Density::a2, opt);
  CHECK(std::abs(t2.value - 16.0 * kPi) < 2e-3 * 16.0 * kPi);

  auto tris = lookup_surface("trinoid-sym(1)");
  const auto t2s = integrate(tris, Density::a2, opt);
  CHECK(std::abs(t2s.value - 16.0 * kPi) < 2e-3 * 16.0 * kPi);

  auto enn = lookup_surface("enneper");
  const auto e2 = integrate(enn, Density::a2, opt);
  CHECK(std::abs(e2.value - 8.0 * kPi) < 1e-3 * 8.0 * kPi);

  // gauss map degree consistency: int |A|^2 = 8 pi deg g
  CHECK(std::lround(a2.value / (8.0 * kPi)) == 1);
  CHECK(std::lround(t2.value / (8.0 * kPi)) == 2);
}

TEST_CASE("gauss-bonnet with ends: catenoid, enneper, trinoid") {
  QuadOptions opt;
  opt.tol = 1e-5;
  auto run = [&](const char* name, std::vector<Divisor::Entry> ends, double expect) {
    auto cs = lookup_surface(name);
    auto dom = IntegrationDomain::for_surface(cs);
    auto rep = gauss_bonnet_check(dom, Divisor::ends(std::move(ends)), Divisor::branch({}), 2, opt);
    CHECK(rep.rhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rep.residual < 2e-3 * std::abs(expect));
  };
  run("catenoid", {{PointOnSphere::finite(cplx(0)), 0}, {PointOnSphere::infinity(), 0}}, -4.0 * kPi);
  run("enneper", {{PointOnSphere::infinity(), 2}}, -4.0 * kPi);
  run("trinoid(0,2)",
      {{PointOnSphere::finite(cplx(1.0 / std::sqrt(3.0))), 0},
       {PointOnSphere::finite(cplx(-1.0 / std::sqrt(3.0))), 0},
       {PointOnSphere::infinity(), 0}},
      -8.0 * kPi);
}

TEST_CASE("scale invariance of H^2 and |A|^2 integrals") {
  auto cs = lookup_surface("catenoid");
  QuadOptions opt;
  opt.tol = 1e-5;
  const double base = integrate(cs, Density::a2, opt).value;
  for (double lam : {0.5, 2.0}) {
    CatalogSurface scaled = cs;
    scaled.immersion = rigid_scaled(cs.immersion, Eigen::Matrix3d::Identity(), Vec3::Zero(), lam);
    const double v = integrate(scaled, Density::a2, opt).value;
    CHECK(v == doctest::Approx(base).epsilon(1e-5));
  }
}

TEST_CASE("refinement monotonicity: error estimate non-increasing with budget") {
  // compact chart (no tails): the invariant binds the adaptive core
  auto cs = lookup_surface("torus(2,0.7)");
  auto dom = IntegrationDomain::for_surface(cs);
  QuadOptions opt;
  opt.tol = 1e-14; // unreachable: budget binds
  opt.strict = false;
  double prev = 1e300;
  for (long budget : {256L, 512L, 1024L, 2048L}) {
    opt.max_cells = budget;
    const auto r = integrate(dom, Density::a2, opt);
    // non-increasing until the estimates reach the rounding floor of the leaf sums
    const double floor = 256.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
    CHECK(r.error_estimate <= prev * (1.0 + 1e-12) + floor);
    prev = r.error_estimate;
  }
}

TEST_CASE("divergent tails and budget exhaustion") {
  auto cs = lookup_surface("catenoid");
  QuadOptions opt;
  opt.tol = 1e-6;
  // area of a complete end diverges
  CHECK_THROWS_AS((void)integrate(cs, Density::one, opt), error);

  // absurdly small budget with strict mode raises NoConvergence
  QuadOptions tiny;
  tiny.tol = 1e-13;
  tiny.max_cells = 160; // 4 pieces: the plane core cannot converge on 20 cells
  tiny.strict = true;
  bool threw = false;
  try {
    (void)integrate(lookup_surface("trinoid(0,2)"), Density::a2, tiny);
  } catch (const error& e) {
    threw = true;
    CHECK(e.code() == errc::no_convergence);
  }
  CHECK(threw);

  // a wrong end declaration is caught by the tail exponent check
  auto bad = lookup_surface("catenoid");
  bad.immersion.punctures[0].order = 2; // claims multiplicity 3 at the z=0 end
  bool caught = false;
  try {
    (void)integrate(bad, Density::a2, opt);
  } catch (const error& e) {
    caught = true;
    CHECK(e.code() == errc::divergent_tail);
  }
  CHECK(caught);
}

TEST_CASE("quantization verdicts") {
  const auto q = quantization_verdict(8.0 * kPi);
  CHECK(q.k == 2);
  CHECK(q.deviation < 1e-12);
  const auto q2 = quantization_verdict(12.0 * kPi + 0.01);
  CHECK(q2.k == 3);
  CHECK(q2.deviation == doctest::Approx(0.01).epsilon(1e-9));
  CHECK_THROWS_AS((void)quantization_verdict(10.0 * kPi), error);
}

TEST_CASE("white parity oracle") {
  CHECK(white_parity_check(-4.0 * kPi));
  CHECK(white_parity_check(-8.0 * kPi));
  CHECK_FALSE(white_parity_check(-6.0 * kPi));
}

TEST_CASE("conformal area relation: W = int(H^2 - K) + int K") {
  auto cs = lookup_surface("sphere");
  QuadOptions opt;
  opt.tol = 1e-6;
  const double w = integrate(cs, Density::h2, opt).value;
  const double hk = integrate(cs, Density::h2_minus_k, opt).value;
  const double k = integrate(cs, Density::k, opt).value;
  CHECK(w == doctest::Approx(hk + k).epsilon(1e-6));
  CHECK(std::abs(hk) < 1e-5); // the sphere's conformal Gauss map is a point
}
