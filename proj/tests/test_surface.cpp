#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wlab/surface.hpp"
#include "wlab/weierstrass.hpp"

using namespace wlab;

namespace {
const double kSqrt2 = std::sqrt(2.0);

Immersion fd_wrap(const Immersion& s, double h) {
  return fd_immersion([s](cplx z) { return s.eval(z); }, h);
}

struct Degenerate {
  template <int N>
  VJet<N> jets(cplx) const {
    return {JetR<N>::constant(1.0), JetR<N>::constant(2.0), JetR<N>::constant(3.0)};
  }
};

struct Sheared {
  template <int N>
  VJet<N> jets(cplx z) const {
    auto U = JetR<N>::var_u(z.real());
    auto V = JetR<N>::var_v(z.imag());
    return {U + 0.5 * V, V, JetR<N>::constant(0.0)};
  }
};
} // namespace

TEST_CASE("round sphere: totally umbilic, H = K = 1") {
  auto s = surfaces::sphere(1.0);
  for (cplx z : {cplx(0.0), cplx(0.7, -0.3), cplx(-1.2, 2.0)}) {
    const auto g = geometry_at(s, z);
    CHECK(g.H == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.K == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g.phi) < 1e-12);
    CHECK(g.nu.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.conf_residual < 1e-13);
    CHECK(g.f.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("plane: flat") {
  auto s = surfaces::plane();
  const auto g = geometry_at(s, cplx(0.4, 1.1));
  CHECK(std::abs(g.H) < 1e-14);
  CHECK(std::abs(g.K) < 1e-14);
  CHECK(std::abs(g.lambda) < 1e-14);
  CHECK(std::abs(g.phi) < 1e-14);
}

TEST_CASE("catenoid is minimal, classical and Weierstrass charts") {
  auto classical = surfaces::catenoid_classical();
  for (cplx z : {cplx(0.3, 0.2), cplx(2.0, -0.8)}) {
    const auto g = geometry_at(classical, z);
    CHECK(std::abs(g.H) < 1e-12);
    CHECK(g.K < 0.0);
  }
  auto cat = lookup_surface("catenoid");
  const auto g = geometry_at(cat.immersion, cplx(1.0, 0.0) + cplx(0.2, 0.1));
  CHECK(std::abs(g.H) < 1e-8);
}

TEST_CASE("gauss identity and the hopf-tracefree relation") {
  // |A|^2 = |Å|^2 + 2 H^2, and |phi| = |Å| e^lambda / sqrt(2)
  auto check = [](const Immersion& s, cplx z) {
    const auto g = geometry_at(s, z);
    CHECK(g.A_norm_sq == doctest::Approx(g.tracefree_norm_sq + 2.0 * g.H * g.H).epsilon(1e-10));
    const double lhs = std::abs(g.phi);
    const double rhs = std::sqrt(g.tracefree_norm_sq) * std::exp(g.lambda) / kSqrt2;
    if (rhs > 1e-12) CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  };
  check(surfaces::sphere(2.0), cplx(0.3, 0.4));
  check(surfaces::torus(2.0, 0.5), cplx(0.5, 0.1));
  check(surfaces::spheroid(1.3, 0.7), cplx(0.2, 0.6));
  check(lookup_surface("catenoid").immersion, cplx(1.3, 0.4));
}

TEST_CASE("willmore operator vanishes on spheres, minimal surfaces, and the sqrt(2) torus") {
  CHECK(std::abs(willmore_operator(surfaces::sphere(1.0), cplx(0.4, 0.2))) < 1e-11);
  CHECK(std::abs(willmore_operator(surfaces::sphere(2.5), cplx(-0.6, 0.9))) < 1e-11);
  CHECK(std::abs(willmore_operator(lookup_surface("catenoid").immersion, cplx(1.1, 0.3))) < 1e-8);
  CHECK(std::abs(willmore_operator(lookup_surface("enneper").immersion, cplx(0.4, -0.2))) < 1e-10);

  // stereographically projected Clifford torus (tube ratio sqrt 2)
  auto clifford = surfaces::torus(kSqrt2, 1.0);
  CHECK(std::abs(willmore_operator(clifford, cplx(0.3, 0.25))) < 1e-9);
  // a generic torus is not Willmore
  CHECK(std::abs(willmore_operator(surfaces::torus(2.0, 1.0), cplx(0.3, 0.25))) > 1e-3);

  // finite-difference route converges at O(h^2) against the stationary torus
  const cplx z(0.3, 0.25);
  const double r1 = std::abs(willmore_operator(fd_wrap(clifford, 2e-2), z));
  const double r2 = std::abs(willmore_operator(fd_wrap(clifford, 1e-2), z));
  CHECK(r2 < 0.35 * r1 + 1e-10);
}

TEST_CASE("codazzi residual: identity on smooth immersions") {
  CHECK(codazzi_residual(surfaces::sphere(1.0), cplx(0.2, 0.5)) < 1e-12);
  CHECK(codazzi_residual(lookup_surface("catenoid").immersion, cplx(1.2, 0.1)) < 1e-9);

  auto ell = surfaces::spheroid(1.3, 0.7);
  CHECK(codazzi_residual(ell, cplx(0.4, 0.3)) < 1e-9);
  const cplx z(0.4, 0.3);
  const double r1 = codazzi_residual(fd_wrap(ell, 2e-2), z);
  const double r2 = codazzi_residual(fd_wrap(ell, 1e-2), z);
  CHECK(r2 < 0.35 * r1 + 1e-10);
}

TEST_CASE("rigid motion invariance of the scalar geometry") {
  auto s = surfaces::spheroid(1.2, 0.8);
  Eigen::Matrix3d R;
  const double th = 0.7;
  R << std::cos(th), -std::sin(th), 0, std::sin(th), std::cos(th), 0, 0, 0, 1;
  Eigen::Matrix3d R2;
  R2 << 1, 0, 0, 0, std::cos(0.3), -std::sin(0.3), 0, std::sin(0.3), std::cos(0.3);
  auto moved = rigid_scaled(s, R2 * R, Vec3(0.4, -2.0, 1.5), 1.0);
  const cplx z(0.3, -0.2);
  const auto a = geometry_at(s, z);
  const auto b = geometry_at(moved, z);
  CHECK(b.H == doctest::Approx(a.H).epsilon(1e-12));
  CHECK(b.K == doctest::Approx(a.K).epsilon(1e-12));
  CHECK(b.lambda == doctest::Approx(a.lambda).epsilon(1e-12));
  CHECK(std::abs(b.phi) == doctest::Approx(std::abs(a.phi)).epsilon(1e-10));
}

TEST_CASE("error paths") {
  // degenerate: constant map
  auto bad = make_immersion(Degenerate{});
  CHECK_THROWS_AS((void)geometry_at(bad, cplx(0)), error);

  // declared conformal but clearly not
  auto sheared = make_immersion(Sheared{});
  CHECK_THROWS_AS((void)geometry_at(sheared, cplx(0)), error);
  GeometryOptions relaxed;
  relaxed.check_conformal = false;
  CHECK_NOTHROW((void)geometry_at(sheared, cplx(0), relaxed));
}

TEST_CASE("exp chart composition preserves scalar geometry") {
  auto cat = lookup_surface("catenoid");
  auto cyl = exp_chart(cat.immersion, cplx(0.0));
  const cplx w(0.25, 0.8); // z = e^{-iw}, |z| = e^{0.8}
  const cplx z = std::exp(cplx(0, -1) * w);
  const auto a = geometry_at(cat.immersion, z);
  const auto b = geometry_at(cyl, w);
  CHECK(b.H == doctest::Approx(a.H).epsilon(1e-9));
  CHECK(b.K == doctest::Approx(a.K).epsilon(1e-9));
  // area elements differ by the Jacobian |e^w|^2
  CHECK(b.sqrt_det_g == doctest::Approx(a.sqrt_det_g * std::norm(z)).epsilon(1e-9));
}
