#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wlab/moebius.hpp"

using namespace wlab;

namespace {
const double kPi = 3.14159265358979323846;

// map with |f| = sqrt(3) (u^2+v^2)^{3/4}: distance grows like r^{3/2}
struct HalfPowerGraph {
  template <int N>
  VJet<N> jets(cplx z) const {
    auto U = JetR<N>::var_u(z.real());
    auto V = JetR<N>::var_v(z.imag());
    auto s = sqrt(sqrt((U * U + V * V) * (U * U + V * V) * (U * U + V * V)));
    return {s, s, s};
  }
};
} // namespace

TEST_CASE("invert_point") {
  const Vec3 x0(1.0, -2.0, 0.5);
  CHECK((invert_point(x0 + Vec3(1, 0, 0), x0) - (x0 + Vec3(1, 0, 0))).norm() < 1e-15);
  CHECK((invert_point(x0 + Vec3(2, 0, 0), x0) - (x0 + Vec3(0.5, 0, 0))).norm() < 1e-15);
  const Vec3 x = x0 + Vec3(0.3, 0.4, 0.0);
  CHECK((invert_point(invert_point(x, x0), x0) - x).norm() < 1e-15);
  CHECK_THROWS_AS((void)invert_point(x0, x0), error);
}

TEST_CASE("inverting the unit sphere about its center fixes it setwise") {
  auto cs = lookup_surface("sphere");
  auto inv = invert_immersion(cs.immersion, Vec3::Zero());
  for (cplx z : {cplx(0.2, 0.1), cplx(-1.0, 2.2), cplx(3.0, 0.0)})
    CHECK(inv.eval(z).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inversion is an involution on jets") {
  auto cs = lookup_surface("catenoid");
  const Vec3 x0(0.0, 0.0, 0.0);
  auto twice = invert_immersion(invert_immersion(cs.immersion, x0), x0);
  for (cplx z : {cplx(1.1, 0.4), cplx(-0.5, 0.9)}) {
    const auto a = cs.immersion.jet4(z);
    const auto b = twice.jet4(z);
    for (std::size_t i = 0; i < JetR<4>::size; ++i) {
      CHECK(std::abs(a.x.c[i] - b.x.c[i]) < 1e-10 * (1.0 + std::abs(a.x.c[i])));
      CHECK(std::abs(a.z.c[i] - b.z.c[i]) < 1e-10 * (1.0 + std::abs(a.z.c[i])));
    }
  }
  // divisor bookkeeping: end (k) -> branch point (m = k+1) -> back
  auto inv = invert_immersion(cs.immersion, x0);
  REQUIRE(inv.punctures.size() == 2);
  CHECK(inv.punctures[0].kind == ChartPuncture::Kind::branch_point);
  CHECK(inv.punctures[0].order == 1);
  auto back = invert_immersion(inv, x0);
  CHECK(back.punctures[0].kind == ChartPuncture::Kind::end);
  CHECK(back.punctures[0].order == 0);
}

TEST_CASE("center clearance guard") {
  auto cs = lookup_surface("catenoid");
  InversionOptions opt;
  opt.probes = {cplx(1.0, 0.0), cplx(0.0, 1.0)};
  // the waist circle passes through distance-1 points around the origin; a
  // center on the surface itself must be rejected
  const Vec3 on_surface = cs.immersion.eval(cplx(1.0, 0.0));
  CHECK_THROWS_AS((void)invert_immersion(cs.immersion, on_surface, opt), error);
}

TEST_CASE("inverted catenoid carries W = 8 pi and the inversion identities") {
  auto cs = lookup_surface("catenoid");
  QuadOptions opt;
  opt.tol = 1e-5;
  const auto rep = verify_inversion_identities(cs, cs.default_center, end_divisor(cs.immersion),
                                               Divisor::branch({}), opt);
  CHECK(rep.end_term == doctest::Approx(8.0 * kPi));
  CHECK(rep.preimage_term == 0.0);
  CHECK(rep.w_after == doctest::Approx(8.0 * kPi).epsilon(1e-3));
  CHECK(rep.a2_after == doctest::Approx(24.0 * kPi).epsilon(2e-3));
  CHECK(rep.k_after == doctest::Approx(4.0 * kPi).epsilon(2e-3));
  CHECK(rep.residual_w < 1e-2);
  CHECK(rep.residual_k < 1e-2);
  CHECK(rep.residual_a2 < 3e-2);
  // both residuals share the same transfer term; with tight quadratures the
  // difference is at tolerance level
  CHECK(std::abs(rep.residual_a2 - 2.0 * rep.residual_w) < 5e-2);
  // quantization of the inverted energy
  const auto q = quantization_verdict(rep.w_after);
  CHECK(q.k == 2);
  CHECK(q.deviation < 1e-2);
}

TEST_CASE("inverted enneper carries W = 12 pi") {
  auto cs = lookup_surface("enneper");
  QuadOptions opt;
  opt.tol = 1e-5;
  const auto rep = verify_inversion_identities(cs, cs.default_center, end_divisor(cs.immersion),
                                               Divisor::branch({}), opt);
  CHECK(rep.end_term == doctest::Approx(12.0 * kPi));
  CHECK(rep.w_after == doctest::Approx(12.0 * kPi).epsilon(1e-3));
  CHECK(quantization_verdict(rep.w_after).k == 3);
}

TEST_CASE("round sphere inverted about an exterior point keeps W = 4 pi") {
  auto cs = lookup_surface("sphere");
  QuadOptions opt;
  opt.tol = 1e-5;
  const auto rep = verify_inversion_identities(cs, Vec3(0.0, 0.0, 3.0), Divisor::ends({}),
                                               Divisor::branch({}), opt);
  CHECK(rep.w_before == doctest::Approx(4.0 * kPi).epsilon(1e-4));
  CHECK(rep.w_after == doctest::Approx(4.0 * kPi).epsilon(1e-4));
  CHECK(rep.residual_w < 1e-3);
}

TEST_CASE("branch multiplicity fits") {
  // inverted catenoid: embedded ends become multiplicity-1 branch points
  auto cat = invert_surface(lookup_surface("catenoid"), Vec3::Zero());
  const auto m0 = estimate_branch_multiplicity(cat.immersion, cplx(0.0), default_fit_radii());
  CHECK(m0.m == 1);
  CHECK(m0.confidence > 0.5);

  // inverted Enneper at the image of its end: multiplicity 3. The end sits at
  // chart infinity, so probe through the reciprocal chart w -> 1/w.
  auto enn = lookup_surface("enneper");
  auto inv = invert_immersion(enn.immersion, Vec3(0.0, 0.0, 1.0));
  Immersion recip_chart = inv;
  auto base2 = inv.jet2;
  recip_chart.jet2 = [base2](cplx w) {
    // only point values are needed by the distance fit
    return base2(1.0 / w);
  };
  {
    std::vector<double> lx, ly;
    const Vec3 center(0.0, 0.0, 1.0); // end image = inversion center
    for (double r : default_fit_radii()) {
      double dist = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double th = 2.0 * kPi * (k + 0.5) / 8.0;
        const cplx w = r * cplx(std::cos(th), std::sin(th));
        dist += (recip_chart.eval(w) - center).norm();
      }
      lx.push_back(std::log(r));
      ly.push_back(std::log(dist / 8.0));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::lround(slope) == 3);
    CHECK(std::abs(slope - 3.0) < 0.1);
  }

  // smooth interior point: multiplicity 1
  const auto ms = estimate_branch_multiplicity(lookup_surface("sphere").immersion, cplx(0.3, 0.1),
                                               default_fit_radii());
  CHECK(ms.m == 1);

  // synthetic half-integer growth is rejected
  auto bad = make_immersion(HalfPowerGraph{});
  CHECK_THROWS_AS((void)estimate_branch_multiplicity(bad, cplx(0.0), default_fit_radii()), error);
}

TEST_CASE("curvature log fit") {
  // synthetic samples |A| = 3 |log r| + 0.1 via a fabricated immersion are
  // overkill; fit the regression path directly on the inverted catenoid and
  // on the sphere.
  auto cat = invert_surface(lookup_surface("catenoid"), Vec3::Zero());
  const auto fit = curvature_log_fit(cat.immersion, cplx(0.0), default_fit_radii());
  CHECK(fit.A0 >= 0.0);
  CHECK(fit.residual < 0.05);

  auto sph = lookup_surface("sphere");
  const auto sfit = curvature_log_fit(sph.immersion, cplx(0.2, 0.4), default_fit_radii());
  CHECK(sfit.A0 < 1e-6); // |A| constant on the round sphere
  CHECK(sfit.offset == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("parity guard") {
  CHECK_FALSE(parity_check(Divisor::branch({{PointOnSphere::finite(cplx(0)), 2}})));
  CHECK(parity_check(Divisor::branch({{PointOnSphere::finite(cplx(0)), 3}})));
  CHECK(parity_check(Divisor::branch(
      {{PointOnSphere::finite(cplx(0)), 1}, {PointOnSphere::finite(cplx(1)), 1}})));
}

TEST_CASE("multiplicity fit is rigid-motion and scale invariant") {
  auto cat = invert_surface(lookup_surface("catenoid"), Vec3::Zero());
  Eigen::Matrix3d R;
  R << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  auto moved = rigid_scaled(cat.immersion, R, Vec3(5.0, -1.0, 2.0), 3.0);
  const auto m = estimate_branch_multiplicity(moved, cplx(0.0), default_fit_radii());
  CHECK(m.m == 1);
}
