#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wlab/jet.hpp"

using namespace wlab;

TEST_CASE("bivariate jet reproduces analytic partial derivatives") {
  // f(u,v) = exp(u) sin(v) + u^2 v at (0.3, -0.2)
  const double u0 = 0.3, v0 = -0.2;
  auto U = JetR<4>::var_u(u0);
  auto V = JetR<4>::var_v(v0);
  auto f = exp(U) * sin(V) + U * U * V;

  CHECK(f.value() == doctest::Approx(std::exp(u0) * std::sin(v0) + u0 * u0 * v0).epsilon(1e-14));
  CHECK(f.deriv(1, 0) == doctest::Approx(std::exp(u0) * std::sin(v0) + 2 * u0 * v0).epsilon(1e-13));
  CHECK(f.deriv(0, 1) == doctest::Approx(std::exp(u0) * std::cos(v0) + u0 * u0).epsilon(1e-13));
  CHECK(f.deriv(2, 1) == doctest::Approx(std::exp(u0) * std::cos(v0) + 2.0).epsilon(1e-13));
  CHECK(f.deriv(2, 2) == doctest::Approx(-std::exp(u0) * std::sin(v0)).epsilon(1e-13));
  CHECK(f.deriv(4, 0) == doctest::Approx(std::exp(u0) * std::sin(v0)).epsilon(1e-12));
}

TEST_CASE("recip and sqrt invert multiplication") {
  auto U = JetR<4>::var_u(0.7);
  auto V = JetR<4>::var_v(0.4);
  auto g = 1.0 + U * U + V * V * U;
  auto prod = g * recip(g);
  CHECK(prod.value() == doctest::Approx(1.0));
  for (std::size_t i = 1; i < JetR<4>::size; ++i) CHECK(std::abs(prod.c[i]) < 1e-13);
  auto s = sqrt(g);
  auto back = s * s - g;
  for (std::size_t i = 0; i < JetR<4>::size; ++i) CHECK(std::abs(back.c[i]) < 1e-13);
}

TEST_CASE("wirtinger derivatives of a holomorphic jet kill dzbar") {
  // F = z^3 as a real pair (Re, Im)
  std::array<cplx, 5> a{};
  const cplx z0(0.4, 0.9);
  a[0] = z0 * z0 * z0;
  a[1] = 3.0 * z0 * z0;
  a[2] = 3.0 * z0;
  a[3] = cplx(1.0);
  auto re = re_from_holomorphic<4>(a);
  auto hz = dz(re);
  auto hzb = dzbar(re);
  // d/dz Re(F) = F'/2 for holomorphic F
  CHECK(hz.value().real() == doctest::Approx((0.5 * a[1]).real()).epsilon(1e-13));
  CHECK(hz.value().imag() == doctest::Approx((0.5 * a[1]).imag()).epsilon(1e-13));
  CHECK(std::abs(hzb.value() - 0.5 * std::conj(a[1])) < 1e-13);
}

TEST_CASE("univariate jets: composition and elementary functions") {
  auto t = Jet1<double, 4>::variable(0.6);
  auto f = sinh(t) * recip(cosh(t)); // tanh
  const double th = std::tanh(0.6);
  CHECK(f.value() == doctest::Approx(th).epsilon(1e-14));
  CHECK(f.deriv(1) == doctest::Approx(1.0 - th * th).epsilon(1e-13));
  CHECK(f.deriv(2) == doctest::Approx(-2.0 * th * (1.0 - th * th)).epsilon(1e-12));

  auto a = atan(t);
  CHECK(a.value() == doctest::Approx(std::atan(0.6)));
  CHECK(a.deriv(1) == doctest::Approx(1.0 / 1.36).epsilon(1e-13));
  CHECK(a.deriv(2) == doctest::Approx(-2.0 * 0.6 / (1.36 * 1.36)).epsilon(1e-12));
}
