#include <cmath>

#include "wlab/surface.hpp"

namespace wlab::surfaces {

namespace {

struct SphereSrc {
  double r;
  template <int N>
  VJet<N> jets(cplx z) const {
    const auto U = JetR<N>::var_u(z.real());
    const auto V = JetR<N>::var_v(z.imag());
    const auto inv = recip(U * U + V * V + 1.0);
    return {r * (2.0 * (U * inv)), r * (2.0 * (V * inv)), r * ((U * U + V * V - 1.0) * inv)};
  }
};

struct PlaneSrc {
  template <int N>
  VJet<N> jets(cplx z) const {
    return {JetR<N>::var_u(z.real()), JetR<N>::var_v(z.imag()), JetR<N>::constant(0.0)};
  }
};

struct CatenoidSrc {
  template <int N>
  VJet<N> jets(cplx z) const {
    const auto U = JetR<N>::var_u(z.real());
    const auto V = JetR<N>::var_v(z.imag());
    const auto cv = 0.5 * (exp(V) + exp(-1.0 * V));
    return {cv * cos(U), cv * sin(U), V};
  }
};

using P5 = Jet1<double, 5>;

struct RevolutionSrc {
  std::function<P5(P5)> radius, height;
  double t_ref;
  double t_min, t_max;

  // dt/dv at scalar t
  double speed(double t) const {
    const P5 s = P5::variable(t);
    const P5 r = radius(s), h = height(s);
    return r.value() / std::hypot(r.deriv(1), h.deriv(1));
  }

  // profile parameter at chart height v (RK4 from the reference latitude)
  double t_of_v(double v) const {
    const int n = std::max(8, static_cast<int>(std::ceil(std::abs(v) / 0.0025)));
    const double dv = v / n;
    double t = t_ref;
    for (int i = 0; i < n; ++i) {
      const double k1 = speed(t);
      const double k2 = speed(t + 0.5 * dv * k1);
      const double k3 = speed(t + 0.5 * dv * k2);
      const double k4 = speed(t + dv * k3);
      t += dv / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!(t > t_min && t < t_max)) fail(errc::degenerate_metric, "profile parameter left its range");
    }
    return t;
  }

  template <int N>
  VJet<N> jets(cplx z) const {
    const double t0 = t_of_v(z.imag());
    const P5 s = P5::variable(t0);
    const P5 r5 = radius(s), h5 = height(s);
    std::array<double, N + 1> rd, hd, rpd, hpd;
    for (int k = 0; k <= N; ++k) {
      rd[k] = r5.deriv(k);
      hd[k] = h5.deriv(k);
      rpd[k] = r5.deriv(k + 1);
      hpd[k] = h5.deriv(k + 1);
    }
    // local Taylor of t(v) from t' = r/sqrt(r'^2+h'^2) by Picard iteration
    Jet1<double, N> T = Jet1<double, N>::constant(t0);
    for (int it = 0; it <= N; ++it) {
      const auto rp = compose1(T, rpd), hp = compose1(T, hpd);
      const auto rho = compose1(T, rd) * recip(sqrt(rp * rp + hp * hp));
      Jet1<double, N> next = Jet1<double, N>::constant(t0);
      for (int k = 0; k < N; ++k) next.c[k + 1] = rho.c[k] / (k + 1.0);
      T = next;
    }
    const auto Tv = lift_v(T);
    const auto R = compose(Tv, rd);
    const auto H = compose(Tv, hd);
    const auto U = JetR<N>::var_u(z.real());
    return {R * cos(U), R * sin(U), H};
  }
};

} // namespace

Immersion sphere(double r) {
  Immersion s = make_immersion(SphereSrc{r});
  s.domain = {-6.0, 6.0, -6.0, 6.0};
  s.chart_scale = 1.0;
  return s;
}

Immersion plane() {
  Immersion s = make_immersion(PlaneSrc{});
  s.domain = {-10.0, 10.0, -10.0, 10.0};
  return s;
}

Immersion catenoid_classical() {
  Immersion s = make_immersion(CatenoidSrc{});
  s.chart_kind = ChartKind::cylinder_native;
  s.domain = {0.0, 2.0 * M_PI, -1.5, 1.5};
  s.punctures.push_back({PointOnSphere::finite(cplx(0.0)), ChartPuncture::Kind::end, 0});
  s.punctures.push_back({PointOnSphere::infinity(), ChartPuncture::Kind::end, 0});
  return s;
}

Immersion revolution(RevolutionProfile profile) {
  RevolutionSrc src;
  src.radius = [f = profile.radius](P5 t) { return f(t); };
  src.height = [f = profile.height](P5 t) { return f(t); };
  src.t_ref = profile.t_ref;
  src.t_min = profile.t_min;
  src.t_max = profile.t_max;
  return make_immersion(src);
}

namespace {

// torus profile parameter in the isothermal chart, closed form:
// t(v) = 2 atan(c tan(eta v / 2)), eta = sqrt(R^2-a^2)/a, c = sqrt((R+a)/(R-a))
struct TorusSrc {
  double R, a;

  template <int N>
  Jet1<double, N> profile_angle(double v0) const {
    const double eta = std::sqrt(R * R - a * a) / a;
    const double c = std::sqrt((R + a) / (R - a));
    const double period = 2.0 * M_PI / eta;
    const double shift = std::round(v0 / period);
    const double vr = v0 - period * shift;
    auto X = 0.5 * eta * (Jet1<double, N>::variable(vr));
    Jet1<double, N> t;
    if (std::abs(vr) < 0.25 * period) {
      t = 2.0 * atan(c * tan(X));
    } else {
      // same map through the complementary angle, regular across the cut
      const double sgn = vr >= 0.0 ? 1.0 : -1.0;
      auto cotX = cos(X) * recip(sin(X));
      t = -2.0 * atan((1.0 / c) * cotX) + sgn * M_PI;
    }
    return t + 2.0 * M_PI * shift;
  }

  template <int N>
  VJet<N> jets(cplx z) const {
    const auto T = lift_v(profile_angle<N>(z.imag()));
    const auto U = JetR<N>::var_u(z.real());
    const auto rad = a * cos(T) + R;
    return {rad * cos(U), rad * sin(U), a * sin(T)};
  }
};

} // namespace

Immersion torus(double R, double a) {
  Immersion s = make_immersion(TorusSrc{R, a});
  s.chart_kind = ChartKind::compact;
  const double period = 2.0 * M_PI * a / std::sqrt(R * R - a * a);
  s.domain = {0.0, 2.0 * M_PI, -0.5 * period, 0.5 * period};
  return s;
}

Immersion spheroid(double a, double c) {
  RevolutionSrc src;
  src.radius = [a](P5 t) { return a * sin(t); };
  src.height = [c](P5 t) { return c * cos(t); };
  src.t_ref = 0.5 * M_PI;
  src.t_min = 1e-6;
  src.t_max = M_PI - 1e-6;
  Immersion s = make_immersion(src);
  s.chart_kind = ChartKind::cylinder_native;
  s.domain = {0.0, 2.0 * M_PI, -1.5, 1.5};
  return s;
}

} // namespace wlab::surfaces
