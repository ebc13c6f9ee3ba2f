#include "wlab/surface.hpp"

#include <cmath>

namespace wlab {

namespace {

template <int N>
JetR<N> im_from_holomorphic(const std::array<cplx, N + 1>& a) {
  JetR<N> r;
  for (int k = 0; k <= N; ++k) {
    cplx ipow(1.0, 0.0);
    for (int b = 0; b <= k; ++b) {
      r.c[detail::ij(k - b, b)] = (a[static_cast<std::size_t>(k)] * detail::binom(k, b) * ipow).imag();
      ipow *= cplx(0.0, 1.0);
    }
  }
  return r;
}

/// evaluate a bivariate jet at offset jets (U, V) with U.value()=V.value()=0
template <int N>
JetR<N> compose2(const JetR<N>& f, const JetR<N>& U, const JetR<N>& V) {
  std::array<JetR<N>, N + 1> up, vp;
  up[0] = JetR<N>::constant(1.0);
  vp[0] = JetR<N>::constant(1.0);
  for (int k = 1; k <= N; ++k) {
    up[k] = up[k - 1] * U;
    vp[k] = vp[k - 1] * V;
  }
  JetR<N> r;
  for (int a = 0; a <= N; ++a)
    for (int b = 0; a + b <= N; ++b) {
      const double c = f.coeff(a, b);
      if (c == 0.0) continue;
      r += c * (up[a] * vp[b]);
    }
  return r;
}

} // namespace

template <int N>
GeoJets<N> geo_jets(const Immersion& s, cplx z, const GeometryOptions& opt) {
  GeoJets<N> g;
  if constexpr (N == 2)
    g.f = s.jet2(z);
  else if constexpr (N == 3)
    g.f = s.jet3(z);
  else
    g.f = s.jet4(z);

  g.fu = {g.f.x.du(), g.f.y.du(), g.f.z.du()};
  g.fv = {g.f.x.dv(), g.f.y.dv(), g.f.z.dv()};
  g.E = dot(g.fu, g.fu);
  g.F = dot(g.fu, g.fv);
  g.G = dot(g.fv, g.fv);

  auto W = cross(g.fu, g.fv);
  auto W2 = dot(W, W);
  const double scale2 = 0.5 * (g.E.value() + g.G.value());
  if (!(W2.value() > opt.degenerate_eps * opt.degenerate_eps * scale2 * scale2) || !(scale2 > 0.0))
    fail(errc::degenerate_metric, "df is rank deficient at the sample point");
  auto invw = recip(sqrt(W2));
  g.nu = {W.x * invw, W.y * invw, W.z * invw};

  if (opt.check_conformal && s.conformal_chart) {
    const double res = std::abs(g.E.value() - g.G.value()) + 2.0 * std::abs(g.F.value());
    if (res > std::max(opt.conformal_tol, s.conformal_tol) * (g.E.value() + g.G.value()))
      fail(errc::not_conformal, "chart declared conformal but E!=G or F!=0");
  }
  g.lambda = log(0.5 * (g.E + g.G));

  // second fundamental form against the truncated normal
  V3<JetR<N - 2>> fuu{g.fu.x.du(), g.fu.y.du(), g.fu.z.du()};
  V3<JetR<N - 2>> fuv{g.fu.x.dv(), g.fu.y.dv(), g.fu.z.dv()};
  V3<JetR<N - 2>> fvv{g.fv.x.dv(), g.fv.y.dv(), g.fv.z.dv()};
  V3<JetR<N - 2>> nu2{g.nu.x.template truncate<N - 2>(), g.nu.y.template truncate<N - 2>(),
                      g.nu.z.template truncate<N - 2>()};
  auto L = dot(fuu, nu2);
  auto M = dot(fuv, nu2);
  auto Q = dot(fvv, nu2);

  auto E2 = g.E.template truncate<N - 2>();
  auto F2 = g.F.template truncate<N - 2>();
  auto G2 = g.G.template truncate<N - 2>();
  auto det = E2 * G2 - F2 * F2;
  auto invdet = recip(det);
  g.H = 0.5 * ((E2 * Q - 2.0 * F2 * M + G2 * L) * invdet);
  g.K = (L * Q - M * M) * invdet;

  // Hopf coefficient phi = 2 <f_zz, nu> = (L - Q)/2 - i M on any chart basis
  JetC<N - 2> phiL, phiM;
  for (std::size_t i = 0; i < JetR<N - 2>::size; ++i) {
    phiL.c[i] = cplx(0.5 * (L.c[i] - Q.c[i]), 0.0);
    phiM.c[i] = cplx(0.0, -M.c[i]);
  }
  g.phi = phiL + phiM;
  return g;
}

template GeoJets<2> geo_jets<2>(const Immersion&, cplx, const GeometryOptions&);
template GeoJets<3> geo_jets<3>(const Immersion&, cplx, const GeometryOptions&);
template GeoJets<4> geo_jets<4>(const Immersion&, cplx, const GeometryOptions&);

ChartGeometry geometry_at(const Immersion& s, cplx z, const GeometryOptions& opt) {
  const auto g = geo_jets<2>(s, z, opt);
  ChartGeometry out;
  out.f = Vec3(g.f.x.value(), g.f.y.value(), g.f.z.value());
  out.nu = Vec3(g.nu.x.value(), g.nu.y.value(), g.nu.z.value());
  out.lambda = g.lambda.value();
  out.H = g.H.value();
  out.K = g.K.value();
  out.phi = g.phi.value();
  out.A_norm_sq = 4.0 * out.H * out.H - 2.0 * out.K;
  out.tracefree_norm_sq = out.A_norm_sq - 2.0 * out.H * out.H;
  const double E = g.E.value(), F = g.F.value(), G = g.G.value();
  out.sqrt_det_g = std::sqrt(std::max(0.0, E * G - F * F));
  out.conf_residual = (std::abs(E - G) + 2.0 * std::abs(F)) / (E + G);
  return out;
}

double willmore_operator(const Immersion& s, cplx z, const GeometryOptions& opt) {
  const auto g = geo_jets<4>(s, z, opt);
  const double lap_h = std::exp(-g.lambda.value()) * (g.H.deriv(2, 0) + g.H.deriv(0, 2));
  const double H = g.H.value(), K = g.K.value();
  return lap_h + 2.0 * H * (H * H - K);
}

double codazzi_residual(const Immersion& s, cplx z, const GeometryOptions& opt) {
  const auto g = geo_jets<3>(s, z, opt);
  const cplx phz = dzbar(g.phi).value();
  const cplx hz = dz(g.H).value();
  return std::abs(phz - std::exp(g.lambda.value()) * hz);
}

// --- finite-difference jets --------------------------------------------------

namespace {

// minimal-width central stencils at O(h^2), all on 5 points
constexpr double kD0[5] = {0, 0, 1, 0, 0};
constexpr double kD1[5] = {0, -0.5, 0, 0.5, 0};
constexpr double kD2[5] = {0, 1, -2, 1, 0};
constexpr double kD3[5] = {-0.5, 1, 0, -1, 0.5};
constexpr double kD4[5] = {1, -4, 6, -4, 1};

VJet<4> fd_jet4(const std::function<Vec3(cplx)>& eval, cplx z, double h) {
  Vec3 samples[5][5];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      samples[i][j] = eval(z + cplx((i - 2) * h, (j - 2) * h));
  const double* stencil[5] = {kD0, kD1, kD2, kD3, kD4};
  VJet<4> out;
  double hp_a = 1.0;
  for (int a = 0; a <= 4; ++a) {
    double hp = hp_a;
    for (int b = 0; a + b <= 4; ++b) {
      Vec3 acc = Vec3::Zero();
      for (int i = 0; i < 5; ++i) {
        if (stencil[a][i] == 0.0) continue;
        Vec3 row = Vec3::Zero();
        for (int j = 0; j < 5; ++j) {
          if (stencil[b][j] == 0.0) continue;
          row += stencil[b][j] * samples[i][j];
        }
        acc += stencil[a][i] * row;
      }
      double fact = 1.0;
      for (int i = 2; i <= a; ++i) fact *= i;
      for (int i = 2; i <= b; ++i) fact *= i;
      const double coef = 1.0 / (hp * fact);
      out.x.c[detail::ij(a, b)] = acc.x() * coef;
      out.y.c[detail::ij(a, b)] = acc.y() * coef;
      out.z.c[detail::ij(a, b)] = acc.z() * coef;
      hp *= h;
    }
    hp_a *= h;
  }
  return out;
}

} // namespace

Immersion fd_immersion(std::function<Vec3(cplx)> eval, double h, bool richardson) {
  Immersion s;
  auto jets4 = [eval, h, richardson](cplx z) {
    VJet<4> j = fd_jet4(eval, z, h);
    if (richardson) {
      VJet<4> j2 = fd_jet4(eval, z, 0.5 * h);
      for (std::size_t i = 0; i < JetR<4>::size; ++i) {
        j.x.c[i] = (4.0 * j2.x.c[i] - j.x.c[i]) / 3.0;
        j.y.c[i] = (4.0 * j2.y.c[i] - j.y.c[i]) / 3.0;
        j.z.c[i] = (4.0 * j2.z.c[i] - j.z.c[i]) / 3.0;
      }
    }
    return j;
  };
  s.jet4 = jets4;
  s.jet3 = [jets4](cplx z) {
    const auto j = jets4(z);
    return VJet<3>{j.x.truncate<3>(), j.y.truncate<3>(), j.z.truncate<3>()};
  };
  s.jet2 = [jets4](cplx z) {
    const auto j = jets4(z);
    return VJet<2>{j.x.truncate<2>(), j.y.truncate<2>(), j.z.truncate<2>()};
  };
  s.conformal_tol = std::max(1e-6, 100.0 * h * h);
  return s;
}

// --- chart composition -------------------------------------------------------

namespace {

// log-polar chart z = p + e^{-iw}: with w = theta + i s the angle is the real
// axis and the log radius s the imaginary axis, so |z - p| = e^{s}
template <int N>
VJet<N> exp_chart_jets(const Immersion& s, cplx p, cplx w) {
  const cplx ew = std::exp(cplx(0.0, -1.0) * w);
  const cplx z0 = p + ew;
  VJet<N> base;
  if constexpr (N == 2)
    base = s.jet2(z0);
  else if constexpr (N == 3)
    base = s.jet3(z0);
  else
    base = s.jet4(z0);
  std::array<cplx, N + 1> b{};
  cplx ipow(1.0, 0.0);
  double fact = 1.0;
  for (int k = 1; k <= N; ++k) {
    fact *= k;
    ipow *= cplx(0.0, -1.0);
    b[static_cast<std::size_t>(k)] = ew * ipow / fact;
  }
  const JetR<N> U = re_from_holomorphic<N>(b);
  const JetR<N> V = im_from_holomorphic<N>(b);
  return {compose2(base.x, U, V), compose2(base.y, U, V), compose2(base.z, U, V)};
}

} // namespace

Immersion exp_chart(const Immersion& s, cplx p) {
  Immersion out;
  out.jet2 = [s, p](cplx w) { return exp_chart_jets<2>(s, p, w); };
  out.jet3 = [s, p](cplx w) { return exp_chart_jets<3>(s, p, w); };
  out.jet4 = [s, p](cplx w) { return exp_chart_jets<4>(s, p, w); };
  out.conformal_chart = s.conformal_chart;
  out.chart_scale = 1.0;
  return out;
}

Immersion rigid_scaled(const Immersion& s, const Eigen::Matrix3d& R, const Vec3& t, double scale) {
  auto map4 = [s, R, t, scale](cplx z) {
    const auto j = s.jet4(z);
    VJet<4> r;
    for (std::size_t i = 0; i < JetR<4>::size; ++i) {
      const Vec3 v(j.x.c[i], j.y.c[i], j.z.c[i]);
      Vec3 m = scale * (R * v);
      if (i == 0) m += t;
      r.x.c[i] = m.x();
      r.y.c[i] = m.y();
      r.z.c[i] = m.z();
    }
    return r;
  };
  Immersion out = s;
  out.jet4 = map4;
  out.jet3 = [map4](cplx z) {
    const auto j = map4(z);
    return VJet<3>{j.x.truncate<3>(), j.y.truncate<3>(), j.z.truncate<3>()};
  };
  out.jet2 = [map4](cplx z) {
    const auto j = map4(z);
    return VJet<2>{j.x.truncate<2>(), j.y.truncate<2>(), j.z.truncate<2>()};
  };
  return out;
}

} // namespace wlab
