#include "wlab/conformal_gauss.hpp"

#include <cmath>

namespace wlab {

double inner(const LorentzVec& a, const LorentzVec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
}

LorentzVec point_lift(const Vec3& x) {
  const double n2 = x.squaredNorm();
  return {{x.x(), x.y(), x.z(), 0.5 * (n2 - 1.0), 0.5 * (n2 + 1.0)}};
}

LorentzVec sphere_lift(const Vec3& x0, double r) {
  if (r == 0.0) fail(errc::out_of_scope, "sphere lift needs r != 0");
  const double n2 = x0.squaredNorm();
  LorentzVec p{{x0.x(), x0.y(), x0.z(), 0.5 * (n2 - r * r - 1.0), 0.5 * (n2 - r * r + 1.0)}};
  return (1.0 / r) * p;
}

LorentzVec conformal_gauss_map(const ChartGeometry& g) {
  const LorentzVec X = point_lift(g.f);
  const double fn = g.f.dot(g.nu);
  const LorentzVec N{{g.nu.x(), g.nu.y(), g.nu.z(), fn, fn}};
  return g.H * X + N;
}

namespace {

// Y as a degree-2 jet field from the degree-4 geometry jets
struct YJets {
  std::array<JetR<2>, 5> y;
};

YJets y_jets(const Immersion& s, cplx z) {
  GeometryOptions opt;
  opt.check_conformal = false;
  const auto g = geo_jets<4>(s, z, opt);
  auto f2x = g.f.x.truncate<2>();
  auto f2y = g.f.y.truncate<2>();
  auto f2z = g.f.z.truncate<2>();
  auto nux = g.nu.x.truncate<2>();
  auto nuy = g.nu.y.truncate<2>();
  auto nuz = g.nu.z.truncate<2>();
  auto H = g.H; // already degree 2
  auto n2 = f2x * f2x + f2y * f2y + f2z * f2z;
  auto fn = f2x * nux + f2y * nuy + f2z * nuz;
  YJets out;
  out.y[0] = H * f2x + nux;
  out.y[1] = H * f2y + nuy;
  out.y[2] = H * f2z + nuz;
  out.y[3] = H * (0.5 * (n2 - 1.0)) + fn;
  out.y[4] = H * (0.5 * (n2 + 1.0)) + fn;
  return out;
}

} // namespace

double conformality_residual(const Immersion& s, cplx z) {
  const auto Y = y_jets(s, z);
  GeometryOptions opt;
  opt.check_conformal = false;
  const auto geo = geometry_at(s, z, opt);
  const double factor = geo.H * geo.H - geo.K;

  double resid = 0.0;
  // dY_i in the chart directions
  std::array<double, 5> yu, yv;
  for (int i = 0; i < 5; ++i) {
    yu[static_cast<std::size_t>(i)] = Y.y[static_cast<std::size_t>(i)].deriv(1, 0);
    yv[static_cast<std::size_t>(i)] = Y.y[static_cast<std::size_t>(i)].deriv(0, 1);
  }
  auto lorentz = [](const std::array<double, 5>& a, const std::array<double, 5>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4];
  };
  const double g11 = std::exp(geo.lambda), g22 = g11;
  resid = std::max(resid, std::abs(lorentz(yu, yu) - factor * g11));
  resid = std::max(resid, std::abs(lorentz(yv, yv) - factor * g22));
  resid = std::max(resid, std::abs(lorentz(yu, yv)));
  return resid;
}

cplx quartic_form(const Immersion& s, cplx z) {
  GeometryOptions opt;
  opt.check_conformal = false;
  const auto g = geo_jets<4>(s, z, opt);
  const cplx H_z = dz(g.H).value();
  const cplx H_zz = dz(dz(g.H)).value();
  const cplx phi = g.phi.value();
  // (phi e^{-lambda})_z e^{lambda} = phi_z - phi lambda_z
  auto lam2 = g.lambda.truncate<2>();
  const cplx lam_z = dz(lam2).value();
  const cplx phi_z = dz(g.phi).value();
  const double H = g.H.value();
  return phi * H_zz - H_z * (phi_z - phi * lam_z) + 0.25 * phi * phi * H * H;
}

cplx quartic_form_fd(const Immersion& s, cplx z, double h) {
  GeometryOptions opt;
  opt.check_conformal = false;
  auto yv = [&](cplx w) {
    const auto g = geometry_at(s, w, opt);
    return conformal_gauss_map(g);
  };
  // Y_zz = (Y_uu - Y_vv - 2 i Y_uv) / 4 by second central differences
  std::array<cplx, 5> yzz;
  const LorentzVec c0 = yv(z);
  const LorentzVec up = yv(z + h), um = yv(z - h);
  const LorentzVec vp = yv(z + cplx(0, h)), vm = yv(z - cplx(0, h));
  const LorentzVec pp = yv(z + cplx(h, h)), pm = yv(z + cplx(h, -h));
  const LorentzVec mp = yv(z + cplx(-h, h)), mm = yv(z + cplx(-h, -h));
  for (int i = 0; i < 5; ++i) {
    const double yuu = (up[i] - 2.0 * c0[i] + um[i]) / (h * h);
    const double yvv = (vp[i] - 2.0 * c0[i] + vm[i]) / (h * h);
    const double yuv = (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * h * h);
    yzz[static_cast<std::size_t>(i)] = 0.25 * (cplx(yuu - yvv, 0.0) - cplx(0.0, 2.0) * yuv);
  }
  cplx q(0.0);
  for (int i = 0; i < 4; ++i) q += yzz[static_cast<std::size_t>(i)] * yzz[static_cast<std::size_t>(i)];
  q -= yzz[4] * yzz[4];
  return q;
}

double quartic_scaled(const Immersion& s, cplx z, double scale) {
  GeometryOptions opt;
  opt.check_conformal = false;
  const auto g = geometry_at(s, z, opt);
  const cplx q = quartic_form(s, z);
  const double s2 = scale * scale;
  return std::abs(q) * std::exp(-2.0 * g.lambda) * s2 * s2;
}

HolomorphyResult holomorphy_residual(const Immersion& s, const Rect& r, int n, double fd_h,
                                     double scale) {
  HolomorphyResult out;
  const double du = (r.u1 - r.u0) / (n + 1);
  const double dv = (r.v1 - r.v0) / (n + 1);
  GeometryOptions opt;
  opt.check_conformal = false;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const cplx z(r.u0 + i * du, r.v0 + j * dv);
      bool skip = false;
      for (const auto& p : s.punctures)
        if (!p.at.at_infinity && std::abs(z - p.at.z) < 0.15) skip = true;
      if (skip) continue;
      const cplx qe = quartic_form(s, z + cplx(fd_h, 0.0));
      const cplx qw = quartic_form(s, z - cplx(fd_h, 0.0));
      const cplx qn = quartic_form(s, z + cplx(0.0, fd_h));
      const cplx qs = quartic_form(s, z - cplx(0.0, fd_h));
      const cplx dbar = 0.5 * ((qe - qw) / (2.0 * fd_h) + cplx(0.0, 1.0) * (qn - qs) / (2.0 * fd_h));
      out.max_dbar = std::max(out.max_dbar, std::abs(dbar));
      const cplx q0 = quartic_form(s, z);
      out.max_q = std::max(out.max_q, std::abs(q0));
      const auto g = geometry_at(s, z, opt);
      const double s2 = scale * scale;
      out.max_scaled = std::max(out.max_scaled, std::abs(q0) * std::exp(-2.0 * g.lambda) * s2 * s2);
    }
  return out;
}

namespace {

PoleProbe fit_probe(const std::function<double(double)>& ring_max, const std::vector<double>& radii,
                    double zero_floor) {
  PoleProbe out;
  std::vector<double> lx, ly;
  double biggest = 0.0;
  for (double r : radii) {
    const double q = ring_max(r);
    biggest = std::max(biggest, q);
    lx.push_back(std::log(r));
    ly.push_back(std::log(std::max(q, 1e-300)));
  }
  if (biggest <= zero_floor) {
    out.identically_zero = true;
    out.passes = true;
    return out;
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.exponent = -slope;
  out.passes = out.exponent <= 2.25;
  return out;
}

} // namespace

PoleProbe pole_order_probe(const Immersion& s, cplx p, const std::vector<double>& radii,
                           double zero_floor) {
  return fit_probe(
      [&](double r) {
        double m = 0.0;
        for (int k = 0; k < 8; ++k) {
          const double th = 2.0 * M_PI * (k + 0.5) / 8.0;
          m = std::max(m, std::abs(quartic_form(s, p + r * cplx(std::cos(th), std::sin(th)))));
        }
        return m;
      },
      radii, zero_floor);
}

PoleProbe pole_order_probe_field(const std::function<cplx(cplx)>& q, cplx p,
                                 const std::vector<double>& radii, double zero_floor) {
  return fit_probe(
      [&](double r) {
        double m = 0.0;
        for (int k = 0; k < 8; ++k) {
          const double th = 2.0 * M_PI * (k + 0.5) / 8.0;
          m = std::max(m, std::abs(q(p + r * cplx(std::cos(th), std::sin(th)))));
        }
        return m;
      },
      radii, zero_floor);
}

} // namespace wlab
