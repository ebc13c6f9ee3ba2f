#include "wlab/moebius.hpp"

#include <cmath>

namespace wlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec3 invert_point(const Vec3& x, const Vec3& x0) {
  const Vec3 d = x - x0;
  const double n2 = d.squaredNorm();
  if (n2 == 0.0) fail(errc::center_hit, "inversion of the center point");
  return x0 + d / n2;
}

namespace {

template <int N>
VJet<N> inverted_jets(const Immersion& s, const Vec3& x0, cplx z) {
  VJet<N> f;
  if constexpr (N == 2)
    f = s.jet2(z);
  else if constexpr (N == 3)
    f = s.jet3(z);
  else
    f = s.jet4(z);
  f.x.c[0] -= x0.x();
  f.y.c[0] -= x0.y();
  f.z.c[0] -= x0.z();
  auto inv = recip(dot(f, f));
  return {f.x * inv + x0.x(), f.y * inv + x0.y(), f.z * inv + x0.z()};
}

} // namespace

Immersion invert_immersion(const Immersion& s, const Vec3& x0, const InversionOptions& opt) {
  if (!opt.probes.empty()) {
    for (cplx z : opt.probes) {
      const double d = (s.eval(z) - x0).norm();
      if (d < opt.clearance)
        fail(errc::center_on_surface, "inversion center too close to the surface");
    }
  }
  Immersion out = s;
  out.jet2 = [s, x0](cplx z) { return inverted_jets<2>(s, x0, z); };
  out.jet3 = [s, x0](cplx z) { return inverted_jets<3>(s, x0, z); };
  out.jet4 = [s, x0](cplx z) { return inverted_jets<4>(s, x0, z); };
  // ends become finite-area branch points of multiplicity k+1 and vice versa
  out.punctures.clear();
  for (const auto& p : s.punctures) {
    ChartPuncture q = p;
    if (p.kind == ChartPuncture::Kind::end) {
      q.kind = ChartPuncture::Kind::branch_point;
      q.order = p.order + 1;
    } else {
      q.kind = ChartPuncture::Kind::end;
      q.order = p.order - 1;
    }
    out.punctures.push_back(q);
  }
  return out;
}

CatalogSurface invert_surface(const CatalogSurface& cs, const Vec3& x0, const InversionOptions& opt) {
  CatalogSurface out = cs;
  InversionOptions o = opt;
  if (o.probes.empty()) {
    for (int i = 0; i < 16; ++i) {
      const double th = 2.0 * kPi * i / 16.0;
      o.probes.push_back(0.3 * cplx(std::cos(th), std::sin(th)));
      o.probes.push_back(1.7 * cplx(std::cos(th), std::sin(th)));
    }
  }
  for (auto& z : o.probes)
    for (const auto& p : cs.immersion.punctures)
      if (!p.at.at_infinity && std::abs(z - p.at.z) < 0.05) z += cplx(0.08, 0.06);
  out.immersion = invert_immersion(cs.immersion, x0, o);
  out.name = cs.name + ":inverted";
  out.minimal = false;
  return out;
}

Divisor end_divisor(const Immersion& s) {
  Divisor d;
  d.kind = Divisor::Kind::ends;
  for (const auto& p : s.punctures)
    if (p.kind == ChartPuncture::Kind::end) d.entries.push_back({p.at, p.order});
  return d;
}

Divisor branch_divisor(const Immersion& s) {
  Divisor d;
  d.kind = Divisor::Kind::branch_points;
  for (const auto& p : s.punctures)
    if (p.kind == ChartPuncture::Kind::branch_point) d.entries.push_back({p.at, p.order});
  return d;
}

InversionReport verify_inversion_identities(const CatalogSurface& cs, const Vec3& x0,
                                            const Divisor& ends, const Divisor& preimages,
                                            const QuadOptions& opt) {
  InversionReport rep;
  rep.end_term = 4.0 * kPi * ends.total_multiplicity();
  rep.preimage_term = 4.0 * kPi * preimages.total_multiplicity();

  const auto dom_before = IntegrationDomain::for_surface(cs);
  const CatalogSurface inv = invert_surface(cs, x0);
  const auto dom_after = IntegrationDomain::for_surface(inv);

  rep.w_before = integrate(dom_before, Density::h2, opt).value;
  rep.w_after = integrate(dom_after, Density::h2, opt).value;
  rep.a2_before = integrate(dom_before, Density::a2, opt).value;
  rep.a2_after = integrate(dom_after, Density::a2, opt).value;
  rep.k_before = integrate(dom_before, Density::k, opt).value;
  rep.k_after = integrate(dom_after, Density::k, opt).value;

  const double transfer = rep.end_term - rep.preimage_term;
  rep.residual_k = std::abs(rep.k_after - (rep.k_before + transfer));
  rep.residual_w = std::abs(rep.w_after - (rep.w_before + transfer));
  rep.residual_a2 = std::abs(rep.a2_after - (rep.a2_before + 2.0 * transfer));
  return rep;
}

namespace {

struct LineFit {
  double slope, intercept, rms;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  LineFit fit{};
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - fit.slope * xs[i] - fit.intercept;
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

} // namespace

std::vector<double> default_fit_radii() {
  std::vector<double> r;
  for (int i = 0; i <= 8; ++i) r.push_back(1e-2 * std::pow(10.0, -0.25 * i)); // 1e-2 .. 1e-4
  return r;
}

MultiplicityFit estimate_branch_multiplicity(const Immersion& s, cplx p,
                                             const std::vector<double>& radii) {
  if (radii.size() < 4) fail(errc::inconsistent_fit, "need at least 4 radii for the fit");
  // branch point image: limit along the smallest circle
  Vec3 fp = Vec3::Zero();
  {
    const double r0 = radii.back() * 1e-2;
    for (int k = 0; k < 4; ++k) {
      const double th = 2.0 * kPi * k / 4.0;
      fp += s.eval(p + r0 * cplx(std::cos(th), std::sin(th)));
    }
    fp /= 4.0;
  }
  std::vector<double> lx, ly, lg;
  for (double r : radii) {
    double dist = 0.0, grad = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double th = 2.0 * kPi * (k + 0.5) / 8.0;
      const cplx z = p + r * cplx(std::cos(th), std::sin(th));
      dist += (s.eval(z) - fp).norm();
      const auto j = s.jet2(z);
      const Vec3 fu(j.x.deriv(1, 0), j.y.deriv(1, 0), j.z.deriv(1, 0));
      const Vec3 fv(j.x.deriv(0, 1), j.y.deriv(0, 1), j.z.deriv(0, 1));
      grad += std::sqrt(fu.squaredNorm() + fv.squaredNorm());
    }
    lx.push_back(std::log(r));
    ly.push_back(std::log(dist / 8.0));
    lg.push_back(std::log(grad / 8.0));
  }
  const LineFit fit = least_squares(lx, ly);
  const LineFit gfit = least_squares(lx, lg);
  MultiplicityFit out;
  out.slope = fit.slope;
  out.gradient_slope = gfit.slope;
  out.m = static_cast<int>(std::lround(fit.slope));
  const double dev = std::abs(fit.slope - out.m);
  if (dev > 0.25 || out.m < 1)
    fail(errc::inconsistent_fit, "distance growth is not an integer power");
  if (std::abs(gfit.slope - (out.m - 1)) > 0.35)
    fail(errc::inconsistent_fit, "gradient growth disagrees with the multiplicity");
  out.confidence = 1.0 - std::min(1.0, fit.rms / 0.25);
  return out;
}

LogCurvatureFit curvature_log_fit(const Immersion& s, cplx p, const std::vector<double>& radii) {
  if (radii.size() < 4) fail(errc::inconsistent_fit, "need at least 4 radii for the fit");
  GeometryOptions go;
  go.check_conformal = false;
  std::vector<double> xs, ys;
  for (double r : radii) {
    double anorm = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double th = 2.0 * kPi * (k + 0.5) / 8.0;
      const auto g = geometry_at(s, p + r * cplx(std::cos(th), std::sin(th)), go);
      anorm += std::sqrt(std::max(0.0, g.A_norm_sq));
    }
    xs.push_back(std::abs(std::log(r)));
    ys.push_back(anorm / 8.0);
  }
  const LineFit fit = least_squares(xs, ys);
  LogCurvatureFit out;
  out.A0 = std::max(0.0, fit.slope);
  out.offset = fit.intercept;
  double scale = 0.0;
  for (double y : ys) scale = std::max(scale, std::abs(y));
  out.residual = fit.rms / std::max(scale, 1e-300);
  return out;
}

bool parity_check(const Divisor& d) {
  if (d.kind != Divisor::Kind::branch_points) return true;
  if (d.entries.size() != 1) return true;
  return d.entries[0].order % 2 != 0;
}

} // namespace wlab
