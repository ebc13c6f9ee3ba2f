#include "wlab/weierstrass.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace wlab {

std::array<Form1, 3> induced_forms(const WeierstrassData& d) {
  const RationalFn one = RationalFn::constant(cplx(1.0));
  const RationalFn g2 = d.g * d.g;
  Form1 p1 = (cplx(0.5) * (one - g2)) * d.omega;
  Form1 p2 = (cplx(0.0, 0.5) * (one + g2)) * d.omega;
  Form1 p3 = d.g * d.omega;
  return {p1, p2, p3};
}

EndInfo end_classification(const WeierstrassData& d, const PointOnSphere& p) {
  bool declared = false;
  for (const auto& q : d.punctures)
    if (q == p) declared = true;
  if (!declared) fail(errc::not_a_puncture, "point is not a declared puncture");

  const auto phi = induced_forms(d);
  EndInfo info;
  int maxorder = 0;
  double maxres = 0.0;
  for (int i = 0; i < 3; ++i) {
    info.pole_orders[i] = phi[i].is_zero() ? 0 : phi[i].pole_order(p);
    maxorder = std::max(maxorder, info.pole_orders[i]);
    maxres = std::max(maxres, std::abs(phi[i].residue(p)));
  }
  // end multiplicity k+1 = (max pole order) - 1
  info.branch_order_k = std::max(0, maxorder - 2);
  info.planar = maxres < 1e-9;
  info.embedded = maxorder <= 2;
  return info;
}

double period_check(const WeierstrassData& d) {
  const auto phi = induced_forms(d);
  double worst = 0.0;
  for (const auto& f : phi) {
    if (f.is_zero()) continue;
    for (const auto& pole : finite_poles(f.x)) {
      const cplx res = f.x.residue_at(pole.z, pole.multiplicity);
      worst = std::max(worst, std::abs((cplx(0.0, 2.0 * M_PI) * res).real()));
    }
  }
  return worst;
}

namespace {

/// closed-form antiderivative of a rational function
struct Antideriv {
  Poly<cplx> poly_int; // antiderivative of the polynomial part
  struct PoleTerm {
    cplx p;
    std::vector<cplx> coef; // coef[j-1] multiplies (z-p)^{-j}
  };
  std::vector<PoleTerm> poles;
  cplx offset{};

  static Antideriv build(const RationalFn& x) {
    Antideriv F;
    auto [q, r] = divrem(x.num, x.den);
    F.poly_int.c.assign(q.c.size() + 1, cplx(0));
    for (std::size_t i = 0; i < q.c.size(); ++i) F.poly_int.c[i + 1] = q.c[i] / cplx(double(i + 1));
    F.poly_int.trim();
    for (const auto& pole : poly_roots(x.den)) {
      PoleTerm t;
      t.p = pole.z;
      const int m = pole.multiplicity;
      Poly<cplx> ns = r.shifted(t.p);
      Poly<cplx> ds = x.den.shifted(t.p);
      Poly<cplx> qq;
      qq.c.assign(ds.c.begin() + m, ds.c.end());
      auto s = series_div(ns, qq, m - 1);
      t.coef.resize(static_cast<std::size_t>(m));
      for (int j = 1; j <= m; ++j) t.coef[static_cast<std::size_t>(j - 1)] = s[static_cast<std::size_t>(m - j)];
      F.poles.push_back(std::move(t));
    }
    return F;
  }

  cplx eval(cplx z) const {
    cplx acc = poly_int.eval(z) - offset;
    for (const auto& t : poles) {
      const cplx w = z - t.p;
      if (std::abs(t.coef[0]) > 0.0) acc += t.coef[0] * std::log(w);
      cplx wp = w;
      for (std::size_t j = 2; j <= t.coef.size(); ++j) {
        acc += t.coef[j - 1] / (cplx(1.0) - cplx(double(j))) / wp;
        wp *= w;
      }
    }
    return acc;
  }
};

struct WeierstrassSrc {
  struct Data {
    std::array<Antideriv, 3> F;
    std::array<RationalFn, 3> x; // the form coefficients, F_i' = x_i
    Vec3 translate;
  };
  std::shared_ptr<const Data> data;

  template <int N>
  VJet<N> jets(cplx z) const {
    VJet<N> out;
    JetR<N>* comp[3] = {&out.x, &out.y, &out.z};
    for (int i = 0; i < 3; ++i) {
      const RationalFn& x = data->x[static_cast<std::size_t>(i)];
      // Taylor coefficients of x about z by shifted series division;
      // F has coefficients A_k = s_{k-1} / k
      const Poly<cplx> ns = x.num.shifted(z);
      const Poly<cplx> ds = x.den.shifted(z);
      const double d0 = std::abs(ds.c.empty() ? cplx(0) : ds.c[0]);
      if (d0 < 1e-13 * std::max(coeff_scale(ds.c), 1e-300))
        fail(errc::pole_at_point, "immersion jet requested at a puncture");
      const auto s = series_div(ns, ds, N - 1);
      std::array<cplx, N + 1> a{};
      a[0] = data->F[static_cast<std::size_t>(i)].eval(z);
      for (int k = 1; k <= N; ++k) a[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k - 1)] / double(k);
      *comp[i] = re_from_holomorphic<N>(a);
      comp[i]->c[0] += data->translate[i];
    }
    return out;
  }
};

ChartPuncture::Kind kEnd = ChartPuncture::Kind::end;

} // namespace

Immersion immersion_from_data(const WeierstrassData& d, const ImmersionOptions& opt) {
  const double period = period_check(d);
  if (period > opt.period_tol && !opt.accept_cut_domain)
    fail(errc::multi_valued, "real periods do not close; immersion is multi-valued");

  const auto phi = induced_forms(d);
  auto data = std::make_shared<WeierstrassSrc::Data>();
  data->translate = opt.translate;
  for (int i = 0; i < 3; ++i) {
    data->F[static_cast<std::size_t>(i)] = Antideriv::build(phi[static_cast<std::size_t>(i)].x);
    data->x[static_cast<std::size_t>(i)] = phi[static_cast<std::size_t>(i)].x;
    data->F[static_cast<std::size_t>(i)].offset = data->F[static_cast<std::size_t>(i)].eval(d.basepoint);
  }

  Immersion s = make_immersion(WeierstrassSrc{data});
  for (const auto& p : d.punctures) {
    const EndInfo info = end_classification(d, p);
    s.punctures.push_back({p, kEnd, info.branch_order_k});
  }
  s.conformal_chart = true;
  s.domain = {-8.0, 8.0, -8.0, 8.0};
  return s;
}

Vec3 immersion_value_by_quadrature(const WeierstrassData& d, cplx z, const Vec3& translate) {
  const auto phi = induced_forms(d);
  // straight segment with a deterministic midpoint detour around any pole
  std::vector<cplx> pts = {d.basepoint, z};
  auto near_pole = [&](const std::vector<cplx>& path) {
    for (const auto& f : phi)
      for (const auto& pole : finite_poles(f.x))
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          const cplx a = path[i], b = path[i + 1];
          const cplx dd = b - a;
          double t = ((pole.z - a) * std::conj(dd)).real() / std::max(1e-300, std::norm(dd));
          t = std::clamp(t, 0.0, 1.0);
          if (std::abs(pole.z - (a + t * dd)) < 1e-3) return pole.z;
        }
    return cplx(1e308, 0.0);
  };
  for (int guard = 0; guard < 8; ++guard) {
    const cplx bad = near_pole(pts);
    if (bad.real() > 1e307) break;
    // detour through a perpendicular offset at the closest approach
    std::vector<cplx> refined;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      refined.push_back(pts[i]);
      const cplx a = pts[i], b = pts[i + 1];
      const cplx dd = b - a;
      double t = ((bad - a) * std::conj(dd)).real() / std::max(1e-300, std::norm(dd));
      if (t > 0.0 && t < 1.0 && std::abs(bad - (a + t * dd)) < 1e-3) {
        const cplx perp = cplx(0, 1) * dd / std::abs(dd);
        const double sep = std::max(0.5 * std::abs(dd), 0.05);
        refined.push_back(a + t * dd + sep * perp);
      }
    }
    refined.push_back(pts.back());
    pts = refined;
  }
  Vec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = path_integral(phi[static_cast<std::size_t>(i)], pts).real() + translate[i];
  return out;
}

TrinoidDerived trinoid_coefficients(const TrinoidParams& p) {
  TrinoidDerived out{};
  out.c = 0.0;
  out.theta = 1.0;
  if (p.degenerate_case) {
    out.a = 1.0 / std::sqrt(3.0);
    out.d = 1.0;
    if (p.B == 0.0) fail(errc::no_real_root, "degenerate trinoid needs B != 0");
    out.B = p.B;
    return out;
  }
  if (p.r2 == 0.0) fail(errc::no_real_root, "trinoid parameters need r2 != 0");
  // 12 a^4 - (r2^2 + 3 r1^2 + 4) a^2 - r1^2 = 0, positive root in a^2
  const double A = p.r2 * p.r2 + 3.0 * p.r1 * p.r1 + 4.0;
  const double disc = A * A + 48.0 * p.r1 * p.r1;
  const double a_sq = (A + std::sqrt(disc)) / 24.0;
  if (!(a_sq > 0.0)) fail(errc::no_real_root, "no admissible positive root for a^2");
  out.a = std::sqrt(a_sq);
  out.d = (1.0 - p.r1 / out.a) / 3.0;
  // B fixed by period closure: the phi_2 residues at +-1/sqrt(3) vanish iff
  // B^2 = (3a^2-1)/((3d+1)(1-d)).  For r1 = 0 this equals 3|3a^2-1|^2/r2^2.
  const double b_sq = (3.0 * a_sq - 1.0) / ((3.0 * out.d + 1.0) * (1.0 - out.d));
  if (!(b_sq > 0.0)) fail(errc::no_real_root, "period closure admits no real B");
  out.B = std::sqrt(b_sq);
  return out;
}

double trinoid_B_squared(double a_sq, double r2) {
  const double t = std::abs(3.0 * a_sq - 1.0);
  return 3.0 * t * t / (r2 * r2);
}

WeierstrassData trinoid_data(const TrinoidParams& p) {
  const TrinoidDerived q = trinoid_coefficients(p);
  WeierstrassData d;
  const cplx a(q.a, 0.0);
  d.g = RationalFn(Poly<cplx>{cplx(q.B * q.d), cplx(q.B * q.c), cplx(q.B)}, Poly<cplx>{a, cplx(1.0)});
  Poly<cplx> za{a, cplx(1.0)};
  Poly<cplx> z2{cplx(-1.0 / 3.0), cplx(0.0), cplx(1.0)};
  d.omega = Form1(RationalFn(cplx(q.theta) * (za * za), z2 * z2));
  const double s3 = 1.0 / std::sqrt(3.0);
  d.punctures = {PointOnSphere::finite(cplx(s3, 0.0)), PointOnSphere::finite(cplx(-s3, 0.0)),
                 PointOnSphere::infinity()};
  d.basepoint = cplx(0.0, 0.0);
  return d;
}

WeierstrassData catenoid_data() {
  WeierstrassData d;
  d.g = RationalFn::variable();
  d.omega = Form1(RationalFn(Poly<cplx>::one(), Poly<cplx>{cplx(0.0), cplx(0.0), cplx(1.0)}));
  d.punctures = {PointOnSphere::finite(cplx(0.0)), PointOnSphere::infinity()};
  d.basepoint = cplx(1.0, 0.0);
  return d;
}

WeierstrassData enneper_data() {
  WeierstrassData d;
  d.g = RationalFn::variable();
  d.omega = Form1(RationalFn::constant(cplx(1.0)));
  d.punctures = {PointOnSphere::infinity()};
  d.basepoint = cplx(0.0, 0.0);
  return d;
}

namespace {

std::vector<double> parse_params(const std::string& name, std::size_t open) {
  std::vector<double> out;
  if (name.back() != ')') fail(errc::parse_error, "malformed surface name: " + name);
  std::string body = name.substr(open + 1, name.size() - open - 2);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      fail(errc::parse_error, "bad surface parameter '" + tok + "'");
    }
  }
  return out;
}

Vec3 clearance_center(const Immersion& s, const std::vector<cplx>& probes) {
  // centroid of probe images, nudged along each axis; keep the candidate
  // farthest from the sampled surface
  std::vector<Vec3> pts;
  Vec3 centroid = Vec3::Zero();
  for (cplx z : probes) {
    pts.push_back(s.eval(z));
    centroid += pts.back();
  }
  centroid /= static_cast<double>(pts.size());
  auto mindist = [&](const Vec3& c) {
    double m = 1e300;
    for (const auto& p : pts) m = std::min(m, (p - c).norm());
    return m;
  };
  Vec3 best = centroid;
  double bestd = mindist(centroid);
  for (int axis = 0; axis < 3; ++axis)
    for (double off : {-0.5, 0.5, -0.25, 0.25}) {
      Vec3 c = centroid;
      c[axis] += off;
      const double m = mindist(c);
      if (m > bestd) {
        bestd = m;
        best = c;
      }
    }
  return best;
}

} // namespace

CatalogSurface lookup_surface(const std::string& name) {
  CatalogSurface cs;
  const std::size_t open = name.find('(');
  const std::string head = name.substr(0, open);
  std::vector<double> par;
  if (open != std::string::npos) par = parse_params(name, open);
  cs.name = name;

  if (head == "sphere") {
    const double r = par.empty() ? 1.0 : par[0];
    cs.immersion = surfaces::sphere(r);
    cs.chart_radius = 6.0;
    cs.default_center = Vec3(0.0, 0.0, 3.0 * r);
    return cs;
  }
  if (head == "plane") {
    cs.immersion = surfaces::plane();
    cs.minimal = true;
    cs.default_center = Vec3(0.0, 0.0, 1.0);
    return cs;
  }
  if (head == "torus" || head == "clifford-torus") {
    const double R = head == "torus" && par.size() > 0 ? par[0] : std::sqrt(2.0);
    const double a = head == "torus" && par.size() > 1 ? par[1] : 1.0;
    cs.immersion = surfaces::torus(R, a);
    cs.chi_closed = 0;
    cs.default_center = Vec3(0.0, 0.0, 2.0 * a);
    return cs;
  }
  if (head == "ellipsoid") {
    const double a = par.size() > 0 ? par[0] : 1.3;
    const double c = par.size() > 1 ? par[1] : 0.7;
    cs.immersion = surfaces::spheroid(a, c);
    cs.default_center = Vec3(0.0, 0.0, 2.0 * std::max(a, c));
    return cs;
  }

  WeierstrassData d;
  ImmersionOptions opt;
  if (head == "catenoid") {
    d = catenoid_data();
    opt.translate = Vec3(-1.0, 0.0, 0.0); // axis through the origin
    cs.gauss_map_degree = 1;
    cs.default_center = Vec3::Zero();
    cs.chart_radius = 4.0;
  } else if (head == "enneper") {
    d = enneper_data();
    cs.gauss_map_degree = 1;
    cs.default_center = Vec3(0.0, 0.0, 1.0);
    cs.chart_radius = 4.0;
  } else if (head == "trinoid") {
    TrinoidParams tp;
    if (par.size() >= 2) {
      tp.r1 = par[0];
      tp.r2 = par[1];
    }
    d = trinoid_data(tp);
    cs.gauss_map_degree = 2;
    cs.chart_radius = 4.0;
  } else if (head == "trinoid-sym") {
    TrinoidParams tp;
    tp.degenerate_case = true;
    tp.B = par.empty() ? 1.0 : par[0];
    d = trinoid_data(tp);
    cs.gauss_map_degree = 2;
    cs.chart_radius = 4.0;
  } else {
    fail(errc::parse_error, "unknown surface '" + name + "'");
  }

  cs.minimal = true;
  cs.immersion = immersion_from_data(d, opt);
  cs.data = d;
  if (head == "trinoid" || head == "trinoid-sym") {
    std::vector<cplx> probes;
    for (int i = 0; i < 12; ++i) {
      const double th = 2.0 * M_PI * i / 12.0;
      probes.push_back(0.25 * cplx(std::cos(th), std::sin(th)));
      probes.push_back(1.5 * cplx(std::cos(th), std::sin(th)));
    }
    cs.default_center = clearance_center(cs.immersion, probes);
  }
  return cs;
}

} // namespace wlab
