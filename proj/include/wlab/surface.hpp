#pragma once

// Pointwise differential geometry of a parametric immersion on a chart.
// Immersions expose truncated Taylor jets of f; every curvature quantity is
// derived from those jets by exact truncated-series arithmetic, so H, K, the
// Hopf differential and their derivatives carry no finite-difference error
// when the jet source is analytic.

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "wlab/jet.hpp"
#include "wlab/meromorphic.hpp"

namespace wlab {

using Vec3 = Eigen::Vector3d;

struct Rect {
  double u0 = -1.0, u1 = 1.0, v0 = -1.0, v1 = 1.0;
  bool contains(cplx z) const {
    return z.real() >= u0 && z.real() <= u1 && z.imag() >= v0 && z.imag() <= v1;
  }
};

/// Chart point where the immersion degenerates: a complete end (stores branch
/// order k, multiplicity k+1) or a finite-area branch point (multiplicity m).
struct ChartPuncture {
  enum class Kind { end, branch_point };
  PointOnSphere at;
  Kind kind = Kind::end;
  int order = 0; ///< k for ends, m for branch points
  int multiplicity() const { return kind == Kind::end ? order + 1 : order; }
};

/// how the chart covers the surface, for integration-domain construction
enum class ChartKind {
  plane,           ///< z plane, possibly punctured, infinity handled in a log chart
  cylinder_native, ///< x periodic, surface closes up (or ends) as y -> +-inf
  compact,         ///< the domain rectangle covers the closed surface exactly
};

struct Immersion {
  std::function<VJet<2>(cplx)> jet2;
  std::function<VJet<3>(cplx)> jet3;
  std::function<VJet<4>(cplx)> jet4;
  ChartKind chart_kind = ChartKind::plane;
  Rect domain;
  std::vector<ChartPuncture> punctures;
  bool conformal_chart = true;
  double conformal_tol = 1e-6; ///< residual the chart is allowed (FD jets relax it)
  double chart_scale = 1.0;

  Vec3 eval(cplx z) const {
    const auto j = jet2(z);
    return Vec3(j.x.value(), j.y.value(), j.z.value());
  }
  bool is_puncture(cplx z, double r = 1e-12) const {
    for (const auto& p : punctures)
      if (!p.at.at_infinity && std::abs(z - p.at.z) <= r) return true;
    return false;
  }
};

/// Build the three jet-order entry points from one templated source.
/// Source must provide `template <int N> VJet<N> jets(cplx) const`.
template <class Src>
Immersion make_immersion(Src src) {
  Immersion s;
  s.jet2 = [src](cplx z) { return src.template jets<2>(z); };
  s.jet3 = [src](cplx z) { return src.template jets<3>(z); };
  s.jet4 = [src](cplx z) { return src.template jets<4>(z); };
  return s;
}

/// Pointwise jet of the immersion geometry on a conformal chart.
struct ChartGeometry {
  Vec3 f;
  Vec3 nu;
  double lambda;            ///< metric e^lambda |dz|^2
  double H;                 ///< mean curvature, H = (k1+k2)/2
  double K;                 ///< Gauss curvature
  cplx phi;                 ///< Hopf differential coefficient 2<f_zz, nu>
  double A_norm_sq;         ///< |A|^2 = k1^2 + k2^2
  double tracefree_norm_sq; ///< |Å|^2 = |A|^2 - 2 H^2
  double sqrt_det_g;        ///< chart area density
  double conf_residual;     ///< |E-G| + 2|F| relative to E+G
};

struct GeometryOptions {
  double degenerate_eps = 1e-12;
  double conformal_tol = 1e-6; ///< relative residual triggering NotConformal
  bool check_conformal = true;
};

/// geometry quantities as jets, for operators that need derivatives of H
template <int N>
struct GeoJets {
  V3<JetR<N>> f;
  V3<JetR<N - 1>> fu, fv;
  JetR<N - 1> E, F, G;
  V3<JetR<N - 1>> nu;
  JetR<N - 1> lambda;
  JetR<N - 2> H, K;
  JetC<N - 2> phi;
};

template <int N>
GeoJets<N> geo_jets(const Immersion& s, cplx z, const GeometryOptions& opt = {});

ChartGeometry geometry_at(const Immersion& s, cplx z, const GeometryOptions& opt = {});

/// Euler-Lagrange operator  delta H + 2 H (H^2 - K)  on a conformal chart
double willmore_operator(const Immersion& s, cplx z, const GeometryOptions& opt = {});

/// |phi_zbar - e^lambda H_z|; an identity residual, ~0 on smooth immersions
double codazzi_residual(const Immersion& s, cplx z, const GeometryOptions& opt = {});

// --- jet sources -----------------------------------------------------------

/// degree-4 jets by central differences of a point evaluator, O(h^2) accurate
/// (optionally one Richardson level for O(h^4))
Immersion fd_immersion(std::function<Vec3(cplx)> eval, double h, bool richardson = false);

/// immersion precomposed with the holomorphic log-polar chart w -> p + e^{-iw}
/// (Re w = angle, Im w = log radius; covers punctured neighbourhoods and the
/// infinity end in one convention)
Immersion exp_chart(const Immersion& s, cplx p);

/// lambda f(R . ) + t, jets transformed exactly
Immersion rigid_scaled(const Immersion& s, const Eigen::Matrix3d& R, const Vec3& t, double scale);

namespace surfaces {
/// round sphere of radius r in the stereographic chart (H = +1/r)
Immersion sphere(double r = 1.0);
/// unit catenoid, conformal cylinder chart z = u + iv -> (cosh v cos u, cosh v sin u, v)
Immersion catenoid_classical();
/// plane (u, v, 0)
Immersion plane();

/// isothermal surface of revolution: profile (r(t), h(t)) reparametrised by
/// the arc condition t' = r/sqrt(r'^2+h'^2); chart z = u + iv with u the angle
struct RevolutionProfile {
  std::function<Jet1<double, 5>(Jet1<double, 5>)> radius;
  std::function<Jet1<double, 5>(Jet1<double, 5>)> height;
  double t_ref = 0.0; ///< profile parameter at v = 0
  double t_min = -1e300, t_max = 1e300;
};
Immersion revolution(RevolutionProfile profile);

/// torus of revolution, tube ratio R/a (R/a = sqrt(2) is Willmore-stationary)
Immersion torus(double R, double a);
/// ellipsoid of revolution with semi-axes (a, a, c), isothermal chart
Immersion spheroid(double a, double c);
} // namespace surfaces

} // namespace wlab
