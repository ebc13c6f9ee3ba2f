#pragma once

// The R^{4,1} machinery behind the quartic differential: point/sphere lifts
// into the Lorentz quadric, the conformal Gauss map Y = H X + N, its
// conformality identity, and the quartic form <Y_zz, Y_zz> dz^4 whose
// identical vanishing marks Moebius transforms of minimal surfaces.

#include <array>

#include "wlab/surface.hpp"

namespace wlab {

struct LorentzVec {
  std::array<double, 5> v{};

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  friend LorentzVec operator+(const LorentzVec& a, const LorentzVec& b) {
    LorentzVec r;
    for (int i = 0; i < 5; ++i) r.v[i] = a.v[i] + b.v[i];
    return r;
  }
  friend LorentzVec operator*(double s, const LorentzVec& a) {
    LorentzVec r;
    for (int i = 0; i < 5; ++i) r.v[i] = s * a.v[i];
    return r;
  }
};

/// signature (+,+,+,+,-) product
double inner(const LorentzVec& a, const LorentzVec& b);

/// light-cone lift X = (x, (|x|^2-1)/2, (|x|^2+1)/2); <X,X> = 0, X5 - X4 = 1
LorentzVec point_lift(const Vec3& x);

/// sphere lift P(S) = (x0, (|x0|^2-r^2-1)/2, (|x0|^2-r^2+1)/2)/r on the quadric
LorentzVec sphere_lift(const Vec3& x0, double r);

/// central-sphere lift Y = H X + N with N = (nu, <f,nu>, <f,nu>)
LorentzVec conformal_gauss_map(const ChartGeometry& g);

/// max_{i,j} |<dY_i, dY_j> - (H^2-K) g_ij|
double conformality_residual(const Immersion& s, cplx z);

/// quartic form coefficient via the curvature expression
///   Q = phi H_zz - H_z (phi e^{-lambda})_z e^lambda + phi^2 H^2 / 4
cplx quartic_form(const Immersion& s, cplx z);

/// independent route: central differences of the pointwise Y field
cplx quartic_form_fd(const Immersion& s, cplx z, double h);

/// chart-independent magnitude |Q| e^{-2 lambda} scale^4
double quartic_scaled(const Immersion& s, cplx z, double scale);

struct HolomorphyResult {
  double max_dbar = 0.0;   ///< max |dQ/dzbar| over the grid (central differences)
  double max_q = 0.0;      ///< max |Q| over the grid
  double max_scaled = 0.0; ///< max scaled |Q|
};

/// sweep an n x n grid over the rectangle, skipping puncture neighbourhoods
HolomorphyResult holomorphy_residual(const Immersion& s, const Rect& r, int n, double fd_h,
                                     double scale = 1.0);

struct PoleProbe {
  bool identically_zero = false;
  double exponent = 0.0; ///< fitted sigma in |Q| ~ |z-p|^{-sigma}
  bool passes = false;   ///< sigma <= 2.25
};

/// fit the growth of |Q| toward a branch puncture
PoleProbe pole_order_probe(const Immersion& s, cplx p, const std::vector<double>& radii,
                           double zero_floor = 1e-6);
/// same fit on a synthetic field (oracle path for the probe itself)
PoleProbe pole_order_probe_field(const std::function<cplx(cplx)>& q, cplx p,
                                 const std::vector<double>& radii, double zero_floor = 1e-6);

} // namespace wlab
