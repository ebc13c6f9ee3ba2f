#pragma once

// Weierstrass-Enneper representation: complete branched minimal immersions
// from (g, omega) data, end classification, period closure, and the surface
// catalog (catenoid, Enneper, the Lopez trinoid family).

#include <array>
#include <optional>
#include <string>

#include "wlab/meromorphic.hpp"
#include "wlab/surface.hpp"

namespace wlab {

struct WeierstrassData {
  RationalFn g;   ///< stereographically projected Gauss map
  Form1 omega;    ///< the representation 1-form
  std::vector<PointOnSphere> punctures; ///< declared ends
  cplx basepoint = cplx(0.0, 0.0);      ///< integration origin, not a puncture
};

/// phi_1 = (1-g^2)/2 w,  phi_2 = i(1+g^2)/2 w,  phi_3 = g w
std::array<Form1, 3> induced_forms(const WeierstrassData& d);

struct EndInfo {
  int branch_order_k = 0; ///< end multiplicity is k+1
  std::array<int, 3> pole_orders{};
  bool planar = false;   ///< all three residues vanish
  bool embedded = false; ///< max pole order <= 2
};

EndInfo end_classification(const WeierstrassData& d, const PointOnSphere& p);

/// max over punctures p and i of |Re(2 pi i Res_p phi_i)|; 0 iff single-valued
double period_check(const WeierstrassData& d);

struct ImmersionOptions {
  double period_tol = 1e-9;
  bool accept_cut_domain = false;
  Vec3 translate = Vec3::Zero();
};

/// f(z) = Re int_{basepoint}^z (phi_1, phi_2, phi_3); jets are analytic
/// (antiderivatives in closed form via partial fractions), minimal by construction
Immersion immersion_from_data(const WeierstrassData& d, const ImmersionOptions& opt = {});

/// independent slow route for cross-checks: f by numerical path integration
Vec3 immersion_value_by_quadrature(const WeierstrassData& d, cplx z, const Vec3& translate = Vec3::Zero());

struct TrinoidParams {
  double r1 = 0.0, r2 = 2.0;
  bool degenerate_case = false; ///< Lopez case (2): a = 1/sqrt(3), d = 1, free B
  double B = 1.0;               ///< only read in the degenerate case
};

struct TrinoidDerived {
  double a, c, d, theta, B;
};
TrinoidDerived trinoid_coefficients(const TrinoidParams& p);
/// B^2 = 3 |3a^2 - 1|^2 / r2^2
double trinoid_B_squared(double a_sq, double r2);

WeierstrassData trinoid_data(const TrinoidParams& p);
WeierstrassData catenoid_data();
WeierstrassData enneper_data();

// --- catalog ----------------------------------------------------------------

struct CatalogSurface {
  std::string name;
  Immersion immersion;
  double chart_radius = 4.0; ///< nominal integration window half-width
  int chi_closed = 2;
  bool minimal = false;
  int gauss_map_degree = 0; ///< 0 when not a Weierstrass surface
  Vec3 default_center = Vec3::Zero();
  std::optional<WeierstrassData> data;
};

/// Resolve a CLI surface name: sphere[(r)], catenoid, enneper, trinoid(r1,r2),
/// trinoid-sym(B), ellipsoid(a,c), torus(R,a), clifford-torus, plane.
CatalogSurface lookup_surface(const std::string& name);

} // namespace wlab
