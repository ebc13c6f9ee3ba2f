#pragma once

// Adaptive integration of geometric densities over conformal charts with
// punctures and complete ends. Punctured neighbourhoods and the infinity end
// are integrated in log charts z = p + e^w where the area element decays (or
// grows, for ends) geometrically; dyadic annulus blocks are marched outward
// and the remainder is summed as a geometric series.

#include <functional>

#include "wlab/divisor.hpp"
#include "wlab/surface.hpp"
#include "wlab/weierstrass.hpp"

namespace wlab {

enum class Density { h2, a2, k, one, h2_minus_k };

double density_value(const ChartGeometry& g, Density d);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long cells = 0;
  double tail_contribution = 0.0;
};

struct QuadOptions {
  double tol = 1e-6; ///< absolute error target for the adaptive core
  long max_cells = 200000;
  int max_tail_blocks = 64;
  double tail_stop = 1e-11; ///< stop marching when a block is this small relative to the total
  bool check_tail_exponent = true;
  bool strict = true; ///< raise NoConvergence when the budget leaves err >> tol
};

/// One integration region with its own chart.
struct DomainPiece {
  Immersion surf;     ///< piece chart (possibly an exp_chart wrap of the base)
  Rect core;          ///< core rectangle, x = angle/u, y = s/v
  bool tail_down = false, tail_up = false;
  std::function<double(cplx)> weight; ///< partition-of-unity weight (empty = 1)
  /// expected growth exponent g of area blocks ~ e^{g s} per tail (0 = skip check)
  double expect_g_down = 0.0, expect_g_up = 0.0;
};

struct IntegrationDomain {
  std::vector<DomainPiece> pieces;
  static IntegrationDomain for_immersion(const Immersion& s, double chart_radius);
  static IntegrationDomain for_surface(const CatalogSurface& cs);
};

IntegralResult integrate(const IntegrationDomain& dom, Density density, const QuadOptions& opt = {});
IntegralResult integrate(const CatalogSurface& cs, Density density, const QuadOptions& opt = {});

/// plain adaptive rectangle quadrature (exposed for tests)
IntegralResult adaptive_rect(const std::function<double(double, double)>& f, const Rect& r,
                             double tol, long max_cells, bool strict = true);

struct GaussBonnetReport {
  double lhs = 0.0; ///< integral of K
  double rhs = 0.0; ///< 2 pi (chi_open - sum(k_i + 1) + sum(m_p - 1))
  double residual = 0.0;
};

/// chi convention: the right-hand side uses chi_open = chi_closed - #ends
GaussBonnetReport gauss_bonnet_check(const IntegrationDomain& dom, const Divisor& ends,
                                     const Divisor& branches, int chi_closed,
                                     const QuadOptions& opt = {});

struct QuantizationVerdict {
  int k = 0;
  double deviation = 0.0;
};

/// nearest 4 pi multiple; exact midpoints (deviation 2 pi) are rejected
QuantizationVerdict quantization_verdict(double w);

/// White's theorem oracle: integral of K on a complete minimal surface is 4 pi m
bool white_parity_check(double kintegral, double tol = 0.05);

} // namespace wlab
