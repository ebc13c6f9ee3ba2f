#pragma once

// Moebius inversions of immersions, divisor bookkeeping, the inversion
// identities (Gauss-Bonnet / Willmore / total-curvature transfer under
// I_{x0}), and branch-point asymptotics (multiplicity and log-curvature fits).

#include "wlab/divisor.hpp"
#include "wlab/quadrature.hpp"
#include "wlab/surface.hpp"

namespace wlab {

/// I_{x0}(x) = x0 + (x - x0)/|x - x0|^2
Vec3 invert_point(const Vec3& x, const Vec3& x0);

struct InversionOptions {
  double clearance = 1e-3; ///< minimum |f - x0| over probe samples
  std::vector<cplx> probes; ///< sample points used for the clearance check
};

/// compose the inversion with the immersion; jets by truncated-series
/// arithmetic, so the chart stays exactly conformal. End punctures become
/// branch points of multiplicity k+1 and vice versa.
Immersion invert_immersion(const Immersion& s, const Vec3& x0, const InversionOptions& opt = {});

CatalogSurface invert_surface(const CatalogSurface& cs, const Vec3& x0, const InversionOptions& opt = {});

/// divisors read off an immersion's puncture list
Divisor end_divisor(const Immersion& s);
Divisor branch_divisor(const Immersion& s);

struct InversionReport {
  double w_before = 0.0, w_after = 0.0;
  double a2_before = 0.0, a2_after = 0.0;
  double k_before = 0.0, k_after = 0.0;
  double end_term = 0.0;      ///< 4 pi sum (k(a_i)+1)
  double preimage_term = 0.0; ///< 4 pi sum m(p) over f^{-1}(x0)
  double residual_k = 0.0;    ///< K-transfer identity
  double residual_w = 0.0;    ///< Willmore identity
  double residual_a2 = 0.0;   ///< |A|^2 identity
};

/// evaluate both sides of the three inversion identities by quadrature;
/// `preimages` lists f^{-1}(x0) with multiplicities (empty off-surface)
InversionReport verify_inversion_identities(const CatalogSurface& cs, const Vec3& x0,
                                            const Divisor& ends, const Divisor& preimages,
                                            const QuadOptions& opt = {});

struct MultiplicityFit {
  int m = 0;
  double slope = 0.0;
  double confidence = 0.0;
  double gradient_slope = 0.0; ///< cross-check: |grad f| ~ |z|^{m-1}
};

/// least-squares slope of log|f(z)-f(p)| against log|z-p| over the radii,
/// rounded to the nearest integer; InconsistentFit beyond 0.25 of an integer
MultiplicityFit estimate_branch_multiplicity(const Immersion& s, cplx p,
                                             const std::vector<double>& radii);
std::vector<double> default_fit_radii();

struct LogCurvatureFit {
  double A0 = 0.0;
  double offset = 0.0;
  double residual = 0.0; ///< rms misfit relative to the signal
};

/// fit |A|(z) = A0 |log|z-p|| + c on the sampled radii (multiplicity-1 point)
LogCurvatureFit curvature_log_fit(const Immersion& s, cplx p, const std::vector<double>& radii);

/// Lemma-level parity guard: a single branch point of even multiplicity on a
/// branched conformal sphere is rejected
bool parity_check(const Divisor& d);

} // namespace wlab
