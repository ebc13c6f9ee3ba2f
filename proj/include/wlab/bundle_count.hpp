#pragma once

// Exact dimension counts: the Riemann-Roch table for line bundles, the
// quartic-differential pole space gamma(kappa^4 (x) 2D), residue-constrained
// 1-form spaces on genus 0 by exact rational linear algebra, and the
// classification gate over divisor shapes. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "wlab/poly.hpp"

namespace wlab {

using bigrat = boost::multiprecision::cpp_rational;

/// exact element of Q(i)
struct QI {
  bigrat re, im;

  QI() : re(0), im(0) {}
  QI(int v) : re(v), im(0) {} // NOLINT(google-explicit-constructor)
  QI(bigrat r, bigrat i) : re(std::move(r)), im(std::move(i)) {}

  bool operator==(const QI& o) const { return re == o.re && im == o.im; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend QI operator+(const QI& a, const QI& b) { return {a.re + b.re, a.im + b.im}; }
  friend QI operator-(const QI& a, const QI& b) { return {a.re - b.re, a.im - b.im}; }
  QI operator-() const { return {-re, -im}; }
  friend QI operator*(const QI& a, const QI& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QI operator/(const QI& a, const QI& b) {
    const bigrat n = b.re * b.re + b.im * b.im;
    if (n == 0) fail(errc::pole_at_point, "division by zero in Q(i)");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  QI& operator+=(const QI& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QI& operator-=(const QI& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QI& operator*=(const QI& o) { return *this = *this * o; }
};

template <>
struct scalar_traits<QI> {
  static constexpr bool exact = true;
  static double abs(const QI& x) {
    return std::abs(static_cast<double>(x.re)) + std::abs(static_cast<double>(x.im));
  }
};

/// a point of CP^1 with exact coordinates
struct ExactPoint {
  QI z;
  bool at_infinity = false;
  static ExactPoint infinity() { return {QI(), true}; }
  static ExactPoint finite(QI v) { return {std::move(v), false}; }
  bool operator==(const ExactPoint& o) const {
    return at_infinity == o.at_infinity && (at_infinity || z == o.z);
  }
};

struct LineBundleSpec {
  int genus = 0;
  int c1 = 0;
  bool is_trivial = false;
  bool is_canonical = false;
};

/// Riemann-Roch table: c1<0 -> 0; c1=0 -> 1 iff trivial; c1=2g-2 -> g iff
/// canonical else g-1; c1>2g-2 -> c1-(g-1). The gap 0<c1<2g-2 (g>=2) is not
/// determined by c1 and the flags alone and is rejected.
int rr_dimension(const LineBundleSpec& spec);

/// gamma(kappa^4 (x) 2D) routed through the table; 2|D|+7(g-1) in the stable range
int quartic_pole_space_dim(int genus, int d_abs);

struct FormSpaceSpec {
  std::vector<std::pair<ExactPoint, int>> pole_bounds; ///< max pole order >= 1
  std::vector<std::pair<ExactPoint, int>> zero_bounds; ///< min zero order >= 1
  std::vector<ExactPoint> residue_zero_at;
};

/// dimension of { rational 1-forms on CP^1 : divisor bounds hold, residues
/// vanish at the listed points }, by exact kernel computation
int constrained_oneform_dim(const FormSpaceSpec& spec);

struct GateVerdict {
  bool admissible = false;
  std::string label;
  std::string reason; ///< exclusion reason when inadmissible
  int energy_quanta = 0; ///< W / 4pi for admissible cases
};

/// The divisor-shape case analysis for branched Willmore spheres with
/// |D| <= 3: which shapes are realized (round sphere, catenoid, Enneper,
/// trinoid) and which are excluded (parity, White's theorem, the
/// Riemann-Roch count). `transform` is the conformal-transform divisor
/// shape; it defaults to the divisor itself.
GateVerdict classification_gate(std::vector<int> divisor,
                                std::optional<std::vector<int>> transform = std::nullopt);

} // namespace wlab
