#pragma once

// Rational functions and 1-forms on the Riemann sphere. Evaluation,
// differentiation, zero/pole orders, residues (including at infinity via
// w = 1/z, dz = -dw/w^2) and numerical contour integrals.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wlab/poly.hpp"

namespace wlab {

template <>
struct scalar_traits<std::complex<double>> {
  static constexpr bool exact = false;
  static double abs(const std::complex<double>& x) { return std::abs(x); }
};

/// A point of CP^1: either a finite complex number or infinity.
struct PointOnSphere {
  cplx z{};
  bool at_infinity = false;

  static PointOnSphere infinity() { return {cplx{}, true}; }
  static PointOnSphere finite(cplx p) { return {p, false}; }
  bool operator==(const PointOnSphere& o) const {
    return at_infinity == o.at_infinity && (at_infinity || z == o.z);
  }
};

struct PolyRoot {
  cplx z;
  int multiplicity;
};
/// roots with multiplicities (companion matrix + cluster + polish)
std::vector<PolyRoot> poly_roots(const Poly<cplx>& p);

/// cancel shared roots of num/den by deflation and make den monic; the
/// floating-point replacement for an exact gcd reduction
void reduce_complex_rational(Poly<cplx>& num, Poly<cplx>& den);

/// power series division n/q to order `upto` (q[0] must be a unit)
template <class T>
std::vector<T> series_div(const Poly<T>& n, const Poly<T>& q, int upto) {
  std::vector<T> s(static_cast<std::size_t>(upto) + 1, T(0));
  const T q0 = q.c.empty() ? T(0) : q.c[0];
  for (int k = 0; k <= upto; ++k) {
    T acc = (k < static_cast<int>(n.c.size())) ? n.c[static_cast<std::size_t>(k)] : T(0);
    for (int j = 0; j < k; ++j) {
      const int d = k - j;
      if (d < static_cast<int>(q.c.size())) acc = acc - s[static_cast<std::size_t>(j)] * q.c[static_cast<std::size_t>(d)];
    }
    s[static_cast<std::size_t>(k)] = acc / q0;
  }
  return s;
}

template <class T>
struct Rational {
  Poly<T> num, den;

  Rational() : num(Poly<T>::zero()), den(Poly<T>::one()) {}
  Rational(Poly<T> n, Poly<T> d, double tol = 1e-12) : num(std::move(n)), den(std::move(d)) { reduce(tol); }

  static Rational constant(const T& v) { return Rational(Poly<T>{v}, Poly<T>::one()); }
  static Rational variable() { return Rational(Poly<T>{T(0), T(1)}, Poly<T>::one()); }

  bool is_zero() const { return num.is_zero(); }

  /// divide out common factors and normalise the denominator monic
  void reduce(double tol = 1e-12) {
    if (den.is_zero()) fail(errc::pole_at_point, "identically-zero denominator");
    if (num.is_zero()) {
      den = Poly<T>::one();
      return;
    }
    if constexpr (scalar_traits<T>::exact) {
      Poly<T> g = gcd(num, den, tol);
      if (g.degree() > 0) {
        num = divrem(num, g).first;
        den = divrem(den, g).first;
      }
      const T inv = T(1) / den.lead();
      for (auto& x : den.c) x = inv * x;
      for (auto& x : num.c) x = inv * x;
    } else {
      reduce_complex_rational(num, den);
    }
  }

  T eval(const T& z) const {
    const T d = den.eval(z);
    if constexpr (scalar_traits<T>::exact) {
      if (d == T(0)) fail(errc::pole_at_point, "evaluation at a pole");
    } else {
      // a pole shows up as catastrophic cancellation: |den(z)| tiny against
      // the same sum with absolute values (plain smallness is fine, e.g. z^2
      // near 0 is small but exact)
      double mag = 0.0, zp = 1.0;
      const double za = scalar_traits<T>::abs(z);
      for (const auto& c : den.c) {
        mag += scalar_traits<T>::abs(c) * zp;
        zp *= za;
      }
      if (scalar_traits<T>::abs(d) < 1e-13 * std::max(mag, 1e-300))
        fail(errc::pole_at_point, "evaluation at a pole");
    }
    return num.eval(z) / d;
  }

  Rational derivative() const {
    return Rational(num.derivative() * den - num * den.derivative(), den * den);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator*(const T& s, const Rational& a) { return Rational(s * a.num, a.den); }
  Rational operator-() const { return T(-1) * (*this); }

  /// signed order at a finite point: >0 zero order, <0 pole order, 0 regular
  int order_at(const T& p) const {
    if (num.is_zero()) fail(errc::zero_form, "order of the zero function");
    const int on = num.shifted(p).order_at_zero();
    const int od = den.shifted(p).order_at_zero();
    return on - od;
  }

  /// signed order at infinity (of the function, not of a form)
  int order_at_infinity() const {
    if (num.is_zero()) fail(errc::zero_form, "order of the zero function");
    return den.degree() - num.degree();
  }

  /// the function x(1/w) as a rational function of w
  Rational reciprocal_chart() const {
    const int D = std::max(num.degree(), den.degree());
    Poly<T> n, d;
    n.c.assign(static_cast<std::size_t>(D) + 1, T(0));
    d.c.assign(static_cast<std::size_t>(D) + 1, T(0));
    for (int i = 0; i <= num.degree(); ++i) n.c[static_cast<std::size_t>(D - i)] = num.c[static_cast<std::size_t>(i)];
    for (int i = 0; i <= den.degree(); ++i) d.c[static_cast<std::size_t>(D - i)] = den.c[static_cast<std::size_t>(i)];
    n.trim();
    d.trim();
    return Rational(std::move(n), std::move(d));
  }

  /// Laurent coefficient of (z-p)^{-1} at a finite point. When the pole order
  /// is known a priori (clustered roots of a perturbed denominator), passing
  /// it suppresses the noisy low-order coefficients of the shifted denominator.
  T residue_at(const T& p, int known_pole_order = -1) const {
    if (num.is_zero()) return T(0);
    Poly<T> ns = num.shifted(p);
    Poly<T> ds = den.shifted(p);
    const int k = known_pole_order >= 0 ? known_pole_order : ds.order_at_zero();
    if (k <= 0) return T(0);
    if (k >= static_cast<int>(ds.c.size())) fail(errc::pole_at_point, "pole order exceeds denominator degree");
    // strip w^k from the denominator
    Poly<T> q;
    q.c.assign(ds.c.begin() + k, ds.c.end());
    auto s = series_div(ns, q, k - 1);
    return s[static_cast<std::size_t>(k - 1)];
  }
};

using RationalFn = Rational<cplx>;

/// Meromorphic 1-form x(z) dz in the standard chart.
struct Form1 {
  RationalFn x;

  Form1() = default;
  explicit Form1(RationalFn coeff) : x(std::move(coeff)) {}

  bool is_zero() const { return x.is_zero(); }

  /// coefficient of the form in the chart w = 1/z:  -x(1/w)/w^2 dw
  RationalFn infinity_chart_coeff() const {
    RationalFn y = x.reciprocal_chart();
    Poly<cplx> w2{cplx(0), cplx(0), cplx(1)};
    return RationalFn(cplx(-1) * y.num, y.den * w2);
  }

  cplx residue(const PointOnSphere& p) const {
    if (is_zero()) return cplx(0);
    if (p.at_infinity) return infinity_chart_coeff().residue_at(cplx(0));
    return x.residue_at(p.z);
  }

  /// signed order: >0 zero, <0 pole
  int order_at(const PointOnSphere& p) const {
    if (is_zero()) fail(errc::zero_form, "order of the zero form");
    if (p.at_infinity) return infinity_chart_coeff().order_at(cplx(0));
    return x.order_at(p.z);
  }
  int pole_order(const PointOnSphere& p) const { return std::max(0, -order_at(p)); }
  int zero_order(const PointOnSphere& p) const { return std::max(0, order_at(p)); }

  friend Form1 operator+(const Form1& a, const Form1& b) { return Form1(a.x + b.x); }
  friend Form1 operator*(const RationalFn& g, const Form1& w) { return Form1(g * w.x); }
};

/// finite poles of a reduced rational function
std::vector<PolyRoot> finite_poles(const RationalFn& f);

struct PathIntegralOptions {
  double tol = 1e-10;
  double clearance = 1e-8;
  int max_depth = 40;
  long max_evals = 2'000'000;
};

/// Contour integral of a form along a polyline through the given samples,
/// adaptive Gauss-Kronrod per segment, pairwise deterministic summation.
cplx path_integral(const Form1& w, const std::vector<cplx>& samples,
                   const PathIntegralOptions& opt = {});

std::vector<cplx> circle_path(cplx center, double radius, int samples = 64);

std::string rational_to_json(const RationalFn& f);
RationalFn rational_from_json(const std::string& text);

} // namespace wlab
