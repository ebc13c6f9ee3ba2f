#pragma once

// Dense univariate polynomials over a field, templated so the same code runs
// on complex<double> (with a coefficient tolerance) and on exact rational
// scalars (tolerance ignored, zero tests exact).

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "wlab/error.hpp"

namespace wlab {

using cplx = std::complex<double>;

template <class T>
struct scalar_traits {
  static constexpr bool exact = false;
  static double abs(const T& x) { return std::abs(x); }
};

template <class T>
double coeff_scale(const std::vector<T>& c) {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, scalar_traits<T>::abs(x));
  return m;
}

/// Polynomial with coefficients in ascending degree order. Kept trimmed: the
/// zero polynomial is the empty vector.
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  Poly(std::initializer_list<T> init) : c(init) { trim(); }
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly{}; }
  static Poly one() { return Poly{T(1)}; }
  /// z - a
  static Poly linear(const T& a) { return Poly{-a, T(1)}; }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
  T lead() const { return c.back(); }

  void trim(double tol = 0.0) {
    if constexpr (scalar_traits<T>::exact) {
      while (!c.empty() && c.back() == T(0)) c.pop_back();
    } else {
      const double floor = std::max(tol, 1e-14 * coeff_scale(c));
      while (!c.empty() && scalar_traits<T>::abs(c.back()) <= floor) c.pop_back();
    }
  }

  T eval(const T& z) const {
    T acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return zero();
    Poly d;
    d.c.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * T(double(i));
    return d;
  }

  /// Taylor shift: coefficients of p(w + a) in w.
  Poly shifted(const T& a) const {
    Poly r = *this;
    const int n = degree();
    for (int i = 0; i < n; ++i)
      for (int j = n - 1; j >= i; --j) r.c[static_cast<std::size_t>(j)] += a * r.c[static_cast<std::size_t>(j) + 1];
    return r;
  }

  /// order of vanishing at 0 (trailing coefficient count below tolerance)
  int order_at_zero(double tol = 0.0) const {
    if (is_zero()) return -1; // convention: infinite order reported as -1
    double floor = 0.0;
    if constexpr (!scalar_traits<T>::exact) floor = std::max(tol, 1e-11 * coeff_scale(c));
    int k = 0;
    for (const auto& x : c) {
      bool zerocoef;
      if constexpr (scalar_traits<T>::exact)
        zerocoef = (x == T(0));
      else
        zerocoef = scalar_traits<T>::abs(x) <= floor;
      if (!zerocoef) break;
      ++k;
    }
    return k;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    Poly r;
    r.c.resize(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend Poly operator*(const T& s, const Poly& a) {
    Poly r = a;
    for (auto& x : r.c) x = s * x;
    r.trim();
    return r;
  }
  Poly operator-() const { return T(-1) * (*this); }
};

/// quotient and remainder of a / b
template <class T>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero()) fail(errc::pole_at_point, "division by zero polynomial");
  Poly<T> q, r = a;
  const int db = b.degree();
  if (a.degree() >= db) q.c.resize(static_cast<std::size_t>(a.degree() - db) + 1, T(0));
  while (!r.is_zero() && r.degree() >= db) {
    const int k = r.degree() - db;
    const T f = r.lead() / b.lead();
    q.c[static_cast<std::size_t>(k)] = f;
    for (int i = 0; i <= db; ++i) r.c[static_cast<std::size_t>(i + k)] -= f * b.c[static_cast<std::size_t>(i)];
    r.c.pop_back();
    r.trim();
  }
  q.trim();
  return {q, r};
}

/// Euclidean gcd. For floating coefficients the remainder sequence is trimmed
/// against `tol` relative to its scale, which is what makes near-common
/// factors (double roots built by construction) cancel reliably.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b, double tol = 1e-12) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // normalize working copies to unit leading coefficient for scale stability
  auto monic = [](Poly<T> p) {
    const T inv = T(1) / p.lead();
    for (auto& x : p.c) x = inv * x;
    return p;
  };
  a = monic(a);
  b = monic(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    auto [q, r] = divrem(a, b);
    (void)q;
    if constexpr (!scalar_traits<T>::exact) {
      r.trim(tol * std::max(1.0, coeff_scale(r.c)));
      // relative cutoff: a remainder tiny against the inputs counts as zero
      if (!r.is_zero() && coeff_scale(r.c) <= tol * std::max(coeff_scale(a.c), coeff_scale(b.c))) r = Poly<T>::zero();
    }
    a = std::move(b);
    b = r.is_zero() ? Poly<T>::zero() : monic(r);
  }
  return a;
}

} // namespace wlab
