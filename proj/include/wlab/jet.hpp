#pragma once

// Truncated Taylor arithmetic in one and two variables. A Jet<T, N> stores the
// Taylor coefficients of a function about a point up to total degree N; all
// arithmetic is exact on the truncation, so derivatives read off a jet are the
// analytic derivatives of the represented function.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "wlab/error.hpp"

namespace wlab {

using cplx = std::complex<double>;

namespace detail {
constexpr std::size_t tri(int n) { return static_cast<std::size_t>((n + 1) * (n + 2) / 2); }
// index of u^a v^b within the degree-graded layout
constexpr std::size_t ij(int a, int b) {
  const int d = a + b;
  return static_cast<std::size_t>(d * (d + 1) / 2 + b);
}
constexpr double binom(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
  return r;
}
} // namespace detail

// ---------------------------------------------------------------------------
// univariate jets (profile curves, chart reparametrisations)
// ---------------------------------------------------------------------------

template <class T, int N>
struct Jet1 {
  std::array<T, N + 1> c{};

  static Jet1 constant(T v) {
    Jet1 j;
    j.c[0] = v;
    return j;
  }
  static Jet1 variable(T v) {
    Jet1 j;
    j.c[0] = v;
    if constexpr (N >= 1) j.c[1] = T(1);
    return j;
  }

  T value() const { return c[0]; }
  /// k-th derivative at the expansion point
  T deriv(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[static_cast<std::size_t>(k)] * f;
  }

  Jet1 operator-() const {
    Jet1 r;
    for (int i = 0; i <= N; ++i) r.c[i] = -c[i];
    return r;
  }
  friend Jet1 operator+(const Jet1& a, const Jet1& b) {
    Jet1 r;
    for (int i = 0; i <= N; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend Jet1 operator-(const Jet1& a, const Jet1& b) {
    Jet1 r;
    for (int i = 0; i <= N; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  friend Jet1 operator*(const Jet1& a, const Jet1& b) {
    Jet1 r;
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet1 operator*(T s, const Jet1& a) {
    Jet1 r;
    for (int i = 0; i <= N; ++i) r.c[i] = s * a.c[i];
    return r;
  }
  friend Jet1 operator+(const Jet1& a, T s) {
    Jet1 r = a;
    r.c[0] += s;
    return r;
  }
  friend Jet1 operator-(const Jet1& a, T s) {
    Jet1 r = a;
    r.c[0] -= s;
    return r;
  }
};

/// Compose g with a jet, given the derivatives g, g', ..., g^(N) at jet.value().
template <class T, int N>
Jet1<T, N> compose1(const Jet1<T, N>& x, const std::array<T, N + 1>& gderivs) {
  Jet1<T, N> t = x;
  t.c[0] = T(0); // nilpotent part
  Jet1<T, N> acc = Jet1<T, N>::constant(gderivs[N] / T(tgamma(N + 1.0)));
  for (int k = N - 1; k >= 0; --k) {
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    acc = acc * t + gderivs[static_cast<std::size_t>(k)] / T(kfact);
  }
  return acc;
}

template <class T, int N>
Jet1<T, N> sin(const Jet1<T, N>& x) {
  std::array<T, N + 1> g;
  const T s = std::sin(x.c[0]), c = std::cos(x.c[0]);
  const T cyc[4] = {s, c, -s, -c};
  for (int k = 0; k <= N; ++k) g[k] = cyc[k % 4];
  return compose1(x, g);
}
template <class T, int N>
Jet1<T, N> cos(const Jet1<T, N>& x) {
  std::array<T, N + 1> g;
  const T s = std::sin(x.c[0]), c = std::cos(x.c[0]);
  const T cyc[4] = {c, -s, -c, s};
  for (int k = 0; k <= N; ++k) g[k] = cyc[k % 4];
  return compose1(x, g);
}
template <class T, int N>
Jet1<T, N> cosh(const Jet1<T, N>& x) {
  std::array<T, N + 1> g;
  const T s = std::sinh(x.c[0]), c = std::cosh(x.c[0]);
  for (int k = 0; k <= N; ++k) g[k] = (k % 2 == 0) ? c : s;
  return compose1(x, g);
}
template <class T, int N>
Jet1<T, N> sinh(const Jet1<T, N>& x) {
  std::array<T, N + 1> g;
  const T s = std::sinh(x.c[0]), c = std::cosh(x.c[0]);
  for (int k = 0; k <= N; ++k) g[k] = (k % 2 == 0) ? s : c;
  return compose1(x, g);
}
template <class T, int N>
Jet1<T, N> sqrt(const Jet1<T, N>& x) {
  std::array<T, N + 1> g;
  const T r = std::sqrt(x.c[0]);
  g[0] = r;
  // d^k sqrt(t) = (1/2)(1/2-1)...(1/2-k+1) t^{1/2-k}
  T coef = T(1);
  for (int k = 1; k <= N; ++k) {
    coef *= (T(0.5) - T(k - 1));
    g[k] = coef * std::pow(x.c[0], 0.5 - k);
  }
  return compose1(x, g);
}
template <class T, int N>
Jet1<T, N> recip(const Jet1<T, N>& x) {
  std::array<T, N + 1> g;
  T p = T(1) / x.c[0];
  double sgnfact = 1.0;
  for (int k = 0; k <= N; ++k) {
    g[k] = sgnfact * p;
    p /= x.c[0];
    sgnfact *= -(k + 1.0);
  }
  return compose1(x, g);
}
template <class T, int N>
Jet1<T, N> atan(const Jet1<T, N>& x) {
  // derivatives of atan via the series of 1/(1+t^2) about x0
  std::array<T, N + 1> g;
  const T x0 = x.c[0];
  g[0] = std::atan(x0);
  // 1/(1+t^2) expanded about x0 by jet arithmetic, then integrated termwise
  Jet1<T, N> t = Jet1<T, N>::variable(x0);
  Jet1<T, N> d = recip(t * t + T(1));
  for (int k = 1; k <= N; ++k) {
    double f = 1.0;
    for (int i = 2; i <= k - 1; ++i) f *= i;
    g[k] = d.c[k - 1] * f; // (k-1)! * coefficient = (k-1)-th derivative of atan'
  }
  return compose1(x, g);
}
template <class T, int N>
Jet1<T, N> tan(const Jet1<T, N>& x) {
  return sin(x) * recip(cos(x));
}

// ---------------------------------------------------------------------------
// bivariate jets
// ---------------------------------------------------------------------------

template <class T, int N>
struct Jet {
  static constexpr int degree = N;
  static constexpr std::size_t size = detail::tri(N);
  std::array<T, size> c{};

  static Jet constant(T v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  /// coordinate jet u0 + du
  static Jet var_u(double u0) {
    Jet j;
    j.c[0] = T(u0);
    if constexpr (N >= 1) j.c[detail::ij(1, 0)] = T(1);
    return j;
  }
  static Jet var_v(double v0) {
    Jet j;
    j.c[0] = T(v0);
    if constexpr (N >= 1) j.c[detail::ij(0, 1)] = T(1);
    return j;
  }

  T value() const { return c[0]; }
  T coeff(int a, int b) const { return c[detail::ij(a, b)]; }
  /// mixed partial d^{a+b} f / du^a dv^b at the expansion point
  T deriv(int a, int b) const {
    double f = 1.0;
    for (int i = 2; i <= a; ++i) f *= i;
    for (int i = 2; i <= b; ++i) f *= i;
    return coeff(a, b) * f;
  }

  Jet operator-() const {
    Jet r;
    for (std::size_t i = 0; i < size; ++i) r.c[i] = -c[i];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i < size; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i < size; ++i) c[i] -= o.c[i];
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int da = 0; da <= N; ++da)
      for (int ia = 0; ia <= da; ++ia) {
        const T av = a.c[detail::ij(da - ia, ia)];
        if (av == T{}) continue;
        for (int db = 0; da + db <= N; ++db)
          for (int ib = 0; ib <= db; ++ib)
            r.c[detail::ij(da - ia + db - ib, ia + ib)] += av * b.c[detail::ij(db - ib, ib)];
      }
    return r;
  }
  friend Jet operator*(T s, const Jet& a) {
    Jet r;
    for (std::size_t i = 0; i < Jet::size; ++i) r.c[i] = s * a.c[i];
    return r;
  }
  friend Jet operator*(const Jet& a, T s) { return s * a; }
  friend Jet operator+(Jet a, T s) {
    a.c[0] += s;
    return a;
  }
  friend Jet operator+(T s, Jet a) {
    a.c[0] += s;
    return a;
  }
  friend Jet operator-(Jet a, T s) {
    a.c[0] -= s;
    return a;
  }
  friend Jet operator-(T s, const Jet& a) { return (-a) + s; }

  /// partial derivative; result degree drops by one
  Jet<T, N - 1> du() const requires(N >= 1) {
    Jet<T, N - 1> r;
    for (int a = 1; a + 0 <= N; ++a)
      for (int b = 0; a + b <= N; ++b) r.c[detail::ij(a - 1, b)] = T(double(a)) * coeff(a, b);
    return r;
  }
  Jet<T, N - 1> dv() const requires(N >= 1) {
    Jet<T, N - 1> r;
    for (int a = 0; a <= N; ++a)
      for (int b = 1; a + b <= N; ++b) r.c[detail::ij(a, b - 1)] = T(double(b)) * coeff(a, b);
    return r;
  }
  template <int M>
  Jet<T, M> truncate() const requires(M <= N) {
    Jet<T, M> r;
    for (int a = 0; a <= M; ++a)
      for (int b = 0; a + b <= M; ++b) r.c[detail::ij(a, b)] = coeff(a, b);
    return r;
  }
};

/// compose analytic g with a bivariate jet from the derivative list of g at x.value()
template <class T, int N>
Jet<T, N> compose(const Jet<T, N>& x, const std::array<T, N + 1>& gderivs) {
  Jet<T, N> t = x;
  t.c[0] = T{};
  double nfact = 1.0;
  for (int i = 2; i <= N; ++i) nfact *= i;
  Jet<T, N> acc = Jet<T, N>::constant(gderivs[N] / T(nfact));
  for (int k = N - 1; k >= 0; --k) {
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    acc = acc * t + gderivs[static_cast<std::size_t>(k)] / T(kfact);
  }
  return acc;
}

template <int N>
Jet<double, N> recip(const Jet<double, N>& x) {
  std::array<double, N + 1> g;
  double p = 1.0 / x.value();
  double sf = 1.0;
  for (int k = 0; k <= N; ++k) {
    g[k] = sf * p;
    p /= x.value();
    sf *= -(k + 1.0);
  }
  return compose(x, g);
}
template <int N>
Jet<cplx, N> recip(const Jet<cplx, N>& x) {
  std::array<cplx, N + 1> g;
  cplx p = 1.0 / x.value();
  double sf = 1.0;
  for (int k = 0; k <= N; ++k) {
    g[k] = sf * p;
    p /= x.value();
    sf *= -(k + 1.0);
  }
  return compose(x, g);
}
template <int N>
Jet<double, N> sqrt(const Jet<double, N>& x) {
  std::array<double, N + 1> g;
  g[0] = std::sqrt(x.value());
  double coef = 1.0;
  for (int k = 1; k <= N; ++k) {
    coef *= 0.5 - (k - 1);
    g[k] = coef * std::pow(x.value(), 0.5 - k);
  }
  return compose(x, g);
}
template <int N>
Jet<double, N> log(const Jet<double, N>& x) {
  std::array<double, N + 1> g;
  g[0] = std::log(x.value());
  double coef = 1.0; // (k-1)! (-1)^{k-1}
  for (int k = 1; k <= N; ++k) {
    g[k] = coef * std::pow(x.value(), -double(k));
    coef *= -double(k);
  }
  return compose(x, g);
}
template <int N>
Jet<double, N> exp(const Jet<double, N>& x) {
  std::array<double, N + 1> g;
  const double e = std::exp(x.value());
  for (int k = 0; k <= N; ++k) g[k] = e;
  return compose(x, g);
}
template <int N>
Jet<double, N> sin(const Jet<double, N>& x) {
  std::array<double, N + 1> g;
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const double cyc[4] = {s, c, -s, -c};
  for (int k = 0; k <= N; ++k) g[k] = cyc[k % 4];
  return compose(x, g);
}
template <int N>
Jet<double, N> cos(const Jet<double, N>& x) {
  std::array<double, N + 1> g;
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const double cyc[4] = {c, -s, -c, s};
  for (int k = 0; k <= N; ++k) g[k] = cyc[k % 4];
  return compose(x, g);
}

/// lift u-dependence only / v-dependence only from a univariate jet
template <class T, int N>
Jet<T, N> lift_u(const Jet1<T, N>& j) {
  Jet<T, N> r;
  for (int k = 0; k <= N; ++k) r.c[detail::ij(k, 0)] = j.c[k];
  return r;
}
template <class T, int N>
Jet<T, N> lift_v(const Jet1<T, N>& j) {
  Jet<T, N> r;
  for (int k = 0; k <= N; ++k) r.c[detail::ij(0, k)] = j.c[k];
  return r;
}

/// Wirtinger derivatives of a jet in z = u + iv
template <class T, int N>
Jet<cplx, N - 1> dz(const Jet<T, N>& x) requires(N >= 1) {
  auto ju = x.du();
  auto jv = x.dv();
  Jet<cplx, N - 1> r;
  for (std::size_t i = 0; i < Jet<T, N - 1>::size; ++i)
    r.c[i] = 0.5 * (cplx(ju.c[i]) - cplx(0.0, 1.0) * cplx(jv.c[i]));
  return r;
}
template <class T, int N>
Jet<cplx, N - 1> dzbar(const Jet<T, N>& x) requires(N >= 1) {
  auto ju = x.du();
  auto jv = x.dv();
  Jet<cplx, N - 1> r;
  for (std::size_t i = 0; i < Jet<T, N - 1>::size; ++i)
    r.c[i] = 0.5 * (cplx(ju.c[i]) + cplx(0.0, 1.0) * cplx(jv.c[i]));
  return r;
}

/// Real/imaginary part jets of Re F, Im F for holomorphic F with Taylor
/// coefficients a[k] about the expansion point: F(z0+d) = sum a_k d^k.
template <int N>
Jet<double, N> re_from_holomorphic(const std::array<cplx, N + 1>& a) {
  Jet<double, N> r;
  for (int k = 0; k <= N; ++k) {
    cplx ipow(1.0, 0.0);
    for (int b = 0; b <= k; ++b) {
      r.c[detail::ij(k - b, b)] = (a[static_cast<std::size_t>(k)] * detail::binom(k, b) * ipow).real();
      ipow *= cplx(0.0, 1.0);
    }
  }
  return r;
}

// small fixed-size vectors of jets for immersions into R^3
template <class J>
struct V3 {
  J x, y, z;

  V3 operator-() const { return {-x, -y, -z}; }
  friend V3 operator+(const V3& a, const V3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend V3 operator-(const V3& a, const V3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend V3 operator*(const J& s, const V3& a) { return {s * a.x, s * a.y, s * a.z}; }
};

template <class J>
J dot(const V3<J>& a, const V3<J>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
template <class J>
V3<J> cross(const V3<J>& a, const V3<J>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <int N>
using JetR = Jet<double, N>;
template <int N>
using JetC = Jet<cplx, N>;
template <int N>
using VJet = V3<Jet<double, N>>;

} // namespace wlab
