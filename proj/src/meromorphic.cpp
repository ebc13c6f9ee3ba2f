#include "wlab/meromorphic.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <json.hpp>

#include "wlab/parallel.hpp"

namespace wlab {

namespace {

cplx newton_polish(const Poly<cplx>& p, cplx z) {
  const Poly<cplx> dp = p.derivative();
  for (int it = 0; it < 12; ++it) {
    const cplx f = p.eval(z);
    const cplx d = dp.eval(z);
    if (std::abs(d) == 0.0) break;
    const cplx step = f / d;
    z -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

} // namespace

// Companion-matrix eigenvalues, clustered: coefficient noise splits an
// m-fold root into an m-cluster of radius ~noise^{1/m}, so nearby eigenvalues
// are merged and the cluster is polished on the (m-1)-th derivative, where
// the root is simple again.
std::vector<PolyRoot> poly_roots(const Poly<cplx>& p) {
  std::vector<PolyRoot> roots;
  const int n = p.degree();
  if (n <= 0) return roots;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = p.lead();
  for (int i = 0; i < n; ++i) {
    C(i, n - 1) = -p.c[static_cast<std::size_t>(i)] / lead;
    if (i > 0) C(i, i - 1) = cplx(1);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (used[static_cast<std::size_t>(i)]) continue;
    const double radius = 2e-5 * std::max(1.0, std::abs(ev[static_cast<std::size_t>(i)]));
    cplx centroid(0);
    int m = 0;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if (std::abs(ev[static_cast<std::size_t>(j)] - ev[static_cast<std::size_t>(i)]) < radius) {
        used[static_cast<std::size_t>(j)] = true;
        centroid += ev[static_cast<std::size_t>(j)];
        ++m;
      }
    }
    centroid /= static_cast<double>(m);
    Poly<cplx> target = p;
    for (int k = 1; k < m; ++k) target = target.derivative();
    roots.push_back({newton_polish(target, centroid), m});
  }
  return roots;
}

std::vector<PolyRoot> finite_poles(const RationalFn& f) { return poly_roots(f.den); }

namespace {

// synthetic division by (z - r), remainder dropped
Poly<cplx> deflate(const Poly<cplx>& p, cplx r) {
  const int n = p.degree();
  Poly<cplx> q;
  q.c.assign(static_cast<std::size_t>(n), cplx(0));
  cplx carry = p.c[static_cast<std::size_t>(n)];
  for (int k = n - 1; k >= 0; --k) {
    q.c[static_cast<std::size_t>(k)] = carry;
    carry = p.c[static_cast<std::size_t>(k)] + r * carry;
  }
  q.trim();
  return q;
}

// order of vanishing of p at r, judged against the shifted coefficient scale
int order_at_point(const Poly<cplx>& p, cplx r, double rel_tol) {
  const Poly<cplx> s = p.shifted(r);
  const double scale = coeff_scale(s.c);
  int k = 0;
  for (const auto& c : s.c) {
    if (std::abs(c) > rel_tol * scale) break;
    ++k;
  }
  return k;
}

} // namespace

void reduce_complex_rational(Poly<cplx>& num, Poly<cplx>& den) {
  if (den.degree() >= 1 && !num.is_zero()) {
    for (const auto& root : poly_roots(den)) {
      const int shared = std::min(root.multiplicity, order_at_point(num, root.z, 1e-9));
      for (int t = 0; t < shared; ++t) {
        num = deflate(num, root.z);
        den = deflate(den, root.z);
      }
    }
  }
  const cplx inv = cplx(1.0) / den.lead();
  for (auto& x : den.c) x = inv * x;
  for (auto& x : num.c) x = inv * x;
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1]
constexpr int kKronrod = 15;
constexpr double kx[kKronrod] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double kw[kKronrod] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
// Gauss-7 weights sit on the odd Kronrod nodes
constexpr double gw[7] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
                          0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
                          0.129484966168869693270611432679082};

struct SegmentQuad {
  const RationalFn* x;
  cplx a, d; // z(t) = a + t d, t in [0,1]
  long evals = 0;
  long max_evals;
  int max_depth;

  std::pair<cplx, double> rule(double t0, double t1) {
    const double mid = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    cplx k15(0), g7(0);
    for (int i = 0; i < kKronrod; ++i) {
      const double t = mid + half * kx[i];
      const cplx val = x->eval(a + t * d);
      k15 += kw[i] * val;
      if (i % 2 == 1) g7 += gw[i / 2] * val;
    }
    evals += kKronrod;
    k15 *= half;
    g7 *= half;
    return {k15, std::abs(k15 - g7)};
  }

  cplx integrate(double t0, double t1, double tol, int depth) {
    auto [v, e] = rule(t0, t1);
    if (e <= tol || depth >= max_depth) {
      if (depth >= max_depth && e > tol * 16.0)
        fail(errc::no_convergence, "path integral refinement exhausted");
      return v;
    }
    if (evals > max_evals) fail(errc::no_convergence, "path integral budget exhausted");
    const double tm = 0.5 * (t0 + t1);
    return integrate(t0, tm, 0.5 * tol, depth + 1) + integrate(tm, t1, 0.5 * tol, depth + 1);
  }
};

double segment_point_distance(cplx a, cplx b, cplx p) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

} // namespace

cplx path_integral(const Form1& w, const std::vector<cplx>& samples, const PathIntegralOptions& opt) {
  if (samples.size() < 2 || w.is_zero()) return cplx(0);
  const auto poles = finite_poles(w.x);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    for (const auto& p : poles)
      if (segment_point_distance(samples[i], samples[i + 1], p.z) < opt.clearance)
        fail(errc::path_hits_pole, "integration path passes through a pole");

  const std::size_t nseg = samples.size() - 1;
  std::vector<cplx> seg(nseg, cplx(0));
  std::exception_ptr err;
  par::for_each_index(nseg, [&](std::size_t i) {
    try {
      SegmentQuad q{&w.x, samples[i], samples[i + 1] - samples[i], 0,
                    opt.max_evals / static_cast<long>(nseg) + 64, opt.max_depth};
      const cplx raw = q.integrate(0.0, 1.0, opt.tol / static_cast<double>(nseg), 0) * q.d;
      seg[i] = raw;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  });
  if (err) std::rethrow_exception(err);
  return par::pairwise_sum(seg);
}

std::vector<cplx> circle_path(cplx center, double radius, int samples) {
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) {
    const double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(samples);
    pts.push_back(center + radius * cplx(std::cos(th), std::sin(th)));
  }
  pts.back() = pts.front();
  return pts;
}

namespace {
nlohmann::json poly_to_json(const Poly<cplx>& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.c) arr.push_back({c.real(), c.imag()});
  if (p.is_zero()) arr.push_back({0.0, 0.0});
  return arr;
}
Poly<cplx> poly_from_json(const nlohmann::json& arr) {
  std::vector<cplx> c;
  for (const auto& e : arr) c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return Poly<cplx>(std::move(c));
}
} // namespace

std::string rational_to_json(const RationalFn& f) {
  nlohmann::json j;
  j["num"] = poly_to_json(f.num);
  j["den"] = poly_to_json(f.den);
  return j.dump();
}

RationalFn rational_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return RationalFn(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

} // namespace wlab
