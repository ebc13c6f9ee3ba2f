#include "wlab/bundle_count.hpp"

#include <algorithm>

#include "wlab/meromorphic.hpp"

namespace wlab {

int rr_dimension(const LineBundleSpec& spec) {
  const int g = spec.genus, c1 = spec.c1;
  if (g < 0) fail(errc::inconsistent_flags, "genus must be non-negative");
  if (spec.is_trivial && c1 != 0) fail(errc::inconsistent_flags, "trivial bundle needs c1 = 0");
  if (spec.is_canonical && c1 != 2 * g - 2)
    fail(errc::inconsistent_flags, "canonical bundle needs c1 = 2g-2");
  if (g == 1 && c1 == 0 && spec.is_trivial != spec.is_canonical)
    fail(errc::inconsistent_flags, "on genus 1 the trivial bundle is the canonical one");

  if (c1 < 0) return 0;
  if (c1 == 0) {
    if (g == 0 && !spec.is_trivial)
      fail(errc::inconsistent_flags, "every degree-0 bundle on the sphere is trivial");
    return spec.is_trivial ? 1 : 0;
  }
  if (c1 == 2 * g - 2) return spec.is_canonical ? g : g - 1;
  if (c1 > 2 * g - 2) return c1 - (g - 1);
  // 0 < c1 < 2g-2: the dimension depends on the bundle, not on (c1, flags)
  fail(errc::inconsistent_flags, "dimension not determined by c1 and flags in the special range");
}

int quartic_pole_space_dim(int genus, int d_abs) {
  if (d_abs < 0) fail(errc::out_of_scope, "|D| must be non-negative");
  const int c1 = 8 * (genus - 1) + 2 * d_abs;
  LineBundleSpec spec;
  spec.genus = genus;
  spec.c1 = c1;
  // kappa^4 (x) 2D is trivial only when c1 = 0 forces it: on genus 0 and 1
  // every degree-0 bundle in this family is O (g=1: |D|=0 gives kappa^4 = O)
  spec.is_trivial = (c1 == 0 && genus <= 1);
  spec.is_canonical = (c1 == 2 * genus - 2 && genus <= 1);
  return rr_dimension(spec);
}

namespace {

using PolyQ = Poly<QI>;
using RatQ = Rational<QI>;

PolyQ linear_power(const QI& root, int k) {
  PolyQ p = PolyQ::one();
  for (int i = 0; i < k; ++i) p = p * PolyQ::linear(root);
  return p;
}

/// exact residue of x dz at a finite point
QI residue_finite(const RatQ& x, const QI& p) { return x.residue_at(p); }

/// exact residue of x dz at infinity via w = 1/z, dz = -dw/w^2
QI residue_infinity(const RatQ& x) {
  RatQ y = x.reciprocal_chart();
  PolyQ w2;
  w2.c = {QI(0), QI(0), QI(1)};
  RatQ form(-QI(1) * y.num, y.den * w2);
  return form.residue_at(QI(0));
}

int rank_exact(std::vector<std::vector<QI>> rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  int rank = 0;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < ncols && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    const QI inv = QI(1) / rows[lead][col];
    for (auto& v : rows[lead]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col].is_zero()) continue;
      const QI f = rows[r][col];
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[lead][c];
    }
    ++lead;
    ++rank;
  }
  return rank;
}

} // namespace

int constrained_oneform_dim(const FormSpaceSpec& spec) {
  int sum_poles_fin = 0, sum_zeros_fin = 0;
  int inf_pole = 0, inf_zero = 0;
  PolyQ denom = PolyQ::one();
  PolyQ zeros = PolyQ::one();
  for (const auto& [pt, n] : spec.pole_bounds) {
    if (n < 1) fail(errc::out_of_scope, "pole bounds must be >= 1");
    if (pt.at_infinity)
      inf_pole = n;
    else {
      sum_poles_fin += n;
      denom = denom * linear_power(pt.z, n);
    }
  }
  for (const auto& [pt, s] : spec.zero_bounds) {
    if (s < 1) fail(errc::out_of_scope, "zero bounds must be >= 1");
    if (pt.at_infinity)
      inf_zero = s;
    else {
      sum_zeros_fin += s;
      zeros = zeros * linear_power(pt.z, s);
    }
  }

  // omega = P(z) Z(z)/D(z) dz with ord_inf = sum_poles - deg P - sum_zeros - 2
  int tmax = sum_poles_fin - sum_zeros_fin - 2;
  if (inf_pole > 0) tmax += inf_pole;
  if (inf_zero > 0) tmax -= inf_zero;
  if (tmax < 0) return 0;

  const int dim = tmax + 1;
  std::vector<std::vector<QI>> rows;
  for (const auto& pt : spec.residue_zero_at) {
    std::vector<QI> row;
    row.reserve(static_cast<std::size_t>(dim));
    for (int k = 0; k <= tmax; ++k) {
      PolyQ zk;
      zk.c.assign(static_cast<std::size_t>(k) + 1, QI(0));
      zk.c.back() = QI(1);
      RatQ basis(zk * zeros, denom);
      row.push_back(pt.at_infinity ? residue_infinity(basis) : residue_finite(basis, pt.z));
    }
    rows.push_back(std::move(row));
  }
  const int rank = rows.empty() ? 0 : rank_exact(std::move(rows));
  return dim - rank;
}

namespace {

std::string shape_name(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(p[i]) + "p" + std::to_string(i + 1);
  }
  return s + ")";
}

} // namespace

GateVerdict classification_gate(std::vector<int> divisor, std::optional<std::vector<int>> transform) {
  for (int m : divisor)
    if (m < 1) fail(errc::out_of_scope, "divisor multiplicities must be >= 1");
  std::sort(divisor.rbegin(), divisor.rend());
  int total = 0;
  for (int m : divisor) total += m;
  if (total > 3) fail(errc::out_of_scope, "the classification covers |D| <= 3");

  std::vector<int> xhat = transform.value_or(divisor);
  std::sort(xhat.rbegin(), xhat.rend());
  int w_quanta = 0;
  for (int m : xhat) w_quanta += m;

  GateVerdict v;
  v.energy_quanta = w_quanta;

  if (divisor.empty() || (divisor.size() == 1 && divisor[0] == 1 && xhat == divisor)) {
    v.admissible = true;
    v.label = "round sphere (W = 4 pi)";
    v.energy_quanta = 1;
    return v;
  }
  if (divisor.size() == 1 && divisor[0] % 2 == 0) {
    v.reason = "single branch point of even multiplicity: ruled out by the parity lemma";
    return v;
  }
  if (divisor == std::vector<int>{1, 1} && xhat == divisor) {
    v.admissible = true;
    v.label = "catenoid inversion (W = 8 pi)";
    return v;
  }
  if (divisor == std::vector<int>{3} && xhat == divisor) {
    v.admissible = true;
    v.label = "Enneper inversion (W = 12 pi)";
    return v;
  }
  if (divisor == std::vector<int>{3} && xhat == std::vector<int>{1, 1, 1}) {
    v.reason = "triple point away from three planar ends: the residue-constrained 1-form space "
               "is trivial (count 6-1-2-2 = 1), no such minimal surface";
    return v;
  }
  if (divisor == std::vector<int>{2, 1}) {
    v.reason = "int K would be -6 pi, contradicting White's 4 pi Z parity";
    return v;
  }
  if (xhat == std::vector<int>{1, 1, 1} && divisor.size() >= 1 &&
      *std::max_element(divisor.begin(), divisor.end()) == 1) {
    v.admissible = true;
    v.label = "trinoid inversion (W = 12 pi)";
    v.energy_quanta = 3;
    return v;
  }
  v.reason = "divisor shape " + shape_name(divisor) + " with transform " + shape_name(xhat) +
             " is not realized by the classification";
  return v;
}

} // namespace wlab
