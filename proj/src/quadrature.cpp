#include "wlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "wlab/parallel.hpp"

namespace wlab {

double density_value(const ChartGeometry& g, Density d) {
  switch (d) {
    case Density::h2: return g.H * g.H;
    case Density::a2: return g.A_norm_sq;
    case Density::k: return g.K;
    case Density::one: return 1.0;
    case Density::h2_minus_k: return g.H * g.H - g.K;
  }
  return 0.0;
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBlock = 0.6931471805599453; // dyadic annuli: ln 2

// Gauss 7 / Kronrod 15 on [-1,1] (Gauss nodes are the odd Kronrod entries)
constexpr int kN = 15;
constexpr double kx[kN] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double kw[kN] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
constexpr double gw[7] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
                          0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
                          0.129484966168869693270611432679082};

struct Cell {
  double x0, x1, y0, y1;
  double val = 0.0, err = 0.0;
  long id = 0;
};

void eval_cell(const std::function<double(double, double)>& f, Cell& c) {
  const double xm = 0.5 * (c.x0 + c.x1), xh = 0.5 * (c.x1 - c.x0);
  const double ym = 0.5 * (c.y0 + c.y1), yh = 0.5 * (c.y1 - c.y0);
  double fx[kN][kN];
  for (int i = 0; i < kN; ++i)
    for (int j = 0; j < kN; ++j) fx[i][j] = f(xm + xh * kx[i], ym + yh * kx[j]);
  double k15 = 0.0, g7 = 0.0;
  for (int i = 0; i < kN; ++i) {
    double row15 = 0.0;
    for (int j = 0; j < kN; ++j) row15 += kw[j] * fx[i][j];
    k15 += kw[i] * row15;
  }
  for (int i = 1; i < kN; i += 2) {
    double row7 = 0.0;
    for (int j = 1; j < kN; j += 2) row7 += gw[j / 2] * fx[i][j];
    g7 += gw[i / 2] * row7;
  }
  c.val = k15 * xh * yh;
  c.err = std::abs(k15 - g7) * xh * yh;
}

void eval_batch(const std::function<double(double, double)>& f, std::vector<Cell>& cells,
                std::size_t from) {
  std::exception_ptr err;
  par::for_each_index(cells.size() - from, [&](std::size_t i) {
    try {
      eval_cell(f, cells[from + i]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  });
  if (err) std::rethrow_exception(err);
}

double sum_values(const std::vector<Cell>& cells) {
  std::vector<double> v(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) v[i] = cells[i].val;
  return par::pairwise_sum(v);
}

} // namespace

IntegralResult adaptive_rect(const std::function<double(double, double)>& f, const Rect& r,
                             double tol, long max_cells, bool strict) {
  std::vector<Cell> leaves;
  long next_id = 0;
  // seed with a 2x2 grid to avoid symmetric cancellation fooling the estimate
  const double xm = 0.5 * (r.u0 + r.u1), ym = 0.5 * (r.v0 + r.v1);
  for (double x0 : {r.u0, xm})
    for (double y0 : {r.v0, ym})
      leaves.push_back({x0, x0 == r.u0 ? xm : r.u1, y0, y0 == r.v0 ? ym : r.v1, 0, 0, next_id++});
  eval_batch(f, leaves, 0);
  long evaluated = static_cast<long>(leaves.size());

  while (true) {
    double total_err = 0.0;
    for (const auto& c : leaves) total_err += c.err;
    if (total_err <= tol || evaluated >= max_cells) {
      if (evaluated >= max_cells && strict && total_err > 16.0 * tol)
        fail(errc::no_convergence, "cell budget exhausted before reaching tolerance");
      std::sort(leaves.begin(), leaves.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
      IntegralResult res;
      res.value = sum_values(leaves);
      res.error_estimate = total_err;
      res.cells = evaluated;
      return res;
    }
    // split the worst slice of cells
    std::sort(leaves.begin(), leaves.end(), [](const Cell& a, const Cell& b) {
      if (a.err != b.err) return a.err > b.err;
      return a.id < b.id;
    });
    const std::size_t nsplit = std::max<std::size_t>(1, leaves.size() / 8);
    std::vector<Cell> parents(leaves.begin(), leaves.begin() + static_cast<long>(nsplit));
    leaves.erase(leaves.begin(), leaves.begin() + static_cast<long>(nsplit));
    const std::size_t from = leaves.size();
    for (const auto& p : parents) {
      const double mx = 0.5 * (p.x0 + p.x1), my = 0.5 * (p.y0 + p.y1);
      leaves.push_back({p.x0, mx, p.y0, my, 0, 0, next_id++});
      leaves.push_back({mx, p.x1, p.y0, my, 0, 0, next_id++});
      leaves.push_back({p.x0, mx, my, p.y1, 0, 0, next_id++});
      leaves.push_back({mx, p.x1, my, p.y1, 0, 0, next_id++});
    }
    eval_batch(f, leaves, from);
    evaluated += static_cast<long>(4 * nsplit);
  }
}

namespace {

// C^3 step: 0 for t<=0, 1 for t>=1; mild derivative peaks keep the
// Gauss-Kronrod estimates honest near the partition rings
double smoothstep_c3(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double t4 = t * t * t * t;
  return t4 * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

struct PieceIntegrand {
  const DomainPiece* piece;
  Density density;

  double operator()(double x, double y) const {
    const cplx z(x, y);
    if (piece->weight) {
      const double w = piece->weight(z);
      if (w <= 1e-300) return 0.0;
      return value_at(z) * w;
    }
    return value_at(z);
  }
  double value_at(cplx z) const {
    GeometryOptions opt;
    opt.check_conformal = false;
    const auto g = geometry_at(piece->surf, z, opt);
    return density_value(g, density) * g.sqrt_det_g;
  }
};

struct TailOutcome {
  double sum = 0.0;
  double extrapolated = 0.0;
  double err = 0.0;
  long cells = 0;
};

TailOutcome march_tail(const DomainPiece& piece, Density density, bool down, double start,
                       double scale_hint, long block_budget, const QuadOptions& opt) {
  PieceIntegrand f{&piece, density};
  PieceIntegrand area{&piece, Density::one};
  const double dir = down ? -1.0 : 1.0;
  const double expect_g = down ? piece.expect_g_down : piece.expect_g_up;

  TailOutcome out;
  std::vector<double> blocks, area_blocks;
  double y = start;
  int grow_streak = 0;
  double decay_rho = -1.0; // established geometric ratio, once seen
  for (int j = 0; j < opt.max_tail_blocks; ++j) {
    Rect r{piece.core.u0, piece.core.u1, down ? y - kBlock : y, down ? y : y + kBlock};
    auto fb = adaptive_rect([&](double a, double b) { return f(a, b); }, r,
                            opt.tol * 0.02, block_budget, false);
    out.cells += fb.cells;
    out.err += fb.error_estimate;
    blocks.push_back(fb.value);
    if (opt.check_tail_exponent && expect_g != 0.0 && j < 8) {
      Cell c{r.u0, r.u1, r.v0, r.v1};
      eval_cell([&](double a, double b) { return area(a, b); }, c);
      area_blocks.push_back(c.val);
      out.cells += 1;
    }
    out.sum += fb.value;
    y += dir * kBlock;

    const double scale = std::max({scale_hint, std::abs(out.sum), 1e-30});
    const double stop_thresh = std::max(opt.tail_stop * scale, 0.02 * opt.tol);
    const double cur = std::abs(blocks.back());
    bool stop = cur <= stop_thresh;
    if (blocks.size() >= 2) {
      const double prev = std::max(1e-300, std::abs(blocks[blocks.size() - 2]));
      const double ratio = cur / prev;
      if (ratio <= 0.45) decay_rho = decay_rho < 0.0 ? ratio : 0.5 * (decay_rho + ratio);
      // established decay stalling out near the noise floor: truncate here
      if (decay_rho >= 0.0 && ratio > std::max(2.0 * decay_rho, 0.6) && cur <= 1e-4 * scale)
        stop = true;
      grow_streak = (ratio >= 1.0 && !stop) ? grow_streak + 1 : 0;
      if (grow_streak >= 4)
        fail(errc::divergent_tail, "annulus blocks fail the ratio test (divergent tail)");
    }
    if (stop) {
      // geometric extrapolation of the remainder
      const double rho = decay_rho >= 0.0
                             ? decay_rho
                             : (blocks.size() >= 2
                                    ? cur / std::max(1e-300, std::abs(blocks[blocks.size() - 2]))
                                    : 0.0);
      if (rho > 0.0 && rho < 0.95) {
        out.extrapolated = blocks.back() * rho / (1.0 - rho);
        out.sum += out.extrapolated;
        out.err += 0.5 * std::abs(out.extrapolated) + cur;
      }
      break;
    }
    if (j + 1 == opt.max_tail_blocks)
      fail(errc::no_convergence, "tail marching exceeded the block budget");
  }

  if (opt.check_tail_exponent && expect_g != 0.0 && area_blocks.size() >= 3) {
    // fit on the deepest consecutive pairs, where the asymptotic regime holds
    double fitted = 0.0;
    int n = 0;
    const std::size_t first = area_blocks.size() > 4 ? area_blocks.size() - 3 : 0;
    for (std::size_t j = first; j + 1 < area_blocks.size(); ++j) {
      const double a0 = std::abs(area_blocks[j]), a1 = std::abs(area_blocks[j + 1]);
      if (a0 < 1e-280 || a1 < 1e-280) continue;
      fitted += dir * std::log(a1 / a0) / kBlock;
      ++n;
    }
    if (n > 0) {
      fitted /= n;
      if (std::abs(fitted - expect_g) / 2.0 > 0.25)
        fail(errc::divergent_tail, "tail area exponent does not match the declared multiplicity");
    }
  }
  return out;
}

} // namespace

IntegralResult integrate(const IntegrationDomain& dom, Density density, const QuadOptions& opt) {
  const std::size_t np = dom.pieces.size();
  IntegralResult total;
  std::vector<double> piece_values;
  const double tol_piece = opt.tol / std::max<std::size_t>(1, np) * 0.5;
  const long piece_budget = opt.max_cells / static_cast<long>(np);
  const long block_budget = std::clamp(piece_budget / 32, 16L, 3000L);
  double scale_hint = 0.0;
  for (const auto& piece : dom.pieces) {
    PieceIntegrand f{&piece, density};
    auto core = adaptive_rect([&](double a, double b) { return f(a, b); }, piece.core, tol_piece,
                              piece_budget / 2, opt.strict);
    total.cells += core.cells;
    total.error_estimate += core.error_estimate;
    piece_values.push_back(core.value);
    scale_hint = std::max(scale_hint, std::abs(core.value));
    if (piece.tail_down) {
      auto t = march_tail(piece, density, true, piece.core.v0, scale_hint, block_budget, opt);
      piece_values.push_back(t.sum);
      total.cells += t.cells;
      total.error_estimate += t.err;
      total.tail_contribution += t.sum;
    }
    if (piece.tail_up) {
      auto t = march_tail(piece, density, false, piece.core.v1, scale_hint, block_budget, opt);
      piece_values.push_back(t.sum);
      total.cells += t.cells;
      total.error_estimate += t.err;
      total.tail_contribution += t.sum;
    }
  }
  total.value = par::pairwise_sum(piece_values);
  return total;
}

IntegralResult integrate(const CatalogSurface& cs, Density density, const QuadOptions& opt) {
  return integrate(IntegrationDomain::for_surface(cs), density, opt);
}

// --- domain construction ------------------------------------------------------

namespace {

// signed multiplicity toward a chart point: branch points and regular points
// contribute +m (area decays toward them), ends contribute -(k+1) (area grows)
int mult_signed(const ChartPuncture* p) {
  if (p == nullptr) return 1;
  if (p->kind == ChartPuncture::Kind::end) return -(p->order + 1);
  return p->order;
}

} // namespace

IntegrationDomain IntegrationDomain::for_immersion(const Immersion& s, double chart_radius) {
  IntegrationDomain dom;

  if (s.chart_kind == ChartKind::compact) {
    DomainPiece piece;
    piece.surf = s;
    piece.core = s.domain;
    dom.pieces.push_back(std::move(piece));
    return dom;
  }

  if (s.chart_kind == ChartKind::cylinder_native) {
    // blocks ~ e^{g y}: toward y -> -inf the point "0", toward +inf the point "infinity"
    DomainPiece piece;
    piece.surf = s;
    piece.core = s.domain;
    piece.tail_down = piece.tail_up = true;
    const ChartPuncture *at0 = nullptr, *atinf = nullptr;
    for (const auto& p : s.punctures) (p.at.at_infinity ? atinf : at0) = &p;
    piece.expect_g_down = 2.0 * mult_signed(at0);
    piece.expect_g_up = -2.0 * mult_signed(atinf);
    dom.pieces.push_back(std::move(piece));
    return dom;
  }

  // plane chart: punctured neighbourhoods and infinity in log charts
  std::vector<const ChartPuncture*> finite;
  const ChartPuncture* at_inf = nullptr;
  for (const auto& p : s.punctures) {
    if (p.at.at_infinity)
      at_inf = &p;
    else
      finite.push_back(&p);
  }

  if (finite.size() <= 1) {
    const cplx center = finite.empty() ? cplx(0.0) : finite[0]->at.z;
    DomainPiece piece;
    piece.surf = exp_chart(s, center);
    piece.core = {0.0, 2.0 * kPi, -1.5, 1.5};
    piece.tail_down = piece.tail_up = true;
    piece.expect_g_down = 2.0 * mult_signed(finite.empty() ? nullptr : finite[0]);
    piece.expect_g_up = -2.0 * mult_signed(at_inf);
    dom.pieces.push_back(std::move(piece));
    return dom;
  }

  // ring radii around each finite puncture
  std::vector<double> rho_out(finite.size());
  double rmax = 0.0;
  for (std::size_t i = 0; i < finite.size(); ++i) {
    double dmin = 2.0 * chart_radius;
    for (std::size_t j = 0; j < finite.size(); ++j)
      if (j != i) dmin = std::min(dmin, std::abs(finite[i]->at.z - finite[j]->at.z));
    rho_out[i] = 0.45 * dmin;
    rmax = std::max(rmax, std::abs(finite[i]->at.z) + rho_out[i]);
  }
  const double R_in = 2.0 * (rmax + 1.0);
  const double R_out = 2.0 * R_in;

  struct Ring {
    cplx c;
    double s_in, s_out;
  };
  std::vector<Ring> rings(finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i)
    rings[i] = {finite[i]->at.z, std::log(0.5 * rho_out[i]), std::log(rho_out[i])};
  const double sR_in = std::log(R_in), sR_out = std::log(R_out);

  DomainPiece plane;
  plane.surf = s;
  plane.core = {-R_out, R_out, -R_out, R_out};
  plane.weight = [rings, sR_in, sR_out](cplx z) {
    double w = 1.0;
    for (const auto& r : rings) {
      const double sp = std::log(std::max(1e-300, std::abs(z - r.c)));
      w -= smoothstep_c3((r.s_out - sp) / (r.s_out - r.s_in));
    }
    const double sz = std::log(std::max(1e-300, std::abs(z)));
    w -= smoothstep_c3((sz - sR_in) / (sR_out - sR_in));
    return std::max(0.0, w);
  };
  dom.pieces.push_back(std::move(plane));

  for (std::size_t i = 0; i < finite.size(); ++i) {
    DomainPiece piece;
    piece.surf = exp_chart(s, finite[i]->at.z);
    piece.core = {0.0, 2.0 * kPi, rings[i].s_in, rings[i].s_out};
    piece.tail_down = true;
    piece.expect_g_down = 2.0 * mult_signed(finite[i]);
    const double s_in = rings[i].s_in, s_out = rings[i].s_out;
    piece.weight = [s_in, s_out](cplx w) {
      return smoothstep_c3((s_out - w.imag()) / (s_out - s_in));
    };
    dom.pieces.push_back(std::move(piece));
  }

  DomainPiece inf_piece;
  inf_piece.surf = exp_chart(s, cplx(0.0));
  inf_piece.core = {0.0, 2.0 * kPi, sR_in, sR_out};
  inf_piece.tail_up = true;
  inf_piece.expect_g_up = -2.0 * mult_signed(at_inf);
  inf_piece.weight = [sR_in, sR_out](cplx w) {
    return smoothstep_c3((w.imag() - sR_in) / (sR_out - sR_in));
  };
  dom.pieces.push_back(std::move(inf_piece));
  return dom;
}

IntegrationDomain IntegrationDomain::for_surface(const CatalogSurface& cs) {
  return for_immersion(cs.immersion, cs.chart_radius);
}

GaussBonnetReport gauss_bonnet_check(const IntegrationDomain& dom, const Divisor& ends,
                                     const Divisor& branches, int chi_closed, const QuadOptions& opt) {
  GaussBonnetReport rep;
  rep.lhs = integrate(dom, Density::k, opt).value;
  const int chi_open = chi_closed - ends.size();
  rep.rhs = 2.0 * kPi * (chi_open - ends.total_multiplicity() + branches.excess());
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

QuantizationVerdict quantization_verdict(double w) {
  if (w < 0.0) fail(errc::out_of_scope, "willmore energy must be non-negative");
  const double q = w / (4.0 * kPi);
  const int k = static_cast<int>(std::lround(q));
  const double deviation = std::abs(w - 4.0 * kPi * k);
  if (std::abs(deviation - 2.0 * kPi) <= 1e-9 * std::max(1.0, w))
    fail(errc::ambiguous_quantum, "energy sits exactly between two quanta");
  return {k, deviation};
}

bool white_parity_check(double kintegral, double tol) {
  const double q = kintegral / (4.0 * kPi);
  return std::abs(q - std::lround(q)) <= tol;
}

} // namespace wlab
