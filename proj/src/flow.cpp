#include "wlab/flow.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>

#include "wlab/parallel.hpp"

namespace wlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vec3> willmore_gradient(const TriMesh& mesh, const VertexGeometry& g) {
  // Euler-Lagrange operator lap_M H + 2H(H^2-K) along the vertex normal.
  // With outward normals and H(sphere) = +1, the energy decreases along
  // +W nu, so the returned ascent direction carries the minus sign.
  const std::vector<double> lap_h_pos = cotan_laplacian(mesh, g.area, g.H);
  std::vector<Vec3> grad(mesh.V.size());
  par::for_each_index(mesh.V.size(), [&](std::size_t i) {
    const double lap_h = -lap_h_pos[i]; // cotan form is positive semidefinite
    const double w = lap_h + 2.0 * g.H[i] * (g.H[i] * g.H[i] - g.K[i]);
    grad[i] = -w * g.normal[i];
  });
  return grad;
}

void tangential_smooth(TriMesh& mesh, const VertexGeometry& g, double strength) {
  std::vector<Vec3> centroid(mesh.V.size(), Vec3::Zero());
  std::vector<double> wsum(mesh.V.size(), 0.0);
  for (const auto& f : mesh.F)
    for (int k = 0; k < 3; ++k) {
      const int i = f[k], j = f[(k + 1) % 3];
      centroid[i] += mesh.V[j];
      wsum[i] += 1.0;
      centroid[j] += mesh.V[i];
      wsum[j] += 1.0;
    }
  par::for_each_index(mesh.V.size(), [&](std::size_t i) {
    const Vec3 c = centroid[i] / wsum[i];
    Vec3 d = c - mesh.V[i];
    d -= g.normal[i] * d.dot(g.normal[i]); // tangential component only
    mesh.V[i] += strength * d;
  });
}

Eigen::SparseMatrix<double> cotan_matrix(const TriMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.F.size() * 12);
  for (const auto& f : mesh.F)
    for (int k = 0; k < 3; ++k) {
      const int i = f[(k + 1) % 3], j = f[(k + 2) % 3];
      const Vec3 u = mesh.V[i] - mesh.V[f[k]];
      const Vec3 v = mesh.V[j] - mesh.V[f[k]];
      const double w = 0.5 * u.dot(v) / u.cross(v).norm();
      trip.emplace_back(i, i, w);
      trip.emplace_back(j, j, w);
      trip.emplace_back(i, j, -w);
      trip.emplace_back(j, i, -w);
    }
  Eigen::SparseMatrix<double> L(static_cast<int>(mesh.V.size()), static_cast<int>(mesh.V.size()));
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

} // namespace

FlowState make_flow_state(TriMesh mesh, const FlowParams& p) {
  FlowState s;
  s.mesh = std::move(mesh);
  const auto g = discrete_geometry(s.mesh);
  s.energy = g.willmore;
  s.max_curv = g.max_a;
  const double h = s.mesh.min_edge_length();
  s.dt = p.dt > 0.0 ? p.dt : (p.semi_implicit ? 0.5 * h * h : 0.1 * h * h * h * h);
  return s;
}

StepOutcome flow_step(FlowState& state, const FlowParams& p) {
  const auto g = discrete_geometry(state.mesh);
  const auto grad = willmore_gradient(state.mesh, g);

  TriMesh trial = state.mesh;
  if (!p.semi_implicit) {
    par::for_each_index(trial.V.size(),
                        [&](std::size_t i) { trial.V[i] -= state.dt * grad[i]; });
  } else {
    // stabilized step: (M + dt beta L M^{-1} L) V' = M V - dt M G + dt beta L M^{-1} L V
    const auto L = cotan_matrix(state.mesh);
    const int n = static_cast<int>(state.mesh.V.size());
    Eigen::VectorXd minv(n);
    for (int i = 0; i < n; ++i) minv(i) = 1.0 / g.area[i];
    Eigen::SparseMatrix<double> K = L * minv.asDiagonal() * L;
    Eigen::SparseMatrix<double> M(n, n);
    std::vector<Eigen::Triplet<double>> mt;
    for (int i = 0; i < n; ++i) mt.emplace_back(i, i, g.area[i]);
    M.setFromTriplets(mt.begin(), mt.end());
    Eigen::SparseMatrix<double> A = M + (state.dt * p.implicit_beta) * K;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
    if (solver.info() != Eigen::Success) fail(errc::mesh_degenerate, "implicit factorization failed");
    Eigen::MatrixXd rhs(n, 3);
    Eigen::MatrixXd pos(n, 3);
    for (int i = 0; i < n; ++i) pos.row(i) = state.mesh.V[i].transpose();
    Eigen::MatrixXd kx = K * pos;
    for (int i = 0; i < n; ++i) {
      const Vec3 r = g.area[i] * state.mesh.V[i] - state.dt * g.area[i] * grad[i] +
                     state.dt * p.implicit_beta * Vec3(kx.row(i));
      rhs.row(i) = r.transpose();
    }
    Eigen::MatrixXd sol = solver.solve(rhs);
    for (int i = 0; i < n; ++i) trial.V[i] = sol.row(i);
  }

  const auto g2 = discrete_geometry(trial);
  if (!(g2.willmore <= state.energy * (1.0 + p.energy_slack))) {
    state.dt *= 0.5;
    state.rejected += 1;
    return StepOutcome::rejected;
  }
  if (trial.min_angle() < p.min_angle_floor) {
    tangential_smooth(trial, g2, 0.5);
    if (trial.min_angle() < p.min_angle_floor)
      fail(errc::mesh_degenerate, "triangle quality collapsed");
  }
  state.mesh = std::move(trial);
  state.time += state.dt;
  state.energy = g2.willmore;
  state.max_curv = g2.max_a;
  state.accepted += 1;
  if (p.smooth_every > 0 && state.accepted % p.smooth_every == 0) {
    TriMesh smoothed = state.mesh;
    tangential_smooth(smoothed, g2, 0.5);
    const auto g3 = discrete_geometry(smoothed);
    if (g3.willmore <= state.energy * (1.0 + p.energy_slack)) {
      state.mesh = std::move(smoothed);
      state.energy = g3.willmore;
      state.max_curv = g3.max_a;
    }
  }
  return StepOutcome::accepted;
}

double roundness_residual(const TriMesh& mesh) {
  const auto g = discrete_geometry(mesh);
  Vec3 c = Vec3::Zero();
  double atot = 0.0;
  for (std::size_t i = 0; i < mesh.V.size(); ++i) {
    c += g.area[i] * mesh.V[i];
    atot += g.area[i];
  }
  c /= atot;
  double rbar = 0.0;
  for (std::size_t i = 0; i < mesh.V.size(); ++i) rbar += g.area[i] * (mesh.V[i] - c).norm();
  rbar /= atot;
  double worst = 0.0;
  for (const auto& v : mesh.V) worst = std::max(worst, std::abs((v - c).norm() - rbar));
  return worst / rbar;
}

FlowTrace run_flow(TriMesh initial, const FlowParams& p, long max_steps, int snapshot_every) {
  FlowTrace trace;
  FlowState state = make_flow_state(std::move(initial), p);
  trace.snapshots.push_back(state);
  const double dt_cap = state.dt;
  for (long step = 0; step < max_steps;) {
    const auto outcome = flow_step(state, p);
    if (outcome == StepOutcome::accepted) {
      ++step;
      trace.series.push_back({static_cast<double>(step), state.time, state.energy, state.max_curv,
                              state.dt});
      if (snapshot_every > 0 && step % snapshot_every == 0) trace.snapshots.push_back(state);
      state.dt = std::min(state.dt * 1.05, dt_cap);

      if (state.energy <= 4.0 * kPi * (1.0 + p.round_w_tol) &&
          roundness_residual(state.mesh) <= p.round_residual) {
        trace.termination = FlowTermination::converged_to_round;
        break;
      }
      if (state.max_curv * state.mesh.diameter() > p.blowup_threshold) {
        trace.termination = FlowTermination::curvature_blowup;
        break;
      }
    } else if (state.dt < 1e-18) {
      fail(errc::mesh_degenerate, "time step collapsed");
    }
  }
  trace.snapshots.push_back(state);
  trace.final_state = std::move(state);
  return trace;
}

std::vector<RescaleEvent> rescale_blowup(const std::vector<FlowState>& trajectory) {
  if (trajectory.empty()) fail(errc::no_concentration, "empty trajectory");
  std::vector<RescaleEvent> events;
  double next_threshold = trajectory.front().max_curv;
  for (const auto& state : trajectory) {
    if (state.max_curv + 1e-300 < next_threshold) continue;
    const auto g = discrete_geometry(state.mesh);
    RescaleEvent ev;
    ev.t_j = state.time;
    ev.r_j = 1.0 / g.max_a;
    ev.x_j = state.mesh.V[static_cast<std::size_t>(g.argmax_a)];
    ev.rescaled_mesh = state.mesh;
    for (auto& v : ev.rescaled_mesh.V) v = (v - ev.x_j) / ev.r_j;
    events.push_back(std::move(ev));
    next_threshold = 2.0 * state.max_curv;
  }
  if (events.size() < 2 && trajectory.size() > 2)
    fail(errc::no_concentration, "max curvature never doubled along the trajectory");
  return events;
}

namespace {

struct CatenoidModel {
  // params: theta, phi (axis), cx, cy, cz, log s
  static Vec3 axis_of(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  }
  static double residual_one(const Vec3& pt, const Vec3& axis, const Vec3& c, double s) {
    const Vec3 d = pt - c;
    const double zeta = d.dot(axis);
    const double rho = (d - zeta * axis).norm();
    const double ch = std::cosh(zeta / s);
    // approximate euclidean distance: radial misfit over the slope factor
    return (rho - s * ch) / std::hypot(1.0, std::sinh(zeta / s));
  }
};

} // namespace

CatenoidFit catenoid_fit(const TriMesh& mesh) {
  const std::size_t n = mesh.V.size();
  if (n < 12) fail(errc::fit_diverged, "too few vertices to fit");

  Vec3 centroid = Vec3::Zero();
  for (const auto& v : mesh.V) centroid += v;
  centroid /= static_cast<double>(n);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& v : mesh.V) cov += (v - centroid) * (v - centroid).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);

  auto pack_residuals = [&](const Eigen::VectorXd& q, Eigen::VectorXd& r) {
    const Vec3 axis = CatenoidModel::axis_of(q(0), q(1));
    const Vec3 c(q(2), q(3), q(4));
    const double s = std::exp(q(5));
    for (std::size_t i = 0; i < n; ++i)
      r(static_cast<int>(i)) = CatenoidModel::residual_one(mesh.V[i], axis, c, s);
  };

  CatenoidFit best;
  best.residual = 1e300;
  for (int cand = 0; cand < 3; ++cand) {
    const Vec3 a0 = es.eigenvectors().col(cand);
    // initial scale: smallest distance from the axis line through the centroid
    double s0 = 1e300;
    for (const auto& v : mesh.V) {
      const Vec3 d = v - centroid;
      s0 = std::min(s0, (d - d.dot(a0) * a0).norm());
    }
    s0 = std::max(s0, 1e-8);
    Eigen::VectorXd q(6);
    q << std::acos(std::clamp(a0.z(), -1.0, 1.0)), std::atan2(a0.y(), a0.x()), centroid.x(),
        centroid.y(), centroid.z(), std::log(s0);

    Eigen::VectorXd r(static_cast<int>(n)), r2(static_cast<int>(n));
    pack_residuals(q, r);
    double lambda = 1e-3;
    for (int iter = 0; iter < 120; ++iter) {
      Eigen::MatrixXd J(static_cast<int>(n), 6);
      const double step = 1e-7;
      for (int k = 0; k < 6; ++k) {
        Eigen::VectorXd qp = q;
        qp(k) += step;
        pack_residuals(qp, r2);
        J.col(k) = (r2 - r) / step;
      }
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd Jtr = J.transpose() * r;
      bool improved = false;
      for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::MatrixXd A = JtJ;
        for (int k = 0; k < 6; ++k) A(k, k) *= 1.0 + lambda;
        const Eigen::VectorXd dq = A.ldlt().solve(Jtr);
        Eigen::VectorXd qn = q - dq;
        pack_residuals(qn, r2);
        if (r2.squaredNorm() < r.squaredNorm()) {
          q = qn;
          r = r2;
          lambda = std::max(lambda * 0.3, 1e-12);
          improved = true;
          break;
        }
        lambda *= 8.0;
      }
      if (!improved || r.norm() < 1e-14) break;
    }
    const double s = std::exp(q(5));
    const double rms = std::sqrt(r.squaredNorm() / static_cast<double>(n)) / s;
    if (std::isfinite(rms) && rms < best.residual) {
      best.axis = CatenoidModel::axis_of(q(0), q(1));
      best.center = Vec3(q(2), q(3), q(4));
      best.scale = s;
      best.residual = rms;
    }
  }
  if (!std::isfinite(best.residual) || best.residual > 1e3)
    fail(errc::fit_diverged, "catenoid fit failed to converge");
  return best;
}

} // namespace wlab
