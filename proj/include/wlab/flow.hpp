#pragma once

// Discrete Willmore flow df/dt = -(lap H + 2H(H^2-K)) nu with energy
// monitoring, parabolic blow-up rescaling, and catenoid fitting.

#include <functional>
#include <optional>

#include "wlab/trimesh.hpp"

namespace wlab {

struct FlowParams {
  double dt = 0.0;            ///< 0: auto, 0.1 h_min^4 (explicit) / 0.5 h_min^2 (semi-implicit)
  bool semi_implicit = false;
  double implicit_beta = 0.5; ///< stabilizing bilaplacian weight
  double energy_slack = 1e-6; ///< accepted-step slack delta_E = slack * W
  int smooth_every = 25;      ///< tangential smoothing cadence (accepted steps)
  double min_angle_floor = 0.02;
  double blowup_threshold = 60.0; ///< terminate when max|A| * diameter exceeds this
  double round_w_tol = 1e-2;      ///< converged when W <= 4 pi (1 + tol) ...
  double round_residual = 1e-2;   ///< ... and max | |v-c| - rbar | / rbar below this
};

struct FlowState {
  TriMesh mesh;
  double time = 0.0;
  double dt = 0.0;
  double energy = 0.0;
  double max_curv = 0.0;
  long accepted = 0, rejected = 0;
};

FlowState make_flow_state(TriMesh mesh, const FlowParams& p);

enum class StepOutcome { accepted, rejected };

/// one explicit (or stabilized semi-implicit) step; on an energy increase the
/// step is rejected and dt halved
StepOutcome flow_step(FlowState& state, const FlowParams& p);

/// max | |v - c| - rbar | / rbar over vertices, c the area centroid
double roundness_residual(const TriMesh& mesh);

enum class FlowTermination { converged_to_round, curvature_blowup, budget };

struct FlowTrace {
  FlowTermination termination = FlowTermination::budget;
  std::vector<FlowState> snapshots;
  std::vector<std::array<double, 5>> series; ///< step, time, W, maxA, dt
  FlowState final_state;
};

FlowTrace run_flow(TriMesh initial, const FlowParams& p, long max_steps, int snapshot_every = 0);

struct RescaleEvent {
  double t_j = 0.0;
  Vec3 x_j = Vec3::Zero();
  double r_j = 1.0;
  TriMesh rescaled_mesh;
};

/// blow-up candidates at each doubling of max curvature:
/// f_j = (f(t_j) - x_j) / r_j with r_j = 1/max|A|, so max|A| of the result is 1
std::vector<RescaleEvent> rescale_blowup(const std::vector<FlowState>& trajectory);

struct CatenoidFit {
  Vec3 axis = Vec3::UnitZ();
  Vec3 center = Vec3::Zero();
  double scale = 1.0;
  double residual = 0.0; ///< rms distance / scale
};

/// nonlinear least squares against the catenoid family (Levenberg-Marquardt
/// over axis, center and scale; several deterministic initializations)
CatenoidFit catenoid_fit(const TriMesh& mesh);

} // namespace wlab
