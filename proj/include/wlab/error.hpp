#pragma once

#include <stdexcept>
#include <string>

namespace wlab {

enum class errc {
  pole_at_point,
  zero_form,
  path_hits_pole,
  no_convergence,
  divergent_tail,
  degenerate_metric,
  not_conformal,
  multi_valued,
  not_a_puncture,
  no_real_root,
  center_hit,
  center_on_surface,
  inconsistent_fit,
  ambiguous_quantum,
  inconsistent_flags,
  out_of_scope,
  degenerate_triangle,
  mesh_degenerate,
  no_concentration,
  fit_diverged,
  parse_error,
  unknown_key,
  bad_tolerance,
  io_error,
};

/// Exceptions carry a stable error code so the CLI can map them to exit codes.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::pole_at_point: return "PoleAtPoint";
    case errc::zero_form: return "ZeroForm";
    case errc::path_hits_pole: return "PathHitsPole";
    case errc::no_convergence: return "NoConvergence";
    case errc::divergent_tail: return "DivergentTail";
    case errc::degenerate_metric: return "DegenerateMetric";
    case errc::not_conformal: return "NotConformal";
    case errc::multi_valued: return "MultiValued";
    case errc::not_a_puncture: return "NotAPuncture";
    case errc::no_real_root: return "NoRealRoot";
    case errc::center_hit: return "CenterHit";
    case errc::center_on_surface: return "CenterOnSurface";
    case errc::inconsistent_fit: return "InconsistentFit";
    case errc::ambiguous_quantum: return "AmbiguousQuantum";
    case errc::inconsistent_flags: return "InconsistentFlags";
    case errc::out_of_scope: return "OutOfScope";
    case errc::degenerate_triangle: return "DegenerateTriangle";
    case errc::mesh_degenerate: return "MeshDegenerate";
    case errc::no_concentration: return "NoConcentration";
    case errc::fit_diverged: return "FitDiverged";
    case errc::parse_error: return "ParseError";
    case errc::unknown_key: return "UnknownKey";
    case errc::bad_tolerance: return "BadTolerance";
    case errc::io_error: return "IoError";
  }
  return "Error";
}

} // namespace wlab
