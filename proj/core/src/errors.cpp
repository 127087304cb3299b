#include "kinetic/errors.hpp"

namespace kinetic {

const char* errc_name(errc c) noexcept {
  switch (c) {
    case errc::empty_density: return "EmptyDensity";
    case errc::non_positive_temperature: return "NonPositiveTemperature";
    case errc::tensor_not_spd: return "TensorNotSPD";
    case errc::zero_wall_flux: return "ZeroWallFlux";
    case errc::boundary_too_close_to_box: return "BoundaryTooCloseToBox";
    case errc::degenerate_geometry: return "DegenerateGeometry";
    case errc::projection_diverged: return "ProjectionDiverged";
    case errc::stencil_outside_domain: return "StencilOutsideDomain";
    case errc::insufficient_interior: return "InsufficientInterior";
    case errc::collinear_feet_required: return "CollinearFeetRequired";
    case errc::mirror_outside_interior: return "MirrorOutsideInterior";
    case errc::ghost_not_filled: return "GhostNotFilled";
    case errc::non_nested_ladder: return "NonNestedLadder";
    case errc::unknown_scenario: return "UnknownScenario";
    case errc::not_steady: return "NotSteady";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::io_error: return "IoError";
    case errc::non_finite_state: return "NonFiniteState";
  }
  return "UnknownError";
}

solver_error::solver_error(errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

config_parse_error::config_parse_error(int line, int col, const std::string& msg)
    : solver_error(errc::parse_error,
                   "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

void fail(errc code, const std::string& msg) { throw solver_error(code, msg); }

}  // namespace kinetic
