#pragma once

#include <stdexcept>
#include <string>

namespace kinetic {

enum class errc {
  empty_density,
  non_positive_temperature,
  tensor_not_spd,
  zero_wall_flux,
  boundary_too_close_to_box,
  degenerate_geometry,
  projection_diverged,
  stencil_outside_domain,
  insufficient_interior,
  collinear_feet_required,
  mirror_outside_interior,
  ghost_not_filled,
  non_nested_ladder,
  unknown_scenario,
  not_steady,
  parse_error,
  validation_error,
  io_error,
  non_finite_state,
};

const char* errc_name(errc c) noexcept;

class solver_error : public std::runtime_error {
public:
  solver_error(errc code, const std::string& msg);
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

// Config-text errors carry a 1-based source location.
class config_parse_error : public solver_error {
public:
  config_parse_error(int line, int col, const std::string& msg);
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

private:
  int line_;
  int col_;
};

[[noreturn]] void fail(errc code, const std::string& msg);

}  // namespace kinetic
