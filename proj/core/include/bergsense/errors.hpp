#pragma once

#include <stdexcept>
#include <string>

namespace bergsense {

// Error categories used across the library. Tests match on these rather
// than on message text.
enum class errc {
  mismatched_centers,
  singular_map,
  order_range,
  out_of_disc,
  degenerate_points,
  invalid_radius,
  budget_exceeded,
  singular_solve,
  point_not_in_probe,
  critical_point,
  insufficient_order,
  step_too_long,
  curve_error,
  infeasible_spine,
  fit_error,
  parameter_error,
  jet_extraction,
  geometry_error,
  resolution_error,
  config_error,
  io_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bergsense
