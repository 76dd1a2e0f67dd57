#include "bergsense/errors.hpp"

namespace bergsense {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::mismatched_centers: return "mismatched centers";
    case errc::singular_map: return "singular map";
    case errc::order_range: return "order out of range";
    case errc::out_of_disc: return "point outside the unit disc";
    case errc::degenerate_points: return "degenerate point pair";
    case errc::invalid_radius: return "invalid radius";
    case errc::budget_exceeded: return "search budget exceeded";
    case errc::singular_solve: return "singular linear system";
    case errc::point_not_in_probe: return "point not in probe image";
    case errc::critical_point: return "map critical point";
    case errc::insufficient_order: return "insufficient series order";
    case errc::step_too_long: return "recentering step too long";
    case errc::curve_error: return "bad curve";
    case errc::infeasible_spine: return "infeasible spine fit";
    case errc::fit_error: return "rank-deficient fit";
    case errc::parameter_error: return "parameter out of range";
    case errc::jet_extraction: return "jet extraction failed";
    case errc::geometry_error: return "bad geometry";
    case errc::resolution_error: return "insufficient resolution";
    case errc::config_error: return "bad configuration";
    case errc::io_error: return "i/o failure";
  }
  return "unknown error";
}

}  // namespace bergsense
