#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bergsense/types.hpp"

namespace bergsense::io {

// Resolved job description; every output artifact embeds it for
// reproducibility.
struct JobConfig {
  std::string command;  // sense-disc | sense-probe | runge | table | verify | sweep

  cplx a{0.0, 0.0};
  cplx b{0.0, 0.0};
  double eps = 1e-4;
  int order = -1;  // explicit N overrides eps when >= 0
  std::string mode = "l2";
  double sup_radius = 0.0;  // 0 = default (1 + 1/|b|)/2

  // probe construction
  std::vector<cplx> waypoints;
  int degree = 3;
  double mu = 0.1;
  double sigma = 0.0;  // 0 = policy default
  std::optional<std::array<double, 4>> omega_rect;  // x0, x1, y0, y1
  double d1 = 0.0;  // explicit probe-to-boundary distance

  // runge
  double delta = 0.1;
  std::vector<cplx> via;
  std::optional<std::array<double, 3>> boundary_circle;  // cx, cy, r

  // table geometry overrides
  double geom_area = 0.0;
  double geom_path = 0.0;
  std::optional<std::array<double, 3>> container;  // cx, cy, r

  // verification
  std::string family = "harmonic";
  double big_m = 1.0;
  std::uint64_t seed = 0;
  int count = 500;
  int maxdeg = 60;
  bool compare = false;

  // sweep
  int nmax = 30;

  std::vector<std::string> inputs;
  std::string output;
};

// Exit status: 0 success, 1 certificate violation, 2 usage/config error.
int run(const JobConfig& config);

}  // namespace bergsense::io
