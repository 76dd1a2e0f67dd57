#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "bergsense/errors.hpp"
#include "commands.hpp"

namespace {

using bergsense::cplx;
using bergsense::io::JobConfig;

// "re,im" -> complex. A bare "x" is treated as real.
cplx parse_cplx(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {std::stod(s), 0.0};
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

void add_point_option(CLI::App* cmd, const std::string& name, cplx& target, const std::string& desc,
                      bool required = false) {
  auto* opt = cmd->add_option_function<std::string>(
      name, [&target](const std::string& s) { target = parse_cplx(s); }, desc);
  if (required) opt->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bergsense: certified derivative-weight sensing identities for harmonic and holomorphic functions"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::vector<std::string> waypoint_strs, via_strs;
  std::vector<double> omega_rect_vals, boundary_circle_vals, container_vals;

  auto add_common_output = [&cfg](CLI::App* cmd) {
    cmd->add_option("-o,--output", cfg.output, "output path");
  };

  auto* disc = app.add_subcommand("sense-disc", "Taylor sensing identity on the unit disc (a = 0)");
  add_point_option(disc, "--b", cfg.b, "target point, re,im", true);
  disc->add_option("--eps", cfg.eps, "tail tolerance");
  disc->add_option("--order", cfg.order, "explicit order N (overrides --eps)");
  disc->add_option("--mode", cfg.mode, "tail mode: l2 or sup")->check(CLI::IsMember({"l2", "sup"}));
  disc->add_option("--r", cfg.sup_radius, "sup-mode evaluation radius (default (1+1/|b|)/2)");
  add_common_output(disc);

  auto* probe = app.add_subcommand("sense-probe", "probe-domain pipeline: spine fit, transport, real table");
  add_point_option(probe, "--a", cfg.a, "sensing point, re,im", true);
  add_point_option(probe, "--b", cfg.b, "target point, re,im", true);
  probe->add_option("--waypoint", waypoint_strs, "spine waypoint re,im (repeat; must include a and b)")
      ->required();
  probe->add_option("--degree", cfg.degree, "spine polynomial degree");
  probe->add_option("--mu", cfg.mu, "rectangle margin");
  probe->add_option("--sigma", cfg.sigma, "rectangle half-height (0 = policy default)");
  probe->add_option("--eps", cfg.eps, "disc tail tolerance");
  probe->add_option("--order", cfg.order, "explicit order N (overrides --eps)");
  probe->add_option("--mode", cfg.mode, "tail mode: l2 or sup")->check(CLI::IsMember({"l2", "sup"}));
  probe->add_option("--omega-rect", omega_rect_vals, "ambient rectangle x0 x1 y0 y1")->expected(4);
  probe->add_option("--d1", cfg.d1, "explicit probe-to-boundary distance");
  probe->add_option("--M", cfg.big_m, "harmonic bound M for the certificate");
  add_common_output(probe);

  auto* runge = app.add_subcommand("runge", "pole pushing along a curve and contour-quadrature identity");
  add_point_option(runge, "--a", cfg.a, "sensing point (pole target), re,im", true);
  add_point_option(runge, "--b", cfg.b, "original pole, re,im", true);
  runge->add_option("--via", via_strs, "intermediate curve points re,im (repeat)");
  runge->add_option("--delta", cfg.delta, "tube radius delta")->required();
  runge->add_option("--eps", cfg.eps, "certified sup tolerance")->required();
  runge->add_option("--boundary-circle", boundary_circle_vals, "quadrature contour cx cy r")->expected(3);
  add_common_output(runge);

  auto* table = app.add_subcommand("table", "convert an identity artifact to a real sensing table");
  table->add_option("input", cfg.inputs, "identity JSON")->required()->expected(1);
  table->add_option("--area", cfg.geom_area, "probe area for the certificate");
  table->add_option("--L", cfg.geom_path, "path-length bound for the certificate");
  table->add_option("--d1", cfg.d1, "probe-to-boundary distance for the certificate");
  table->add_option("--container", container_vals, "container circle cx cy r (disc identities)")->expected(3);
  table->add_option("--M", cfg.big_m, "harmonic bound M");
  add_common_output(table);

  auto* verify = app.add_subcommand("verify", "measure residuals against certificates");
  verify->add_option("inputs", cfg.inputs, "identity or table artifacts")->required()->expected(-1);
  verify->add_flag("--compare", cfg.compare, "two-artifact comparison run");
  verify->add_option("--family", cfg.family, "test family: harmonic or poly")
      ->check(CLI::IsMember({"harmonic", "poly"}));
  verify->add_option("--M", cfg.big_m, "harmonic bound M");
  verify->add_option("--seed", cfg.seed, "PRNG seed");
  verify->add_option("--count", cfg.count, "number of test functions");
  verify->add_option("--maxdeg", cfg.maxdeg, "polynomial family degree cap");
  verify->add_option("--container", container_vals, "container circle cx cy r")->expected(3);
  add_common_output(verify);

  auto* sweep = app.add_subcommand("sweep", "CSV of (N, l2_bound, measured max residual)");
  add_point_option(sweep, "--b", cfg.b, "target point, re,im", true);
  sweep->add_option("--Nmax", cfg.nmax, "largest order");
  sweep->add_option("--seed", cfg.seed, "PRNG seed");
  sweep->add_option("--count", cfg.count, "test functions per order");
  sweep->add_option("--maxdeg", cfg.maxdeg, "polynomial family degree cap");
  add_common_output(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    for (const std::string& s : waypoint_strs) cfg.waypoints.push_back(parse_cplx(s));
    for (const std::string& s : via_strs) cfg.via.push_back(parse_cplx(s));
    if (omega_rect_vals.size() == 4)
      cfg.omega_rect = std::array<double, 4>{omega_rect_vals[0], omega_rect_vals[1], omega_rect_vals[2],
                                             omega_rect_vals[3]};
    if (boundary_circle_vals.size() == 3)
      cfg.boundary_circle = std::array<double, 3>{boundary_circle_vals[0], boundary_circle_vals[1],
                                                  boundary_circle_vals[2]};
    if (container_vals.size() == 3)
      cfg.container = std::array<double, 3>{container_vals[0], container_vals[1], container_vals[2]};

    if (disc->parsed()) cfg.command = "sense-disc";
    if (probe->parsed()) cfg.command = "sense-probe";
    if (runge->parsed()) cfg.command = "runge";
    if (table->parsed()) cfg.command = "table";
    if (verify->parsed()) cfg.command = "verify";
    if (sweep->parsed()) cfg.command = "sweep";

    return bergsense::io::run(cfg);
  } catch (const bergsense::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == bergsense::errc::config_error || e.code() == bergsense::errc::io_error) return 2;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
