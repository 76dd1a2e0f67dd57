#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <sstream>

#include "artifacts.hpp"
#include "bergsense/errors.hpp"
#include "bergsense/transport.hpp"

namespace bergsense::io {

namespace {

json config_json(const JobConfig& c) {
  json j;
  j["command"] = c.command;
  j["a"] = to_json(c.a);
  j["b"] = to_json(c.b);
  j["eps"] = c.eps;
  j["order"] = c.order;
  j["mode"] = c.mode;
  j["sup_radius"] = c.sup_radius;
  if (!c.waypoints.empty()) {
    json w = json::array();
    for (const cplx& z : c.waypoints) w.push_back(to_json(z));
    j["waypoints"] = w;
    j["degree"] = c.degree;
    j["mu"] = c.mu;
    j["sigma"] = c.sigma;
  }
  if (c.omega_rect) j["omega_rect"] = *c.omega_rect;
  if (c.d1 > 0.0) j["d1"] = c.d1;
  if (c.command == "runge") {
    j["delta"] = c.delta;
    if (!c.via.empty()) {
      json v = json::array();
      for (const cplx& z : c.via) v.push_back(to_json(z));
      j["via"] = v;
    }
  }
  if (c.boundary_circle) j["boundary_circle"] = *c.boundary_circle;
  if (c.container) j["container"] = *c.container;
  if (c.command == "verify" || c.command == "sweep") {
    j["family"] = c.family;
    j["M"] = c.big_m;
    j["seed"] = c.seed;
    j["count"] = c.count;
    j["maxdeg"] = c.maxdeg;
  }
  if (c.command == "sweep") j["nmax"] = c.nmax;
  j["inputs"] = c.inputs;
  j["output"] = c.output;
  return j;
}

std::string fmt_double(double v) {
  // Shortest round-trip decimal, matching the JSON encoder.
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

TailMode mode_from(const std::string& s) {
  if (s == "l2") return TailMode::l2;
  if (s == "sup") return TailMode::sup;
  fail(errc::config_error, "mode must be 'l2' or 'sup'");
}

void require_output(const JobConfig& c) {
  if (c.output.empty()) fail(errc::config_error, "an output path (-o) is required");
}

OmegaSpec rect_omega(const std::array<double, 4>& r) {
  const double x0 = r[0], x1 = r[1], y0 = r[2], y1 = r[3];
  if (!(x0 < x1) || !(y0 < y1)) fail(errc::config_error, "omega rectangle needs x0 < x1 and y0 < y1");
  OmegaSpec omega;
  omega.contains = [=](cplx z) {
    return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1;
  };
  omega.boundary_distance = [=](cplx z) {
    return std::min(std::min(z.real() - x0, x1 - z.real()), std::min(z.imag() - y0, y1 - z.imag()));
  };
  return omega;
}

int cmd_sense_disc(const JobConfig& c) {
  require_output(c);
  SensingIdentity id = c.order >= 0 ? disc_identity_at_order(c.b, c.order)
                                    : disc_identity(c.b, c.eps, mode_from(c.mode), c.sup_radius);
  json j = to_json(id);
  j["config"] = config_json(c);
  write_artifact(c.output, j);
  std::cout << "sense-disc: N = " << id.order() << ", l2_bound = " << *id.l2_bound << "\n";
  return 0;
}

int cmd_sense_probe(const JobConfig& c) {
  require_output(c);
  if (c.waypoints.size() < 2) fail(errc::config_error, "probe needs at least two waypoints");

  size_t idx_a = c.waypoints.size(), idx_b = c.waypoints.size();
  for (size_t i = 0; i < c.waypoints.size(); ++i) {
    if (c.waypoints[i] == c.a) idx_a = i;
    if (c.waypoints[i] == c.b) idx_b = i;
  }
  if (idx_a >= c.waypoints.size() || idx_b >= c.waypoints.size())
    fail(errc::config_error, "waypoints must include both a and b exactly");

  ProbeSpec spec;
  spec.waypoints = c.waypoints;
  spec.idx_a = idx_a;
  spec.idx_b = idx_b;
  spec.degree = c.degree;
  spec.mu = c.mu;
  if (c.sigma > 0.0) spec.sigma = c.sigma;
  if (c.omega_rect) spec.omega = rect_omega(*c.omega_rect);
  spec.jet_order = 8;  // provisional; the transport jet is re-extracted below
  ProbeDomain probe = build_probe(spec);

  const ProbePreimage pre = solve_B(probe.as_conformal(), c.b);
  const int N = c.order >= 0 ? c.order : choose_order(pre.B, c.eps, mode_from(c.mode), c.sup_radius);
  probe.jet = probe_jet(probe, N + 1);

  const SensingIdentity disc_id = disc_identity_at_order(pre.B, N);
  SensingIdentity id = transport_identity(disc_id, probe.jet, pre.fprime_b, c.output + ".probe.json");
  id.b = c.b;  // exact target, in place of the jet evaluation

  RealSensingTable table = to_real_table(id);
  ProbeGeometry geom;
  geom.area = probe.area;
  geom.path_length = path_length_bound(probe.spine, probe.rect, probe.t_a);
  if (c.d1 > 0.0) {
    geom.boundary_distance = c.d1;
  } else if (c.omega_rect) {
    geom.boundary_distance = boundary_distance_estimate(probe, rect_omega(*c.omega_rect).boundary_distance);
  } else {
    fail(errc::config_error, "need --omega-rect or --d1 to fill the harmonic certificate");
  }
  table = harmonic_certificate(id, table, geom, c.big_m);

  json jp = to_json(probe);
  jp["config"] = config_json(c);
  write_artifact(c.output + ".probe.json", jp);
  json ji = to_json(id);
  ji["config"] = config_json(c);
  write_artifact(c.output + ".identity.json", ji);
  json jt = to_json(table);
  jt["config"] = config_json(c);
  jt["geometry"] = {{"area", geom.area}, {"path_length", geom.path_length}, {"boundary_distance", geom.boundary_distance}};
  write_artifact(c.output + ".table.json", jt);

  std::cout << "sense-probe: N = " << N << ", B = " << pre.B << ", l2_bound = " << *id.l2_bound
            << ", bound_per_M = " << table.certificate->bound_per_M << "\n";
  return 0;
}

int cmd_runge(const JobConfig& c) {
  require_output(c);
  std::vector<cplx> curve;
  curve.push_back(c.b);
  curve.insert(curve.end(), c.via.begin(), c.via.end());
  curve.push_back(c.a);

  const RationalApproximant r = push_pole(curve, c.delta, c.eps);
  double boundary_length = 2.0 * kPi;
  std::vector<cplx> boundary_samples;
  if (c.boundary_circle) {
    const auto& bc = *c.boundary_circle;
    boundary_length = 2.0 * kPi * bc[2];
    for (int q = 0; q < 256; ++q)
      boundary_samples.push_back(cplx(bc[0], bc[1]) + bc[2] * std::polar(1.0, 2.0 * kPi * q / 256.0));
  }
  const SensingIdentity id = runge_weights(r, boundary_length, boundary_samples);

  json ja = to_json(r);
  ja["config"] = config_json(c);
  write_artifact(c.output + ".approximant.json", ja);
  json ji = to_json(id);
  ji["config"] = config_json(c);
  write_artifact(c.output + ".identity.json", ji);

  std::cout << "runge: " << r.terms() << " terms, certified eps = " << r.eps << "\n";
  return 0;
}

int cmd_table(const JobConfig& c) {
  require_output(c);
  if (c.inputs.size() != 1) fail(errc::config_error, "table takes exactly one identity artifact");
  const SensingIdentity id = identity_from_json(load_artifact(c.inputs[0], "sensing_identity"));
  RealSensingTable table = to_real_table(id);

  if (id.l2_bound) {
    ProbeGeometry geom;
    bool have_geom = false;
    if (c.geom_area > 0.0 && c.geom_path >= 0.0 && c.d1 > 0.0) {
      geom = ProbeGeometry{c.geom_area, c.geom_path, c.d1};
      have_geom = true;
    } else if (c.container && id.domain.kind == DomainRef::Kind::disc) {
      // Unit-disc identity inside a big container: area pi, straight paths
      // from a, distance r - 1 to the container circle.
      const double r = (*c.container)[2];
      if (r <= 1.0) fail(errc::config_error, "container radius must exceed 1");
      geom = ProbeGeometry{kPi, 1.0 + std::abs(id.a), r - 1.0};
      have_geom = true;
    }
    if (have_geom) table = harmonic_certificate(id, table, geom, c.big_m);
  }

  json j = to_json(table);
  j["config"] = config_json(c);
  write_artifact(c.output, j);
  std::cout << "table: " << table.entries.size() << " entries"
            << (table.certificate ? ", certificate filled" : ", certificate unfilled") << "\n";
  return 0;
}

ResidualReport verify_one(const JobConfig& c, const std::string& path, json& out_entry) {
  const json j = load_artifact(path);
  const std::string kind = j.value("kind", "");
  ResidualReport rep;
  if (kind == "real_sensing_table") {
    const RealSensingTable table = table_from_json(j);
    if (c.family != "harmonic") fail(errc::config_error, "tables are verified with --family harmonic");
    cplx center(0.0, 0.0);
    double radius = 3.0;
    if (c.container) {
      center = cplx((*c.container)[0], (*c.container)[1]);
      radius = (*c.container)[2];
    }
    rep = report_harmonic(table, center, radius, c.big_m, c.count, c.seed);
  } else if (kind == "sensing_identity") {
    const SensingIdentity id = identity_from_json(j);
    if (c.family != "poly") fail(errc::config_error, "identities are verified with --family poly");
    if (id.sup_cert) {
      cplx center(0.0, 0.0);
      double radius = 1.0;
      if (j.contains("config") && j["config"].contains("boundary_circle")) {
        const auto bc = j["config"]["boundary_circle"].get<std::array<double, 3>>();
        center = cplx(bc[0], bc[1]);
        radius = bc[2];
      }
      rep = report_runge_polynomials(id, center, radius, c.count, c.maxdeg, c.seed);
    } else {
      rep = report_polynomial_l2(id, c.count, c.maxdeg, c.seed);
    }
  } else {
    fail(errc::config_error, path + ": cannot verify artifacts of kind '" + kind + "'");
  }
  out_entry = to_json(rep);
  out_entry["input"] = path;
  return rep;
}

int cmd_verify(const JobConfig& c) {
  if (c.inputs.empty()) fail(errc::config_error, "verify needs at least one artifact");
  if (c.compare && c.inputs.size() != 2) fail(errc::config_error, "--compare takes exactly two artifacts");

  json results = json::array();
  int violations = 0;
  for (const std::string& path : c.inputs) {
    json entry;
    const ResidualReport rep = verify_one(c, path, entry);
    violations += rep.violations;
    results.push_back(entry);
    std::cout << "verify " << path << ": max residual " << rep.max_residual << ", certificate "
              << rep.certificate << ", violations " << rep.violations << "\n";
  }

  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "verify_report";
  j["results"] = results;
  j["violations_total"] = violations;
  j["config"] = config_json(c);
  if (!c.output.empty()) write_artifact(c.output, j);
  return violations > 0 ? 1 : 0;
}

int cmd_sweep(const JobConfig& c) {
  require_output(c);
  std::ostringstream csv;
  csv << "N,l2_bound,max_residual\r\n";
  for (int N = 0; N <= c.nmax; ++N) {
    const SensingIdentity id = disc_identity_at_order(c.b, N);
    const ResidualReport rep = report_polynomial_l2(id, c.count, c.maxdeg, c.seed);
    csv << N << "," << fmt_double(*id.l2_bound) << "," << fmt_double(rep.max_residual) << "\r\n";
  }
  write_file(c.output, csv.str());
  std::cout << "sweep: wrote N = 0.." << c.nmax << " to " << c.output << "\n";
  return 0;
}

}  // namespace

int run(const JobConfig& config) {
  if (config.command != "table" && config.command != "verify") {
    if (config.a == config.b && (config.command == "sense-probe" || config.command == "runge"))
      fail(errc::config_error, "a and b must differ");
  }
  if (config.command == "sense-disc") return cmd_sense_disc(config);
  if (config.command == "sense-probe") return cmd_sense_probe(config);
  if (config.command == "runge") return cmd_runge(config);
  if (config.command == "table") return cmd_table(config);
  if (config.command == "verify") return cmd_verify(config);
  if (config.command == "sweep") return cmd_sweep(config);
  fail(errc::config_error, "unknown command: " + config.command);
}

}  // namespace bergsense::io
