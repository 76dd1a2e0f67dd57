#include "artifacts.hpp"

#include <fstream>

#include "bergsense/errors.hpp"

namespace bergsense::io {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(errc::io_error, "complex values are [re, im] arrays");
  return {j[0].get<double>(), j[1].get<double>()};
}

namespace {

json weights_to_json(const std::vector<cplx>& w) {
  json arr = json::array();
  for (const cplx& v : w) arr.push_back(to_json(v));
  return arr;
}

std::vector<cplx> weights_from_json(const json& j) {
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const json& v : j) out.push_back(cplx_from_json(v));
  return out;
}

std::string domain_kind_name(DomainRef::Kind k) {
  switch (k) {
    case DomainRef::Kind::disc: return "disc";
    case DomainRef::Kind::probe: return "probe";
    case DomainRef::Kind::contour: return "contour";
  }
  return "disc";
}

DomainRef::Kind domain_kind_from(const std::string& s) {
  if (s == "disc") return DomainRef::Kind::disc;
  if (s == "probe") return DomainRef::Kind::probe;
  if (s == "contour") return DomainRef::Kind::contour;
  fail(errc::io_error, "unknown domain kind: " + s);
}

Provenance provenance_from(const std::string& s) {
  if (s == "taylor") return Provenance::taylor;
  if (s == "transported") return Provenance::transported;
  if (s == "gram-optimal") return Provenance::gram_optimal;
  if (s == "runge") return Provenance::runge;
  fail(errc::io_error, "unknown provenance: " + s);
}

}  // namespace

json to_json(const SensingIdentity& id) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "sensing_identity";
  j["domain"] = {{"type", domain_kind_name(id.domain.kind)}, {"id", id.domain.id}};
  j["a"] = to_json(id.a);
  j["b"] = to_json(id.b);
  j["order"] = id.order();
  j["weights"] = weights_to_json(id.weights);
  if (id.l2_bound)
    j["l2_bound"] = *id.l2_bound;
  else
    j["l2_bound"] = nullptr;
  if (id.sup_cert)
    j["sup_certificate"] = {{"eps", id.sup_cert->eps}, {"boundary_length", id.sup_cert->boundary_length}};
  else
    j["sup_certificate"] = nullptr;
  j["provenance"] = provenance_name(id.provenance);
  j["warnings"] = id.warnings;
  return j;
}

SensingIdentity identity_from_json(const json& j) {
  SensingIdentity id;
  id.domain.kind = domain_kind_from(j.at("domain").at("type").get<std::string>());
  id.domain.id = j.at("domain").at("id").get<std::string>();
  id.a = cplx_from_json(j.at("a"));
  id.b = cplx_from_json(j.at("b"));
  id.weights = weights_from_json(j.at("weights"));
  if (!j.at("l2_bound").is_null()) id.l2_bound = j.at("l2_bound").get<double>();
  if (!j.at("sup_certificate").is_null()) {
    SupCertificate c;
    c.eps = j.at("sup_certificate").at("eps").get<double>();
    c.boundary_length = j.at("sup_certificate").at("boundary_length").get<double>();
    id.sup_cert = c;
  }
  id.provenance = provenance_from(j.at("provenance").get<std::string>());
  if (j.contains("warnings")) id.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (id.order() != j.at("order").get<int>())
    fail(errc::io_error, "weights length does not match order");
  return id;
}

json to_json(const ProbeDomain& probe) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "probe_domain";
  j["spine"] = {{"coeffs", weights_to_json(probe.spine.coeffs)}, {"t_a", probe.t_a}, {"t_b", probe.t_b}};
  j["rect"] = {{"mu", probe.rect.mu}, {"sigma", probe.rect.sigma}};
  j["modulus_k"] = probe.modulus_k;
  j["center_shift"] = probe.center_shift;
  j["jet"] = {{"coeffs", weights_to_json(probe.jet.coeffs)}};
  j["area"] = probe.area;
  j["a"] = to_json(probe.a);
  j["b"] = to_json(probe.b);
  j["checks"] = {
      {"containment_checked", probe.checks.containment_checked},
      {"containment_pass", probe.checks.containment_pass},
      {"injectivity_pass", probe.checks.injectivity_pass},
      {"winding_min", probe.checks.winding_min},
      {"winding_max", probe.checks.winding_max},
      {"spine_deriv_pass", probe.checks.spine_deriv_pass},
      {"spine_deriv_margin", probe.checks.spine_deriv_margin},
      {"sigma_halvings", probe.sigma_halvings},
  };
  return j;
}

ProbeDomain probe_from_json(const json& j) {
  ProbeDomain p;
  p.spine = TruncatedSeries(0.0, weights_from_json(j.at("spine").at("coeffs")));
  p.t_a = j.at("spine").at("t_a").get<double>();
  p.t_b = j.at("spine").at("t_b").get<double>();
  p.rect.mu = j.at("rect").at("mu").get<double>();
  p.rect.sigma = j.at("rect").at("sigma").get<double>();
  p.modulus_k = j.at("modulus_k").get<double>();
  p.center_shift = j.at("center_shift").get<double>();
  p.jet = TruncatedSeries(0.0, weights_from_json(j.at("jet").at("coeffs")));
  p.area = j.at("area").get<double>();
  p.a = cplx_from_json(j.at("a"));
  p.b = cplx_from_json(j.at("b"));
  const json& c = j.at("checks");
  p.checks.containment_checked = c.at("containment_checked").get<bool>();
  p.checks.containment_pass = c.at("containment_pass").get<bool>();
  p.checks.injectivity_pass = c.at("injectivity_pass").get<bool>();
  p.checks.winding_min = c.at("winding_min").get<int>();
  p.checks.winding_max = c.at("winding_max").get<int>();
  p.checks.spine_deriv_pass = c.at("spine_deriv_pass").get<bool>();
  p.checks.spine_deriv_margin = c.at("spine_deriv_margin").get<double>();
  p.sigma_halvings = c.at("sigma_halvings").get<int>();
  return p;
}

json to_json(const RealSensingTable& table) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "real_sensing_table";
  j["a"] = to_json(table.a);
  j["b"] = to_json(table.b);
  json entries = json::array();
  for (const TableEntry& e : table.entries)
    entries.push_back(json{{"dx", e.dx}, {"dy", e.dy}, {"coeff", e.coeff}});
  j["entries"] = entries;
  if (table.certificate) {
    j["certificate"] = {
        {"l2_lambda", table.certificate->l2_lambda},
        {"area", table.certificate->area},
        {"conj_const", table.certificate->conj_const},
        {"bound_per_M", table.certificate->bound_per_M},
    };
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

RealSensingTable table_from_json(const json& j) {
  RealSensingTable t;
  t.a = cplx_from_json(j.at("a"));
  t.b = cplx_from_json(j.at("b"));
  for (const json& e : j.at("entries"))
    t.entries.push_back(TableEntry{e.at("dx").get<int>(), e.at("dy").get<int>(), e.at("coeff").get<double>()});
  if (!j.at("certificate").is_null()) {
    TableCertificate c;
    c.l2_lambda = j.at("certificate").at("l2_lambda").get<double>();
    c.area = j.at("certificate").at("area").get<double>();
    c.conj_const = j.at("certificate").at("conj_const").get<double>();
    c.bound_per_M = j.at("certificate").at("bound_per_M").get<double>();
    t.certificate = c;
  }
  return t;
}

json to_json(const RationalApproximant& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "rational_approximant";
  j["pole"] = to_json(r.pole);
  // Rim-scaled coefficients: value(z) = sum coeffs[j-1] (coeff_scale/(z-pole))^j.
  j["coeff_scale"] = 2.0 * r.delta;
  j["coeffs"] = weights_to_json(r.coeffs);
  j["delta"] = r.delta;
  j["eps"] = r.eps;
  j["curve"] = weights_to_json(r.curve);
  j["step_cutoffs"] = r.step_cutoffs;
  return j;
}

RationalApproximant approximant_from_json(const json& j) {
  RationalApproximant r;
  r.pole = cplx_from_json(j.at("pole"));
  r.coeffs = weights_from_json(j.at("coeffs"));
  r.delta = j.at("delta").get<double>();
  r.eps = j.at("eps").get<double>();
  r.curve = weights_from_json(j.at("curve"));
  if (j.contains("step_cutoffs")) r.step_cutoffs = j.at("step_cutoffs").get<std::vector<int>>();
  if (j.contains("coeff_scale") && j.at("coeff_scale").get<double>() != 2.0 * r.delta)
    fail(errc::io_error, "unexpected coefficient scale in rational approximant");
  return r;
}

json to_json(const ResidualReport& rep) {
  json j;
  j["family"] = rep.family;
  j["seed"] = rep.seed;
  j["count"] = rep.count;
  j["max_residual"] = rep.max_residual;
  j["mean_residual"] = rep.mean_residual;
  j["certificate"] = rep.certificate;
  j["violations"] = rep.violations;
  return j;
}

json load_artifact(const std::string& path, const std::string& expected_kind) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::io_error, "cannot parse " + path + ": " + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
    fail(errc::io_error, path + " has an unsupported schema_version");
  if (!expected_kind.empty() && j.value("kind", "") != expected_kind)
    fail(errc::io_error, path + " is not a " + expected_kind + " artifact");
  return j;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot write " + path);
  out << contents;
  if (!out) fail(errc::io_error, "short write to " + path);
}

void write_artifact(const std::string& path, json j) {
  write_file(path, j.dump(2) + "\n");
}

}  // namespace bergsense::io
