#include "bergsense/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "bergsense/errors.hpp"

namespace bergsense {

int RealSensingTable::max_order() const {
  int n = 0;
  for (const TableEntry& e : entries) n = std::max(n, e.dx + e.dy);
  return n;
}

double RealSensingTable::evaluate(const std::vector<std::pair<double, double>>& partials) const {
  if (static_cast<int>(partials.size()) < max_order() + 1)
    fail(errc::order_range, "need partials up to the table's order");
  double acc = 0.0;
  for (const TableEntry& e : entries) {
    if (e.dy == 0) {
      acc += e.coeff * partials[static_cast<size_t>(e.dx)].first;
    } else {
      acc += e.coeff * partials[static_cast<size_t>(e.dx) + 1].second;
    }
  }
  return acc;
}

RealSensingTable to_real_table(const SensingIdentity& id) {
  RealSensingTable t;
  t.a = id.a;
  t.b = id.b;
  t.entries.reserve(2 * id.weights.size());
  t.entries.push_back(TableEntry{0, 0, id.weights[0].real()});
  for (int m = 1; m <= id.order(); ++m) {
    const cplx d = id.weights[static_cast<size_t>(m)];
    t.entries.push_back(TableEntry{m, 0, d.real()});
    t.entries.push_back(TableEntry{m - 1, 1, d.imag()});
  }
  return t;
}

double harmonic_gradient_bound(double M, double dist) {
  if (!(dist > 0.0)) fail(errc::geometry_error, "distance to the boundary must be positive");
  return 4.0 * M / (kPi * dist);
}

double conjugate_norm_bound(const ProbeGeometry& g, double M) {
  if (!(g.boundary_distance > 0.0)) fail(errc::geometry_error, "boundary distance must be positive");
  if (g.path_length < 0.0 || g.area < 0.0) fail(errc::geometry_error, "negative geometry constants");
  if (!(M > 0.0)) fail(errc::parameter_error, "M must be positive");
  return std::sqrt(g.area) * (M + g.path_length * harmonic_gradient_bound(M, g.boundary_distance));
}

double recompute_bound_per_M(const TableCertificate& cert) {
  return cert.l2_lambda * std::sqrt(cert.area) * (1.0 + cert.conj_const);
}

RealSensingTable harmonic_certificate(const SensingIdentity& id, RealSensingTable table,
                                      const ProbeGeometry& geometry, double M) {
  if (!id.l2_bound || !std::isfinite(*id.l2_bound))
    fail(errc::parameter_error, "identity carries no finite L2 certificate");
  if (M < 0.0) fail(errc::parameter_error, "M must be nonnegative");
  if (!(geometry.boundary_distance > 0.0)) fail(errc::geometry_error, "boundary distance must be positive");

  TableCertificate cert;
  cert.l2_lambda = *id.l2_bound;
  cert.area = geometry.area;
  cert.conj_const = geometry.path_length * 4.0 / (kPi * geometry.boundary_distance);
  cert.bound_per_M = recompute_bound_per_M(cert);
  table.certificate = cert;
  return table;
}

}  // namespace bergsense
