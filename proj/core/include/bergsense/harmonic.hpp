#pragma once

#include <optional>
#include <vector>

#include "bergsense/disc.hpp"
#include "bergsense/types.hpp"

namespace bergsense {

// Geometry constants feeding the harmonic certificate. `path_length` bounds
// the in-probe integration path from a to any probe point;
// `boundary_distance` is dist(probe closure, boundary of Omega).
struct ProbeGeometry {
  double area = 0.0;
  double path_length = 0.0;
  double boundary_distance = 0.0;
};

struct TableEntry {
  int dx = 0;  // order in x
  int dy = 0;  // 0 or 1
  double coeff = 0.0;
};

struct TableCertificate {
  double l2_lambda = 0.0;
  double area = 0.0;
  double conj_const = 0.0;  // path_length * 4 / (pi * boundary_distance)
  double bound_per_M = 0.0;  // l2_lambda * sqrt(area) * (1 + conj_const)

  double bound_for(double M) const { return bound_per_M * M; }
};

/// Real derivative-weight table for harmonic functions:
/// u(b) ~= sum entries coeff * (d^dx/dx^dx d^dy/dy^dy u)(a). The multi-index
/// shapes are exactly (0,0), (m,0) and (m-1,1).
struct RealSensingTable {
  cplx a{0.0}, b{0.0};
  std::vector<TableEntry> entries;
  std::optional<TableCertificate> certificate;

  int max_order() const;

  // partials[m] = (d^m_x u, d^{m-1}_x d_y u) at a, partials[0] = (u(a), 0).
  double evaluate(const std::vector<std::pair<double, double>>& partials) const;
};

// Splits complex derivative weights into the real table (certificate
// unfilled): coeff(0,0) = Re d_0, coeff(m,0) = Re d_m, coeff(m-1,1) = Im d_m.
RealSensingTable to_real_table(const SensingIdentity& id);

// ||h||_{L2(probe)} bound for the analytic completion h = u + iv of a
// harmonic u with |u| <= M on Omega, conjugate normalized v(a) = 0:
// sqrt(area) * (M + path_length * 4 M / (pi * boundary_distance)).
double conjugate_norm_bound(const ProbeGeometry& g, double M);

// Sharp interior gradient bound for |u| <= M harmonic at distance d from the
// boundary.
double harmonic_gradient_bound(double M, double dist);

// Fills the certificate so that |u(b) - table(u)| <= certificate.bound_for(M)
// for every u harmonic on Omega with |u| <= M.
RealSensingTable harmonic_certificate(const SensingIdentity& id, RealSensingTable table,
                                      const ProbeGeometry& geometry, double M);

// Recomputes bound_per_M from the stored components (self-consistency check).
double recompute_bound_per_M(const TableCertificate& cert);

}  // namespace bergsense
