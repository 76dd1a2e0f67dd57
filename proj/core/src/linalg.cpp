#include "bergsense/detail/linalg.hpp"

#include <cmath>
#include <numeric>

#include "bergsense/errors.hpp"

namespace bergsense::detail {

Lu::Lu(Mat a) : lu_(std::move(a)), perm_(lu_.rows()) {
  const int n = lu_.rows();
  if (n != lu_.cols()) fail(errc::singular_solve, "LU requires a square matrix");
  for (int j = 0; j < n; ++j) {
    double colsum = 0.0;
    for (int i = 0; i < n; ++i) colsum += std::abs(lu_(i, j));
    norm1_ = std::max(norm1_, colsum);
  }
  std::iota(perm_.begin(), perm_.end(), 0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(lu_(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best == 0.0) fail(errc::singular_solve, "zero pivot in LU factorization");
    if (piv != k) {
      std::swap(perm_[piv], perm_[k]);
      for (int j = 0; j < n; ++j) std::swap(lu_(piv, j), lu_(k, j));
    }
    const cplx inv = 1.0 / lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cplx f = lu_(i, k) * inv;
      lu_(i, k) = f;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

std::vector<cplx> Lu::solve(const std::vector<cplx>& rhs) const {
  const int n = lu_.rows();
  std::vector<cplx> x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

double Lu::cond1() const {
  const int n = lu_.rows();
  double inv_norm = 0.0;
  std::vector<cplx> e(n, cplx(0.0));
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    std::vector<cplx> col = solve(e);
    e[j] = 0.0;
    double colsum = 0.0;
    for (const cplx& v : col) colsum += std::abs(v);
    inv_norm = std::max(inv_norm, colsum);
  }
  return norm1_ * inv_norm;
}

std::vector<cplx> solve_refined(const Mat& a, const std::vector<cplx>& b, double* cond_out) {
  const int n = a.rows();
  Lu lu(a);
  if (cond_out) *cond_out = lu.cond1();
  std::vector<cplx> x = lu.solve(b);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<cplx> r(n);
    for (int i = 0; i < n; ++i) {
      std::complex<long double> acc(b[i].real(), b[i].imag());
      for (int j = 0; j < n; ++j) {
        acc -= std::complex<long double>(a(i, j).real(), a(i, j).imag()) *
               std::complex<long double>(x[j].real(), x[j].imag());
      }
      r[i] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    std::vector<cplx> d = lu.solve(r);
    for (int i = 0; i < n; ++i) x[i] += d[i];
  }
  return x;
}

}  // namespace bergsense::detail
