#pragma once

#include <vector>

#include "bergsense/types.hpp"

namespace bergsense::detail {

// Dense complex matrix in row-major order. Sizes here are tiny (Gram systems
// up to 41x41, spine fits ~ degree+3), so a hand-rolled pivoted LU keeps the
// core free of linear-algebra dependencies.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

// LU factorization with partial pivoting. Throws errc::singular_solve on an
// exactly zero pivot.
class Lu {
 public:
  explicit Lu(Mat a);

  std::vector<cplx> solve(const std::vector<cplx>& rhs) const;

  // One-norm condition estimate: ||A||_1 * ||A^-1||_1 with the inverse norm
  // computed exactly column by column (fine at these sizes).
  double cond1() const;

 private:
  Mat lu_;
  std::vector<int> perm_;
  double norm1_ = 0.0;
};

// Solve A x = b with two passes of iterative refinement; residuals are
// accumulated in long double.
std::vector<cplx> solve_refined(const Mat& a, const std::vector<cplx>& b, double* cond_out = nullptr);

}  // namespace bergsense::detail
