#pragma once
/** @file rmatrix.hpp
 *  @brief Dense exact-rational matrices: arithmetic, commutators, exact rank,
 *         exact linear solves.  Sized for the small matrices used here.
 */

#include <Eigen/Dense>
#include <initializer_list>
#include <vector>

#include "liehamsys/errors.hpp"
#include "liehamsys/rational.hpp"

namespace liehamsys {

/// Dense matrix over exact rationals (row-major storage).
class RMat {
 public:
  RMat() = default;
  RMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  /// Build from nested initializer lists of integers (entry = n or {n, d} not
  /// supported; use set() for non-integer entries).
  static RMat from_int(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    RMat m(int(rows.size()), int(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
      int j = 0;
      for (std::int64_t v : row) m(i, j++) = Rational(v);
      ++i;
    }
    return m;
  }

  static RMat identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  static RMat zero(int rows, int cols) { return RMat(rows, cols); }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Rational& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  RMat transposed() const {
    RMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RMat operator+(const RMat& a, const RMat& b) {
    a.check_same_shape(b);
    RMat out(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
    return out;
  }
  friend RMat operator-(const RMat& a, const RMat& b) {
    a.check_same_shape(b);
    RMat out(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] - b.a_[i];
    return out;
  }
  friend RMat operator*(const Rational& s, const RMat& m) {
    RMat out(m.rows_, m.cols_);
    for (size_t i = 0; i < m.a_.size(); ++i) out.a_[i] = s * m.a_[i];
    return out;
  }
  friend RMat operator*(const RMat& a, const RMat& b) {
    if (a.cols_ != b.rows_)
      fail(errkind::dimension_mismatch, "matrix product shape mismatch");
    RMat out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const RMat& a, const RMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }

  /// [A, B] = AB - BA.
  friend RMat commutator(const RMat& a, const RMat& b) { return a * b - b * a; }

  /// Exact rank by Gaussian elimination over the rationals.
  int rank() const {
    RMat m = *this;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
      int pivot = -1;
      for (int r = rank; r < rows_; ++r)
        if (!m(r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != rank)
        for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(rank, j));
      Rational inv = Rational(1) / m(rank, col);
      for (int j = col; j < cols_; ++j) m(rank, j) *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == rank || m(r, col).is_zero()) continue;
        Rational f = m(r, col);
        for (int j = col; j < cols_; ++j) m(r, j) -= f * m(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  /// Exact basis of the right null space { x : (*this) x = 0 }, one vector
  /// per free column of the reduced row-echelon form.
  std::vector<std::vector<Rational>> kernel() const {
    RMat m = *this;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
      int pivot = -1;
      for (int r = rank; r < rows_; ++r)
        if (!m(r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != rank)
        for (int j = 0; j < cols_; ++j) std::swap(m(pivot, j), m(rank, j));
      Rational inv = Rational(1) / m(rank, col);
      for (int j = col; j < cols_; ++j) m(rank, j) *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == rank || m(r, col).is_zero()) continue;
        Rational f = m(r, col);
        for (int j = col; j < cols_; ++j) m(r, j) -= f * m(rank, j);
      }
      pivot_col.push_back(col);
      ++rank;
    }
    std::vector<bool> is_pivot(size_t(cols_), false);
    for (int c : pivot_col) is_pivot[size_t(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[size_t(free)]) continue;
      std::vector<Rational> v(static_cast<std::size_t>(cols_));
      v[size_t(free)] = Rational(1);
      for (int r = 0; r < rank; ++r) v[size_t(pivot_col[size_t(r)])] = -m(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Exact solve of (*this) x = rhs for a consistent system with full column
  /// rank (the use cases are overdetermined basis-expansion solves).  Throws
  /// InvalidArgument when the system is inconsistent or rank-deficient.
  std::vector<Rational> solve(const std::vector<Rational>& rhs) const {
    if (int(rhs.size()) != rows_)
      fail(errkind::dimension_mismatch, "solve: rhs length mismatch");
    RMat aug(rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = rhs[i];
    }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
      int pivot = -1;
      for (int r = rank; r < rows_; ++r)
        if (!aug(r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != rank)
        for (int j = 0; j <= cols_; ++j) std::swap(aug(pivot, j), aug(rank, j));
      Rational inv = Rational(1) / aug(rank, col);
      for (int j = col; j <= cols_; ++j) aug(rank, j) *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == rank || aug(r, col).is_zero()) continue;
        Rational f = aug(r, col);
        for (int j = col; j <= cols_; ++j) aug(r, j) -= f * aug(rank, j);
      }
      pivot_col.push_back(col);
      ++rank;
    }
    if (rank < cols_) fail(errkind::invalid_argument, "solve: rank-deficient system");
    for (int r = rank; r < rows_; ++r)
      if (!aug(r, cols_).is_zero())
        fail(errkind::invalid_argument, "solve: inconsistent system");
    std::vector<Rational> x(cols_);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = aug(r, cols_);
    return x;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).to_double();
    return m;
  }

 private:
  void check_same_shape(const RMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      fail(errkind::dimension_mismatch, "matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

}  // namespace liehamsys
