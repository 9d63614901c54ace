#pragma once

#include <cassert>
#include <initializer_list>
#include <string>
#include <vector>

#include "nfold/errors.hpp"
#include "nfold/ints.hpp"

namespace nfold {

/// Dense row-major integer matrix. Zero rows and zero columns are first-class
/// values; several constructions in this library stack against empty blocks.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Int(0)) {
    if (rows < 0 || cols < 0) throw argument_error("IntMatrix: negative dimension");
  }
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);
  static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
  static IntMatrix from_rows(const std::vector<IntVec>& rows);
  /// Builds the matrix whose j-th column is cols[j].
  static IntMatrix from_cols(const std::vector<IntVec>& cols, int rows_hint = -1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const Int& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  IntVec row(int i) const;
  IntVec col(int j) const;

  /// Copies `sub` into this matrix with its top-left corner at (i0, j0).
  void set_block(int i0, int j0, const IntMatrix& sub);

  IntVec apply(const IntVec& x) const;  // A * x
  IntMatrix mul(const IntMatrix& B) const;
  IntMatrix transposed() const;
  IntMatrix negated() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  /// Compact one-line rendering, used in error messages and cache keys.
  std::string str() const;

 private:
  int rows_;
  int cols_;
  std::vector<Int> a_;
};

/// Stacks a on top of b (column counts must agree).
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
/// Places a left of b (row counts must agree).
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

}  // namespace nfold
