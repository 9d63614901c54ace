#include "nfold/matrix.hpp"

namespace nfold {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(0) {
  for (const auto& r : rows) {
    if (cols_ == 0) cols_ = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols_)
      throw dimension_error("IntMatrix: ragged initializer");
  }
  a_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows)
    for (long v : r) a_.emplace_back(v);
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return IntMatrix(0, 0);
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i) {
    if (rows[i].size() != static_cast<std::size_t>(m.cols_))
      throw dimension_error("IntMatrix::from_rows: ragged rows");
    for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<IntVec>& cols, int rows_hint) {
  if (cols.empty()) {
    if (rows_hint < 0) rows_hint = 0;
    return IntMatrix(rows_hint, 0);
  }
  IntMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols_; ++j) {
    if (cols[j].size() != static_cast<std::size_t>(m.rows_))
      throw dimension_error("IntMatrix::from_cols: ragged columns");
    for (int i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVec IntMatrix::row(int i) const {
  IntVec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

IntVec IntMatrix::col(int j) const {
  IntVec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void IntMatrix::set_block(int i0, int j0, const IntMatrix& sub) {
  if (i0 < 0 || j0 < 0 || i0 + sub.rows_ > rows_ || j0 + sub.cols_ > cols_)
    throw dimension_error("IntMatrix::set_block: block out of range");
  for (int i = 0; i < sub.rows_; ++i)
    for (int j = 0; j < sub.cols_; ++j) (*this)(i0 + i, j0 + j) = sub(i, j);
}

IntVec IntMatrix::apply(const IntVec& x) const {
  if (x.size() != static_cast<std::size_t>(cols_))
    throw dimension_error("IntMatrix::apply: vector length != cols");
  IntVec y(rows_, Int(0));
  for (int i = 0; i < rows_; ++i) {
    Int s = 0;
    const Int* rp = &a_[static_cast<std::size_t>(i) * cols_];
    for (int j = 0; j < cols_; ++j)
      if (sgn(rp[j]) != 0) s += rp[j] * x[j];
    y[i] = s;
  }
  return y;
}

IntMatrix IntMatrix::mul(const IntMatrix& B) const {
  if (cols_ != B.rows_) throw dimension_error("IntMatrix::mul: inner dimensions differ");
  IntMatrix C(rows_, B.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = (*this)(i, k);
      if (sgn(aik) == 0) continue;
      for (int j = 0; j < B.cols_; ++j)
        if (sgn(B(k, j)) != 0) C(i, j) += aik * B(k, j);
    }
  return C;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix T(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::negated() const {
  IntMatrix N(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) N(i, j) = -(*this)(i, j);
  return N;
}

std::string IntMatrix::str() const {
  std::string s = std::to_string(rows_) + "x" + std::to_string(cols_) + "[";
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (k) s += ",";
    s += a_[k].get_str();
  }
  s += "]";
  return s;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  // A block with no rows stacks against anything.
  if (a.rows() != 0 && b.rows() != 0 && a.cols() != b.cols())
    throw dimension_error("vstack: column counts differ");
  int cols = a.rows() != 0 ? a.cols() : b.cols();
  IntMatrix m(a.rows() + b.rows(), cols);
  if (a.rows() != 0) m.set_block(0, 0, a);
  if (b.rows() != 0) m.set_block(a.rows(), 0, b);
  return m;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != 0 && b.cols() != 0 && a.rows() != b.rows())
    throw dimension_error("hstack: row counts differ");
  int rows = a.cols() != 0 ? a.rows() : b.rows();
  IntMatrix m(rows, a.cols() + b.cols());
  if (a.cols() != 0) m.set_block(0, 0, a);
  if (b.cols() != 0) m.set_block(0, a.cols(), b);
  return m;
}

}  // namespace nfold
