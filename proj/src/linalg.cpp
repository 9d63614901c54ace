#include "nfold/linalg.hpp"

namespace nfold {

bool conformal_leq(const IntVec& x, const IntVec& y) {
  if (x.size() != y.size()) throw dimension_error("conformal_leq: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) * sgn(y[i]) < 0) return false;
    if (cmp(abs_int(x[i]), abs_int(y[i])) > 0) return false;
  }
  return true;
}

bool conformal_lt(const IntVec& x, const IntVec& y) {
  return conformal_leq(x, y) && x != y;
}

namespace {

// Unimodular column operation combining columns j0 and j1 so that row i ends
// with (gcd, 0) in these columns. Applied to h and u in lockstep.
void gcd_combine_cols(IntMatrix& h, IntMatrix& u, int i, int j0, int j1) {
  const Int a = h(i, j0);
  const Int b = h(i, j1);
  if (sgn(b) == 0) return;
  if (sgn(a) == 0) {
    // swap, then fix sign later
    for (int r = 0; r < h.rows(); ++r) std::swap(h(r, j0), h(r, j1));
    for (int r = 0; r < u.rows(); ++r) std::swap(u(r, j0), u(r, j1));
    return;
  }
  Int g, p, q;
  mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const Int ag = a / g;
  const Int bg = b / g;
  // [c0', c1'] = [c0, c1] * [[p, -bg], [q, ag]], determinant p*ag + q*bg = 1.
  for (int r = 0; r < h.rows(); ++r) {
    Int c0 = h(r, j0), c1 = h(r, j1);
    h(r, j0) = p * c0 + q * c1;
    h(r, j1) = ag * c1 - bg * c0;
  }
  for (int r = 0; r < u.rows(); ++r) {
    Int c0 = u(r, j0), c1 = u(r, j1);
    u(r, j0) = p * c0 + q * c1;
    u(r, j1) = ag * c1 - bg * c0;
  }
}

void negate_col(IntMatrix& h, IntMatrix& u, int j) {
  for (int r = 0; r < h.rows(); ++r) h(r, j) = -h(r, j);
  for (int r = 0; r < u.rows(); ++r) u(r, j) = -u(r, j);
}

// col j -= q * col piv
void submul_col(IntMatrix& h, IntMatrix& u, int j, const Int& q, int piv) {
  if (sgn(q) == 0) return;
  for (int r = 0; r < h.rows(); ++r) h(r, j) -= q * h(r, piv);
  for (int r = 0; r < u.rows(); ++r) u(r, j) -= q * u(r, piv);
}

}  // namespace

HnfResult hermite_normal_form(const IntMatrix& a) {
  const int m = a.rows(), n = a.cols();
  HnfResult res{a, IntMatrix::identity(n), 0, {}};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  int piv = 0;
  for (int i = 0; i < m && piv < n; ++i) {
    for (int j = piv + 1; j < n; ++j) gcd_combine_cols(h, u, i, piv, j);
    if (sgn(h(i, piv)) == 0) continue;
    if (sgn(h(i, piv)) < 0) negate_col(h, u, piv);
    for (int j = 0; j < piv; ++j)
      submul_col(h, u, j, floor_div(h(i, j), h(i, piv)), piv);
    res.pivot_rows.push_back(i);
    ++piv;
  }
  res.pivot_count = piv;
  return res;
}

std::optional<IntVec> solve_diophantine(const IntMatrix& a, const IntVec& b) {
  if (b.size() != static_cast<std::size_t>(a.rows()))
    throw dimension_error("solve_diophantine: rhs length != rows");
  HnfResult hnf = hermite_normal_form(a);
  const int n = a.cols();
  IntVec y(n, Int(0));
  int next_pivot = 0;
  for (int i = 0; i < a.rows(); ++i) {
    Int res = b[i];
    for (int j = 0; j < hnf.pivot_count; ++j)
      if (sgn(hnf.h(i, j)) != 0) res -= hnf.h(i, j) * y[j];
    if (next_pivot < hnf.pivot_count && hnf.pivot_rows[next_pivot] == i) {
      Int q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), res.get_mpz_t(),
                  hnf.h(i, next_pivot).get_mpz_t());
      if (sgn(r) != 0) return std::nullopt;
      y[next_pivot] = q;
      ++next_pivot;
    } else if (sgn(res) != 0) {
      return std::nullopt;
    }
  }
  return hnf.u.apply(y);
}

std::vector<IntVec> lattice_kernel_basis(const IntMatrix& a) {
  HnfResult hnf = hermite_normal_form(a);
  std::vector<IntVec> basis;
  basis.reserve(a.cols() - hnf.pivot_count);
  for (int j = hnf.pivot_count; j < a.cols(); ++j) basis.push_back(hnf.u.col(j));
  return basis;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw dimension_error("determinant: matrix not square");
  const int n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (sgn(m(k, k)) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (sgn(m(i, k)) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

}  // namespace nfold
