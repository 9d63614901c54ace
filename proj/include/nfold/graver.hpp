#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nfold/linalg.hpp"
#include "nfold/matrix.hpp"

namespace nfold {

/// Options threaded through basis computations and solvers. `threads` trades
/// wall time only; results are identical for any value.
struct ComputeOptions {
  int threads = 1;
};

/// An (r,s)x t two-block matrix: A1 (r x t) over A2 (s x t). Either block may
/// have zero rows.
struct Bimatrix {
  IntMatrix a1;
  IntMatrix a2;

  Bimatrix() = default;
  Bimatrix(IntMatrix top, IntMatrix bottom) : a1(std::move(top)), a2(std::move(bottom)) {
    if (t() < 1) throw argument_error("Bimatrix: t must be >= 1");
    if (a1.rows() > 0 && a2.rows() > 0 && a1.cols() != a2.cols())
      throw dimension_error("Bimatrix: blocks disagree on column count");
  }

  int r() const { return a1.rows(); }
  int s() const { return a2.rows(); }
  int t() const { return a1.rows() > 0 ? a1.cols() : a2.cols(); }

  /// Stacked (r+s) x t plain matrix.
  IntMatrix stacked() const { return vstack(a1, a2); }

  friend bool operator==(const Bimatrix& a, const Bimatrix& b) {
    return a.a1 == b.a1 && a.a2 == b.a2;
  }

  std::string str() const { return a1.str() + "|" + a2.str(); }
};

/// boxminus: the (t,s) x t bimatrix with identity top block and D bottom block.
inline Bimatrix boxminus(const IntMatrix& d) {
  return Bimatrix(IntMatrix::identity(d.cols()), d);
}

/// Canonical, centrally symmetric set of conformally minimal nonzero kernel
/// elements. Elements are stored sorted lexicographically with no duplicates.
class GraverBasis {
 public:
  GraverBasis() : ambient_dim_(0) {}
  explicit GraverBasis(int ambient_dim) : ambient_dim_(ambient_dim) {}

  /// Sorts, dedupes, and rejects zero vectors / wrong lengths.
  static GraverBasis from_elements(int ambient_dim, std::vector<IntVec> elements);

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<IntVec>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool operator==(const GraverBasis& o) const {
    return ambient_dim_ == o.ambient_dim_ && elements_ == o.elements_;
  }

  /// {"ambient_dim": n, "elements": [[...],...]} with elements sorted
  /// lexicographically. Integers emitted as raw literals (arbitrary size).
  std::string to_json() const;

 private:
  int ambient_dim_;
  std::vector<IntVec> elements_;
};

/// Exact Graver basis by Pottier-style normal-form completion, starting from
/// the +- kernel lattice basis.
GraverBasis graver_basis(const IntMatrix& a, const ComputeOptions& opts = {});

/// The (r+ns) x nt n-fold product: A1 repeated across the top, A2 on the
/// block diagonal.
IntMatrix nfold_matrix(const Bimatrix& a, int n);

/// All order-preserving placements of y's m bricks (width t) into n slots,
/// zeros elsewhere. C(n, m) vectors, possibly with duplicates when y has
/// zero bricks.
std::vector<IntVec> n_liftings(const IntVec& y, int m, int n, int t);

/// Computable upper bound on the Graver complexity g(A): the largest
/// coordinate sum of a nonnegative element of G(A1 * G2), where G2 has the
/// elements of G(A2) for columns. 0 when A2 has trivial kernel.
Int graver_complexity_bound(const Bimatrix& a, const ComputeOptions& opts = {});

/// Exact Graver complexity by brute force: max type over G(A^(n)) for
/// n <= n_limit, each by direct completion. Exponential; test utility.
Int graver_complexity_exact(const Bimatrix& a, int n_limit,
                            const ComputeOptions& opts = {});

/// Graver basis of A^(n). Uses direct completion for n <= bound and the
/// n-lifting construction from the cached G(A^(bound)) beyond it.
GraverBasis nfold_graver(const Bimatrix& a, int n, const ComputeOptions& opts = {});

/// Graver basis of B = [[A^(n), 0], [W^(n), I]] for the weighted programs,
/// via the n-fold product of the combined (r+p, s+q) x (t+p+q) bimatrix,
/// keeping the elements whose slack bricks 2..n vanish.
GraverBasis extended_graver(const Bimatrix& a, const Bimatrix& w, int n,
                            const ComputeOptions& opts = {});

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  bool directed = true;
};

/// Vertex-edge incidence matrix: +1 leaving / -1 entering for digraphs, 0/1
/// for undirected graphs.
IntMatrix incidence_matrix(const Graph& g);

/// Graver complexity bound of a (di)graph: graver_complexity_bound(boxminus D)
/// with D the incidence matrix.
Int graph_graver_complexity(const Graph& g, const ComputeOptions& opts = {});

/// Componentwise-minimal nonzero nonnegative integer solutions of M v = 0
/// (equivalently the nonnegative elements of the Graver basis of M).
std::vector<IntVec> minimal_nonneg_kernel(const IntMatrix& m,
                                          const ComputeOptions& opts = {});

/// Drops all cached n-fold bases and complexity bounds (test support).
void clear_nfold_cache();

/// Number of nonzero width-t bricks.
int brick_type(const IntVec& x, int t);

}  // namespace nfold
