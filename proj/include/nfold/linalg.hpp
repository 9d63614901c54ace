#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nfold/matrix.hpp"

namespace nfold {

/// The conformal partial order: x ⊑ y iff x and y lie in the same orthant and
/// |x_i| <= |y_i| for every coordinate.
bool conformal_leq(const IntVec& x, const IntVec& y);

/// Strict version (x ⊑ y and x != y).
bool conformal_lt(const IntVec& x, const IntVec& y);

struct HnfResult {
  IntMatrix h;       // A * u = h, column-style Hermite normal form
  IntMatrix u;       // unimodular
  int pivot_count;   // rank; columns [pivot_count, cols) of u span ker(A)
  std::vector<int> pivot_rows;  // row of each pivot column, strictly increasing
};

/// Column-style Hermite normal form. Pivots positive, entries to the left of
/// each pivot reduced into [0, pivot); deterministic.
HnfResult hermite_normal_form(const IntMatrix& a);

/// Some integer solution of A x = b, or nullopt when none exists.
std::optional<IntVec> solve_diophantine(const IntMatrix& a, const IntVec& b);

/// Lattice basis of ker(A) over Z: the trailing columns of the HNF transform.
std::vector<IntVec> lattice_kernel_basis(const IntMatrix& a);

/// Exact determinant (Bareiss fraction-free elimination). Square input.
Int determinant(const IntMatrix& a);

}  // namespace nfold
