#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "nfold/extint.hpp"
#include "nfold/graver.hpp"
#include "nfold/objective.hpp"

namespace nfold {

/// Tri-state solver outcome. Optimal carries the point and the exact integer
/// objective value; InfiniteIfNonempty carries a recession witness whose signs
/// are compatible with every infinite bound.
struct SolveResult {
  enum class Status { Optimal, Infeasible, InfiniteIfNonempty };

  Status status = Status::Infeasible;
  IntVec point;
  Int value;
  IntVec witness;
  long steps = 0;        // accepted augmentation steps of the optimization phase
  std::size_t basis_size = 0;

  static SolveResult optimal(IntVec x, Int v) {
    SolveResult r;
    r.status = Status::Optimal;
    r.point = std::move(x);
    r.value = std::move(v);
    return r;
  }
  static SolveResult infeasible() { return SolveResult{}; }
  static SolveResult infinite(IntVec g) {
    SolveResult r;
    r.status = Status::InfiniteIfNonempty;
    r.witness = std::move(g);
    return r;
  }

  bool optimal_status() const { return status == Status::Optimal; }
};

struct SolveOptions {
  int threads = 1;
  /// Called after every accepted augmentation step with the new iterate and
  /// its objective value.
  std::function<void(const IntVec&, const Int&)> on_step;

  ComputeOptions compute() const { return ComputeOptions{threads}; }
};

/// Recession witness: some g in G with g_i <= 0 wherever u_i is finite and
/// g_i >= 0 wherever l_i is finite, or nullopt when bound shapes force every
/// fiber to be finite.
std::optional<IntVec> check_finiteness(const GraverBasis& g, const BoundsBox& bounds);

/// Minimum of a univariate convex f over [r, s] by bisection; the pinned tie
/// rule compares f(mid) with f(mid+1) and stops at mid on equality.
Int univariate_min(const std::function<Int(const Int&)>& f, const Int& r, const Int& s);

struct LineSearchResult {
  bool unbounded = false;
  Int step;   // best lambda in [0, sup]
  Int value;  // f(x + step * g)
};

/// Best improvement step from x along direction g within the box.
LineSearchResult line_search(const SeparableObjective& f, const IntVec& x,
                             const IntVec& g, const BoundsBox& bounds);

/// Graver-best augmentation from a feasible point to an optimum. Ties among
/// equal best improvements break toward the lexicographically smallest
/// direction, then the smallest step.
SolveResult augment_to_optimum(const GraverBasis& g, const SeparableObjective& f,
                               const IntVec& x0, const BoundsBox& bounds,
                               const SolveOptions& opts = {});

struct FeasibilityResult {
  SolveResult result;           // Optimal => a feasible point (value 0)
  std::optional<Int> aux_value; // optimum of the auxiliary objective when run
};

/// Feasibility phase: diophantine start, auxiliary piecewise objective over
/// extended bounds, then augmentation down to zero violation.
FeasibilityResult find_feasible(const IntMatrix& a, const GraverBasis& g,
                                const BoundsBox& bounds, const IntVec& b,
                                const SolveOptions& opts = {});

SolveResult minimize_separable(const IntMatrix& a, const GraverBasis& g,
                               const SeparableObjective& f, const BoundsBox& bounds,
                               const IntVec& b, const SolveOptions& opts = {});

SolveResult minimize_linear(const IntMatrix& a, const GraverBasis& g, const IntVec& w,
                            const BoundsBox& bounds, const IntVec& b,
                            const SolveOptions& opts = {});

/// p-norm selector: a positive integer or infinity.
struct PNorm {
  bool infinite = false;
  unsigned p = 1;

  static PNorm finite(unsigned p) { return PNorm{false, p}; }
  static PNorm inf() { return PNorm{true, 0}; }
};

/// Closest feasible point to goal in the l_p sense. For finite p the reported
/// value is the exact p-th power of the distance; for p = infinity it is the
/// distance itself. The p = infinity route solves the l_q problem for the
/// least valid q.
SolveResult minimize_distance(const IntMatrix& a, const GraverBasis& g, const PNorm& p,
                              const IntVec& goal, const BoundsBox& bounds,
                              const IntVec& b, const SolveOptions& opts = {});

/// Cross-check route for p = infinity: binary search on the radius of the box
/// centered at goal, feasibility-tested per radius.
SolveResult minimize_distance_linf_bisection(const IntMatrix& a, const GraverBasis& g,
                                             const IntVec& goal, const BoundsBox& bounds,
                                             const IntVec& b,
                                             const SolveOptions& opts = {});

/// Convex function of d aggregates, presented by evaluation.
using CompositeOracle = std::function<Int(const IntVec&)>;

/// max f(Wx) over the fiber, d = rows(W) in {1, 2}. Candidate vertices come
/// from the circular sectors cut by the projected Graver directions.
SolveResult maximize_composite(const IntMatrix& a, const GraverBasis& g,
                               const IntMatrix& w, const CompositeOracle& f,
                               const BoundsBox& bounds, const IntVec& b,
                               const SolveOptions& opts = {});

/// min f(Wx) + g_obj(x) s.t. Ax = b, wlower <= Wx <= wupper, bounds on x,
/// where g_basis is the Graver basis of [[A,0],[W,I]]. Returns the x part.
SolveResult minimize_weighted(const IntMatrix& a, const IntMatrix& w,
                              const GraverBasis& g_basis, const SeparableObjective& f,
                              const SeparableObjective& g_obj, const BoundsBox& bounds,
                              const BoundsBox& wbounds, const IntVec& b,
                              const SolveOptions& opts = {});

/// n-fold problem over a bimatrix: A^(n) x = b, l <= x <= u.
struct NFoldInstance {
  Bimatrix a;
  int n = 1;
  BoundsBox bounds;        // nt coordinates
  IntVec rhs;              // r + ns entries
  SeparableObjective objective;  // nt terms

  void validate() const;
};

/// Generalized weighted program: adds W^(n) x aggregates with their own
/// bounds and objective f, plus g on x itself.
struct GeneralizedInstance {
  Bimatrix a;
  Bimatrix w;
  int n = 1;
  BoundsBox bounds;    // nt
  BoundsBox wbounds;   // p + nq
  IntVec rhs;          // r + ns
  SeparableObjective f;  // p + nq terms
  SeparableObjective g;  // nt terms

  void validate() const;
};

SolveResult solve_nfold_linear(const NFoldInstance& inst, const SolveOptions& opts = {});
SolveResult solve_nfold_separable(const NFoldInstance& inst, const SolveOptions& opts = {});
SolveResult solve_nfold_distance(const NFoldInstance& inst, const PNorm& p,
                                 const IntVec& goal, const SolveOptions& opts = {});
SolveResult solve_nfold_max(const NFoldInstance& inst, const IntMatrix& w,
                            const CompositeOracle& f, const SolveOptions& opts = {});
SolveResult solve_nfold_generalized(const GeneralizedInstance& inst,
                                    const SolveOptions& opts = {});

}  // namespace nfold
