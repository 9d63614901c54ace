#pragma once

#include <optional>
#include <vector>

#include "nfold/extint.hpp"
#include "nfold/graver.hpp"
#include "nfold/objective.hpp"

namespace nfold {
namespace oracle {

/// Caps for exhaustive searches. Exceeding a cap raises budget_exceeded_error;
/// an oracle never returns a truncated answer.
struct EnumerationBudget {
  std::size_t max_points = 2'000'000;
  long max_radius = 64;
};

/// All integer points of {x : Ax = b, l <= x <= u} (finite box), depth-first
/// with per-row residual interval pruning. Canonically sorted.
std::vector<IntVec> enumerate_fiber(const IntMatrix& a, const IntVec& b,
                                    const BoundsBox& bounds,
                                    const EnumerationBudget& budget = {});

/// Conformally minimal nonzero kernel points inside [-radius, radius]^n.
/// Equals the Graver basis whenever the radius dominates its infinity norm.
std::vector<IntVec> brute_graver(const IntMatrix& a, long radius,
                                 const EnumerationBudget& budget = {});

enum class Sense { Minimize, Maximize };

struct OptimizeOutcome {
  bool feasible = false;
  Int value;
  std::vector<IntVec> argmins;  // every optimal point, sorted
};

/// Exhaustive optimization over a finite fiber.
OptimizeOutcome brute_optimize(const IntMatrix& a, const IntVec& b,
                               const BoundsBox& bounds, const SeparableObjective& f,
                               Sense sense = Sense::Minimize,
                               const EnumerationBudget& budget = {});

/// Like brute_optimize but for a composite objective f(Wx).
OptimizeOutcome brute_optimize_composite(const IntMatrix& a, const IntVec& b,
                                         const BoundsBox& bounds, const IntMatrix& w,
                                         const std::function<Int(const IntVec&)>& f,
                                         Sense sense,
                                         const EnumerationBudget& budget = {});

struct ConformalDecomposition {
  std::vector<std::pair<IntVec, Int>> parts;  // (Graver element, multiplicity >= 1)
};

/// A representation x = sum lambda_i g_i with all g_i in the orthant of x and
/// at most max_terms distinct elements, or nullopt when none exists within
/// that limit.
std::optional<ConformalDecomposition> brute_conformal_decomposition(
    const IntVec& x, const GraverBasis& g, std::size_t max_terms);

}  // namespace oracle
}  // namespace nfold
