#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "nfold/ints.hpp"

namespace nfold {

/// slope * x
struct LinearTerm {
  Int slope;
};

/// alpha * |x - center|^beta, alpha >= 0, beta >= 1. Integer-valued and convex.
struct PowerTerm {
  Int alpha;
  unsigned beta = 1;
  Int center = 0;
};

/// Continuous piecewise-linear convex function: integer slopes, nondecreasing
/// left to right, slopes[i] active on [breaks[i-1], breaks[i]]. Anchored by
/// its value at ref_x.
struct PwlTerm {
  IntVec breaks;   // strictly increasing
  IntVec slopes;   // size breaks.size() + 1, nondecreasing
  Int ref_x = 0;
  Int ref_val = 0;
};

/// Escape hatch for oracle-presented convex terms. The callable must be
/// integer-convex; nothing here can check it.
struct ExternalTerm {
  std::function<Int(const Int&)> fn;
};

using Term = std::variant<LinearTerm, PowerTerm, PwlTerm, ExternalTerm>;

Int eval_term(const Term& term, const Int& x);

/// Throws argument_error on non-convex parameters (checkable variants only).
void validate_term(const Term& term);

/// The term computing t(a - x); exact under every variant.
Term reflect_term(const Term& term, const Int& a);

/// Integer-valued separable convex objective, one term per coordinate.
/// Minimization sense throughout; maximization goes through the composite
/// machinery in the solver.
struct SeparableObjective {
  std::vector<Term> terms;

  SeparableObjective() = default;
  explicit SeparableObjective(std::vector<Term> t) : terms(std::move(t)) {
    for (const auto& term : terms) validate_term(term);
  }

  static SeparableObjective linear(const IntVec& w);
  /// sum_i |x_i - goal_i|^p
  static SeparableObjective power_distance(const IntVec& goal, unsigned p);
  static SeparableObjective zero(std::size_t n);

  std::size_t size() const { return terms.size(); }

  Int eval(const IntVec& x) const;
  Int eval_coord(std::size_t i, const Int& x) const { return eval_term(terms[i], x); }

  bool all_linear() const;
};

}  // namespace nfold
