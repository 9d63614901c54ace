#include "nfold/oracle.hpp"

#include <algorithm>

namespace nfold {
namespace oracle {

namespace {

struct FiberSearch {
  const IntMatrix& a;
  const IntVec& b;
  const BoundsBox& bounds;
  std::size_t budget;
  std::size_t visited = 0;

  // residual[i] = b_i - sum of assigned columns; lo/hi = attainable range of
  // the unassigned part of row i, maintained incrementally.
  IntVec residual;
  IntVec range_lo, range_hi;
  IntVec x;
  std::vector<IntVec> out;

  FiberSearch(const IntMatrix& a_, const IntVec& b_, const BoundsBox& bounds_,
              std::size_t max_points)
      : a(a_), b(b_), bounds(bounds_), budget(max_points) {
    residual = b;
    range_lo.assign(a.rows(), Int(0));
    range_hi.assign(a.rows(), Int(0));
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) {
        Int lo_term = a(i, j) * bounds.lower[j].value();
        Int hi_term = a(i, j) * bounds.upper[j].value();
        if (lo_term > hi_term) std::swap(lo_term, hi_term);
        range_lo[i] += lo_term;
        range_hi[i] += hi_term;
      }
    x.assign(a.cols(), Int(0));
  }

  bool viable() const {
    for (int i = 0; i < a.rows(); ++i)
      if (residual[i] < range_lo[i] || residual[i] > range_hi[i]) return false;
    return true;
  }

  void dfs(int j) {
    if (++visited > budget)
      throw budget_exceeded_error("enumerate_fiber: point budget exceeded");
    if (j == a.cols()) {
      for (int i = 0; i < a.rows(); ++i)
        if (sgn(residual[i]) != 0) return;
      out.push_back(x);
      return;
    }
    // retire column j from the open ranges
    for (int i = 0; i < a.rows(); ++i) {
      Int lo_term = a(i, j) * bounds.lower[j].value();
      Int hi_term = a(i, j) * bounds.upper[j].value();
      if (lo_term > hi_term) std::swap(lo_term, hi_term);
      range_lo[i] -= lo_term;
      range_hi[i] -= hi_term;
    }
    for (Int v = bounds.lower[j].value(); v <= bounds.upper[j].value(); ++v) {
      x[j] = v;
      for (int i = 0; i < a.rows(); ++i) residual[i] -= a(i, j) * v;
      if (viable()) dfs(j + 1);
      for (int i = 0; i < a.rows(); ++i) residual[i] += a(i, j) * v;
    }
    x[j] = 0;
    for (int i = 0; i < a.rows(); ++i) {
      Int lo_term = a(i, j) * bounds.lower[j].value();
      Int hi_term = a(i, j) * bounds.upper[j].value();
      if (lo_term > hi_term) std::swap(lo_term, hi_term);
      range_lo[i] += lo_term;
      range_hi[i] += hi_term;
    }
  }
};

}  // namespace

std::vector<IntVec> enumerate_fiber(const IntMatrix& a, const IntVec& b,
                                    const BoundsBox& bounds,
                                    const EnumerationBudget& budget) {
  if (b.size() != static_cast<std::size_t>(a.rows()))
    throw dimension_error("enumerate_fiber: rhs length != rows");
  if (bounds.size() != static_cast<std::size_t>(a.cols()))
    throw dimension_error("enumerate_fiber: bounds length != cols");
  if (!bounds.all_finite())
    throw argument_error("enumerate_fiber: bounds must be finite");
  for (std::size_t j = 0; j < bounds.size(); ++j)
    if (bounds.upper[j] < bounds.lower[j]) return {};

  FiberSearch search(a, b, bounds, budget.max_points);
  search.dfs(0);
  std::sort(search.out.begin(), search.out.end(), lex_less);
  return search.out;
}

std::vector<IntVec> brute_graver(const IntMatrix& a, long radius,
                                 const EnumerationBudget& budget) {
  if (radius < 1) throw argument_error("brute_graver: radius must be >= 1");
  if (radius > budget.max_radius)
    throw budget_exceeded_error("brute_graver: radius beyond budget");
  const int n = a.cols();
  std::vector<IntVec> kernel = enumerate_fiber(
      a, IntVec(a.rows(), Int(0)), BoundsBox::cube(n, Int(radius)), budget);
  std::vector<IntVec> nonzero;
  nonzero.reserve(kernel.size());
  for (auto& v : kernel)
    if (!is_zero(v)) nonzero.push_back(std::move(v));
  std::vector<IntVec> minimal;
  for (const auto& v : nonzero) {
    bool dominated = false;
    for (const auto& u : nonzero) {
      if (u != v && conformal_leq(u, v)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(v);
  }
  return minimal;  // already lex sorted
}

OptimizeOutcome brute_optimize(const IntMatrix& a, const IntVec& b,
                               const BoundsBox& bounds, const SeparableObjective& f,
                               Sense sense, const EnumerationBudget& budget) {
  return brute_optimize_composite(
      a, b, bounds, IntMatrix::identity(a.cols()),
      [&](const IntVec& x) { return f.eval(x); }, sense, budget);
}

OptimizeOutcome brute_optimize_composite(const IntMatrix& a, const IntVec& b,
                                         const BoundsBox& bounds, const IntMatrix& w,
                                         const std::function<Int(const IntVec&)>& f,
                                         Sense sense, const EnumerationBudget& budget) {
  OptimizeOutcome res;
  for (auto& x : enumerate_fiber(a, b, bounds, budget)) {
    Int v = f(w.apply(x));
    const bool better =
        !res.feasible ||
        (sense == Sense::Minimize ? v < res.value : v > res.value);
    if (better) {
      res.feasible = true;
      res.value = v;
      res.argmins.clear();
      res.argmins.push_back(std::move(x));
    } else if (v == res.value) {
      res.argmins.push_back(std::move(x));
    }
  }
  return res;
}

namespace {

bool decompose(const IntVec& residual, const std::vector<IntVec>& candidates,
               std::size_t start, std::size_t terms_left,
               std::vector<std::pair<IntVec, Int>>& picked) {
  if (is_zero(residual)) return true;
  if (terms_left == 0) return false;
  for (std::size_t i = start; i < candidates.size(); ++i) {
    const IntVec& g = candidates[i];
    if (!conformal_leq(g, residual)) continue;
    Int max_mult = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (sgn(g[j]) == 0) continue;
      Int r = abs_int(residual[j]) / abs_int(g[j]);
      if (max_mult == 0 || r < max_mult) max_mult = r;
    }
    for (Int lambda = max_mult; lambda >= 1; --lambda) {
      IntVec next(residual.size());
      for (std::size_t j = 0; j < residual.size(); ++j)
        next[j] = residual[j] - lambda * g[j];
      picked.emplace_back(g, lambda);
      if (decompose(next, candidates, i + 1, terms_left - 1, picked)) return true;
      picked.pop_back();
    }
  }
  return false;
}

}  // namespace

std::optional<ConformalDecomposition> brute_conformal_decomposition(
    const IntVec& x, const GraverBasis& g, std::size_t max_terms) {
  if (static_cast<int>(x.size()) != g.ambient_dim())
    throw dimension_error("brute_conformal_decomposition: dimension mismatch");
  std::vector<IntVec> candidates;
  for (const auto& e : g.elements())
    if (conformal_leq(e, x)) candidates.push_back(e);
  std::vector<std::pair<IntVec, Int>> picked;
  if (!decompose(x, candidates, 0, max_terms, picked)) return std::nullopt;
  return ConformalDecomposition{std::move(picked)};
}

}  // namespace oracle
}  // namespace nfold
