#include "nfold/solver.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "nfold/parallel.hpp"

namespace nfold {

std::optional<IntVec> check_finiteness(const GraverBasis& g, const BoundsBox& bounds) {
  if (static_cast<int>(bounds.size()) != g.ambient_dim())
    throw dimension_error("check_finiteness: bounds length != ambient dimension");
  for (const auto& e : g.elements()) {
    bool witness = true;
    for (std::size_t i = 0; i < e.size() && witness; ++i) {
      if (!bounds.upper[i].is_pos_inf() && sgn(e[i]) > 0) witness = false;
      if (!bounds.lower[i].is_neg_inf() && sgn(e[i]) < 0) witness = false;
    }
    if (witness) return e;
  }
  return std::nullopt;
}

Int univariate_min(const std::function<Int(const Int&)>& f, const Int& r, const Int& s) {
  if (r > s) throw argument_error("univariate_min: empty interval");
  Int lo = r, hi = s;
  while (lo < hi) {
    Int mid = floor_div(lo + hi, 2);
    const int c = cmp(f(mid), f(mid + 1));
    if (c == 0) return mid;
    if (c < 0)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

LineSearchResult line_search(const SeparableObjective& f, const IntVec& x,
                             const IntVec& g, const BoundsBox& bounds) {
  const std::size_t n = x.size();
  if (g.size() != n || bounds.size() != n || f.size() != n)
    throw dimension_error("line_search: dimension mismatch");
  bool bounded = false;
  Int sup = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = sgn(g[i]);
    if (s > 0 && !bounds.upper[i].is_pos_inf()) {
      Int cap = floor_div(bounds.upper[i].value() - x[i], g[i]);
      if (!bounded || cap < sup) sup = cap;
      bounded = true;
    } else if (s < 0 && !bounds.lower[i].is_neg_inf()) {
      Int cap = floor_div(x[i] - bounds.lower[i].value(), -g[i]);
      if (!bounded || cap < sup) sup = cap;
      bounded = true;
    }
  }
  if (!bounded) return LineSearchResult{true, 0, 0};

  // Only coordinates moved by g contribute to the lambda-dependence.
  std::vector<std::size_t> moving;
  Int fixed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(g[i]) != 0)
      moving.push_back(i);
    else
      fixed += f.eval_coord(i, x[i]);
  }
  auto h = [&](const Int& lambda) {
    Int v = fixed;
    for (std::size_t i : moving) v += f.eval_coord(i, x[i] + lambda * g[i]);
    return v;
  };
  Int best = univariate_min(h, 0, sup);
  return LineSearchResult{false, best, h(best)};
}

SolveResult augment_to_optimum(const GraverBasis& g, const SeparableObjective& f,
                               const IntVec& x0, const BoundsBox& bounds,
                               const SolveOptions& opts) {
  if (!bounds.contains(x0)) throw argument_error("augment_to_optimum: x0 outside bounds");
  if (auto witness = check_finiteness(g, bounds)) return SolveResult::infinite(*witness);

  const auto& dirs = g.elements();
  IntVec x = x0;
  Int fx = f.eval(x);
  long steps = 0;

  struct Candidate {
    bool unbounded = false;
    Int step;
    Int value;
  };
  std::vector<Candidate> results(dirs.size());
  while (true) {
    parallel_for(opts.threads, dirs.size(), [&](std::size_t i) {
      LineSearchResult ls = line_search(f, x, dirs[i], bounds);
      results[i] = Candidate{ls.unbounded, ls.step, ls.value};
    });
    std::size_t best = dirs.size();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      if (results[i].unbounded) return SolveResult::infinite(dirs[i]);
      if (results[i].value >= fx) continue;
      if (best == dirs.size() || results[i].value < results[best].value) best = i;
    }
    if (best == dirs.size()) break;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += results[best].step * dirs[best][j];
    fx = results[best].value;
    ++steps;
    if (opts.on_step) opts.on_step(x, fx);
  }

  SolveResult r = SolveResult::optimal(std::move(x), std::move(fx));
  r.steps = steps;
  r.basis_size = dirs.size();
  return r;
}

namespace {

// max(l - x, 0, x - u) with the infinite branches dropped.
Term violation_term(const ExtInt& lo, const ExtInt& hi) {
  PwlTerm t;
  if (lo.finite() && hi.finite()) {
    if (lo.value() == hi.value()) {
      t.breaks = {lo.value()};
      t.slopes = {Int(-1), Int(1)};
    } else {
      t.breaks = {lo.value(), hi.value()};
      t.slopes = {Int(-1), Int(0), Int(1)};
    }
    t.ref_x = lo.value();
  } else if (lo.finite()) {
    t.breaks = {lo.value()};
    t.slopes = {Int(-1), Int(0)};
    t.ref_x = lo.value();
  } else if (hi.finite()) {
    t.breaks = {hi.value()};
    t.slopes = {Int(0), Int(1)};
    t.ref_x = hi.value();
  } else {
    t.slopes = {Int(0)};
  }
  t.ref_val = 0;
  return t;
}

}  // namespace

FeasibilityResult find_feasible(const IntMatrix& a, const GraverBasis& g,
                                const BoundsBox& bounds, const IntVec& b,
                                const SolveOptions& opts) {
  const std::size_t n = a.cols();
  if (bounds.size() != n) throw dimension_error("find_feasible: bounds length != cols");
  for (std::size_t j = 0; j < n; ++j) {
    if (bounds.lower[j].is_pos_inf() || bounds.upper[j].is_neg_inf() ||
        bounds.upper[j] < bounds.lower[j])
      return FeasibilityResult{SolveResult::infeasible(), std::nullopt};
  }
  if (auto witness = check_finiteness(g, bounds))
    return FeasibilityResult{SolveResult::infinite(*witness), std::nullopt};

  auto xhat = solve_diophantine(a, b);
  if (!xhat) return FeasibilityResult{SolveResult::infeasible(), std::nullopt};

  std::vector<Term> aux_terms;
  aux_terms.reserve(n);
  ExtVec ext_lo(n), ext_hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    aux_terms.push_back(violation_term(bounds.lower[j], bounds.upper[j]));
    ext_lo[j] = min(bounds.lower[j], ExtInt((*xhat)[j]));
    ext_hi[j] = max(bounds.upper[j], ExtInt((*xhat)[j]));
  }
  SeparableObjective aux(std::move(aux_terms));
  BoundsBox extended(std::move(ext_lo), std::move(ext_hi));

  SolveResult opt = augment_to_optimum(g, aux, *xhat, extended, opts);
  if (opt.status == SolveResult::Status::InfiniteIfNonempty)
    return FeasibilityResult{opt, std::nullopt};
  if (sgn(opt.value) == 0) {
    FeasibilityResult fr{SolveResult::optimal(opt.point, Int(0)), Int(0)};
    fr.result.steps = opt.steps;
    fr.result.basis_size = opt.basis_size;
    return fr;
  }
  return FeasibilityResult{SolveResult::infeasible(), opt.value};
}

SolveResult minimize_separable(const IntMatrix& a, const GraverBasis& g,
                               const SeparableObjective& f, const BoundsBox& bounds,
                               const IntVec& b, const SolveOptions& opts) {
  FeasibilityResult feas = find_feasible(a, g, bounds, b, opts);
  if (feas.result.status != SolveResult::Status::Optimal) return feas.result;
  return augment_to_optimum(g, f, feas.result.point, bounds, opts);
}

SolveResult minimize_linear(const IntMatrix& a, const GraverBasis& g, const IntVec& w,
                            const BoundsBox& bounds, const IntVec& b,
                            const SolveOptions& opts) {
  return minimize_separable(a, g, SeparableObjective::linear(w), bounds, b, opts);
}

namespace {

Int linf_distance(const IntVec& x, const IntVec& goal) {
  Int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Int ai = abs_int(x[i] - goal[i]);
    if (ai > d) d = ai;
  }
  return d;
}

// n * Delta * (1 + largest finite magnitude in b, l, u, goal), with Delta the
// product over rows of max(1, ceil of the row's Euclidean norm). A cheap and
// safe upper bound on the infinity-norm of any feasible point when the
// feasible set is finite.
Int vertex_bound_rho(const IntMatrix& a, const BoundsBox& bounds, const IntVec& b,
                     const IntVec& goal) {
  Int delta = 1;
  for (int i = 0; i < a.rows(); ++i) {
    Int sq = 0;
    for (int j = 0; j < a.cols(); ++j) sq += a(i, j) * a(i, j);
    Int ceiling = isqrt_ceil(sq);
    if (ceiling > 1) delta *= ceiling;
  }
  Int biggest = 0;
  auto consider = [&](const Int& v) {
    Int av = abs_int(v);
    if (av > biggest) biggest = av;
  };
  for (const auto& v : b) consider(v);
  for (const auto& v : goal) consider(v);
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    if (bounds.lower[j].finite()) consider(bounds.lower[j].value());
    if (bounds.upper[j].finite()) consider(bounds.upper[j].value());
  }
  Int rho = Int(a.cols()) * delta * (1 + biggest);
  return rho > 0 ? rho : Int(1);
}

// Least q with (1 + 1/(2 rho))^q > n, by exact integer comparison of
// (2 rho + 1)^q against n (2 rho)^q. nullopt when that q exceeds the cap;
// beyond it the q-power objective is too wide to evaluate anyway. The cap is
// probed first so no oversized power is ever computed.
std::optional<unsigned long> least_q(const Int& rho, const Int& n_dim) {
  const Int num = 2 * rho + 1;
  const Int den = 2 * rho;
  auto big_enough = [&](unsigned long q) {
    return pow_int(num, q) > n_dim * pow_int(den, q);
  };
  constexpr unsigned long cap = 1ul << 20;
  if (!big_enough(cap)) return std::nullopt;
  unsigned long hi = 1;
  while (!big_enough(hi)) hi *= 2;  // stays below 2 * cap
  if (hi == 1) return 1;
  unsigned long lo = hi / 2 + 1;
  while (lo < hi) {
    unsigned long mid = lo + (hi - lo) / 2;
    if (big_enough(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

}  // namespace

SolveResult minimize_distance(const IntMatrix& a, const GraverBasis& g, const PNorm& p,
                              const IntVec& goal, const BoundsBox& bounds,
                              const IntVec& b, const SolveOptions& opts) {
  if (goal.size() != static_cast<std::size_t>(a.cols()))
    throw dimension_error("minimize_distance: goal length != cols");
  if (!p.infinite) {
    if (p.p < 1) throw argument_error("minimize_distance: p must be positive");
    return minimize_separable(a, g, SeparableObjective::power_distance(goal, p.p),
                              bounds, b, opts);
  }
  const Int rho = vertex_bound_rho(a, bounds, b, goal);
  const auto q = least_q(rho, Int(a.cols()));
  // Huge rho makes the q-power objective unevaluable; the radius bisection
  // returns the same exact distance.
  if (!q) return minimize_distance_linf_bisection(a, g, goal, bounds, b, opts);
  SolveResult r = minimize_separable(
      a, g, SeparableObjective::power_distance(goal, static_cast<unsigned>(*q)), bounds,
      b, opts);
  if (r.status == SolveResult::Status::Optimal) r.value = linf_distance(r.point, goal);
  return r;
}

SolveResult minimize_distance_linf_bisection(const IntMatrix& a, const GraverBasis& g,
                                             const IntVec& goal, const BoundsBox& bounds,
                                             const IntVec& b, const SolveOptions& opts) {
  if (goal.size() != static_cast<std::size_t>(a.cols()))
    throw dimension_error("minimize_distance_linf_bisection: goal length != cols");
  FeasibilityResult feas = find_feasible(a, g, bounds, b, opts);
  if (feas.result.status != SolveResult::Status::Optimal) return feas.result;

  auto clipped = [&](const Int& radius) {
    ExtVec lo(bounds.size()), hi(bounds.size());
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      lo[j] = max(bounds.lower[j], ExtInt(goal[j] - radius));
      hi[j] = min(bounds.upper[j], ExtInt(goal[j] + radius));
    }
    return BoundsBox(std::move(lo), std::move(hi));
  };

  IntVec best_point = feas.result.point;
  Int hi = linf_distance(best_point, goal);
  Int lo = 0;
  while (lo < hi) {
    Int mid = floor_div(lo + hi, 2);
    FeasibilityResult probe = find_feasible(a, g, clipped(mid), b, opts);
    if (probe.result.status == SolveResult::Status::Optimal) {
      best_point = probe.result.point;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return SolveResult::optimal(std::move(best_point), std::move(hi));
}

namespace {

IntVec primitive(IntVec v) {
  Int g = 0;
  for (const auto& vi : v) {
    Int a = abs_int(vi);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  if (g > 1)
    for (auto& vi : v) vi /= g;
  return v;
}

// 0 for angles in [0, pi), 1 for [pi, 2 pi).
int angular_half(const IntVec& u) {
  const int sy = sgn(u[1]);
  if (sy != 0) return sy > 0 ? 0 : 1;
  return sgn(u[0]) > 0 ? 0 : 1;
}

bool angle_less(const IntVec& u, const IntVec& v) {
  const int hu = angular_half(u), hv = angular_half(v);
  if (hu != hv) return hu < hv;
  return sgn(u[0] * v[1] - u[1] * v[0]) > 0;
}

// Interior representatives of the circular sectors cut by the normals of the
// projected Graver directions. Every vertex of conv(W S) is exposed by one of
// these normals, since the Graver basis carries all edge directions.
std::vector<IntVec> sector_normals(const GraverBasis& g, const IntMatrix& w) {
  std::set<IntVec, decltype(&lex_less)> dirs(&lex_less);
  for (const auto& e : g.elements()) {
    IntVec v = w.apply(e);
    if (!is_zero(v)) dirs.insert(primitive(std::move(v)));
  }
  if (dirs.empty()) return {IntVec{Int(1), Int(0)}};

  std::vector<IntVec> rays;
  std::set<IntVec, decltype(&lex_less)> seen(&lex_less);
  for (const auto& v : dirs) {
    IntVec ray{-v[1], v[0]};
    if (seen.insert(ray).second) rays.push_back(std::move(ray));
  }
  std::sort(rays.begin(), rays.end(), angle_less);

  std::vector<IntVec> normals;
  std::set<IntVec, decltype(&lex_less)> emitted(&lex_less);
  auto emit = [&](IntVec c) {
    c = primitive(std::move(c));
    if (emitted.insert(c).second) normals.push_back(std::move(c));
  };
  const std::size_t k = rays.size();
  for (std::size_t i = 0; i < k; ++i) {
    const IntVec& a = rays[i];
    const IntVec& b = rays[(i + 1) % k];
    IntVec sum{a[0] + b[0], a[1] + b[1]};
    if (is_zero(sum)) {
      // exactly one line of directions; the two open half-planes
      emit(IntVec{-a[1], a[0]});
      emit(IntVec{a[1], -a[0]});
    } else {
      emit(std::move(sum));
    }
  }
  return normals;
}

}  // namespace

SolveResult maximize_composite(const IntMatrix& a, const GraverBasis& g,
                               const IntMatrix& w, const CompositeOracle& f,
                               const BoundsBox& bounds, const IntVec& b,
                               const SolveOptions& opts) {
  const int d = w.rows();
  if (d < 1 || d > 2)
    throw unsupported_error("maximize_composite: only d in {1, 2} is supported");
  if (w.cols() != a.cols())
    throw dimension_error("maximize_composite: W column count != variable count");
  if (auto witness = check_finiteness(g, bounds)) return SolveResult::infinite(*witness);
  FeasibilityResult feas = find_feasible(a, g, bounds, b, opts);
  if (feas.result.status != SolveResult::Status::Optimal) return feas.result;

  std::vector<IntVec> normals;
  if (d == 1) {
    normals = {IntVec{Int(1)}, IntVec{Int(-1)}};
  } else {
    normals = sector_normals(g, w);
  }

  bool have = false;
  IntVec best_point;
  Int best_value;
  for (const auto& c : normals) {
    IntVec lin(a.cols(), Int(0));
    for (int j = 0; j < a.cols(); ++j) {
      Int s = 0;
      for (int i = 0; i < d; ++i) s += c[i] * w(i, j);
      lin[j] = -s;  // maximize c^T W x
    }
    SolveResult vertex = minimize_linear(a, g, lin, bounds, b, opts);
    if (vertex.status != SolveResult::Status::Optimal) return vertex;  // defensive
    Int val = f(w.apply(vertex.point));
    if (!have || val > best_value ||
        (val == best_value && lex_less(vertex.point, best_point))) {
      best_point = std::move(vertex.point);
      best_value = std::move(val);
      have = true;
    }
  }
  SolveResult r = SolveResult::optimal(std::move(best_point), std::move(best_value));
  r.basis_size = g.size();
  return r;
}

SolveResult minimize_weighted(const IntMatrix& a, const IntMatrix& w,
                              const GraverBasis& g_basis, const SeparableObjective& f,
                              const SeparableObjective& g_obj, const BoundsBox& bounds,
                              const BoundsBox& wbounds, const IntVec& b,
                              const SolveOptions& opts) {
  const int n = a.cols(), d = w.rows();
  if (w.cols() != n) throw dimension_error("minimize_weighted: W column count != cols(A)");
  if (f.size() != static_cast<std::size_t>(d) || g_obj.size() != static_cast<std::size_t>(n) ||
      wbounds.size() != static_cast<std::size_t>(d) || bounds.size() != static_cast<std::size_t>(n))
    throw dimension_error("minimize_weighted: arity mismatch");

  IntMatrix big(a.rows() + d, n + d);
  big.set_block(0, 0, a);
  big.set_block(a.rows(), 0, w);
  big.set_block(a.rows(), n, IntMatrix::identity(d));

  ExtVec lo(n + d), hi(n + d);
  for (int j = 0; j < n; ++j) {
    lo[j] = bounds.lower[j];
    hi[j] = bounds.upper[j];
  }
  for (int j = 0; j < d; ++j) {
    lo[n + j] = -wbounds.upper[j];
    hi[n + j] = -wbounds.lower[j];
  }

  std::vector<Term> terms = g_obj.terms;
  terms.reserve(n + d);
  for (int j = 0; j < d; ++j) terms.push_back(reflect_term(f.terms[j], Int(0)));

  IntVec rhs = b;
  rhs.resize(b.size() + d, Int(0));

  SolveResult r = minimize_separable(big, g_basis, SeparableObjective(std::move(terms)),
                                     BoundsBox(std::move(lo), std::move(hi)), rhs, opts);
  if (r.status == SolveResult::Status::Optimal)
    r.point = IntVec(r.point.begin(), r.point.begin() + n);
  return r;
}

void NFoldInstance::validate() const {
  if (n < 1) throw argument_error("NFoldInstance: n must be >= 1");
  const std::size_t nt = static_cast<std::size_t>(n) * a.t();
  if (bounds.size() != nt) throw dimension_error("NFoldInstance: bounds length != n*t");
  if (rhs.size() != static_cast<std::size_t>(a.r()) + static_cast<std::size_t>(n) * a.s())
    throw dimension_error("NFoldInstance: rhs length != r + n*s");
  if (objective.size() != nt)
    throw dimension_error("NFoldInstance: objective arity != n*t");
}

void GeneralizedInstance::validate() const {
  if (n < 1) throw argument_error("GeneralizedInstance: n must be >= 1");
  if (a.t() != w.t()) throw dimension_error("GeneralizedInstance: A and W disagree on t");
  const std::size_t nt = static_cast<std::size_t>(n) * a.t();
  const std::size_t wd = static_cast<std::size_t>(w.r()) + static_cast<std::size_t>(n) * w.s();
  if (bounds.size() != nt) throw dimension_error("GeneralizedInstance: bounds length != n*t");
  if (wbounds.size() != wd)
    throw dimension_error("GeneralizedInstance: weight bounds length != p + n*q");
  if (rhs.size() != static_cast<std::size_t>(a.r()) + static_cast<std::size_t>(n) * a.s())
    throw dimension_error("GeneralizedInstance: rhs length != r + n*s");
  if (f.size() != wd) throw dimension_error("GeneralizedInstance: f arity != p + n*q");
  if (g.size() != nt) throw dimension_error("GeneralizedInstance: g arity != n*t");
}

SolveResult solve_nfold_linear(const NFoldInstance& inst, const SolveOptions& opts) {
  inst.validate();
  if (!inst.objective.all_linear())
    throw argument_error("solve_nfold_linear: objective must be linear");
  GraverBasis g = nfold_graver(inst.a, inst.n, opts.compute());
  return minimize_separable(nfold_matrix(inst.a, inst.n), g, inst.objective, inst.bounds,
                            inst.rhs, opts);
}

SolveResult solve_nfold_separable(const NFoldInstance& inst, const SolveOptions& opts) {
  inst.validate();
  GraverBasis g = nfold_graver(inst.a, inst.n, opts.compute());
  return minimize_separable(nfold_matrix(inst.a, inst.n), g, inst.objective, inst.bounds,
                            inst.rhs, opts);
}

SolveResult solve_nfold_distance(const NFoldInstance& inst, const PNorm& p,
                                 const IntVec& goal, const SolveOptions& opts) {
  inst.validate();
  GraverBasis g = nfold_graver(inst.a, inst.n, opts.compute());
  return minimize_distance(nfold_matrix(inst.a, inst.n), g, p, goal, inst.bounds,
                           inst.rhs, opts);
}

SolveResult solve_nfold_max(const NFoldInstance& inst, const IntMatrix& w,
                            const CompositeOracle& f, const SolveOptions& opts) {
  inst.validate();
  GraverBasis g = nfold_graver(inst.a, inst.n, opts.compute());
  return maximize_composite(nfold_matrix(inst.a, inst.n), g, w, f, inst.bounds, inst.rhs,
                            opts);
}

SolveResult solve_nfold_generalized(const GeneralizedInstance& inst,
                                    const SolveOptions& opts) {
  inst.validate();
  GraverBasis g_basis = extended_graver(inst.a, inst.w, inst.n, opts.compute());
  return minimize_weighted(nfold_matrix(inst.a, inst.n), nfold_matrix(inst.w, inst.n),
                           g_basis, inst.f, inst.g, inst.bounds, inst.wbounds, inst.rhs,
                           opts);
}

}  // namespace nfold
