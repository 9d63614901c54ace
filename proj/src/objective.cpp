#include "nfold/objective.hpp"

#include <algorithm>

#include "nfold/errors.hpp"

namespace nfold {

namespace {

// Sum of slopes over the unit steps [y, y+1], y in [from, to). The step
// starting at y belongs to segment #{i : breaks[i] <= y}.
Int pwl_integral(const PwlTerm& t, const Int& from, const Int& to) {
  const std::size_t k = t.breaks.size();
  Int acc = 0;
  Int cur = from;
  for (std::size_t j = 0; j <= k && cur < to; ++j) {
    const Int seg_end = (j == k) ? to : std::min(t.breaks[j], to);
    if (seg_end > cur) {
      acc += t.slopes[j] * (seg_end - cur);
      cur = seg_end;
    }
  }
  return acc;
}

Int eval_pwl(const PwlTerm& t, const Int& x) {
  if (x >= t.ref_x) return t.ref_val + pwl_integral(t, t.ref_x, x);
  return t.ref_val - pwl_integral(t, x, t.ref_x);
}

}  // namespace

Int eval_term(const Term& term, const Int& x) {
  if (const auto* lin = std::get_if<LinearTerm>(&term)) return lin->slope * x;
  if (const auto* pw = std::get_if<PowerTerm>(&term))
    return pw->alpha * pow_int(abs_int(x - pw->center), pw->beta);
  if (const auto* pl = std::get_if<PwlTerm>(&term)) return eval_pwl(*pl, x);
  return std::get<ExternalTerm>(term).fn(x);
}

void validate_term(const Term& term) {
  if (const auto* pw = std::get_if<PowerTerm>(&term)) {
    if (sgn(pw->alpha) < 0) throw argument_error("PowerTerm: alpha must be >= 0");
    if (pw->beta < 1) throw argument_error("PowerTerm: beta must be >= 1");
    return;
  }
  if (const auto* pl = std::get_if<PwlTerm>(&term)) {
    if (pl->slopes.size() != pl->breaks.size() + 1)
      throw argument_error("PwlTerm: need breaks.size() + 1 slopes");
    for (std::size_t i = 1; i < pl->breaks.size(); ++i)
      if (pl->breaks[i] <= pl->breaks[i - 1])
        throw argument_error("PwlTerm: breaks must be strictly increasing");
    for (std::size_t i = 1; i < pl->slopes.size(); ++i)
      if (pl->slopes[i] < pl->slopes[i - 1])
        throw argument_error("PwlTerm: slopes must be nondecreasing");
    return;
  }
  if (const auto* ext = std::get_if<ExternalTerm>(&term)) {
    if (!ext->fn) throw argument_error("ExternalTerm: empty callable");
  }
}

Term reflect_term(const Term& term, const Int& a) {
  if (const auto* lin = std::get_if<LinearTerm>(&term)) {
    // slope*(a-x) = -slope*x + slope*a: affine, expressed as a PWL anchor.
    PwlTerm t;
    t.slopes = {Int(-lin->slope)};
    t.ref_x = 0;
    t.ref_val = lin->slope * a;
    return t;
  }
  if (const auto* pw = std::get_if<PowerTerm>(&term))
    return PowerTerm{pw->alpha, pw->beta, a - pw->center};
  if (const auto* pl = std::get_if<PwlTerm>(&term)) {
    PwlTerm t;
    t.breaks.resize(pl->breaks.size());
    for (std::size_t i = 0; i < pl->breaks.size(); ++i)
      t.breaks[i] = a - pl->breaks[pl->breaks.size() - 1 - i];
    t.slopes.resize(pl->slopes.size());
    for (std::size_t i = 0; i < pl->slopes.size(); ++i)
      t.slopes[i] = -pl->slopes[pl->slopes.size() - 1 - i];
    t.ref_x = a - pl->ref_x;
    t.ref_val = pl->ref_val;
    return t;
  }
  auto fn = std::get<ExternalTerm>(term).fn;
  return ExternalTerm{[fn, a](const Int& x) { return fn(a - x); }};
}

SeparableObjective SeparableObjective::linear(const IntVec& w) {
  std::vector<Term> terms;
  terms.reserve(w.size());
  for (const auto& wi : w) terms.push_back(LinearTerm{wi});
  return SeparableObjective(std::move(terms));
}

SeparableObjective SeparableObjective::power_distance(const IntVec& goal, unsigned p) {
  std::vector<Term> terms;
  terms.reserve(goal.size());
  for (const auto& c : goal) terms.push_back(PowerTerm{Int(1), p, c});
  return SeparableObjective(std::move(terms));
}

SeparableObjective SeparableObjective::zero(std::size_t n) {
  return linear(IntVec(n, Int(0)));
}

Int SeparableObjective::eval(const IntVec& x) const {
  if (x.size() != terms.size())
    throw dimension_error("SeparableObjective::eval: wrong arity");
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += eval_term(terms[i], x[i]);
  return s;
}

bool SeparableObjective::all_linear() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) {
    return std::holds_alternative<LinearTerm>(t);
  });
}

}  // namespace nfold
