#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "nfold/errors.hpp"

namespace nfold {

/// Exact arbitrary-precision integer. Every correctness-bearing value in the
/// library is one of these; machine words appear only as counts and indices.
using Int = mpz_class;

using IntVec = std::vector<Int>;

inline int sgn(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

inline Int abs_int(const Int& v) {
  Int r;
  mpz_abs(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

/// Floor division (rounds toward -infinity), exact for any signs.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Smallest integer >= sqrt(v), v >= 0.
inline Int isqrt_ceil(const Int& v) {
  Int root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
  if (rem != 0) ++root;
  return root;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw dimension_error("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw dimension_error("add: length mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw dimension_error("sub: length mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec negate(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline IntVec scale(const Int& lambda, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = lambda * a[i];
  return r;
}

inline bool is_zero(const IntVec& a) {
  for (const auto& v : a)
    if (v != 0) return false;
  return true;
}

/// Strict lexicographic order; the canonical order used everywhere a
/// deterministic arrangement of vectors is promised.
inline bool lex_less(const IntVec& a, const IntVec& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

inline std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  s += ")";
  return s;
}

}  // namespace nfold
