#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "nfold/apps.hpp"
#include "nfold/graver.hpp"
#include "nfold/oracle.hpp"

namespace testutil {

using namespace nfold;

inline IntVec vec(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline std::set<IntVec> as_set(const std::vector<IntVec>& vs) {
  return std::set<IntVec>(vs.begin(), vs.end());
}

inline std::set<IntVec> basis_set(const GraverBasis& g) { return as_set(g.elements()); }

inline IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline IntVec random_vec(std::mt19937& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntVec v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

/// brute_graver with the radius doubled until the output stabilizes.
inline std::vector<IntVec> stable_brute_graver(const IntMatrix& a, long start = 2) {
  long radius = start;
  auto current = oracle::brute_graver(a, radius);
  while (true) {
    auto doubled = oracle::brute_graver(a, 2 * radius);
    if (as_set(doubled) == as_set(current)) return current;
    current = std::move(doubled);
    radius *= 2;
  }
}

/// Independent transshipment reference: enumerate per-commodity flows on the
/// block diagonal of incidence matrices, filter joint capacities, take the
/// cheapest cost. nullopt when no feasible flow exists.
inline std::optional<Int> flow_oracle(const apps::TransshipmentInstance& inst) {
  const IntMatrix d = incidence_matrix(inst.digraph);
  const int t = d.cols(), l = inst.commodities;
  IntMatrix block(l * d.rows(), l * t);
  IntVec b;
  for (int k = 0; k < l; ++k) {
    block.set_block(k * d.rows(), k * t, d);
    b.insert(b.end(), inst.demands[k].begin(), inst.demands[k].end());
  }
  IntVec lo(l * t, Int(0)), hi(l * t);
  for (int k = 0; k < l; ++k)
    for (int e = 0; e < t; ++e) hi[k * t + e] = inst.capacities[e];
  std::optional<Int> best;
  for (const auto& x : oracle::enumerate_fiber(block, b, BoundsBox::finite(lo, hi))) {
    bool ok = true;
    Int cost = 0;
    for (int e = 0; e < t && ok; ++e) {
      Int combined = 0;
      for (int k = 0; k < l; ++k) combined += x[k * t + e];
      if (combined > inst.capacities[e]) ok = false;
      cost += eval_term(inst.edge_costs[e], combined);
    }
    if (!ok) continue;
    for (int k = 0; k < l; ++k)
      for (int e = 0; e < t; ++e) cost += eval_term(inst.commodity_costs[k][e], x[k * t + e]);
    if (!best || cost < *best) best = cost;
  }
  return best;
}

/// Independent transportation reference over x^j_{i,k} with supply and
/// consumption equalities and volume-weighted capacities.
inline std::optional<Int> transport_oracle(const apps::TransportationInstance& inst) {
  const int m = inst.suppliers, n = inst.consumers, l = inst.commodities;
  IntMatrix a(m * l + n * l, n * m * l);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < l; ++k) {
        const int col = (j * m + i) * l + k;
        a(i * l + k, col) = 1;
        a(m * l + j * l + k, col) = 1;
      }
  IntVec b;
  for (int i = 0; i < m; ++i) b.insert(b.end(), inst.supplies[i].begin(), inst.supplies[i].end());
  for (int j = 0; j < n; ++j)
    b.insert(b.end(), inst.consumptions[j].begin(), inst.consumptions[j].end());
  IntVec lo(n * m * l, Int(0)), hi(n * m * l);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < l; ++k)
        hi[(j * m + i) * l + k] =
            min(ExtInt(inst.supplies[i][k]), ExtInt(inst.consumptions[j][k])).value();
  std::optional<Int> best;
  for (const auto& x : oracle::enumerate_fiber(a, b, BoundsBox::finite(lo, hi))) {
    bool ok = true;
    Int cost = 0;
    for (int j = 0; j < n && ok; ++j)
      for (int i = 0; i < m && ok; ++i) {
        Int weighted = 0;
        for (int k = 0; k < l; ++k) weighted += inst.volumes[k] * x[(j * m + i) * l + k];
        if (weighted > inst.capacities[i][j]) ok = false;
        cost += eval_term(inst.edge_costs[i][j], weighted);
        for (int k = 0; k < l; ++k)
          cost += eval_term(inst.flow_costs[j][i][k], x[(j * m + i) * l + k]);
      }
    if (!ok) continue;
    if (!best || cost < *best) best = cost;
  }
  return best;
}

}  // namespace testutil
