#pragma once

#include <optional>
#include <set>
#include <vector>

#include "nfold/solver.hpp"

namespace nfold {
namespace apps {

/// Line-sum (margin) data for m_1 x ... x m_d x n tables: the d fixed
/// dimensions plus a variable layer count n. margins[j] holds the sums over
/// index position j (0-based; position d is the layer index), flattened
/// row-major over the remaining indices in their natural order.
struct TableInstance {
  std::vector<int> dims;  // m_1 .. m_d, d >= 2
  int layers = 1;         // n
  std::vector<IntVec> margins;  // d + 1 blocks
  std::optional<IntVec> cost;   // layer-major flattening, linear objective
  std::optional<std::vector<Term>> cost_terms;  // separable alternative

  void validate() const;
  std::size_t table_size() const;  // m_1 * ... * m_d * n
  /// Margins of a concrete table, in this struct's layout.
  static std::vector<IntVec> margins_of(const std::vector<int>& dims, int layers,
                                        const IntVec& table);
};

/// Index arithmetic shared by the encoder and the audit procedures.
struct TableShape {
  std::vector<int> dims;
  int layers;

  int cell_count() const;  // per layer: m_1 * ... * m_d
  /// Flat per-layer offset of a fixed-dim index tuple.
  int flatten(const std::vector<int>& idx) const;
  /// Coordinate of (idx, layer) in the n-fold variable vector.
  int coordinate(const std::vector<int>& idx, int layer) const;
};

NFoldInstance encode_table(const TableInstance& inst);

/// Whether the given entry takes one value across every table in the fiber.
/// Throws no_tables_error when the fiber is empty.
bool entry_uniqueness(const TableInstance& inst, const std::vector<int>& entry,
                      const SolveOptions& opts = {});

/// The full set of values the entry attains over the fiber, by the shrinking
/// window of min/max solves. Empty fiber gives the empty set.
std::set<Int> entry_value_set(const TableInstance& inst, const std::vector<int>& entry,
                              const SolveOptions& opts = {});

/// Multicommodity transshipment over a fixed digraph: l commodities, vertex
/// demands (positive = net supply), joint edge capacities, convex edge costs
/// f_e on combined flow and per-edge-commodity costs g_k_e.
struct TransshipmentInstance {
  Graph digraph;                      // directed
  int commodities = 1;                // l
  std::vector<IntVec> demands;        // l vectors of length vertices
  IntVec capacities;                  // per edge, nonnegative
  std::vector<Term> edge_costs;       // f_e, per edge
  std::vector<std::vector<Term>> commodity_costs;  // g[k][e]

  void validate() const;
};

/// First proof route: slack commodity x^0 = u - combined flow, an
/// (l+1)-fold program over the bimatrix (I_t over D).
NFoldInstance encode_transshipment_slack(const TransshipmentInstance& inst);

/// Second proof route: l-fold generalized program with W^(l) x = combined
/// flow, capacities as one-sided weight bounds.
GeneralizedInstance encode_transshipment_weighted(const TransshipmentInstance& inst);

/// Flow variables (x^1..x^l) of a solver point in either encoding.
IntVec decode_transshipment_flows(const TransshipmentInstance& inst, const IntVec& point,
                                  bool slack_encoding);

/// Multicommodity transportation: m suppliers, n consumers, l commodities
/// with per-unit volumes; supply/consumption equalities and volume-weighted
/// edge capacities.
struct TransportationInstance {
  int suppliers = 1;   // m
  int consumers = 1;   // n
  int commodities = 1; // l
  IntVec volumes;      // v_k, length l
  std::vector<IntVec> supplies;      // supplies[i] in Z_+^l
  std::vector<IntVec> consumptions;  // consumptions[j] in Z_+^l
  std::vector<IntVec> capacities;    // capacities[i][j]
  std::vector<std::vector<Term>> edge_costs;  // f[i][j] on the weighted flow
  std::vector<std::vector<std::vector<Term>>> flow_costs;  // g[j][i][k]

  void validate() const;
};

GeneralizedInstance encode_transportation(const TransportationInstance& inst);

/// The universal matrix 1_3^[m][n]. n = 1 gives 1_3^[m] itself, the
/// (3+m) x 3m incidence matrix of K_{3,m}; n >= 2 the n-fold product of its
/// boxminus lift.
IntMatrix universal_matrix(int m, int n);

}  // namespace apps
}  // namespace nfold
