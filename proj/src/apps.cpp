#include "nfold/apps.hpp"

#include <algorithm>

namespace nfold {
namespace apps {

namespace {

// mixed-radix increment, row-major (last index fastest)
bool advance(std::vector<int>& idx, const std::vector<int>& dims) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

std::vector<int> without(const std::vector<int>& dims, std::size_t skip) {
  std::vector<int> rest;
  rest.reserve(dims.size() - 1);
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (i != skip) rest.push_back(dims[i]);
  return rest;
}

int flatten_index(const std::vector<int>& idx, const std::vector<int>& dims) {
  int flat = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) flat = flat * dims[k] + idx[k];
  return flat;
}

}  // namespace

int TableShape::cell_count() const { return product(dims); }

int TableShape::flatten(const std::vector<int>& idx) const {
  return flatten_index(idx, dims);
}

int TableShape::coordinate(const std::vector<int>& idx, int layer) const {
  return layer * cell_count() + flatten(idx);
}

std::size_t TableInstance::table_size() const {
  return static_cast<std::size_t>(product(dims)) * layers;
}

void TableInstance::validate() const {
  if (dims.size() < 2) throw argument_error("TableInstance: need at least 2 fixed dimensions");
  for (int m : dims)
    if (m < 1) throw argument_error("TableInstance: dimensions must be >= 1");
  if (layers < 1) throw argument_error("TableInstance: layer count must be >= 1");
  std::vector<int> full = dims;
  full.push_back(layers);
  if (margins.size() != full.size())
    throw dimension_error("TableInstance: expected one margin block per index position");
  for (std::size_t j = 0; j < full.size(); ++j) {
    const std::size_t want = product(without(full, j));
    if (margins[j].size() != want)
      throw dimension_error("TableInstance: margin block " + std::to_string(j) +
                            " has wrong size");
    for (const auto& v : margins[j])
      if (sgn(v) < 0)
        throw argument_error("TableInstance: margins must be nonnegative");
  }
  if (cost && cost->size() != table_size())
    throw dimension_error("TableInstance: cost array has wrong size");
  if (cost_terms && cost_terms->size() != table_size())
    throw dimension_error("TableInstance: cost terms have wrong arity");
}

std::vector<IntVec> TableInstance::margins_of(const std::vector<int>& dims, int layers,
                                              const IntVec& table) {
  // `table` uses the solver's layer-major layout (coordinate()).
  std::vector<int> full = dims;
  full.push_back(layers);
  const int cells = product(dims);
  std::vector<IntVec> out(full.size());
  for (std::size_t j = 0; j < full.size(); ++j)
    out[j].assign(product(without(full, j)), Int(0));
  std::vector<int> idx(full.size(), 0);
  do {
    const int layer = idx.back();
    const std::vector<int> fixed(idx.begin(), idx.end() - 1);
    const std::size_t coord =
        static_cast<std::size_t>(layer) * cells + flatten_index(fixed, dims);
    for (std::size_t j = 0; j < full.size(); ++j) {
      std::vector<int> rest_idx;
      rest_idx.reserve(idx.size() - 1);
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (k != j) rest_idx.push_back(idx[k]);
      out[j][flatten_index(rest_idx, without(full, j))] += table[coord];
    }
  } while (advance(idx, full));
  return out;
}

NFoldInstance encode_table(const TableInstance& inst) {
  inst.validate();
  const int d = static_cast<int>(inst.dims.size());
  const int n = inst.layers;
  TableShape shape{inst.dims, n};
  const int t = shape.cell_count();

  // Per-layer line-sum matrix: one row per (omitted fixed position, tuple of
  // the remaining fixed indices), in that lexicographic order.
  int s = 0;
  for (int j = 0; j < d; ++j) s += product(without(inst.dims, j));
  IntMatrix a2(s, t);
  int row = 0;
  for (int j = 0; j < d; ++j) {
    const std::vector<int> rest = without(inst.dims, j);
    std::vector<int> rest_idx(rest.size(), 0);
    do {
      for (int along = 0; along < inst.dims[j]; ++along) {
        std::vector<int> idx(d);
        for (int k = 0, r = 0; k < d; ++k) idx[k] = (k == j) ? along : rest_idx[r++];
        a2(row, shape.flatten(idx)) = 1;
      }
      ++row;
    } while (advance(rest_idx, rest));
  }

  NFoldInstance enc;
  enc.a = Bimatrix(IntMatrix::identity(t), std::move(a2));
  enc.n = n;
  enc.bounds = BoundsBox::nonnegative(static_cast<std::size_t>(n) * t);

  // b = (b^0, b^1, ..., b^n): across-layer margins first, then each layer's
  // within-layer line-sums in the A2 row order.
  IntVec b = inst.margins[d];
  b.reserve(t + static_cast<std::size_t>(n) * s);
  std::vector<int> full = inst.dims;
  full.push_back(n);
  for (int layer = 0; layer < n; ++layer) {
    for (int j = 0; j < d; ++j) {
      const std::vector<int> rest = without(inst.dims, j);
      const std::vector<int> block_dims = without(full, j);  // rest + [layers]
      std::vector<int> rest_idx(rest.size(), 0);
      do {
        std::vector<int> margin_idx = rest_idx;
        margin_idx.push_back(layer);
        b.push_back(inst.margins[j][flatten_index(margin_idx, block_dims)]);
      } while (advance(rest_idx, rest));
    }
  }
  enc.rhs = std::move(b);

  if (inst.cost_terms) {
    enc.objective = SeparableObjective(*inst.cost_terms);
  } else if (inst.cost) {
    enc.objective = SeparableObjective::linear(*inst.cost);
  } else {
    enc.objective = SeparableObjective::zero(static_cast<std::size_t>(n) * t);
  }
  return enc;
}

namespace {

int entry_coordinate(const TableInstance& inst, const std::vector<int>& entry) {
  if (entry.size() != inst.dims.size() + 1)
    throw argument_error("entry index must have one position per dimension plus the layer");
  for (std::size_t k = 0; k < inst.dims.size(); ++k)
    if (entry[k] < 0 || entry[k] >= inst.dims[k])
      throw argument_error("entry index out of range");
  if (entry.back() < 0 || entry.back() >= inst.layers)
    throw argument_error("entry layer out of range");
  TableShape shape{inst.dims, inst.layers};
  std::vector<int> fixed(entry.begin(), entry.end() - 1);
  return shape.coordinate(fixed, entry.back());
}

IntVec unit(std::size_t n, int at, int sign) {
  IntVec e(n, Int(0));
  e[at] = sign;
  return e;
}

}  // namespace

bool entry_uniqueness(const TableInstance& inst, const std::vector<int>& entry,
                      const SolveOptions& opts) {
  NFoldInstance enc = encode_table(inst);
  const int c = entry_coordinate(inst, entry);
  const std::size_t nt = enc.bounds.size();

  enc.objective = SeparableObjective::linear(unit(nt, c, 1));
  SolveResult lo = solve_nfold_linear(enc, opts);
  if (lo.status != SolveResult::Status::Optimal)
    throw no_tables_error("entry_uniqueness: no tables have these margins");
  enc.objective = SeparableObjective::linear(unit(nt, c, -1));
  SolveResult hi = solve_nfold_linear(enc, opts);
  return lo.value == -hi.value;
}

std::set<Int> entry_value_set(const TableInstance& inst, const std::vector<int>& entry,
                              const SolveOptions& opts) {
  NFoldInstance enc = encode_table(inst);
  const int c = entry_coordinate(inst, entry);
  const std::size_t nt = enc.bounds.size();

  std::set<Int> values;
  std::optional<Int> window_lo, window_hi;
  while (true) {
    NFoldInstance work = enc;
    if (window_lo && *window_lo > 0) work.bounds.lower[c] = ExtInt(*window_lo);
    if (window_hi) work.bounds.upper[c] = ExtInt(*window_hi);

    work.objective = SeparableObjective::linear(unit(nt, c, 1));
    SolveResult lo = solve_nfold_linear(work, opts);
    if (lo.status != SolveResult::Status::Optimal) break;
    work.objective = SeparableObjective::linear(unit(nt, c, -1));
    SolveResult hi = solve_nfold_linear(work, opts);

    Int lhat = lo.value;
    Int uhat = -hi.value;
    values.insert(lhat);
    values.insert(uhat);
    window_lo = lhat + 1;
    window_hi = uhat - 1;
  }
  return values;
}

void TransshipmentInstance::validate() const {
  if (!digraph.directed) throw argument_error("TransshipmentInstance: digraph required");
  if (digraph.vertices < 1 || digraph.edges.empty())
    throw argument_error("TransshipmentInstance: digraph must be nonempty");
  if (commodities < 1) throw argument_error("TransshipmentInstance: need >= 1 commodity");
  const std::size_t s = digraph.vertices, t = digraph.edges.size();
  if (demands.size() != static_cast<std::size_t>(commodities))
    throw dimension_error("TransshipmentInstance: one demand vector per commodity");
  for (const auto& dk : demands)
    if (dk.size() != s) throw dimension_error("TransshipmentInstance: demand vector length");
  if (capacities.size() != t)
    throw dimension_error("TransshipmentInstance: one capacity per edge");
  for (const auto& u : capacities)
    if (sgn(u) < 0) throw argument_error("TransshipmentInstance: negative capacity");
  if (edge_costs.size() != t)
    throw dimension_error("TransshipmentInstance: one edge cost term per edge");
  if (commodity_costs.size() != static_cast<std::size_t>(commodities))
    throw dimension_error("TransshipmentInstance: commodity cost rows");
  for (const auto& row : commodity_costs)
    if (row.size() != t) throw dimension_error("TransshipmentInstance: commodity cost row length");
}

NFoldInstance encode_transshipment_slack(const TransshipmentInstance& inst) {
  inst.validate();
  const IntMatrix d = incidence_matrix(inst.digraph);
  const int t = d.cols(), s = d.rows(), l = inst.commodities;

  NFoldInstance enc;
  enc.a = Bimatrix(IntMatrix::identity(t), d);
  enc.n = l + 1;
  enc.bounds = BoundsBox::nonnegative(static_cast<std::size_t>(l + 1) * t);

  // b = (u, d^0, d^1, ..., d^l) with d^0 = D u - sum_k d^k.
  IntVec b = inst.capacities;
  IntVec d0 = d.apply(inst.capacities);
  for (int k = 0; k < l; ++k)
    for (int v = 0; v < s; ++v) d0[v] -= inst.demands[k][v];
  b.insert(b.end(), d0.begin(), d0.end());
  for (int k = 0; k < l; ++k)
    b.insert(b.end(), inst.demands[k].begin(), inst.demands[k].end());
  enc.rhs = std::move(b);

  // Brick 0 is the slack commodity: cost f_e(u_e - x^0_e).
  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(l + 1) * t);
  for (int e = 0; e < t; ++e)
    terms.push_back(reflect_term(inst.edge_costs[e], inst.capacities[e]));
  for (int k = 0; k < l; ++k)
    for (int e = 0; e < t; ++e) terms.push_back(inst.commodity_costs[k][e]);
  enc.objective = SeparableObjective(std::move(terms));
  return enc;
}

GeneralizedInstance encode_transshipment_weighted(const TransshipmentInstance& inst) {
  inst.validate();
  const IntMatrix d = incidence_matrix(inst.digraph);
  const int t = d.cols(), l = inst.commodities;

  GeneralizedInstance enc;
  enc.a = Bimatrix(IntMatrix(0, t), d);
  enc.w = Bimatrix(IntMatrix::identity(t), IntMatrix(0, t));
  enc.n = l;
  enc.bounds = BoundsBox::nonnegative(static_cast<std::size_t>(l) * t);
  // Combined flow is nonnegative anyway; a zero lower bound keeps the
  // aggregate box finite.
  enc.wbounds = BoundsBox(ExtVec(t, ExtInt(0)),
                          ExtVec(inst.capacities.begin(), inst.capacities.end()));

  IntVec b;
  for (int k = 0; k < l; ++k)
    b.insert(b.end(), inst.demands[k].begin(), inst.demands[k].end());
  enc.rhs = std::move(b);

  enc.f = SeparableObjective(inst.edge_costs);
  std::vector<Term> g_terms;
  g_terms.reserve(static_cast<std::size_t>(l) * t);
  for (int k = 0; k < l; ++k)
    for (int e = 0; e < t; ++e) g_terms.push_back(inst.commodity_costs[k][e]);
  enc.g = SeparableObjective(std::move(g_terms));
  return enc;
}

IntVec decode_transshipment_flows(const TransshipmentInstance& inst, const IntVec& point,
                                  bool slack_encoding) {
  const std::size_t t = inst.digraph.edges.size();
  const std::size_t flows = static_cast<std::size_t>(inst.commodities) * t;
  if (slack_encoding) {
    if (point.size() != flows + t)
      throw dimension_error("decode_transshipment_flows: unexpected point size");
    return IntVec(point.begin() + t, point.end());
  }
  if (point.size() != flows)
    throw dimension_error("decode_transshipment_flows: unexpected point size");
  return point;
}

void TransportationInstance::validate() const {
  if (suppliers < 1 || consumers < 1 || commodities < 1)
    throw argument_error("TransportationInstance: counts must be >= 1");
  const std::size_t m = suppliers, n = consumers, l = commodities;
  if (volumes.size() != l) throw dimension_error("TransportationInstance: volumes length");
  for (const auto& v : volumes)
    if (sgn(v) < 0) throw argument_error("TransportationInstance: negative volume");
  if (supplies.size() != m) throw dimension_error("TransportationInstance: supplies rows");
  if (consumptions.size() != n)
    throw dimension_error("TransportationInstance: consumptions rows");
  for (const auto& si : supplies) {
    if (si.size() != l) throw dimension_error("TransportationInstance: supply vector length");
    for (const auto& v : si)
      if (sgn(v) < 0) throw argument_error("TransportationInstance: negative supply");
  }
  for (const auto& cj : consumptions) {
    if (cj.size() != l)
      throw dimension_error("TransportationInstance: consumption vector length");
    for (const auto& v : cj)
      if (sgn(v) < 0) throw argument_error("TransportationInstance: negative consumption");
  }
  if (capacities.size() != m) throw dimension_error("TransportationInstance: capacities rows");
  for (const auto& row : capacities) {
    if (row.size() != n) throw dimension_error("TransportationInstance: capacities row length");
    for (const auto& v : row)
      if (sgn(v) < 0) throw argument_error("TransportationInstance: negative capacity");
  }
  if (edge_costs.size() != m) throw dimension_error("TransportationInstance: edge cost rows");
  for (const auto& row : edge_costs)
    if (row.size() != n) throw dimension_error("TransportationInstance: edge cost row length");
  if (flow_costs.size() != n) throw dimension_error("TransportationInstance: flow cost blocks");
  for (const auto& block : flow_costs) {
    if (block.size() != m) throw dimension_error("TransportationInstance: flow cost rows");
    for (const auto& row : block)
      if (row.size() != l) throw dimension_error("TransportationInstance: flow cost row length");
  }
}

GeneralizedInstance encode_transportation(const TransportationInstance& inst) {
  inst.validate();
  const int m = inst.suppliers, n = inst.consumers, l = inst.commodities;
  const int t = m * l;

  // A2 = (I_l ... I_l), the m-fold product of the (l,0) x l bimatrix I_l.
  IntMatrix a2(l, t);
  for (int i = 0; i < m; ++i) a2.set_block(0, i * l, IntMatrix::identity(l));
  // W2 = diag of volume rows, the m-fold product of the (0,1) x l bimatrix v.
  IntMatrix w2(m, t);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < l; ++k) w2(i, i * l + k) = inst.volumes[k];

  GeneralizedInstance enc;
  enc.a = Bimatrix(IntMatrix::identity(t), std::move(a2));
  enc.w = Bimatrix(IntMatrix(0, t), std::move(w2));
  enc.n = n;
  enc.bounds = BoundsBox::nonnegative(static_cast<std::size_t>(n) * t);

  // Aggregates y = W^(n) x run consumer-major: y[(j, i)] = sum_k v_k x^j_{i,k}.
  ExtVec wlo(static_cast<std::size_t>(n) * m, ExtInt(0));
  ExtVec whi(static_cast<std::size_t>(n) * m);
  std::vector<Term> f_terms(static_cast<std::size_t>(n) * m);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      whi[static_cast<std::size_t>(j) * m + i] = ExtInt(inst.capacities[i][j]);
      f_terms[static_cast<std::size_t>(j) * m + i] = inst.edge_costs[i][j];
    }
  enc.wbounds = BoundsBox(std::move(wlo), std::move(whi));
  enc.f = SeparableObjective(std::move(f_terms));

  IntVec b;
  b.reserve(static_cast<std::size_t>(t) + static_cast<std::size_t>(n) * l);
  for (int i = 0; i < m; ++i) b.insert(b.end(), inst.supplies[i].begin(), inst.supplies[i].end());
  for (int j = 0; j < n; ++j)
    b.insert(b.end(), inst.consumptions[j].begin(), inst.consumptions[j].end());
  enc.rhs = std::move(b);

  std::vector<Term> g_terms;
  g_terms.reserve(static_cast<std::size_t>(n) * t);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < l; ++k) g_terms.push_back(inst.flow_costs[j][i][k]);
  enc.g = SeparableObjective(std::move(g_terms));
  return enc;
}

IntMatrix universal_matrix(int m, int n) {
  if (m < 1 || n < 1) throw argument_error("universal_matrix: m and n must be >= 1");
  IntMatrix ones(1, 3);
  for (int j = 0; j < 3; ++j) ones(0, j) = 1;
  IntMatrix k3m = nfold_matrix(boxminus(ones), m);
  if (n == 1) return k3m;
  return nfold_matrix(boxminus(k3m), n);
}

}  // namespace apps
}  // namespace nfold
