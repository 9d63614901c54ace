#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nfold/apps.hpp"
#include "nfold/oracle.hpp"

using namespace nfold;
using namespace nfold::apps;
using testutil::vec;

namespace {

TableInstance table_from(const std::vector<int>& dims, int layers, const IntVec& table) {
  TableInstance inst;
  inst.dims = dims;
  inst.layers = layers;
  inst.margins = TableInstance::margins_of(dims, layers, table);
  return inst;
}

// every table in the fiber, via the encoder's own matrix but independent
// enumeration; entries are capped by their across-layer margin
std::vector<IntVec> enumerate_tables(const TableInstance& inst) {
  NFoldInstance enc = encode_table(inst);
  IntMatrix a = nfold_matrix(enc.a, enc.n);
  const int cells = a.cols() / enc.n;
  IntVec lo(a.cols(), Int(0)), hi(a.cols());
  for (int k = 0; k < enc.n; ++k)
    for (int cell = 0; cell < cells; ++cell)
      hi[static_cast<std::size_t>(k) * cells + cell] = inst.margins.back()[cell];
  return oracle::enumerate_fiber(a, enc.rhs, BoundsBox::finite(lo, hi));
}

}  // namespace

TEST_CASE("encode_table shapes") {
  TableInstance inst = table_from({3, 3}, 3, IntVec(27, Int(1)));
  NFoldInstance enc = encode_table(inst);
  CHECK(enc.a.t() == 9);
  CHECK(enc.a.r() == 9);
  CHECK(enc.a.s() == 6);  // 3 + 3 per-layer line sums
  CHECK(enc.n == 3);
  CHECK(enc.rhs.size() == 9 + 3 * 6);
  CHECK(enc.a.a1 == IntMatrix::identity(9));
}

TEST_CASE("all-ones 2x2x2 fiber solves with zero margin residuals") {
  TableInstance inst = table_from({2, 2}, 2, IntVec(8, Int(1)));
  NFoldInstance enc = encode_table(inst);
  SolveResult r = solve_nfold_linear(enc);
  REQUIRE(r.optimal_status());
  auto margins = TableInstance::margins_of(inst.dims, inst.layers, r.point);
  for (std::size_t j = 0; j < margins.size(); ++j) CHECK(margins[j] == inst.margins[j]);
}

TEST_CASE("inconsistent margins are infeasible") {
  TableInstance inst = table_from({2, 2}, 2, IntVec(8, Int(1)));
  inst.margins[2][0] += 1;  // across-layer total now disagrees
  SolveResult r = solve_nfold_linear(encode_table(inst));
  CHECK(r.status == SolveResult::Status::Infeasible);
}

TEST_CASE("table validation") {
  TableInstance inst = table_from({2, 2}, 2, IntVec(8, Int(1)));
  SUBCASE("wrong margin block size") {
    inst.margins[0].pop_back();
    CHECK_THROWS_AS(encode_table(inst), dimension_error);
  }
  SUBCASE("negative margin") {
    inst.margins[1][0] = -1;
    CHECK_THROWS_AS(encode_table(inst), argument_error);
  }
  SUBCASE("one fixed dimension is not enough") {
    TableInstance thin;
    thin.dims = {2};
    thin.layers = 2;
    thin.margins = {IntVec(2, Int(1)), IntVec(2, Int(1))};
    CHECK_THROWS_AS(encode_table(thin), argument_error);
  }
}

TEST_CASE("entry_uniqueness") {
  SUBCASE("all-zero margins force the zero table") {
    TableInstance inst = table_from({2, 2}, 2, IntVec(8, Int(0)));
    CHECK(entry_uniqueness(inst, {0, 0, 0}));
  }
  SUBCASE("a fiber with two tables differing in the entry") {
    // margins of a 2x2x2 all-ones-diagonal table admit a swap
    IntVec table = vec({1, 0, 0, 1, 0, 1, 1, 0});
    TableInstance inst = table_from({2, 2}, 2, table);
    auto tables = enumerate_tables(inst);
    REQUIRE(tables.size() >= 2);
    bool differs = false;
    for (const auto& t : tables)
      if (t[0] != tables[0][0]) differs = true;
    CHECK(differs == !entry_uniqueness(inst, {0, 0, 0}));
  }
  SUBCASE("unique nonzero entry") {
    IntVec table = vec({2, 0, 0, 1, 0, 1, 1, 0});
    TableInstance inst = table_from({2, 2}, 2, table);
    auto tables = enumerate_tables(inst);
    std::set<Int> seen;
    for (const auto& t : tables) seen.insert(t[0]);
    CHECK(entry_uniqueness(inst, {0, 0, 0}) == (seen.size() == 1));
  }
  SUBCASE("empty fiber raises the distinguished error") {
    TableInstance inst = table_from({2, 2}, 2, IntVec(8, Int(1)));
    inst.margins[2][0] += 1;
    CHECK_THROWS_AS(entry_uniqueness(inst, {0, 0, 0}), no_tables_error);
  }
}

TEST_CASE("entry_value_set") {
  SUBCASE("unique table gives a singleton") {
    TableInstance inst = table_from({2, 2}, 2, IntVec(8, Int(0)));
    auto values = entry_value_set(inst, {1, 1, 1});
    CHECK(values == std::set<Int>{Int(0)});
  }
  SUBCASE("matches brute force on a 2x2x2 fiber for every entry") {
    IntVec table = vec({1, 0, 2, 1, 0, 1, 1, 2});
    TableInstance inst = table_from({2, 2}, 2, table);
    auto tables = enumerate_tables(inst);
    REQUIRE(!tables.empty());
    TableShape shape{inst.dims, inst.layers};
    for (int i0 = 0; i0 < 2; ++i0)
      for (int i1 = 0; i1 < 2; ++i1)
        for (int layer = 0; layer < 2; ++layer) {
          const int coord = shape.coordinate({i0, i1}, layer);
          std::set<Int> brute;
          for (const auto& t : tables) brute.insert(t[coord]);
          CHECK(entry_value_set(inst, {i0, i1, layer}) == brute);
        }
  }
  SUBCASE("empty fiber gives the empty set") {
    TableInstance inst = table_from({2, 2}, 2, IntVec(8, Int(1)));
    inst.margins[2][0] += 1;
    CHECK(entry_value_set(inst, {0, 0, 0}).empty());
  }
}

namespace {

TransshipmentInstance toy_flow() {
  TransshipmentInstance inst;
  inst.digraph = Graph{2, {{0, 1}}, true};
  inst.commodities = 1;
  inst.demands = {vec({1, -1})};
  inst.capacities = vec({1});
  inst.edge_costs = {LinearTerm{Int(2)}};
  inst.commodity_costs = {{LinearTerm{Int(3)}}};
  return inst;
}

}  // namespace

TEST_CASE("transshipment encodings") {
  SUBCASE("single edge toy has cost 5") {
    TransshipmentInstance inst = toy_flow();
    SolveResult r = solve_nfold_separable(encode_transshipment_slack(inst));
    REQUIRE(r.optimal_status());
    CHECK(r.value == 5);
    IntVec flows = decode_transshipment_flows(inst, r.point, true);
    CHECK(flows == vec({1}));
    SolveResult rw = solve_nfold_generalized(encode_transshipment_weighted(inst));
    REQUIRE(rw.optimal_status());
    CHECK(rw.value == 5);
  }
  SUBCASE("nonconserving demands are infeasible") {
    TransshipmentInstance inst = toy_flow();
    inst.demands[0] = vec({1, 1});
    CHECK(solve_nfold_separable(encode_transshipment_slack(inst)).status ==
          SolveResult::Status::Infeasible);
    CHECK(solve_nfold_generalized(encode_transshipment_weighted(inst)).status ==
          SolveResult::Status::Infeasible);
  }
  SUBCASE("zero capacity emulates a subdigraph") {
    TransshipmentInstance inst;
    inst.digraph = Graph{3, {{0, 1}, {1, 2}, {0, 2}}, true};
    inst.commodities = 1;
    inst.demands = {vec({1, 0, -1})};
    inst.capacities = vec({2, 2, 0});  // direct edge removed
    inst.edge_costs = {LinearTerm{Int(1)}, LinearTerm{Int(1)}, LinearTerm{Int(1)}};
    inst.commodity_costs = {{LinearTerm{Int(0)}, LinearTerm{Int(0)}, LinearTerm{Int(0)}}};
    SolveResult r = solve_nfold_separable(encode_transshipment_slack(inst));
    REQUIRE(r.optimal_status());
    CHECK(r.value == 2);  // forced around the two-edge path
    IntVec flows = decode_transshipment_flows(inst, r.point, true);
    CHECK(flows == vec({1, 1, 0}));
    CHECK(*testutil::flow_oracle(inst) == r.value);
  }
  SUBCASE("both encodings match the oracle with convex costs") {
    TransshipmentInstance inst;
    inst.digraph = Graph{3, {{0, 1}, {1, 2}, {0, 2}}, true};
    inst.commodities = 2;
    inst.demands = {vec({2, 0, -2}), vec({1, -1, 0})};
    inst.capacities = vec({3, 2, 1});
    inst.edge_costs = {PowerTerm{1, 2, 0}, PowerTerm{2, 2, 0}, LinearTerm{Int(1)}};
    inst.commodity_costs = {
        {LinearTerm{Int(1)}, LinearTerm{Int(2)}, LinearTerm{Int(1)}},
        {PowerTerm{1, 2, 0}, LinearTerm{Int(0)}, LinearTerm{Int(3)}}};
    auto expected = testutil::flow_oracle(inst);
    REQUIRE(expected.has_value());
    SolveResult slack = solve_nfold_separable(encode_transshipment_slack(inst));
    SolveResult weighted = solve_nfold_generalized(encode_transshipment_weighted(inst));
    REQUIRE(slack.optimal_status());
    REQUIRE(weighted.optimal_status());
    CHECK(slack.value == *expected);
    CHECK(weighted.value == *expected);
  }
}

namespace {

TransportationInstance classical_2x2() {
  TransportationInstance inst;
  inst.suppliers = 2;
  inst.consumers = 2;
  inst.commodities = 1;
  inst.volumes = vec({1});
  inst.supplies = {vec({3}), vec({1})};
  inst.consumptions = {vec({2}), vec({2})};
  inst.capacities = {vec({5, 5}), vec({5, 5})};
  inst.edge_costs = {{LinearTerm{Int(0)}, LinearTerm{Int(0)}},
                     {LinearTerm{Int(0)}, LinearTerm{Int(0)}}};
  inst.flow_costs = {{{LinearTerm{Int(1)}}, {LinearTerm{Int(5)}}},
                     {{LinearTerm{Int(2)}}, {LinearTerm{Int(1)}}}};
  return inst;
}

}  // namespace

TEST_CASE("transportation encoding") {
  SUBCASE("classical single-commodity 2x2 matches the oracle") {
    TransportationInstance inst = classical_2x2();
    SolveResult r = solve_nfold_generalized(encode_transportation(inst));
    REQUIRE(r.optimal_status());
    CHECK(r.value == *testutil::transport_oracle(inst));
  }
  SUBCASE("mismatched totals are infeasible") {
    TransportationInstance inst = classical_2x2();
    inst.consumptions[0] = vec({3});  // totals now differ
    SolveResult r = solve_nfold_generalized(encode_transportation(inst));
    CHECK(r.status == SolveResult::Status::Infeasible);
  }
  SUBCASE("two commodities with a binding volume capacity") {
    TransportationInstance inst;
    inst.suppliers = 2;
    inst.consumers = 2;
    inst.commodities = 2;
    inst.volumes = vec({1, 2});
    inst.supplies = {vec({2, 1}), vec({1, 1})};
    inst.consumptions = {vec({1, 1}), vec({2, 1})};
    inst.capacities = {vec({3, 4}), vec({2, 4})};
    inst.edge_costs = {{PowerTerm{1, 2, 0}, LinearTerm{Int(1)}},
                       {LinearTerm{Int(2)}, PowerTerm{1, 1, 0}}};
    inst.flow_costs = {
        {{LinearTerm{Int(1)}, LinearTerm{Int(3)}}, {LinearTerm{Int(2)}, LinearTerm{Int(1)}}},
        {{LinearTerm{Int(0)}, LinearTerm{Int(2)}}, {LinearTerm{Int(1)}, LinearTerm{Int(1)}}}};
    auto expected = testutil::transport_oracle(inst);
    REQUIRE(expected.has_value());
    SolveResult r = solve_nfold_generalized(encode_transportation(inst));
    REQUIRE(r.optimal_status());
    CHECK(r.value == *expected);
  }
}

TEST_CASE("3x3x2 tables solve and keep their margins") {
  std::mt19937 rng(91);
  IntVec table(18);
  for (auto& x : table) x = std::uniform_int_distribution<int>(0, 2)(rng);
  TableInstance inst;
  inst.dims = {3, 3};
  inst.layers = 2;
  inst.margins = TableInstance::margins_of({3, 3}, 2, table);
  IntVec cost(18);
  for (auto& c : cost) c = std::uniform_int_distribution<int>(-3, 3)(rng);
  inst.cost = cost;
  NFoldInstance enc = encode_table(inst);
  SolveResult r = solve_nfold_linear(enc);
  REQUIRE(r.optimal_status());
  CHECK(r.basis_size == 30);  // the two-layer 3x3 line-sum basis
  CHECK(r.value <= SeparableObjective::linear(cost).eval(table));
  auto margins = TableInstance::margins_of(inst.dims, inst.layers, r.point);
  for (std::size_t j = 0; j < margins.size(); ++j) CHECK(margins[j] == inst.margins[j]);
}

TEST_CASE("universal matrix") {
  SUBCASE("m = 3, n = 1 is the displayed K_{3,3} incidence") {
    IntMatrix expected{{1, 0, 0, 1, 0, 0, 1, 0, 0},
                       {0, 1, 0, 0, 1, 0, 0, 1, 0},
                       {0, 0, 1, 0, 0, 1, 0, 0, 1},
                       {1, 1, 1, 0, 0, 0, 0, 0, 0},
                       {0, 0, 0, 1, 1, 1, 0, 0, 0},
                       {0, 0, 0, 0, 0, 0, 1, 1, 1}};
    CHECK(universal_matrix(3, 1) == expected);
  }
  SUBCASE("m = 1, n = 1 is the stacked boxminus form") {
    IntMatrix expected{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    CHECK(universal_matrix(1, 1) == expected);
  }
  SUBCASE("n-fold shape identity") {
    for (int m = 1; m <= 3; ++m)
      for (int n = 2; n <= 3; ++n) {
        IntMatrix u = universal_matrix(m, n);
        CHECK(u.rows() == 3 * m + n * (3 + m));
        CHECK(u.cols() == 3 * m * n);
        CHECK(u == nfold_matrix(boxminus(universal_matrix(m, 1)), n));
      }
  }
  SUBCASE("arguments start at 1") {
    CHECK_THROWS_AS(universal_matrix(0, 1), argument_error);
    CHECK_THROWS_AS(universal_matrix(1, 0), argument_error);
  }
}
