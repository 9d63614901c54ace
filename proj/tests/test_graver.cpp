#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nfold/apps.hpp"

using namespace nfold;
using testutil::basis_set;
using testutil::vec;

namespace {

std::set<IntVec> plus_minus(std::initializer_list<IntVec> half) {
  std::set<IntVec> s;
  for (const auto& v : half) {
    s.insert(v);
    s.insert(negate(v));
  }
  return s;
}

}  // namespace

TEST_CASE("graver basis of [1 2 1] has the eight known elements") {
  GraverBasis g = graver_basis(IntMatrix{{1, 2, 1}});
  CHECK(g.size() == 8);
  CHECK(basis_set(g) ==
        plus_minus({vec({2, -1, 0}), vec({0, -1, 2}), vec({1, 0, -1}), vec({1, -1, 1})}));
}

TEST_CASE("graver basis of matrices with trivial kernel is empty") {
  CHECK(graver_basis(IntMatrix::identity(2)).empty());
}

TEST_CASE("graver basis of [1 -1]") {
  GraverBasis g = graver_basis(IntMatrix{{1, -1}});
  CHECK(basis_set(g) == plus_minus({vec({1, 1})}));
  CHECK(basis_set(g) == testutil::as_set(oracle::brute_graver(IntMatrix{{1, -1}}, 3)));
}

TEST_CASE("completion equals boxed minimization on assorted matrices") {
  std::vector<IntMatrix> cases = {
      IntMatrix{{1, 2, 1}}, IntMatrix{{1, 1, -1}}, IntMatrix{{2, -1}},
      IntMatrix{{1, 2}, {0, 1}}, IntMatrix{{1, 1, 1, 1}}, IntMatrix{{2, 3, -1}}};
  for (const auto& a : cases) {
    const std::string label = a.str();
    CAPTURE(label);
    CHECK(basis_set(graver_basis(a)) == testutil::as_set(testutil::stable_brute_graver(a)));
  }
}

TEST_CASE("completion handles wider entries") {
  // bases whose elements reach well past the generator magnitudes
  for (const auto& a : {IntMatrix{{3, -5, 7}}, IntMatrix{{4, 6, -9}}}) {
    const std::string label = a.str();
    CAPTURE(label);
    GraverBasis g = graver_basis(a);
    CHECK(basis_set(g) == testutil::as_set(testutil::stable_brute_graver(a, 4)));
    for (const auto& e : g.elements()) CHECK(is_zero(a.apply(e)));
  }
}

TEST_CASE("every basis is centrally symmetric and a conformal antichain") {
  std::vector<IntMatrix> cases = {IntMatrix{{1, 2, 1}}, IntMatrix{{1, 1, -1}},
                                  IntMatrix{{2, 3, -1}}, IntMatrix{{1, 0, -2}, {0, 1, 1}}};
  for (const auto& a : cases) {
    GraverBasis g = graver_basis(a);
    auto set = basis_set(g);
    for (const auto& e : g.elements()) {
      CHECK(set.count(negate(e)) == 1);
      CHECK(is_zero(a.apply(e)));
      for (const auto& other : g.elements())
        if (other != e) CHECK_FALSE(conformal_leq(other, e));
    }
  }
}

TEST_CASE("conformal sum property on random kernel points") {
  IntMatrix a{{1, 2, 1}};
  GraverBasis g = graver_basis(a);
  auto points = oracle::enumerate_fiber(a, vec({0}), BoundsBox::cube(3, 4));
  int checked = 0;
  for (const auto& x : points) {
    if (is_zero(x)) continue;
    auto decomposition = oracle::brute_conformal_decomposition(x, g, g.size());
    REQUIRE(decomposition.has_value());
    IntVec total(x.size(), Int(0));
    for (const auto& [elem, mult] : decomposition->parts) {
      CHECK(conformal_leq(elem, x));
      for (std::size_t i = 0; i < total.size(); ++i) total[i] += mult * elem[i];
    }
    CHECK(total == x);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("caratheodory-style bound: at most 2n-2 distinct elements") {
  IntMatrix a{{1, 2, 1}};
  GraverBasis g = graver_basis(a);
  for (const auto& x : oracle::enumerate_fiber(a, vec({0}), BoundsBox::cube(3, 4))) {
    if (is_zero(x)) continue;
    auto d = oracle::brute_conformal_decomposition(x, g, 2 * 3 - 2);
    CHECK(d.has_value());
  }
}

TEST_CASE("nfold_matrix shapes") {
  SUBCASE("A1 empty, A2 = [2] gives 2 I_n") {
    Bimatrix a(IntMatrix(0, 1), IntMatrix{{2}});
    for (int n = 1; n <= 6; ++n) {
      IntMatrix m = nfold_matrix(a, n);
      IntMatrix expected(n, n);
      for (int i = 0; i < n; ++i) expected(i, i) = 2;
      CHECK(m == expected);
    }
  }
  SUBCASE("boxminus [1 1 1] cubed is the K_{3,3} incidence display") {
    IntMatrix ones(1, 3);
    ones(0, 0) = ones(0, 1) = ones(0, 2) = 1;
    IntMatrix m = nfold_matrix(boxminus(ones), 3);
    CHECK(m == apps::universal_matrix(3, 1));
  }
  SUBCASE("n = 1 stacks the blocks") {
    Bimatrix a(IntMatrix{{1, 2}}, IntMatrix{{3, 4}, {5, 6}});
    CHECK(nfold_matrix(a, 1) == IntMatrix{{1, 2}, {3, 4}, {5, 6}});
  }
  SUBCASE("n = 0 rejected") {
    Bimatrix a(IntMatrix{{1}}, IntMatrix{{1}});
    CHECK_THROWS_AS(nfold_matrix(a, 0), argument_error);
  }
}

TEST_CASE("n_liftings") {
  SUBCASE("one brick into two slots") {
    auto lifted = n_liftings(vec({7}), 1, 2, 1);
    CHECK(testutil::as_set(lifted) == std::set<IntVec>{vec({7, 0}), vec({0, 7})});
  }
  SUBCASE("m equals n") {
    IntVec y = vec({1, 2, 3, 4});
    auto lifted = n_liftings(y, 2, 2, 2);
    REQUIRE(lifted.size() == 1);
    CHECK(lifted[0] == y);
  }
  SUBCASE("choose(4,2) placements") {
    CHECK(n_liftings(vec({1, 2}), 2, 4, 1).size() == 6);
  }
  SUBCASE("n < m rejected") {
    CHECK_THROWS_AS(n_liftings(vec({1, 2}), 2, 1, 1), argument_error);
  }
}

TEST_CASE("graver complexity bound") {
  SUBCASE("trivial kernel of A2 forces 0") {
    Bimatrix a(IntMatrix{{1, 0}, {0, 1}}, IntMatrix::identity(2));
    CHECK(graver_complexity_bound(a) == 0);
  }
  SUBCASE("A1 empty, A2 = [1 -1]") {
    Bimatrix a(IntMatrix(0, 2), IntMatrix{{1, -1}});
    CHECK(graver_complexity_bound(a) == 1);
    CHECK(graver_complexity_exact(a, 3) == 1);
  }
  SUBCASE("bound dominates the brute-force complexity on small bimatrices") {
    std::vector<Bimatrix> cases = {
        boxminus(IntMatrix{{1, 1}}),
        Bimatrix(IntMatrix{{1, 1}}, IntMatrix{{1, -1}}),
        boxminus(IntMatrix{{1, -1}, {-1, 1}}),
    };
    for (const auto& a : cases) {
      const std::string label = a.str();
    CAPTURE(label);
      CHECK(graver_complexity_bound(a) >= graver_complexity_exact(a, 3));
    }
  }
}

TEST_CASE("minimal_nonneg_kernel equals the nonnegative Graver elements") {
  std::vector<IntMatrix> cases = {IntMatrix{{1, -1}}, IntMatrix{{1, 2, -2}},
                                  IntMatrix{{1, 1, -1}, {0, 1, -1}},
                                  IntMatrix{{2, -3}}, IntMatrix(0, 3)};
  for (const auto& m : cases) {
    const std::string label = m.str();
    CAPTURE(label);
    std::set<IntVec> nonneg_graver;
    const GraverBasis full = graver_basis(m.rows() > 0 ? m : IntMatrix(0, m.cols()));
    for (const auto& e : full.elements()) {
      bool nonneg = true;
      for (const auto& x : e)
        if (sgn(x) < 0) nonneg = false;
      if (nonneg) nonneg_graver.insert(e);
    }
    CHECK(testutil::as_set(minimal_nonneg_kernel(m)) == nonneg_graver);
  }
}

TEST_CASE("nfold_graver") {
  SUBCASE("A = (empty, [2]) is trivial for every n") {
    Bimatrix a(IntMatrix(0, 1), IntMatrix{{2}});
    for (int n = 1; n <= 5; ++n) CHECK(nfold_graver(a, n).empty());
  }
  SUBCASE("A = (empty, [1 -1]) at n = 2") {
    Bimatrix a(IntMatrix(0, 2), IntMatrix{{1, -1}});
    CHECK(basis_set(nfold_graver(a, 2)) ==
          plus_minus({vec({1, 1, 0, 0}), vec({0, 0, 1, 1})}));
  }
  SUBCASE("lifting path equals direct completion") {
    Bimatrix a = boxminus(IntMatrix{{1, 1}});
    for (int n = 1; n <= 4; ++n)
      CHECK(basis_set(nfold_graver(a, n)) ==
            basis_set(graver_basis(nfold_matrix(a, n))));
  }
}

TEST_CASE("lifting soundness across small bimatrices") {
  std::vector<Bimatrix> cases = {
      Bimatrix(IntMatrix(0, 2), IntMatrix{{1, -1}}),
      boxminus(IntMatrix{{1, 1}}),
      Bimatrix(IntMatrix{{1, 1}}, IntMatrix{{1, -1}}),
  };
  for (const auto& a : cases) {
    const Int bound = graver_complexity_bound(a);
    for (int n = 1; n <= 4; ++n) {
      GraverBasis fast = nfold_graver(a, n);
      GraverBasis direct = graver_basis(nfold_matrix(a, n));
      const std::string label = a.str();
    CAPTURE(label);
      CAPTURE(n);
      CHECK(basis_set(fast) == basis_set(direct));
      for (const auto& e : fast.elements()) CHECK(Int(brick_type(e, a.t())) <= bound);
    }
  }
}

TEST_CASE("extended graver") {
  SUBCASE("degenerate W reduces to nfold_graver") {
    Bimatrix a = boxminus(IntMatrix{{1, 1}});
    Bimatrix w(IntMatrix(0, 2), IntMatrix(0, 2));
    CHECK(basis_set(extended_graver(a, w, 2)) == basis_set(nfold_graver(a, 2)));
  }
  SUBCASE("t = 1 slack system equals direct completion of B") {
    Bimatrix a(IntMatrix(0, 1), IntMatrix{{0}});
    Bimatrix w(IntMatrix{{1}}, IntMatrix(0, 1));
    const int n = 2;
    GraverBasis via_lift = extended_graver(a, w, n);
    // B = [[A^(n), 0], [W^(n), I_p]]
    IntMatrix an = nfold_matrix(a, n);
    IntMatrix wn = nfold_matrix(w, n);
    IntMatrix b(an.rows() + wn.rows(), an.cols() + wn.rows());
    b.set_block(0, 0, an);
    b.set_block(an.rows(), 0, wn);
    b.set_block(an.rows(), an.cols(), IntMatrix::identity(wn.rows()));
    CHECK(basis_set(via_lift) == basis_set(graver_basis(b)));
  }
  SUBCASE("transportation bimatrices with l=1, m=2, n=2") {
    // A = (ml, l) x ml with A1 = I_2, A2 = [1 1]; W = (0, m) x ml with volume rows
    Bimatrix a(IntMatrix::identity(2), IntMatrix{{1, 1}});
    IntMatrix w2(2, 2);
    w2(0, 0) = 1;
    w2(1, 1) = 1;
    Bimatrix w(IntMatrix(0, 2), w2);
    const int n = 2;
    GraverBasis via_lift = extended_graver(a, w, n);
    IntMatrix an = nfold_matrix(a, n);
    IntMatrix wn = nfold_matrix(w, n);
    IntMatrix b(an.rows() + wn.rows(), an.cols() + wn.rows());
    b.set_block(0, 0, an);
    b.set_block(an.rows(), 0, wn);
    b.set_block(an.rows(), an.cols(), IntMatrix::identity(wn.rows()));
    CHECK(basis_set(via_lift) == basis_set(graver_basis(b)));
  }
}

TEST_CASE("graph graver complexity") {
  SUBCASE("edgeless graph") {
    Graph g{3, {}, true};
    CHECK(graph_graver_complexity(g) == 0);
  }
  SUBCASE("directed 2-cycle checks against brute force") {
    Graph g{2, {{0, 1}, {1, 0}}, true};
    Int bound = graph_graver_complexity(g);
    Bimatrix bm = boxminus(incidence_matrix(g));
    CHECK(bound >= graver_complexity_exact(bm, 3));
  }
  SUBCASE("undirected incidence is 0/1") {
    Graph g{3, {{0, 1}, {1, 2}}, false};
    IntMatrix d = incidence_matrix(g);
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j) CHECK(sgn(d(i, j)) >= 0);
  }
  SUBCASE("undirected 4-cycle checks against brute force") {
    Graph g{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, false};
    Int bound = graph_graver_complexity(g);
    CHECK(bound >= graver_complexity_exact(boxminus(incidence_matrix(g)), 3));
  }
}

TEST_CASE("basis JSON document") {
  GraverBasis g = graver_basis(IntMatrix{{1, -1}});
  CHECK(g.to_json() ==
        "{\"ambient_dim\": 2, \"elements\": [[-1, -1], [1, 1]]}");
}

TEST_CASE("thread count never changes a basis") {
  IntMatrix a{{1, 2, 1}};
  GraverBasis g1 = graver_basis(a, ComputeOptions{1});
  GraverBasis g4 = graver_basis(a, ComputeOptions{4});
  CHECK(g1.elements() == g4.elements());
}
