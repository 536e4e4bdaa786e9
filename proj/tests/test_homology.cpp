#include <doctest.h>

#include <memory>

#include "klcalc/homology.hpp"
#include "klcalc/rsk.hpp"

using namespace coxeter;
using namespace homology;

namespace {

struct Block {
  std::unique_ptr<CoxeterSystem> system;  // stable address: table and cells point at it
  klpoly::KLTable table;
  cells::CellDecomposition two_sided;
  const CoxeterSystem& W() const { return *system; }

  static Block make(char type, int rank) {
    auto sys = std::make_unique<CoxeterSystem>(CoxeterSystem::build(type, rank));
    klpoly::KLTable t(*sys);
    t.build();
    auto d = cells::CellDecomposition::build(t, cells::Side::TwoSided);
    return Block{std::move(sys), std::move(t), std::move(d)};
  }
};

}  // namespace

TEST_CASE("projective dimension formulas") {
  const auto W2 = CoxeterSystem::build('A', 2);
  const auto W3 = CoxeterSystem::build('A', 3);
  CHECK(pd_standard(W2, W2.identity()) == 0);
  CHECK(pd_standard(W2, W2.longest_element()) == 3);
  CHECK(pd_standard(W3, W3.longest_element()) == 6);
  CHECK(pd_simple(W2, W2.identity()) == 6);
  CHECK(pd_simple(W2, W2.longest_element()) == 3);
  CHECK(pd_simple(W2, W2.from_word({0})) == 5);
  CHECK(pd_costandard(W2, W2.longest_element()) == 3);
  CHECK(pd_costandard(W2, W2.identity()) == 6);
  CHECK(pd_costandard(W3, W3.from_word({0})) == 11);
  CHECK(global_dimension(CoxeterSystem::build('A', 1)) == 2);
  CHECK(global_dimension(W2) == 6);
  CHECK(global_dimension(CoxeterSystem::build('B', 3)) == 18);
}

TEST_CASE("shuffled standard modules") {
  const auto W = CoxeterSystem::build('A', 2);
  const ElementIndex s = W.from_word({0}), t = W.from_word({1});
  CHECK(pd_shuffled(W, s, t) == 2);
  for (ElementIndex w = 0; w < W.size(); ++w) {
    CHECK(pd_shuffled(W, W.identity(), w) == pd_standard(W, w));
    CHECK(pd_shuffled(W, w, W.longest_element()) ==
          pd_costandard(W, W.multiply(w, W.longest_element())));
    CHECK(pd_shuffled(W, W.longest_element(), w) ==
          pd_costandard(W, W.multiply(W.longest_element(), w)));
  }
}

TEST_CASE("tilting and injective dimensions with status flags") {
  const auto blk = Block::make('A', 2);
  const std::vector<coxeter::Word> order = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}};
  const std::vector<int> expect_t = {0, 1, 1, 1, 1, 3};
  const std::vector<int> expect_i = {6, 2, 2, 2, 2, 0};
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto w = blk.W().from_word(order[k]);
    const auto t = pd_tilting(blk.two_sided, w);
    const auto i = pd_injective(blk.two_sided, w);
    CHECK(t.value == expect_t[k]);
    CHECK(i.value == expect_i[k]);
    CHECK(t.status == Status::Theorem);
    CHECK(i.status == Status::Theorem);
  }
  const auto b2 = Block::make('B', 2);
  CHECK(pd_tilting(b2.two_sided, b2.W().identity()).status == Status::Conjecture);
  CHECK(pd_injective(b2.two_sided, b2.W().longest_element()).value == 0);
  CHECK(pd_injective(b2.two_sided, b2.W().identity()).value == global_dimension(b2.W()));
  CHECK(status_name(Status::Theorem) == "theorem");
  CHECK(status_name(Status::Conjecture) == "conjecture");
}

TEST_CASE("monotonicity of the closed formulas in the length") {
  const auto W = CoxeterSystem::build('A', 3);
  for (ElementIndex x = 0; x < W.size(); ++x)
    for (ElementIndex y = 0; y < W.size(); ++y) {
      if (W.length(x) >= W.length(y)) continue;
      CHECK(pd_standard(W, x) < pd_standard(W, y));
      CHECK(pd_simple(W, x) > pd_simple(W, y));
    }
}

TEST_CASE("linear extension family") {
  const auto W = CoxeterSystem::build('A', 2);
  const ElementIndex s = W.from_word({0}), t = W.from_word({1});
  CHECK(linear_ext_dim(W, W.longest_element(), W.identity(), 3) == 1);
  CHECK(linear_ext_dim(W, s, t, 0) == 0);
  for (ElementIndex w = 0; w < W.size(); ++w) CHECK(linear_ext_dim(W, w, w, 0) == 1);
  CHECK(linear_ext_dim(W, W.longest_element(), W.identity(), 2) == 0);
}

TEST_CASE("ungraded one-dimensional extensions between standard modules") {
  const auto W = CoxeterSystem::build('A', 2);
  const auto st = W.from_word({0, 1}), s = W.from_word({0});
  const auto c = ungraded_ext_dim(W, st, s);
  CHECK(c.dim == 1);
  CHECK(c.degree == 1);
  const auto top = ungraded_ext_dim(W, W.longest_element(), W.identity());
  CHECK(top.dim == 1);
  CHECK(top.degree == 3);
  const auto swapped = ungraded_ext_dim(W, s, st);
  CHECK(swapped.dim == 0);
  CHECK(swapped.degree == -1);
}

TEST_CASE("Ext^1 into the dominant standard module") {
  const auto W = CoxeterSystem::build('A', 2);
  CHECK(ext1_to_dominant(W, W.longest_element(), 1) == 2);
  CHECK(ext1_to_dominant(W, W.longest_element(), 0) == 0);
  CHECK(ext1_to_dominant(W, W.from_word({0}), -1) == 1);
  for (auto [type, rank] : {std::pair{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2},
                            {'B', 3}}) {
    const auto V = CoxeterSystem::build(type, rank);
    CHECK(ext1_to_dominant(V, V.longest_element(),
                           V.length(V.longest_element()) - 2) == V.rank());
  }
}

TEST_CASE("duality image") {
  const auto W = CoxeterSystem::build('A', 2);
  const int lw0 = W.length(W.longest_element());
  const ExtQuadruple q{W.longest_element(), W.identity(), lw0, -lw0};
  const auto img = duality_image(W, q);
  CHECK(img.x == W.longest_element());
  CHECK(img.y == W.identity());
  CHECK(img.i == 0);
  CHECK(img.j == lw0);
  for (ElementIndex x = 0; x < W.size(); ++x)
    for (ElementIndex y = 0; y < W.size(); ++y)
      for (int i = -2; i <= 4; ++i)
        for (int j = -2; j <= 4; ++j) {
          const ExtQuadruple quad{x, y, i, j};
          CHECK(duality_image(W, duality_image(W, quad)) == quad);
        }
}

TEST_CASE("standard-to-simple Ext oracle") {
  const auto W = CoxeterSystem::build('A', 3);
  klpoly::KLTable T(W);
  T.build();
  for (ElementIndex x = 0; x < W.size(); ++x) {
    for (ElementIndex y = 0; y < W.size(); ++y)
      CHECK(ext_std_simple_dim(T, x, y, 0) == (x == y ? 1 : 0));
    CHECK(ext_std_simple_dim(T, x, W.identity(), W.length(x)) == 1);
  }
  const ElementIndex w3412 = rsk::element_of_one_line(W, {3, 4, 1, 2});
  const ElementIndex y1324 = rsk::element_of_one_line(W, {1, 3, 2, 4});
  CHECK(ext_std_simple_dim(T, w3412, y1324, 1) == 1);  // the q coefficient of 1 + q
  CHECK(ext_std_simple_dim(T, w3412, y1324, 3) == 1);  // the constant coefficient
  CHECK(ext_std_simple_dim(T, w3412, y1324, 2) == 0);  // parity failure
  CHECK(ext_std_simple_dim(T, y1324, w3412, 1) == 0);  // wrong order
}

TEST_CASE("simple-to-simple convolution oracle") {
  const auto W1 = CoxeterSystem::build('A', 1);
  klpoly::KLTable T1(W1);
  T1.build();
  const SimpleSimpleOracle o1(T1);
  REQUIRE(o1.validated());
  CHECK(o1.dim(0, 0, 0) == 1);
  CHECK(o1.dim(0, 0, 1) == 0);
  CHECK(o1.dim(0, 0, 2) == 1);

  const auto W = CoxeterSystem::build('A', 2);
  klpoly::KLTable T(W);
  T.build();
  const SimpleSimpleOracle oracle(T);
  REQUIRE(oracle.validated());
  for (ElementIndex x = 0; x < W.size(); ++x)
    for (ElementIndex y = 0; y < W.size(); ++y)
      CHECK(oracle.dim(x, y, 0) == (x == y ? 1 : 0));
  int max_n = -1;
  for (ElementIndex y = 0; y < W.size(); ++y)
    for (int n = 0; n <= 6; ++n)
      if (oracle.dim(W.identity(), y, n) != 0) max_n = std::max(max_n, n);
  CHECK(max_n == 6);
  CHECK(oracle.dim(W.identity(), W.identity(), 6) != 0);
}

TEST_CASE("homology table is internally consistent") {
  const auto blk = Block::make('B', 2);
  const auto table = build_table(blk.table, blk.two_sided);
  CHECK(table.global_dimension == 8);
  CHECK(table.tilting_status == Status::Conjecture);
  REQUIRE(table.rows.size() == blk.W().size());
  for (const auto& row : table.rows) {
    for (int entry : {row.pd_standard, row.pd_simple, row.pd_costandard, row.pd_tilting,
                      row.pd_injective}) {
      CHECK(entry >= 0);
      CHECK(entry <= table.global_dimension);
    }
    CHECK(row.pd_simple + row.length == table.global_dimension);
    CHECK(row.pd_costandard == row.pd_simple);
    CHECK(row.pd_standard == row.length);
    CHECK(row.pd_tilting == blk.two_sided.a_function(row.w));
  }
}
