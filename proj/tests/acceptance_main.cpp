// Acceptance suite: runs every criterion at its stated tolerance and time
// budget and prints one pass/fail line per criterion. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "klcalc/cells.hpp"
#include "klcalc/cli.hpp"
#include "klcalc/hecke.hpp"
#include "klcalc/homology.hpp"
#include "klcalc/klpoly.hpp"
#include "klcalc/poset.hpp"
#include "klcalc/rsk.hpp"

using namespace coxeter;

namespace {

struct Block {
  std::unique_ptr<CoxeterSystem> system;  // stable address: table and cells point at it
  klpoly::KLTable table;
  cells::CellDecomposition two_sided;
  const CoxeterSystem& W() const { return *system; }
};

Block make_block(char type, int rank, int threads = 1) {
  auto sys = std::make_unique<CoxeterSystem>(CoxeterSystem::build(type, rank));
  klpoly::KLTable t(*sys);
  t.build(threads);
  auto d = cells::CellDecomposition::build(t, cells::Side::TwoSided);
  return Block{std::move(sys), std::move(t), std::move(d)};
}

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

bool expect(bool cond, std::string& msg, const std::string& on_fail) {
  if (!cond && msg.empty()) msg = on_fail;
  return cond;
}

// ---- criterion 1: the rank-two table, exactly -----------------------------

bool criterion_example10(std::string& msg) {
  const Block blk = make_block('A', 2);
  const std::vector<Word> order = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}};
  const std::vector<int> expect_t = {0, 1, 1, 1, 1, 3};
  const std::vector<int> expect_i = {6, 2, 2, 2, 2, 0};
  bool ok = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const ElementIndex w = blk.W().from_word(order[k]);
    ok = ok && expect(homology::pd_tilting(blk.two_sided, w).value == expect_t[k], msg,
                      "t mismatch at position " + std::to_string(k));
    ok = ok && expect(homology::pd_injective(blk.two_sided, w).value == expect_i[k], msg,
                      "i mismatch at position " + std::to_string(k));
  }
  ok = ok && expect(blk.two_sided.cell_count() == 3, msg, "expected 3 two-sided cells");
  const auto members_of = [&](ElementIndex w) {
    const auto& m = blk.two_sided.members(blk.two_sided.cell_of(w));
    return std::set<ElementIndex>(m.begin(), m.end());
  };
  ok = ok && expect(members_of(blk.W().identity()) == std::set<ElementIndex>{blk.W().identity()},
                    msg, "cell of e is not a singleton");
  ok = ok &&
       expect(members_of(blk.W().longest_element()) ==
                  std::set<ElementIndex>{blk.W().longest_element()},
              msg, "cell of w0 is not a singleton");
  ok = ok && expect(members_of(blk.W().from_word({0})) ==
                        std::set<ElementIndex>{blk.W().from_word({0}), blk.W().from_word({1}),
                                               blk.W().from_word({0, 1}),
                                               blk.W().from_word({1, 0})},
                    msg, "middle cell differs");
  return ok;
}

// ---- criterion 2: a-function well-definedness ------------------------------

bool criterion_afunction(std::string& msg) {
  bool ok = true;
  for (auto [type, rank] : {std::pair{'A', 2}, {'A', 3}, {'A', 4}, {'B', 3}}) {
    const Block blk = make_block(type, rank);
    const std::string name = blk.W().name();
    // Every involution of a cell must yield the same l(u) - 2 delta(u).
    if (const auto bad = cells::involution_defect(blk.two_sided, blk.table)) {
      std::string detail = name + " cell " + std::to_string(*bad) + " involutions give {";
      std::set<int> values;
      for (ElementIndex u : blk.two_sided.members(*bad))
        if (blk.W().inverse(u) == u)
          values.insert(blk.W().length(u) - 2 * blk.table.delta(u));
      for (int v : values) detail += " " + std::to_string(v);
      detail +=
          " }; l(u) - 2 delta(u) equals the cell's a-value only at distinguished "
          "involutions, and outside type A not every involution is distinguished";
      ok = expect(false, msg, detail);
    }
    ok = ok && expect(blk.two_sided.a_function(blk.W().identity()) == 0, msg, name + ": a(e) != 0");
    ok = ok && expect(blk.two_sided.a_function(blk.W().longest_element()) ==
                          blk.W().length(blk.W().longest_element()),
                      msg, name + ": a(w0) != l(w0)");
    for (GeneratorSet S = 0; S < (1u << blk.W().rank()); ++S)
      ok = ok && expect(cells::check_a_parabolic(blk.two_sided, S), msg,
                        name + ": a(w0^S) != l(w0^S)");
  }
  return ok;
}

// ---- criterion 3: type-A cells through Robinson-Schensted ------------------

bool criterion_rsk(std::string& msg) {
  bool ok = true;
  for (auto [rank, partitions] : {std::pair{3, 5}, {4, 7}}) {
    const Block blk = make_block('A', rank);
    const auto fibers = rsk::shape_fibers(blk.W());
    ok = ok && expect(fibers.size() == static_cast<std::size_t>(partitions), msg,
                      blk.W().name() + ": fiber count != number of partitions");
    ok = ok && expect(blk.two_sided.cell_count() == fibers.size(), msg,
                      blk.W().name() + ": cell count != fiber count");
    for (const auto& [shape, members] : fibers) {
      const int c = blk.two_sided.cell_of(members.front());
      ok = ok && expect(blk.two_sided.members(c).size() == members.size(), msg,
                        blk.W().name() + ": fiber and cell sizes differ");
      for (ElementIndex w : members)
        ok = ok && expect(blk.two_sided.cell_of(w) == c, msg,
                          blk.W().name() + ": fiber split across cells");
    }
    for (GeneratorSet S = 0; S < (1u << blk.W().rank()); ++S)
      ok = ok && expect(rsk::check_w0S_shape(blk.W(), S), msg,
                        blk.W().name() + ": shape(RS(w0^S)) != conjugate(lambda(S))");
  }
  return ok;
}

// ---- criterion 4: pd(Delta) through the Ext oracle -------------------------

bool criterion_prop3_oracle(std::string& msg) {
  const Block blk = make_block('A', 3);
  bool ok = true;
  for (ElementIndex w = 0; w < blk.W().size(); ++w) {
    int max_degree = -1;
    for (ElementIndex y = 0; y < blk.W().size(); ++y)
      for (int i = 0; i <= blk.W().length(w); ++i)
        if (homology::ext_std_simple_dim(blk.table, w, y, i) != 0)
          max_degree = std::max(max_degree, i);
    ok = ok && expect(max_degree == blk.W().length(w), msg,
                      "max Ext degree != l(w) at " +
                          word_to_string(blk.W().word_vector(w)));
    ok = ok && expect(homology::ext_std_simple_dim(blk.table, w, blk.W().identity(),
                                                   blk.W().length(w)) >= 1,
                      msg, "top-degree witness missing");
  }
  return ok;
}

// ---- criterion 5: pd(L) through the gated convolution oracle ---------------

bool criterion_prop26_oracle(std::string& msg) {
  const Block blk = make_block('A', 2);
  const homology::SimpleSimpleOracle oracle(blk.table);
  if (!expect(oracle.validated(), msg, "rank-1 validation failed")) return false;
  bool ok = true;
  const int gl = homology::global_dimension(blk.W());
  for (ElementIndex w = 0; w < blk.W().size(); ++w) {
    int max_degree = -1;
    for (ElementIndex y = 0; y < blk.W().size(); ++y)
      for (int n = 0; n <= gl; ++n)
        if (oracle.dim(w, y, n) != 0) max_degree = std::max(max_degree, n);
    ok = ok && expect(max_degree == homology::pd_simple(blk.W(), w), msg,
                      "max degree != 2 l(w0) - l(w) at " +
                          word_to_string(blk.W().word_vector(w)));
  }
  ok = ok && expect(oracle.dim(blk.W().identity(), blk.W().identity(), gl) != 0, msg,
                    "Ext^{2 l(w0)}(L(e), L(e)) vanished");
  return ok;
}

// ---- criterion 6: two independent polynomial computations ------------------

bool criterion_kl_oracle(std::string& msg) {
  bool ok = true;
  for (auto [type, rank] : {std::pair{'A', 2}, {'A', 3}, {'B', 3}}) {
    const CoxeterSystem W = CoxeterSystem::build(type, rank);
    klpoly::KLTable table(W);
    table.build();
    const klpoly::BarOracle oracle(W);
    for (ElementIndex w = 0; w < W.size() && ok; ++w)
      for (ElementIndex y = 0; y < W.size() && ok; ++y)
        ok = expect(table.polynomial(y, w) == oracle.kl_polynomial(y, w), msg,
                    W.name() + ": oracle mismatch at (" +
                        word_to_string(W.word_vector(y)) + ", " +
                        word_to_string(W.word_vector(w)) + ")");
  }
  const CoxeterSystem W5 = CoxeterSystem::build('A', 4);
  klpoly::KLTable table(W5);
  table.build();
  const klpoly::BarOracle oracle(W5);
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<ElementIndex> pick(0,
                                                   static_cast<ElementIndex>(W5.size() - 1));
  for (int k = 0; k < 500 && ok; ++k) {
    const ElementIndex y = pick(rng), w = pick(rng);
    ok = expect(table.polynomial(y, w) == oracle.kl_polynomial(y, w), msg,
                "S5 sampled mismatch");
  }
  return ok;
}

// ---- criterion 7: composition mirror rule ----------------------------------

bool criterion_theta(std::string& msg) {
  bool ok = true;
  const Block blk = make_block('A', 3);
  for (ElementIndex w = 0; w < blk.W().size() && ok; ++w)
    for (Generator s = 0; s < blk.W().rank() && ok; ++s) {
      std::map<ElementIndex, int> mirrored;
      for (const auto& [y, m] :
           hecke::theta_composition_right(blk.table, blk.W().inverse(w), s))
        mirrored[blk.W().inverse(y)] = m;
      ok = expect(hecke::theta_composition_left(blk.table, w, s) == mirrored, msg,
                  "left/right mirror failed at (" + word_to_string(blk.W().word_vector(w)) +
                      ", s" + std::to_string(s + 1) + ")");
    }
  const auto vpv = polynomials::LaurentPolynomial::v_power(1) +
                   polynomials::LaurentPolynomial::v_power(-1);
  for (auto [type, rank] :
       {std::pair{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'D', 4}}) {
    const CoxeterSystem W = CoxeterSystem::build(type, rank);
    klpoly::KLTable table(W);
    table.build();
    for (Generator s = 0; s < W.rank() && ok; ++s) {
      const ElementIndex se = W.right_mult(W.identity(), s);
      auto cs = hecke::kl_basis(table, se);
      auto expected = cs;
      expected.scale(vpv);
      ok = expect(hecke::multiply_standard(cs, cs) == expected, msg,
                  W.name() + ": C'_s C'_s != (v + v^-1) C'_s");
    }
  }
  return ok;
}

// ---- criterion 8: Moebius sign formula -------------------------------------

bool criterion_mobius(std::string& msg) {
  bool ok = true;
  for (auto [type, rank] : {std::pair{'A', 3}, {'B', 3}}) {
    const CoxeterSystem W = CoxeterSystem::build(type, rank);
    if (const auto bad = poset::verma_mobius_counterexample(W))
      ok = expect(false, msg,
                  W.name() + ": sign formula fails at (" +
                      word_to_string(W.word_vector(bad->first)) + ", " +
                      word_to_string(W.word_vector(bad->second)) + ")");
  }
  ok = ok && expect(poset::incidence_dimension(CoxeterSystem::build('A', 2)) == 19, msg,
                    "incidence dimension of S3 != 19");
  return ok;
}

// ---- criterion 9: shuffled-module boundary identities -----------------------

bool criterion_shuffled(std::string& msg) {
  const CoxeterSystem W = CoxeterSystem::build('A', 3);
  const ElementIndex w0 = W.longest_element();
  bool ok = true;
  for (ElementIndex w = 0; w < W.size(); ++w) {
    ok = ok && expect(homology::pd_shuffled(W, w, w0) ==
                          homology::pd_costandard(W, W.multiply(w, w0)),
                      msg, "pd(Delta(w, w0)) != pd(Nabla(w w0))");
    ok = ok && expect(homology::pd_shuffled(W, w0, w) ==
                          homology::pd_costandard(W, W.multiply(w0, w)),
                      msg, "pd(Delta(w0, w)) != pd(Nabla(w0 w))");
    ok = ok && expect(homology::pd_shuffled(W, W.identity(), w) ==
                          homology::pd_standard(W, w),
                      msg, "pd(Delta(e, w)) != pd(Delta(w))");
  }
  return ok;
}

// ---- criterion 10: duality invariance and the support statistic ------------

bool criterion_duality(std::string& msg) {
  const CoxeterSystem W = CoxeterSystem::build('A', 3);
  bool ok = true;
  for (ElementIndex x = 0; x < W.size() && ok; ++x)
    for (ElementIndex y = 0; y < W.size() && ok; ++y)
      for (int i = 0; i <= W.length(W.longest_element()) && ok; ++i) {
        const bool member = homology::linear_ext_dim(W, x, y, i) == 1;
        const auto img = homology::duality_image(W, {x, y, i, -i});
        ok = expect(img.i == 0, msg, "image left the homomorphism family");
        const bool hom_member =
            W.bruhat_leq(img.y, img.x) && W.length(img.x) - W.length(img.y) == img.j;
        ok = ok && expect(member == hom_member, msg, "membership not preserved");
        ok = ok && expect(homology::duality_image(W, img) ==
                              homology::ExtQuadruple{x, y, i, -i},
                          msg, "duality image is not involutive");
      }
  for (auto [type, rank] :
       {std::pair{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}}) {
    const CoxeterSystem V = CoxeterSystem::build(type, rank);
    ok = ok && expect(homology::ext1_to_dominant(V, V.longest_element(),
                                                 V.length(V.longest_element()) - 2) ==
                          V.rank(),
                      msg, V.name() + ": Ext^1 into the dominant standard != rank");
  }
  return ok;
}

// ---- criterion 11: S5 throughput and parallel determinism -------------------

bool criterion_performance(std::string& msg) {
  const auto start = std::chrono::steady_clock::now();
  const Block blk = make_block('A', 4, /*threads=*/1);
  const auto table = homology::build_table(blk.table, blk.two_sided);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = expect(table.rows.size() == 120, msg, "S5 table has the wrong size");
  ok = ok && expect(elapsed < 10.0, msg,
                    "single-threaded S5 run took " + std::to_string(elapsed) + "s");

  klpoly::KLTable parallel(blk.W());
  parallel.build(4);
  ok = ok && expect(parallel.serialize_to_string() == blk.table.serialize_to_string(), msg,
                    "parallel table differs from the serial one");

  cli::RunConfig cfg;
  cfg.command = "pd-table";
  cfg.type = 'A';
  cfg.rank = 4;
  cfg.format = "json";
  cfg.no_cache = true;
  std::ostringstream out1, out4, err;
  cfg.threads = 1;
  ok = ok && expect(cli::run_command(cfg, out1, err) == 0, msg, "pd-table run failed");
  cfg.threads = 4;
  ok = ok && expect(cli::run_command(cfg, out4, err) == 0, msg, "pd-table run failed");
  ok = ok && expect(out1.str() == out4.str(), msg, "output differs across thread counts");
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "rank-two table reproduced exactly (t, i, cells)", 1.0, criterion_example10},
      {2, "a-function well-definedness on S3, S4, S5, B3", 10.0, criterion_afunction},
      {3, "type-A cells equal Robinson-Schensted fibers (S4, S5)", 10.0, criterion_rsk},
      {4, "pd(Delta(w)) = l(w) via the standard-to-simple oracle on S4", 5.0,
       criterion_prop3_oracle},
      {5, "pd(L(w)) = 2l(w0) - l(w) via the gated convolution oracle on S3", 5.0,
       criterion_prop26_oracle},
      {6, "KL recursion agrees with the bar-involution solver", 60.0, criterion_kl_oracle},
      {7, "left composition rule is the sigma-mirror of the right one", 5.0,
       criterion_theta},
      {8, "Moebius sign formula on S4 and B3; dim of the S3 incidence algebra", 5.0,
       criterion_mobius},
      {9, "shuffled-module boundary identities on S4", 1.0, criterion_shuffled},
      {10, "duality invariance of the linear family; Ext^1 support values", 5.0,
       criterion_duality},
      {11, "S5 full pipeline under 10s; parallel runs byte-identical", 10.0,
       criterion_performance},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string msg;
    bool pass = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      pass = c.run(msg);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= c.budget_seconds) {
      pass = false;
      if (msg.empty())
        msg = "exceeded the " + std::to_string(c.budget_seconds) + "s budget";
    }
    std::printf("[%s] criterion %2d: %s (%.3fs)%s%s\n", pass ? "PASS" : "FAIL", c.number,
                c.title.c_str(), elapsed, msg.empty() ? "" : " -- ", msg.c_str());
    if (!pass) ++failures;
  }
  if (failures)
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
