#include <doctest.h>

#include <set>

#include "klcalc/coxeter.hpp"

using namespace coxeter;

namespace {

// Brute-force Bruhat comparison from the subword property: x <= y iff some
// subsequence of a reduced word of y is a reduced word of x.
bool subword_leq(const CoxeterSystem& W, ElementIndex x, ElementIndex y) {
  const Word wy = W.word_vector(y);
  const std::size_t k = wy.size();
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    int picked = 0;
    ElementIndex u = W.identity();
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) {
        u = W.right_mult(u, wy[i]);
        ++picked;
      }
    if (u == x && picked == W.length(x)) return true;
  }
  return false;
}

void all_reduced_words(const CoxeterSystem& W, ElementIndex w, Word& prefix,
                       std::vector<Word>& out) {
  if (w == W.identity()) {
    out.push_back(prefix);
    return;
  }
  for (Generator s = 0; s < W.rank(); ++s) {
    if (!W.is_left_descent(w, s)) continue;
    prefix.push_back(s);
    all_reduced_words(W, W.left_mult(s, w), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("built-in systems have the expected orders and root counts") {
  struct Row {
    char type;
    int rank;
    std::size_t order;
    int longest;
  };
  for (const Row r : {Row{'A', 2, 6, 3}, Row{'A', 3, 24, 6}, Row{'B', 3, 48, 9},
                      Row{'D', 4, 192, 12}}) {
    const auto W = CoxeterSystem::build(r.type, r.rank);
    CHECK(W.size() == r.order);
    CHECK(W.length(W.longest_element()) == r.longest);
    CHECK(W.positive_roots().size() == static_cast<std::size_t>(r.longest));
    CHECK(W.reflections().size() == static_cast<std::size_t>(r.longest));
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(CoxeterSystem::build('E', 6), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem::build('A', 0), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem::build('A', 8), std::invalid_argument);  // 9! > cap
  CHECK_THROWS_AS(CoxeterSystem::build('B', 1), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem::build('D', 2), std::invalid_argument);
}

TEST_CASE("explicit coxeter matrix") {
  // G2 is accepted through the generic constructor.
  const auto G2 = CoxeterSystem::from_coxeter_matrix({{1, 6}, {6, 1}});
  CHECK(G2.size() == 12);
  CHECK(G2.length(G2.longest_element()) == 6);
  CHECK_THROWS_AS(CoxeterSystem::from_coxeter_matrix({{1, 5}, {5, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem::from_coxeter_matrix({{1, 3}, {4, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSystem::from_coxeter_matrix({{2, 3}, {3, 2}}), std::invalid_argument);
}

TEST_CASE("multiplication") {
  const auto W = CoxeterSystem::build('A', 2);
  const ElementIndex s = W.from_word({0}), t = W.from_word({1});
  CHECK(W.multiply(s, s) == W.identity());
  CHECK(W.length(W.multiply(s, t)) == 2);
  const ElementIndex w0 = W.longest_element();
  CHECK(W.multiply(w0, w0) == W.identity());

  const Element es(W, s), et(W, t);
  CHECK((es * es) == Element(W, W.identity()));
  const auto W2 = CoxeterSystem::build('A', 2);
  CHECK_THROWS_AS(es * Element(W2, 1), std::invalid_argument);
}

TEST_CASE("bruhat order matches the brute-force subword oracle") {
  const auto W = CoxeterSystem::build('A', 2);
  const ElementIndex s = W.from_word({0});
  const ElementIndex st = W.from_word({0, 1}), ts = W.from_word({1, 0});
  const ElementIndex sts = W.from_word({0, 1, 0});
  CHECK(W.bruhat_leq(s, sts));
  CHECK_FALSE(W.bruhat_leq(st, ts));
  CHECK_FALSE(W.bruhat_leq(ts, st));
  for (ElementIndex w = 0; w < W.size(); ++w) CHECK(W.bruhat_leq(W.identity(), w));

  const auto W3 = CoxeterSystem::build('A', 3);
  for (ElementIndex x = 0; x < W3.size(); ++x)
    for (ElementIndex y = 0; y < W3.size(); ++y)
      CHECK(W3.bruhat_leq(x, y) == subword_leq(W3, x, y));
}

TEST_CASE("bit-matrix and greedy subword evaluation agree") {
  const auto fast = CoxeterSystem::build('A', 3);
  const auto lazy = CoxeterSystem::build('A', 3, kDefaultOrderCap, /*bruhat_cap=*/0);
  for (ElementIndex x = 0; x < fast.size(); ++x)
    for (ElementIndex y = 0; y < fast.size(); ++y)
      CHECK(fast.bruhat_leq(x, y) == lazy.bruhat_leq(x, y));
}

TEST_CASE("support is the set of letters of any reduced word") {
  const auto W = CoxeterSystem::build('A', 2);
  const ElementIndex sts = W.from_word({0, 1, 0});
  CHECK(W.support(sts) == 0b11u);
  CHECK(W.support_size(sts) == 2);
  CHECK(W.support_size(W.identity()) == 0);

  const auto W3 = CoxeterSystem::build('A', 3);
  CHECK(W3.support_size(W3.longest_element()) == 3);

  // Braid invariance: every reduced word of every element uses the same letters.
  for (ElementIndex w = 0; w < W3.size(); ++w) {
    Word prefix;
    std::vector<Word> words;
    all_reduced_words(W3, w, prefix, words);
    CHECK(!words.empty());
    for (const Word& word : words) {
      GeneratorSet sup = 0;
      CHECK(word.size() == static_cast<std::size_t>(W3.length(w)));
      for (Generator a : word) sup |= 1u << a;
      CHECK(sup == W3.support(w));
    }
  }
}

TEST_CASE("descents") {
  const auto W = CoxeterSystem::build('A', 2);
  CHECK(W.right_descents(W.from_word({0, 1})) == 0b10u);
  CHECK(W.left_descents(W.from_word({0, 1})) == 0b01u);
  CHECK(W.right_descents(W.identity()) == 0u);
  CHECK(W.right_descents(W.longest_element()) == 0b11u);
  CHECK(W.left_descents(W.longest_element()) == 0b11u);
}

TEST_CASE("parabolic subgroups and coset representatives") {
  const auto W = CoxeterSystem::build('A', 2);
  CHECK(W.parabolic_longest(0) == W.identity());
  CHECK(W.parabolic_longest(0b01) == W.from_word({0}));
  CHECK(W.parabolic_longest(0b11) == W.longest_element());

  const auto reps = W.min_coset_reps(0b01);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0] == W.identity());
  CHECK(reps[1] == W.from_word({1}));
  CHECK(reps[2] == W.from_word({1, 0}));
  CHECK(W.min_coset_reps(0).size() == W.size());
  CHECK(W.min_coset_reps(0b11) == std::vector<ElementIndex>{W.identity()});

  for (char type : {'A', 'B'}) {
    const auto V = CoxeterSystem::build(type, 3);
    for (GeneratorSet S = 0; S < (1u << V.rank()); ++S) {
      CHECK(V.min_coset_reps(S).size() * V.parabolic_order(S) == V.size());
      // l(w0^S) counts the positive roots supported on S.
      std::size_t roots_in_span = 0;
      for (const auto& root : V.positive_roots()) {
        bool in_span = true;
        for (int c = 0; c < V.rank(); ++c)
          if (root[static_cast<std::size_t>(c)] != 0 && !((S >> c) & 1u)) in_span = false;
        if (in_span) ++roots_in_span;
      }
      CHECK(roots_in_span == static_cast<std::size_t>(V.length(V.parabolic_longest(S))));
    }
  }
}

TEST_CASE("length and order dualities") {
  for (char type : {'A', 'B'}) {
    const auto W = CoxeterSystem::build(type, 3);
    const ElementIndex w0 = W.longest_element();
    for (ElementIndex x = 0; x < W.size(); ++x) {
      CHECK(W.length(W.multiply(x, w0)) == W.length(w0) - W.length(x));
      for (Generator s = 0; s < W.rank(); ++s) {
        const int diff = W.length(W.right_mult(x, s)) - W.length(x);
        CHECK((diff == 1 || diff == -1));
      }
      for (ElementIndex y = 0; y < W.size(); ++y) {
        CHECK(W.length(W.multiply(x, y)) <= W.length(x) + W.length(y));
        const bool leq = W.bruhat_leq(x, y);
        CHECK(leq == W.bruhat_leq(W.inverse(x), W.inverse(y)));
        CHECK(leq == W.bruhat_leq(W.multiply(w0, y), W.multiply(w0, x)));
        CHECK(leq == W.bruhat_leq(W.multiply(y, w0), W.multiply(x, w0)));
      }
    }
  }
}

TEST_CASE("coverings are reflection steps of length one") {
  const auto W = CoxeterSystem::build('A', 3);
  const std::set<ElementIndex> refl(W.reflections().begin(), W.reflections().end());
  for (ElementIndex x = 0; x < W.size(); ++x)
    for (ElementIndex y = 0; y < W.size(); ++y) {
      bool step = false;
      if (W.length(y) == W.length(x) + 1)
        for (ElementIndex t : refl)
          step = step || W.multiply(t, x) == y;
      CHECK(W.bruhat_covers(x, y) == step);
    }
}

TEST_CASE("shortlex words are minimal and canonical") {
  const auto W = CoxeterSystem::build('B', 3);
  for (ElementIndex w = 0; w < W.size(); ++w) {
    const Word word = W.word_vector(w);
    CHECK(word.size() == static_cast<std::size_t>(W.length(w)));
    CHECK(W.from_word(word) == w);
    if (!word.empty()) {
      // First letter is the smallest left descent.
      for (Generator s = 0; s < word[0]; ++s) CHECK_FALSE(W.is_left_descent(w, s));
    }
  }
  // Index order is length-then-ShortLex.
  for (ElementIndex w = 1; w < W.size(); ++w) {
    if (W.length(w) == W.length(w - 1)) CHECK(W.word_vector(w - 1) < W.word_vector(w));
    CHECK(W.length(w - 1) <= W.length(w));
  }
}

TEST_CASE("length counts the inverted positive roots") {
  for (auto [type, rank] : {std::pair{'A', 3}, {'B', 3}}) {
    const auto W = CoxeterSystem::build(type, rank);
    for (ElementIndex w = 0; w < W.size(); ++w) {
      int inverted = 0;
      const auto act = W.action(w);
      for (const auto& root : W.positive_roots()) {
        bool nonpositive = true;
        for (int i = 0; i < W.rank(); ++i) {
          long coord = 0;
          for (int j = 0; j < W.rank(); ++j)
            coord += static_cast<long>(act[static_cast<std::size_t>(i) * W.rank() + j]) *
                     root[static_cast<std::size_t>(j)];
          nonpositive = nonpositive && coord <= 0;
        }
        if (nonpositive) ++inverted;
      }
      CHECK(inverted == W.length(w));
    }
  }
}

TEST_CASE("word rendering") {
  const auto W = CoxeterSystem::build('A', 2);
  CHECK(word_to_string(W.word_vector(W.identity())) == "e");
  CHECK(word_to_string(W.word_vector(W.longest_element())) == "121");
  CHECK(word_to_string({9, 10, 0}) == "10.11.1");
  CHECK(generator_set({1, 3}, 3) == 0b101u);
  CHECK_THROWS_AS(generator_set({4}, 3), std::invalid_argument);
  CHECK(generator_labels(0b101u) == std::vector<int>{1, 3});
}
