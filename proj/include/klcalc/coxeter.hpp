#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxeter {

using Generator = int;                    // 0-based internally
using ElementIndex = std::uint32_t;
using Word = std::vector<Generator>;      // letters are generator indices
using GeneratorSet = std::uint32_t;       // bitmask over generators

constexpr std::size_t kDefaultOrderCap = 50000;
constexpr std::size_t kDefaultBruhatCap = 10000;

struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

/*
  A fully enumerated finite Weyl group. Elements are identified by dense
  indices in length-then-ShortLex order, so index 0 is the identity and the
  last index is the longest element. The per-element data (action matrix on
  the root lattice, length, ShortLex normal word, multiplication-by-generator
  tables, Bruhat order) is precomputed at construction; the object is
  immutable afterwards and safe to share across threads.

  Generator labels follow the Bourbaki numbering for types A, B, D; the
  public API uses 1-based labels in words while all internal indices are
  0-based.
*/
class CoxeterSystem {
public:
  // Built-in crystallographic types. Rank limits: A >= 1, B >= 2, D >= 3.
  static CoxeterSystem build(char type, int rank, std::size_t order_cap = kDefaultOrderCap,
                             std::size_t bruhat_cap = kDefaultBruhatCap);
  // Arbitrary Coxeter matrix with off-diagonal entries in {2,3,4,6}.
  static CoxeterSystem from_coxeter_matrix(const std::vector<std::vector<int>>& m,
                                           std::size_t order_cap = kDefaultOrderCap,
                                           std::size_t bruhat_cap = kDefaultBruhatCap);

  char type_label() const { return type_; }
  int rank() const { return rank_; }
  std::size_t size() const { return order_; }
  std::string name() const;  // e.g. "A3"

  int coxeter_entry(Generator i, Generator j) const { return coxeter_[idx2(i, j)]; }
  int cartan_entry(Generator i, Generator j) const { return cartan_[idx2(i, j)]; }
  // Positive roots in simple-root coordinates; their count equals l(w0).
  const std::vector<std::vector<int>>& positive_roots() const { return positive_roots_; }

  ElementIndex identity() const { return 0; }
  ElementIndex longest_element() const { return w0_; }

  int length(ElementIndex w) const { return lengths_[w]; }
  std::span<const std::uint8_t> word(ElementIndex w) const;  // ShortLex, 0-based letters
  Word word_vector(ElementIndex w) const;
  ElementIndex inverse(ElementIndex w) const { return inverse_[w]; }

  ElementIndex right_mult(ElementIndex w, Generator s) const {
    return rmult_[static_cast<std::size_t>(w) * rank_ + static_cast<std::size_t>(s)];
  }
  ElementIndex left_mult(Generator s, ElementIndex w) const {
    return lmult_[static_cast<std::size_t>(w) * rank_ + static_cast<std::size_t>(s)];
  }
  ElementIndex multiply(ElementIndex x, ElementIndex y) const;
  ElementIndex from_word(const Word& letters) const;  // folds an arbitrary word

  // Action matrix of w on the root lattice, row-major rank x rank.
  std::span<const std::int32_t> action(ElementIndex w) const;

  GeneratorSet right_descents(ElementIndex w) const { return rdesc_[w]; }
  GeneratorSet left_descents(ElementIndex w) const { return ldesc_[w]; }
  bool is_right_descent(ElementIndex w, Generator s) const {
    return (rdesc_[w] >> s) & 1u;
  }
  bool is_left_descent(ElementIndex w, Generator s) const { return (ldesc_[w] >> s) & 1u; }

  // Simple reflections occurring in a reduced word of w (braid-invariant).
  GeneratorSet support(ElementIndex w) const { return support_[w]; }
  int support_size(ElementIndex w) const;  // the statistic written l-bar

  // Bruhat order via the subword criterion; memoized as a bit-matrix when
  // |W| <= bruhat_cap, evaluated by the greedy subword scan otherwise.
  bool bruhat_leq(ElementIndex x, ElementIndex y) const;
  bool bruhat_covers(ElementIndex x, ElementIndex y) const;  // x covered by y
  std::vector<ElementIndex> lower_interval(ElementIndex w) const;  // {x : x <= w}

  // Longest element of the standard parabolic subgroup W_S.
  ElementIndex parabolic_longest(GeneratorSet S) const;
  std::size_t parabolic_order(GeneratorSet S) const;  // |W_S|
  // Minimal-length representatives of the cosets W_S\W, in index order.
  std::vector<ElementIndex> min_coset_reps(GeneratorSet S) const;

  // All reflections (conjugates of simple reflections), in index order.
  const std::vector<ElementIndex>& reflections() const { return reflections_; }

  // First element index of each length stratum; strata_offset(l(w0)+1) == |W|.
  ElementIndex stratum_begin(int length) const { return strata_[static_cast<std::size_t>(length)]; }

  bool operator==(const CoxeterSystem& other) const { return this == &other; }

private:
  CoxeterSystem() = default;
  void enumerate(std::size_t order_cap, std::size_t bruhat_cap);
  void build_bruhat_matrix();

  char type_ = 'X';
  int rank_ = 0;
  std::vector<int> coxeter_;
  std::vector<int> cartan_;
  std::vector<std::vector<int>> positive_roots_;
  std::size_t order_ = 0;
  ElementIndex w0_ = 0;

  std::vector<std::int32_t> actions_;
  std::vector<std::uint16_t> lengths_;
  std::vector<std::uint32_t> word_offsets_;  // size order_+1
  std::vector<std::uint8_t> word_pool_;
  std::vector<ElementIndex> inverse_;
  std::vector<ElementIndex> rmult_, lmult_;
  std::vector<GeneratorSet> rdesc_, ldesc_, support_;
  std::vector<ElementIndex> strata_;
  std::vector<ElementIndex> reflections_;

  bool bruhat_built_ = false;
  std::size_t bruhat_stride_ = 0;
  std::vector<std::uint64_t> bruhat_;

  std::size_t idx2(Generator i, Generator j) const {
    return static_cast<std::size_t>(i) * rank_ + static_cast<std::size_t>(j);
  }
};

/*
  Value-type handle for a group element: a system pointer plus a dense index.
  Operations on elements of different systems throw std::invalid_argument.
*/
class Element {
public:
  Element(const CoxeterSystem& sys, ElementIndex idx) : sys_(&sys), idx_(idx) {}

  const CoxeterSystem& system() const { return *sys_; }
  ElementIndex index() const { return idx_; }
  int length() const { return sys_->length(idx_); }
  Word word() const { return sys_->word_vector(idx_); }
  Element inverse() const { return Element(*sys_, sys_->inverse(idx_)); }
  GeneratorSet left_descents() const { return sys_->left_descents(idx_); }
  GeneratorSet right_descents() const { return sys_->right_descents(idx_); }
  GeneratorSet support() const { return sys_->support(idx_); }
  int support_size() const { return sys_->support_size(idx_); }

  friend Element operator*(const Element& x, const Element& y) {
    if (x.sys_ != y.sys_) throw std::invalid_argument("elements from different systems");
    return Element(*x.sys_, x.sys_->multiply(x.idx_, y.idx_));
  }
  bool operator==(const Element& other) const {
    return sys_ == other.sys_ && idx_ == other.idx_;
  }
  bool operator!=(const Element& other) const { return !(*this == other); }

private:
  const CoxeterSystem* sys_;
  ElementIndex idx_;
};

// Render a word with 1-based generator labels ("121"; the identity is "e").
std::string word_to_string(const Word& w);
// Members of a generator bitmask as sorted 1-based labels.
std::vector<int> generator_labels(GeneratorSet S);
GeneratorSet generator_set(const std::vector<int>& labels_1based, int rank);

}  // namespace coxeter
