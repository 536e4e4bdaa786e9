#include "klcalc/coxeter.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace coxeter {

namespace {

using Mat = std::vector<std::int32_t>;  // row-major rank x rank

Mat identity_matrix(int rank) {
  Mat m(static_cast<std::size_t>(rank) * rank, 0);
  for (int i = 0; i < rank; ++i) m[static_cast<std::size_t>(i) * rank + i] = 1;
  return m;
}

// (S_s M)_{ab}: only row s changes. Cartan row s gives the reflection action.
Mat left_mul_gen(const std::vector<int>& cartan, int rank, Generator s, const Mat& m) {
  Mat r = m;
  for (int b = 0; b < rank; ++b) {
    std::int64_t acc = 0;
    for (int c = 0; c < rank; ++c)
      acc += static_cast<std::int64_t>(cartan[static_cast<std::size_t>(s) * rank + c]) *
             m[static_cast<std::size_t>(c) * rank + b];
    r[static_cast<std::size_t>(s) * rank + b] =
        static_cast<std::int32_t>(m[static_cast<std::size_t>(s) * rank + b] - acc);
  }
  return r;
}

// (M S_s)_{ab} = M_{ab} - M_{as} C_{sb}: only a rank-1 update.
Mat right_mul_gen(const std::vector<int>& cartan, int rank, const Mat& m, Generator s) {
  Mat r = m;
  for (int a = 0; a < rank; ++a) {
    const std::int32_t mas = m[static_cast<std::size_t>(a) * rank + s];
    if (mas == 0) continue;
    for (int b = 0; b < rank; ++b)
      r[static_cast<std::size_t>(a) * rank + b] -=
          mas * cartan[static_cast<std::size_t>(s) * rank + b];
  }
  return r;
}

// Column s of m, viewed as root coordinates, is a negative root iff all
// entries are <= 0; this tests whether s is a right descent.
bool column_nonpositive(const Mat& m, int rank, Generator s) {
  for (int a = 0; a < rank; ++a)
    if (m[static_cast<std::size_t>(a) * rank + s] > 0) return false;
  return true;
}

struct MatHash {
  std::size_t operator()(const Mat& m) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int32_t v : m) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::size_t factorial(int n) {
  std::size_t r = 1;
  for (int k = 2; k <= n; ++k) r *= static_cast<std::size_t>(k);
  return r;
}

}  // namespace

std::string CoxeterSystem::name() const {
  return std::string(1, type_) + std::to_string(rank_);
}

CoxeterSystem CoxeterSystem::build(char type, int rank, std::size_t order_cap,
                                   std::size_t bruhat_cap) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  std::size_t expected = 0;
  switch (type) {
    case 'A':
      expected = factorial(rank + 1);
      break;
    case 'B':
      if (rank < 2) throw std::invalid_argument("type B requires rank >= 2");
      expected = factorial(rank) << rank;
      break;
    case 'D':
      if (rank < 3) throw std::invalid_argument("type D requires rank >= 3");
      expected = factorial(rank) << (rank - 1);
      break;
    default:
      throw std::invalid_argument(std::string("unknown type '") + type +
                                  "' (expected A, B or D)");
  }
  if (expected > order_cap)
    throw std::invalid_argument("group order " + std::to_string(expected) +
                                " exceeds the enumeration cap " + std::to_string(order_cap));

  CoxeterSystem sys;
  sys.type_ = type;
  sys.rank_ = rank;
  sys.cartan_.assign(static_cast<std::size_t>(rank) * rank, 0);
  auto C = [&](int i, int j) -> int& { return sys.cartan_[sys.idx2(i, j)]; };
  for (int i = 0; i < rank; ++i) C(i, i) = 2;
  for (int i = 0; i + 1 < rank; ++i) C(i, i + 1) = C(i + 1, i) = -1;
  if (type == 'B') {
    // Bourbaki: the last simple root is short; the double bond points at it.
    C(rank - 1, rank - 2) = -2;
  } else if (type == 'D') {
    // Fork: node rank-1 attaches to node rank-3 instead of rank-2.
    C(rank - 2, rank - 1) = C(rank - 1, rank - 2) = 0;
    C(rank - 3, rank - 1) = C(rank - 1, rank - 3) = -1;
  }

  sys.coxeter_.assign(static_cast<std::size_t>(rank) * rank, 2);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (i == j) {
        sys.coxeter_[sys.idx2(i, j)] = 1;
        continue;
      }
      const int p = sys.cartan_[sys.idx2(i, j)] * sys.cartan_[sys.idx2(j, i)];
      sys.coxeter_[sys.idx2(i, j)] = p == 0 ? 2 : (p == 1 ? 3 : (p == 2 ? 4 : 6));
    }

  sys.enumerate(order_cap, bruhat_cap);
  if (sys.order_ != expected)
    throw consistency_error("enumeration produced " + std::to_string(sys.order_) +
                            " elements, expected " + std::to_string(expected));
  return sys;
}

CoxeterSystem CoxeterSystem::from_coxeter_matrix(const std::vector<std::vector<int>>& m,
                                                 std::size_t order_cap,
                                                 std::size_t bruhat_cap) {
  const int rank = static_cast<int>(m.size());
  if (rank < 1) throw std::invalid_argument("empty Coxeter matrix");
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(m[i].size()) != rank)
      throw std::invalid_argument("Coxeter matrix must be square");
    if (m[i][i] != 1) throw std::invalid_argument("Coxeter matrix diagonal must be 1");
    for (int j = 0; j < rank; ++j) {
      if (m[i][j] != m[j][i]) throw std::invalid_argument("Coxeter matrix must be symmetric");
      if (i != j && m[i][j] != 2 && m[i][j] != 3 && m[i][j] != 4 && m[i][j] != 6)
        throw std::invalid_argument(
            "off-diagonal Coxeter entries must lie in {2,3,4,6} (crystallographic)");
    }
  }

  CoxeterSystem sys;
  sys.type_ = 'X';
  sys.rank_ = rank;
  sys.coxeter_.assign(static_cast<std::size_t>(rank) * rank, 0);
  sys.cartan_.assign(static_cast<std::size_t>(rank) * rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      sys.coxeter_[sys.idx2(i, j)] = m[i][j];
      if (i == j) {
        sys.cartan_[sys.idx2(i, j)] = 2;
      } else if (m[i][j] > 2) {
        // Orient each bond i < j as (-1, -(m-2 mapped)): 3 -> (-1,-1),
        // 4 -> (-1,-2), 6 -> (-1,-3). Any orientation gives the same group.
        const int heavy = m[i][j] == 3 ? 1 : (m[i][j] == 4 ? 2 : 3);
        sys.cartan_[sys.idx2(i, j)] = i < j ? -1 : -heavy;
      }
    }
  sys.enumerate(order_cap, bruhat_cap);
  return sys;
}

void CoxeterSystem::enumerate(std::size_t order_cap, std::size_t bruhat_cap) {
  const int r = rank_;

  // Breadth-first closure of the generators, stratified by length.
  std::unordered_map<Mat, std::uint32_t, MatHash> seen;
  std::vector<Mat> mats;
  std::vector<std::uint16_t> lens;
  std::vector<Word> witness;  // any reduced word, from the BFS tree
  mats.push_back(identity_matrix(r));
  lens.push_back(0);
  witness.emplace_back();
  seen.emplace(mats[0], 0);

  std::vector<std::uint32_t> frontier{0};
  std::uint16_t depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<std::uint32_t> next;
    for (std::uint32_t u : frontier) {
      for (Generator s = 0; s < r; ++s) {
        Mat prod = right_mul_gen(cartan_, r, mats[u], s);
        auto [it, inserted] = seen.emplace(std::move(prod), static_cast<std::uint32_t>(mats.size()));
        if (!inserted) continue;
        if (mats.size() >= order_cap)
          throw std::invalid_argument("group exceeds the enumeration cap " +
                                      std::to_string(order_cap));
        mats.push_back(it->first);
        lens.push_back(depth);
        Word w = witness[u];
        w.push_back(s);
        witness.push_back(std::move(w));
        next.push_back(it->second);
      }
    }
    frontier = std::move(next);
  }
  order_ = mats.size();

  // ShortLex normal words: repeatedly strip the smallest left descent. The
  // left descents of u are read off the columns of the matrix of u^{-1}.
  std::vector<Word> shortlex(order_);
  for (std::size_t u = 0; u < order_; ++u) {
    // Folding S_{a_1}, ..., S_{a_k} by left multiplication yields
    // S_{a_k} ... S_{a_1}, the matrix of u^{-1}.
    Mat vinv = identity_matrix(r);
    for (Generator s : witness[u]) vinv = left_mul_gen(cartan_, r, s, vinv);
    Word& out = shortlex[u];
    out.reserve(lens[u]);
    for (int step = 0; step < lens[u]; ++step) {
      Generator s = 0;
      while (s < r && !column_nonpositive(vinv, r, s)) ++s;
      if (s == r) throw consistency_error("no left descent found below length");
      out.push_back(s);
      vinv = right_mul_gen(cartan_, r, vinv, s);  // (s u)^{-1} = u^{-1} s
    }
  }

  // Final indices: length-then-ShortLex.
  std::vector<std::uint32_t> perm(order_);
  for (std::size_t i = 0; i < order_; ++i) perm[i] = static_cast<std::uint32_t>(i);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (lens[a] != lens[b]) return lens[a] < lens[b];
    return shortlex[a] < shortlex[b];
  });

  actions_.resize(order_ * static_cast<std::size_t>(r) * r);
  lengths_.resize(order_);
  word_offsets_.assign(order_ + 1, 0);
  inverse_.resize(order_);
  rmult_.resize(order_ * static_cast<std::size_t>(r));
  lmult_.resize(order_ * static_cast<std::size_t>(r));
  rdesc_.resize(order_);
  ldesc_.resize(order_);
  support_.resize(order_);

  std::unordered_map<Mat, ElementIndex, MatHash> index_of;
  index_of.reserve(order_ * 2);
  for (ElementIndex i = 0; i < order_; ++i) {
    const std::uint32_t src = perm[i];
    lengths_[i] = lens[src];
    std::copy(mats[src].begin(), mats[src].end(),
              actions_.begin() + static_cast<std::size_t>(i) * r * r);
    word_offsets_[i + 1] = word_offsets_[i] + lens[src];
    index_of.emplace(mats[src], i);
  }
  word_pool_.resize(word_offsets_[order_]);
  for (ElementIndex i = 0; i < order_; ++i) {
    const Word& w = shortlex[perm[i]];
    std::copy(w.begin(), w.end(), word_pool_.begin() + word_offsets_[i]);
  }

  strata_.assign(static_cast<std::size_t>(lengths_[order_ - 1]) + 2, 0);
  for (ElementIndex i = 0; i < order_; ++i) strata_[lengths_[i] + 1] = i + 1;
  for (std::size_t l = 1; l < strata_.size(); ++l)
    strata_[l] = std::max(strata_[l], strata_[l - 1]);
  w0_ = static_cast<ElementIndex>(order_ - 1);
  if (order_ > 1 && lengths_[order_ - 2] == lengths_[w0_])
    throw consistency_error("longest element is not unique");

  for (ElementIndex i = 0; i < order_; ++i) {
    const Mat m(actions_.begin() + static_cast<std::size_t>(i) * r * r,
                actions_.begin() + (static_cast<std::size_t>(i) + 1) * r * r);
    for (Generator s = 0; s < r; ++s) {
      rmult_[static_cast<std::size_t>(i) * r + s] = index_of.at(right_mul_gen(cartan_, r, m, s));
      lmult_[static_cast<std::size_t>(i) * r + s] = index_of.at(left_mul_gen(cartan_, r, s, m));
    }
  }

  for (ElementIndex i = 0; i < order_; ++i) {
    ElementIndex inv = 0;
    const auto w = word(i);
    for (auto it = w.rbegin(); it != w.rend(); ++it) inv = right_mult(inv, *it);
    inverse_[i] = inv;
    GeneratorSet rd = 0, ld = 0, sup = 0;
    for (Generator s = 0; s < r; ++s) {
      if (lengths_[right_mult(i, s)] < lengths_[i]) rd |= 1u << s;
      if (lengths_[left_mult(s, i)] < lengths_[i]) ld |= 1u << s;
    }
    for (std::uint8_t c : w) sup |= 1u << c;
    rdesc_[i] = rd;
    ldesc_[i] = ld;
    support_[i] = sup;
  }

  // Positive roots: the orbit of the simple roots, kept when nonnegative.
  {
    std::set<std::vector<int>> roots;
    std::queue<std::vector<int>> todo;
    for (int i = 0; i < r; ++i) {
      std::vector<int> e(r, 0);
      e[i] = 1;
      roots.insert(e);
      todo.push(e);
    }
    while (!todo.empty()) {
      std::vector<int> v = std::move(todo.front());
      todo.pop();
      for (Generator s = 0; s < r; ++s) {
        std::vector<int> w = v;
        long pairing = 0;
        for (int c = 0; c < r; ++c) pairing += static_cast<long>(cartan_[idx2(s, c)]) * v[c];
        w[s] = static_cast<int>(w[s] - pairing);
        if (roots.insert(w).second) todo.push(w);
      }
    }
    for (const auto& root : roots) {
      bool nonneg = true;
      for (int c : root) nonneg = nonneg && c >= 0;
      if (nonneg) positive_roots_.push_back(root);
    }
    if (positive_roots_.size() != static_cast<std::size_t>(lengths_[w0_]))
      throw consistency_error("positive root count disagrees with l(w0)");
  }

  // Reflections: closure of the simple reflections under conjugation.
  {
    std::vector<char> isrefl(order_, 0);
    std::queue<ElementIndex> todo;
    for (Generator s = 0; s < r; ++s) {
      const ElementIndex t = right_mult(0, s);
      isrefl[t] = 1;
      todo.push(t);
    }
    while (!todo.empty()) {
      const ElementIndex t = todo.front();
      todo.pop();
      for (Generator s = 0; s < r; ++s) {
        const ElementIndex u = right_mult(left_mult(s, t), s);
        if (!isrefl[u]) {
          isrefl[u] = 1;
          todo.push(u);
        }
      }
    }
    for (ElementIndex i = 0; i < order_; ++i)
      if (isrefl[i]) reflections_.push_back(i);
    if (reflections_.size() != positive_roots_.size())
      throw consistency_error("reflection count disagrees with |Phi+|");
  }

  if (order_ <= bruhat_cap) build_bruhat_matrix();
}

/*
  Row w of the bit-matrix is the lower Bruhat interval of w. Rows are filled
  in length order; each row memoizes the greedy subword scan one letter at a
  time: with s the first letter of the ShortLex word of w and v = sw,
  x <= w iff (sx <= v when sx < x, else x <= v).
*/
void CoxeterSystem::build_bruhat_matrix() {
  bruhat_stride_ = (order_ + 63) / 64;
  bruhat_.assign(order_ * bruhat_stride_, 0);
  auto row = [&](ElementIndex w) { return bruhat_.data() + static_cast<std::size_t>(w) * bruhat_stride_; };
  auto set_bit = [&](std::uint64_t* r, ElementIndex x) { r[x >> 6] |= 1ull << (x & 63); };
  auto get_bit = [&](const std::uint64_t* r, ElementIndex x) {
    return (r[x >> 6] >> (x & 63)) & 1ull;
  };

  set_bit(row(0), 0);
  for (ElementIndex w = 1; w < order_; ++w) {
    const Generator s = word_pool_[word_offsets_[w]];
    const ElementIndex v = left_mult(s, w);
    const std::uint64_t* rv = row(v);
    std::uint64_t* rw = row(w);
    for (ElementIndex x = 0; x < order_; ++x) {
      const ElementIndex sx = left_mult(s, x);
      const ElementIndex probe = lengths_[sx] < lengths_[x] ? sx : x;
      if (get_bit(rv, probe)) set_bit(rw, x);
    }
  }
  bruhat_built_ = true;
}

std::span<const std::uint8_t> CoxeterSystem::word(ElementIndex w) const {
  return {word_pool_.data() + word_offsets_[w], static_cast<std::size_t>(lengths_[w])};
}

Word CoxeterSystem::word_vector(ElementIndex w) const {
  const auto sp = word(w);
  return Word(sp.begin(), sp.end());
}

ElementIndex CoxeterSystem::multiply(ElementIndex x, ElementIndex y) const {
  ElementIndex r = x;
  for (std::uint8_t s : word(y)) r = right_mult(r, s);
  return r;
}

ElementIndex CoxeterSystem::from_word(const Word& letters) const {
  ElementIndex r = 0;
  for (Generator s : letters) {
    if (s < 0 || s >= rank_)
      throw std::invalid_argument("generator index out of range: " + std::to_string(s + 1));
    r = right_mult(r, s);
  }
  return r;
}

std::span<const std::int32_t> CoxeterSystem::action(ElementIndex w) const {
  const std::size_t n = static_cast<std::size_t>(rank_) * rank_;
  return {actions_.data() + static_cast<std::size_t>(w) * n, n};
}

int CoxeterSystem::support_size(ElementIndex w) const {
  GeneratorSet s = support_[w];
  int n = 0;
  while (s) {
    s &= s - 1;
    ++n;
  }
  return n;
}

bool CoxeterSystem::bruhat_leq(ElementIndex x, ElementIndex y) const {
  if (lengths_[x] > lengths_[y]) return false;
  if (x == y) return true;
  if (bruhat_built_) {
    const std::uint64_t* r = bruhat_.data() + static_cast<std::size_t>(y) * bruhat_stride_;
    return (r[x >> 6] >> (x & 63)) & 1ull;
  }
  // Greedy subword scan over the ShortLex word of y.
  ElementIndex u = x;
  for (std::uint8_t s : word(y)) {
    if (u == 0) return true;
    const ElementIndex su = left_mult(s, u);
    if (lengths_[su] < lengths_[u]) u = su;
  }
  return u == 0;
}

bool CoxeterSystem::bruhat_covers(ElementIndex x, ElementIndex y) const {
  return lengths_[y] == lengths_[x] + 1 && bruhat_leq(x, y);
}

std::vector<ElementIndex> CoxeterSystem::lower_interval(ElementIndex w) const {
  std::vector<ElementIndex> out;
  for (ElementIndex x = 0; x <= w; ++x)
    if (bruhat_leq(x, w)) out.push_back(x);
  return out;
}

ElementIndex CoxeterSystem::parabolic_longest(GeneratorSet S) const {
  ElementIndex u = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (Generator s = 0; s < rank_; ++s) {
      if (!((S >> s) & 1u)) continue;
      const ElementIndex us = right_mult(u, s);
      if (lengths_[us] > lengths_[u]) {
        u = us;
        progress = true;
      }
    }
  }
  return u;
}

std::size_t CoxeterSystem::parabolic_order(GeneratorSet S) const {
  std::size_t n = 0;
  for (ElementIndex i = 0; i < order_; ++i)
    if ((support_[i] & ~S) == 0) ++n;
  return n;
}

std::vector<ElementIndex> CoxeterSystem::min_coset_reps(GeneratorSet S) const {
  std::vector<ElementIndex> reps;
  for (ElementIndex i = 0; i < order_; ++i)
    if ((ldesc_[i] & S) == 0) reps.push_back(i);
  return reps;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  bool wide = false;
  for (Generator s : w) wide = wide || s + 1 > 9;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i > 0) out += '.';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

std::vector<int> generator_labels(GeneratorSet S) {
  std::vector<int> out;
  for (int s = 0; s < 32; ++s)
    if ((S >> s) & 1u) out.push_back(s + 1);
  return out;
}

GeneratorSet generator_set(const std::vector<int>& labels_1based, int rank) {
  GeneratorSet S = 0;
  for (int label : labels_1based) {
    if (label < 1 || label > rank)
      throw std::invalid_argument("generator label out of range: " + std::to_string(label));
    S |= 1u << (label - 1);
  }
  return S;
}

}  // namespace coxeter
