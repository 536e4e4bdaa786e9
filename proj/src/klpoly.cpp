#include "klcalc/klpoly.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace klpoly {

namespace {

const IntPolynomial kZeroPoly;

void check_entry(const CoxeterSystem& W, ElementIndex y, ElementIndex w,
                 const IntPolynomial& p) {
  if (y == w) {
    if (!p.is_one()) throw coxeter::consistency_error("P_{w,w} != 1");
    return;
  }
  if (p.is_zero() || p.coeff(0) != 1)
    throw coxeter::consistency_error("constant term of P_{y,w} is not 1");
  if (!p.nonnegative()) throw coxeter::consistency_error("negative KL coefficient");
  const int gap = W.length(w) - W.length(y);
  if (2 * p.degree() > gap - 1)
    throw coxeter::consistency_error("KL degree bound violated");
}

}  // namespace

int kl_mu_from_polynomial(const IntPolynomial& p, int length_gap) {
  if (length_gap < 1 || length_gap % 2 == 0) return 0;
  const BigInt& c = p.coeff((length_gap - 1) / 2);
  if (c > std::numeric_limits<int>::max() || c < 0)
    throw coxeter::consistency_error("mu coefficient out of range");
  return static_cast<int>(c);
}

polynomials::LaurentPolynomial kl_coefficient_laurent(const IntPolynomial& p, int length_gap) {
  polynomials::LaurentPolynomial out;
  for (int k = 0; k <= p.degree(); ++k) {
    const BigInt& c = p.coeff(k);
    if (c != 0) out += polynomials::LaurentPolynomial::v_power(length_gap - 2 * k, c);
  }
  return out;
}

const IntPolynomial* KLTable::find(ElementIndex y, ElementIndex w) const {
  const auto& row = rows_[w];
  const auto it = std::lower_bound(
      row.begin(), row.end(), y,
      [](const std::pair<ElementIndex, IntPolynomial>& a, ElementIndex b) { return a.first < b; });
  if (it == row.end() || it->first != y) return nullptr;
  return &it->second;
}

const IntPolynomial& KLTable::polynomial(ElementIndex y, ElementIndex w) const {
  if (!built_) throw std::logic_error("KLTable not built");
  const IntPolynomial* p = find(y, w);
  return p ? *p : kZeroPoly;
}

int KLTable::mu(ElementIndex y, ElementIndex w) const {
  if (!built_) throw std::logic_error("KLTable not built");
  const auto& row = mu_rows_[w];
  const auto it = std::lower_bound(
      row.begin(), row.end(), y,
      [](const std::pair<ElementIndex, int>& a, ElementIndex b) { return a.first < b; });
  return (it == row.end() || it->first != y) ? 0 : it->second;
}

int KLTable::mu_sym(ElementIndex x, ElementIndex y) const {
  const int lx = sys_->length(x), ly = sys_->length(y);
  if (lx < ly) return mu(x, y);
  if (ly < lx) return mu(y, x);
  return 0;
}

std::span<const std::pair<ElementIndex, int>> KLTable::mu_row(ElementIndex w) const {
  return {mu_rows_[w].data(), mu_rows_[w].size()};
}

/*
  Row recursion: take the first letter s of the ShortLex word of w, so that
  v = sw < w. For y <= w,

    P_{y,w} = P_{sy,v} + q P_{y,v}   (sy < y)
            = q P_{sy,v} + P_{y,v}   (sy > y)
    minus  sum over z < v with mu(z,v) != 0, sz < z, y <= z of
           mu(z,v) q^{(l(w)-l(z))/2} P_{y,z}.
*/
void KLTable::build_row(ElementIndex w) {
  auto& row = rows_[w];
  if (w == 0) {
    row.emplace_back(0, IntPolynomial::one());
    return;
  }
  const CoxeterSystem& W = *sys_;
  const coxeter::Generator s = W.word(w)[0];
  const ElementIndex v = W.left_mult(s, w);
  const int lw = W.length(w);

  std::vector<std::pair<ElementIndex, int>> corrections;
  for (const auto& [z, m] : mu_rows_[v])
    if (W.is_left_descent(z, s)) corrections.emplace_back(z, m);

  for (ElementIndex y = 0; y <= w; ++y) {
    if (!W.bruhat_leq(y, w)) continue;
    if (y == w) {
      row.emplace_back(w, IntPolynomial::one());
      continue;
    }
    const ElementIndex sy = W.left_mult(s, y);
    IntPolynomial p;
    if (W.length(sy) < W.length(y)) {
      if (const IntPolynomial* a = find(sy, v)) p += *a;
      if (const IntPolynomial* b = find(y, v)) p.add_scaled(*b, 1, 1);
    } else {
      if (const IntPolynomial* a = find(sy, v)) p.add_scaled(*a, 1, 1);
      if (const IntPolynomial* b = find(y, v)) p += *b;
    }
    for (const auto& [z, m] : corrections) {
      if (!W.bruhat_leq(y, z)) continue;
      const IntPolynomial* pz = find(y, z);
      if (pz) p.add_scaled(*pz, -m, (lw - W.length(z)) / 2);
    }
    check_entry(W, y, w, p);
    row.emplace_back(y, std::move(p));
  }
}

void KLTable::finalize_row(ElementIndex w) {
  const CoxeterSystem& W = *sys_;
  auto& mu_row = mu_rows_[w];
  for (const auto& [y, p] : rows_[w]) {
    if (y == w) continue;
    const int m = kl_mu_from_polynomial(p, W.length(w) - W.length(y));
    if (m != 0) mu_row.emplace_back(y, m);
  }
  delta_[w] = rows_[w].front().second.degree();  // y = e is always present
}

void KLTable::build(int threads) {
  if (built_) return;
  const CoxeterSystem& W = *sys_;
  const std::size_t n = W.size();
  rows_.assign(n, {});
  mu_rows_.assign(n, {});
  delta_.assign(n, 0);

  const int lmax = W.length(W.longest_element());
  for (int l = 0; l <= lmax; ++l) {
    const ElementIndex begin = W.stratum_begin(l);
    const ElementIndex end = l == lmax ? static_cast<ElementIndex>(n) : W.stratum_begin(l + 1);
    const std::size_t count = end - begin;
    if (threads <= 1 || count < 16) {
      for (ElementIndex w = begin; w < end; ++w) build_row(w);
    } else {
      const std::size_t nthreads = std::min<std::size_t>(threads, count);
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (std::size_t t = 0; t < nthreads; ++t) {
        const ElementIndex lo = begin + static_cast<ElementIndex>(count * t / nthreads);
        const ElementIndex hi = begin + static_cast<ElementIndex>(count * (t + 1) / nthreads);
        pool.emplace_back([this, lo, hi] {
          for (ElementIndex w = lo; w < hi; ++w) build_row(w);
        });
      }
      for (auto& th : pool) th.join();
    }
    for (ElementIndex w = begin; w < end; ++w) finalize_row(w);
  }
  built_ = true;
}

namespace {

void put_u16(std::ostream& out, std::uint16_t x) {
  char b[2] = {static_cast<char>(x & 0xff), static_cast<char>(x >> 8)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t x) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t x) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint16_t get_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t x = 0;
  for (int i = 3; i >= 0; --i) x = (x << 8) | b[i];
  return x;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | b[i];
  return x;
}

void put_word(std::ostream& out, std::span<const std::uint8_t> w) {
  put_u16(out, static_cast<std::uint16_t>(w.size()));
  out.write(reinterpret_cast<const char*>(w.data()), static_cast<std::streamsize>(w.size()));
}

coxeter::Word get_word(std::istream& in) {
  const std::uint16_t n = get_u16(in);
  coxeter::Word w(n);
  for (std::uint16_t i = 0; i < n; ++i) {
    char c;
    in.get(c);
    w[i] = static_cast<std::uint8_t>(c);
  }
  return w;
}

void put_bigint(std::ostream& out, const BigInt& x) {
  out.put(x < 0 ? '\001' : '\000');
  std::vector<std::uint8_t> bytes;
  BigInt mag = x < 0 ? BigInt(-x) : x;
  export_bits(mag, std::back_inserter(bytes), 8, false);  // least significant first
  put_u32(out, static_cast<std::uint32_t>(bytes.size()));
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

BigInt get_bigint(std::istream& in) {
  char sign;
  in.get(sign);
  const std::uint32_t n = get_u32(in);
  std::vector<std::uint8_t> bytes(n);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(n));
  BigInt mag = 0;
  if (!bytes.empty()) import_bits(mag, bytes.begin(), bytes.end(), 8, false);
  return sign ? BigInt(-mag) : mag;
}

constexpr char kMagic[4] = {'K', 'L', 'C', '1'};

}  // namespace

void KLTable::serialize(std::ostream& out) const {
  if (!built_) throw std::logic_error("KLTable not built");
  const CoxeterSystem& W = *sys_;
  out.write(kMagic, 4);
  out.put(W.type_label());
  put_u32(out, static_cast<std::uint32_t>(W.rank()));
  put_u32(out, kCacheFormatVersion);
  std::uint64_t count = 0;
  for (const auto& row : rows_) count += row.size();
  put_u64(out, count);
  for (ElementIndex w = 0; w < W.size(); ++w) {
    for (const auto& [y, p] : rows_[w]) {
      put_word(out, W.word(w));
      put_word(out, W.word(y));
      put_u32(out, static_cast<std::uint32_t>(p.degree() + 1));
      for (int k = 0; k <= p.degree(); ++k) put_bigint(out, p.coeff(k));
    }
  }
}

std::string KLTable::serialize_to_string() const {
  std::ostringstream os(std::ios::binary);
  serialize(os);
  return os.str();
}

KLTable KLTable::deserialize(std::istream& in, const CoxeterSystem& sys) {
  char magic[4];
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kMagic))
    throw std::runtime_error("bad cache header");
  char type;
  in.get(type);
  const std::uint32_t rank = get_u32(in);
  const std::uint32_t version = get_u32(in);
  if (type != sys.type_label() || rank != static_cast<std::uint32_t>(sys.rank()))
    throw std::runtime_error("cache does not match the system");
  if (version != kCacheFormatVersion) throw std::runtime_error("unsupported cache version");
  const std::uint64_t count = get_u64(in);

  KLTable table(sys);
  table.rows_.assign(sys.size(), {});
  table.mu_rows_.assign(sys.size(), {});
  table.delta_.assign(sys.size(), 0);
  for (std::uint64_t rec = 0; rec < count; ++rec) {
    const ElementIndex w = sys.from_word(get_word(in));
    const ElementIndex y = sys.from_word(get_word(in));
    const std::uint32_t ncoeff = get_u32(in);
    std::vector<BigInt> coeffs(ncoeff);
    for (std::uint32_t k = 0; k < ncoeff; ++k) coeffs[k] = get_bigint(in);
    if (!in) throw std::runtime_error("truncated cache record");
    IntPolynomial p(std::move(coeffs));
    check_entry(sys, y, w, p);
    auto& row = table.rows_[w];
    if (!row.empty() && row.back().first >= y)
      throw std::runtime_error("cache records out of canonical order");
    row.emplace_back(y, std::move(p));
  }
  for (ElementIndex w = 0; w < sys.size(); ++w) {
    if (table.rows_[w].empty() || table.rows_[w].front().first != 0 ||
        table.rows_[w].back().first != w)
      throw std::runtime_error("incomplete cache row");
  }
  table.built_ = true;
  for (ElementIndex w = 0; w < sys.size(); ++w) table.finalize_row(w);
  return table;
}

BarOracle::BarOracle(const CoxeterSystem& sys, std::size_t cap) : sys_(&sys) {
  if (sys.size() > cap)
    throw std::invalid_argument("group order " + std::to_string(sys.size()) +
                                " exceeds the bar-involution oracle cap " + std::to_string(cap));
  bar_cache_.assign(sys.size(), hecke::HeckeElement(sys));
  bar_ready_.assign(sys.size(), 0);
}

// bar(H_w) for w = s_1 ... s_k is H_{s_1}^{-1} ... H_{s_k}^{-1}; computed by
// peeling the last ShortLex letter so prefixes are shared through the cache.
const hecke::HeckeElement& BarOracle::bar_of_standard(ElementIndex w) const {
  if (bar_ready_[w]) return bar_cache_[w];
  if (w == 0) {
    bar_cache_[0] = hecke::HeckeElement::standard_basis(*sys_, 0);
  } else {
    const auto word = sys_->word(w);
    const coxeter::Generator last = word[word.size() - 1];
    const ElementIndex prefix = sys_->right_mult(w, last);
    bar_cache_[w] = hecke::multiply_generator_inverse_right(bar_of_standard(prefix), last);
  }
  bar_ready_[w] = 1;
  return bar_cache_[w];
}

IntPolynomial BarOracle::kl_polynomial(ElementIndex y, ElementIndex w) const {
  const CoxeterSystem& W = *sys_;
  if (!W.bruhat_leq(y, w)) return IntPolynomial::zero();
  if (y == w) return IntPolynomial::one();

  const std::vector<ElementIndex> interval = W.lower_interval(w);
  std::vector<polynomials::LaurentPolynomial> h(interval.size());
  // interval is sorted ascending and ends at w.
  h.back() = polynomials::LaurentPolynomial::one();
  for (std::size_t i = interval.size() - 1; i-- > 0;) {
    const ElementIndex x = interval[i];
    polynomials::LaurentPolynomial f;
    for (std::size_t j = i + 1; j < interval.size(); ++j) {
      if (h[j].is_zero()) continue;
      const auto& rz = bar_of_standard(interval[j]).coeff(x);
      if (rz.is_zero()) continue;
      f += rz * h[j].bar();
    }
    // Solve g - bar(g) = f with g in v Z[v]: f must be bar-antisymmetric
    // with no constant term, and g is its positive-exponent part.
    if (!(f + f.bar()).is_zero() || f.coeff(0) != 0)
      throw coxeter::consistency_error("bar-invariance solve failed");
    polynomials::LaurentPolynomial g;
    if (!f.is_zero())
      for (int e = 1; e <= f.max_exponent(); ++e)
        if (f.coeff(e) != 0) g += polynomials::LaurentPolynomial::v_power(e, f.coeff(e));
    h[i] = std::move(g);
  }

  // Recover P_{y,w} from h_y = v^{l(w)-l(y)} P_{y,w}(v^{-2}).
  const auto it = std::lower_bound(interval.begin(), interval.end(), y);
  const auto& hy = h[static_cast<std::size_t>(it - interval.begin())];
  const int gap = W.length(w) - W.length(y);
  std::vector<BigInt> coeffs;
  if (!hy.is_zero()) {
    for (int e = hy.min_exponent(); e <= hy.max_exponent(); ++e) {
      const BigInt& c = hy.coeff(e);
      if (c == 0) continue;
      const int num = gap - e;
      if (num < 0 || num % 2 != 0)
        throw coxeter::consistency_error("bar solve produced an exponent outside the KL window");
      const int k = num / 2;
      if (static_cast<std::size_t>(k) >= coeffs.size()) coeffs.resize(k + 1);
      coeffs[static_cast<std::size_t>(k)] = c;
    }
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace klpoly
