#pragma once
//
// Slow reference implementations used to check the library. Nothing here
// calls into hermpir except for the packing convention: an element of
// GF(p^n) is the integer sum c_i p^i of its coefficients.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Poly = std::vector<std::int64_t>;  // constant term first

inline Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly poly_mod(Poly a, const Poly& m, std::int64_t p) {
  a = trim(a);
  const std::int64_t lead_inv = [&] {
    for (std::int64_t v = 1; v < p; ++v) {
      if ((m.back() * v) % p == 1) return v;
    }
    throw std::logic_error("non-invertible leading coefficient");
  }();
  while (a.size() >= m.size()) {
    const std::int64_t c = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    a = trim(a);
  }
  return a;
}

// Schoolbook arithmetic in F_p[t]/(modulus).
class NaiveField {
 public:
  NaiveField(std::int64_t p, Poly modulus) : p_(p), m_(std::move(modulus)) {
    n_ = static_cast<int>(m_.size()) - 1;
    size_ = 1;
    for (int i = 0; i < n_; ++i) size_ *= static_cast<std::uint32_t>(p_);
  }

  std::uint32_t size() const { return size_; }
  std::int64_t p() const { return p_; }

  Poly unpack(std::uint32_t v) const {
    Poly c(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
      c[static_cast<std::size_t>(i)] = v % p_;
      v /= static_cast<std::uint32_t>(p_);
    }
    return c;
  }
  std::uint32_t pack(const Poly& c) const {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(c[i]);
    return v;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    Poly x = unpack(a), y = unpack(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % p_;
    return pack(x);
  }
  std::uint32_t neg(std::uint32_t a) const {
    Poly x = unpack(a);
    for (auto& c : x) c = (p_ - c) % p_;
    return pack(x);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const Poly x = unpack(a), y = unpack(b);
    Poly r(x.size() + y.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
    }
    Poly red = poly_mod(r, m_, p_);
    red.resize(static_cast<std::size_t>(n_), 0);
    return pack(red);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    for (std::uint32_t b = 1; b < size_; ++b) {
      if (mul(a, b) == 1) return b;
    }
    throw std::domain_error("no inverse");
  }
  // The set of nonzero squares.
  std::set<std::uint32_t> squares() const {
    std::set<std::uint32_t> s;
    for (std::uint32_t b = 1; b < size_; ++b) s.insert(mul(b, b));
    return s;
  }

 private:
  std::int64_t p_;
  Poly m_;
  int n_ = 0;
  std::uint32_t size_ = 1;
};

// Monic f of degree n over F_p is irreducible iff no monic polynomial of
// degree 1..n/2 divides it.
inline bool irreducible_by_trial_division(std::int64_t p, const Poly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      Poly g(static_cast<std::size_t>(d) + 1, 0);
      std::int64_t v = idx;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = v % p;
        v /= p;
      }
      g[static_cast<std::size_t>(d)] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Affine solutions of x^{q+1} = y^q + y over GF(q^2) plus the point at infinity.
inline std::uint64_t hermitian_point_count(const NaiveField& f, std::uint64_t q) {
  std::vector<std::uint32_t> xn(f.size()), yt(f.size());
  for (std::uint32_t a = 0; a < f.size(); ++a) {
    xn[a] = f.pow(a, q + 1);
    yt[a] = f.add(f.pow(a, q), a);
  }
  std::uint64_t n = 1;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    for (std::uint32_t y = 0; y < f.size(); ++y) n += xn[x] == yt[y];
  }
  return n;
}

// (#Y(F_q), gamma) for y^2 = x^{2g+1} + sum a_i x^i, coefficients a_0..a_2g.
inline std::pair<int, int> hyperelliptic_count(const NaiveField& f, const std::vector<std::uint32_t>& a) {
  const auto sq = f.squares();
  int count = 1, gamma = 0;
  const auto deg = a.size();
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    std::uint32_t v = f.pow(x, deg);
    for (std::size_t i = 0; i < deg; ++i) v = f.add(v, f.mul(a[i], f.pow(x, i)));
    if (v == 0) {
      ++count;
      ++gamma;
    } else if (sq.count(v)) {
      count += 2;
    }
  }
  return {count, gamma};
}

// Plain Gaussian elimination.
inline std::size_t rank(const NaiveField& f, std::vector<std::vector<std::uint32_t>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint32_t inv = f.inv(rows[r][c]);
    for (auto& v : rows[r]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint32_t k = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
    }
    ++r;
  }
  return r;
}

// Minimum Hamming weight over all nonzero combinations of the rows.
inline std::size_t min_weight(const NaiveField& f, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t k = rows.size();
  const std::size_t n = k ? rows[0].size() : 0;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= f.size();
  std::size_t best = n + 1;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::vector<std::uint32_t> word(n, 0);
    std::uint64_t v = idx;
    for (std::size_t i = 0; i < k; ++i) {
      const auto c = static_cast<std::uint32_t>(v % f.size());
      v /= f.size();
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) word[j] = f.add(word[j], f.mul(c, rows[i][j]));
    }
    const auto w = static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](auto e) { return e != 0; }));
    if (w > 0) best = std::min(best, w);
  }
  return best;
}

// Minimum weight of a nonzero c with G c = 0, by enumerating all words.
inline std::size_t dual_min_weight(const NaiveField& f, const std::vector<std::vector<std::uint32_t>>& gen) {
  const std::size_t n = gen.empty() ? 0 : gen[0].size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.size();
  std::size_t best = n + 1;
  std::vector<std::uint32_t> c(n, 0);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t v = idx;
    std::size_t w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = static_cast<std::uint32_t>(v % f.size());
      v /= f.size();
      w += c[j] != 0;
    }
    if (w >= best) continue;
    bool zero = true;
    for (const auto& row : gen) {
      std::uint32_t s = 0;
      for (std::size_t j = 0; j < n && zero; ++j) s = f.add(s, f.mul(row[j], c[j]));
      zero = zero && s == 0;
    }
    if (zero) best = w;
  }
  return best;
}

// Distinct pole orders iq + j(q+1) <= m: the size of L(m P_inf).
inline int semigroup_count(int m, int q) {
  std::set<int> v;
  for (int i = 0; i * q <= m; ++i) {
    for (int j = 0; i * q + j * (q + 1) <= m; ++j) v.insert(i * q + j * (q + 1));
  }
  return static_cast<int>(v.size());
}

}  // namespace oracle
