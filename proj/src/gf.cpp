#include "hermpir/gf.hpp"

#include <algorithm>
#include <sstream>

namespace hermpir::gf {

namespace {

using Poly = std::vector<std::uint32_t>;  // over F_p, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint32_t e = p - 2;
  while (e > 0) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1u;
  }
  return static_cast<std::uint32_t>(result);
}

// a mod b, b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * b[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(out), m, p);
}

// x^(p^k) mod m by k repeated p-th powers.
Poly frobenius_power_of_x(std::uint32_t k, const Poly& m, std::uint32_t p) {
  Poly r = poly_mod(Poly{0, 1}, m, p);
  for (std::uint32_t step = 0; step < k; ++step) {
    Poly acc{1};
    Poly base = r;
    std::uint32_t e = p;
    while (e > 0) {
      if (e & 1u) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1u;
    }
    r = std::move(acc);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimePower factor_prime_power(std::uint64_t q) {
  if (q < 2) throw InvalidArgument("not a prime power: " + std::to_string(q));
  const auto primes = prime_divisors(q);
  if (primes.size() != 1) throw InvalidArgument("not a prime power: " + std::to_string(q));
  std::uint32_t h = 0;
  for (std::uint64_t r = q; r > 1; r /= primes[0]) ++h;
  return {static_cast<std::uint32_t>(primes[0]), h};
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const auto n = static_cast<std::uint32_t>(f.size() - 1);
  if (n == 1) return true;
  Poly x{0, 1};
  Poly full = frobenius_power_of_x(n, f, p);
  if (full != poly_mod(x, f, p)) return false;
  for (const auto r : prime_divisors(n)) {
    Poly t = frobenius_power_of_x(n / static_cast<std::uint32_t>(r), f, p);
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = (t[1] + p - 1) % p;
    trim(t);
    if (t.empty()) return false;
    if (poly_gcd(f, t, p).size() != 1) return false;
  }
  return true;
}

Field::Field(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {
  if (!is_prime(p)) throw InvalidArgument("characteristic must be prime, got " + std::to_string(p));
  if (n == 0) throw InvalidArgument("extension degree must be positive");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    size *= p;
    if (size > kMaxFieldSize) {
      throw InvalidArgument("field of order " + std::to_string(p) + "^" + std::to_string(n) +
                            " exceeds the size budget");
    }
  }
  size_ = static_cast<std::uint32_t>(size);
  order_ = size_ - 1;

  // Lowest monic irreducible of degree n.
  Poly candidate(n + 1, 0);
  candidate[n] = 1;
  bool found = false;
  for (std::uint32_t lower = 0; lower < size_ && !found; ++lower) {
    std::uint32_t rest = lower;
    for (std::uint32_t i = 0; i < n; ++i) {
      candidate[i] = rest % p;
      rest /= p;
    }
    found = is_irreducible(candidate, p);
  }
  if (!found) throw InternalError("no irreducible polynomial found");
  modulus_ = candidate;

  auto unpack = [&](std::uint32_t v) {
    Poly c(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      c[i] = v % p;
      v /= p;
    }
    trim(c);
    return c;
  };
  auto pack = [&](const Poly& c) {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
  };

  neg_.resize(size_);
  for (std::uint32_t v = 0; v < size_; ++v) {
    Poly c = unpack(v);
    for (auto& x : c) x = (p - x) % p;
    neg_[v] = pack(c);
  }

  // Smallest primitive element by packed index.
  const auto divisors = prime_divisors(order_);
  auto slow_pow = [&](const Poly& base, std::uint64_t e) {
    Poly acc{1};
    Poly b = base;
    while (e > 0) {
      if (e & 1u) acc = poly_mulmod(acc, b, modulus_, p);
      b = poly_mulmod(b, b, modulus_, p);
      e >>= 1u;
    }
    return acc;
  };
  Poly generator;
  if (order_ == 1) {
    generator = Poly{1};
  } else {
    for (std::uint32_t v = 2; v < size_; ++v) {
      const Poly g = unpack(v);
      bool primitive = true;
      for (const auto r : divisors) {
        if (slow_pow(g, order_ / r) == Poly{1}) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        generator = g;
        break;
      }
    }
    if (generator.empty()) throw InternalError("no primitive element found");
  }

  exp_.assign(2 * static_cast<std::size_t>(order_), 0);
  log_.assign(size_, 0);
  Poly cur{1};
  for (std::uint32_t k = 0; k < order_; ++k) {
    const std::uint32_t v = pack(cur);
    exp_[k] = v;
    exp_[k + order_] = v;
    log_[v] = k;
    cur = poly_mulmod(cur, generator, modulus_, p);
  }

  zech_.assign(order_, -1);
  if (n_ > 1) {
    for (std::uint32_t k = 0; k < order_; ++k) {
      Poly c = unpack(exp_[k]);
      c.resize(n, 0);
      c[0] = (c[0] + 1) % p;
      trim(c);
      if (!c.empty()) zech_[k] = static_cast<std::int32_t>(log_[pack(c)]);
    }
  }
}

Element Field::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  return Element(static_cast<std::uint32_t>(((v % p) + p) % p));
}

Element Field::element(std::uint32_t index) const {
  if (index >= size_) throw InvalidArgument("element index out of range");
  return Element(index);
}

Element Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > n_) throw InvalidArgument("too many coefficients for field degree");
  std::uint32_t v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw InvalidArgument("coefficient not reduced mod p");
    v = v * p_ + coeffs[i];
  }
  return Element(v);
}

std::vector<std::uint32_t> Field::coefficients(Element a) const {
  std::vector<std::uint32_t> c(n_, 0);
  std::uint32_t v = a.value;
  for (std::uint32_t i = 0; i < n_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

Element Field::inv(Element a) const {
  if (a.is_zero()) throw InvalidArgument("inverse of zero");
  const std::uint32_t l = log_[a.value];
  return Element(exp_[l == 0 ? 0 : order_ - l]);
}

Element Field::pow(Element a, std::int64_t e) const {
  if (a.is_zero()) {
    if (e < 0) throw InvalidArgument("negative power of zero");
    return e == 0 ? one() : zero();
  }
  const auto ord = static_cast<std::int64_t>(order_);
  std::int64_t r = e % ord;
  if (r < 0) r += ord;
  const std::uint64_t k = (std::uint64_t{log_[a.value]} * static_cast<std::uint64_t>(r)) % order_;
  return Element(exp_[k]);
}

std::uint32_t Field::log(Element a) const {
  if (a.is_zero()) throw InvalidArgument("logarithm of zero");
  return log_[a.value];
}

int Field::quadratic_character(Element a) const {
  if (a.is_zero()) return 0;
  if (p_ == 2) return 1;
  return (log_[a.value] % 2 == 0) ? 1 : -1;
}

std::vector<Element> Field::elements() const {
  std::vector<Element> out;
  out.reserve(size_);
  for (std::uint32_t v = 0; v < size_; ++v) out.emplace_back(v);
  return out;
}

Element Field::sample(Rng& rng) const {
  std::uniform_int_distribution<std::uint32_t> dist(0, size_ - 1);
  return Element(dist(rng));
}

std::string Field::to_string(Element a) const {
  std::ostringstream os;
  os << '[';
  const auto c = coefficients(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ']';
  return os.str();
}

FieldTower::FieldTower(std::uint32_t p, std::uint32_t h) : p_(p), h_(h) {
  if (!is_prime(p)) throw InvalidArgument("characteristic must be prime, got " + std::to_string(p));
  if (h == 0) throw InvalidArgument("h must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    q *= p;
    if (q * q > kMaxFieldSize) throw InvalidArgument("tower exceeds the size budget");
  }
  q_ = static_cast<std::uint32_t>(q);
  field_ = std::make_shared<const Field>(p, 2 * h);
}

std::vector<Element> FieldTower::subfield_elements() const {
  std::vector<Element> out;
  for (const auto a : field_->elements()) {
    if (in_subfield(a)) out.push_back(a);
  }
  return out;
}

std::shared_ptr<const FieldTower> create_tower(std::uint32_t p, std::uint32_t h) {
  return std::make_shared<const FieldTower>(p, h);
}

}  // namespace hermpir::gf
