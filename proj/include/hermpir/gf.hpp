#pragma once
//
// Finite field arithmetic for GF(p^n) and the quadratic tower F_p ⊂ F_q ⊂ F_{q^2}.
//
// Elements are stored as their coordinate vector over F_p in the polynomial basis
// 1, t, ..., t^{n-1}, packed little-endian in base p into a single integer:
// the element c_0 + c_1 t + ... is stored as c_0 + c_1 p + c_2 p^2 + ...
// The packed integer doubles as the canonical enumeration index, so element 0 is
// zero, element 1 is one and elements 0..p-1 form the prime subfield.
//
// The defining modulus is the lowest monic irreducible polynomial of degree n,
// where polynomials are ordered by the packed integer of their lower n
// coefficients. Multiplication, inversion and addition go through log/antilog and
// Zech-logarithm tables built once at construction; a Field is immutable after
// that and can be shared freely between threads.

#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hermpir/error.hpp"

namespace hermpir::gf {

// Deterministic generator used for every random draw in the library.
using Rng = std::mt19937_64;

// Upper bound on p^n for any field this library constructs.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

struct Element {
  std::uint32_t value = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t v) : value(v) {}

  constexpr bool is_zero() const { return value == 0; }
  friend constexpr auto operator<=>(Element, Element) = default;
};

class Field {
 public:
  // Throws InvalidArgument for non-prime p, n == 0, or p^n > kMaxFieldSize.
  Field(std::uint32_t p, std::uint32_t n);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return n_; }
  std::uint32_t size() const { return size_; }
  // Monic modulus, n+1 coefficients, constant term first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Element primitive_element() const { return Element(exp_[1]); }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  // Image of an integer in the prime subfield.
  Element from_int(std::int64_t v) const;
  // Throws InvalidArgument when index >= size().
  Element element(std::uint32_t index) const;
  Element from_coefficients(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coefficients(Element a) const;

  Element add(Element a, Element b) const {
    if (a.value == 0) return b;
    if (b.value == 0) return a;
    if (n_ == 1) {
      const std::uint32_t s = a.value + b.value;
      return Element(s >= p_ ? s - p_ : s);
    }
    const std::uint32_t la = log_[a.value];
    std::uint32_t d = log_[b.value] + order_ - la;
    if (d >= order_) d -= order_;
    const std::int32_t z = zech_[d];
    if (z < 0) return Element(0);
    return Element(exp_[la + static_cast<std::uint32_t>(z)]);
  }
  Element neg(Element a) const { return Element(neg_[a.value]); }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (a.value == 0 || b.value == 0) return Element(0);
    return Element(exp_[log_[a.value] + log_[b.value]]);
  }
  // Throws InvalidArgument on zero.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::int64_t e) const;

  // Discrete logarithm to the primitive element; a must be nonzero.
  std::uint32_t log(Element a) const;
  Element exp(std::uint64_t k) const { return Element(exp_[k % order_]); }

  // 0 for zero, +1 for nonzero squares, -1 for non-squares.
  int quadratic_character(Element a) const;
  bool is_square(Element a) const { return quadratic_character(a) >= 0; }

  // All elements in canonical order; first is zero.
  std::vector<Element> elements() const;
  Element sample(Rng& rng) const;

  // Debug form: coefficient list, e.g. "[2,3]" for 2+3t.
  std::string to_string(Element a) const;

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t size_;
  std::uint32_t order_;  // size_ - 1
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // length 2 * order_, exp_[k] = g^k
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::int32_t> zech_;  // log(1 + g^k), -1 when 1 + g^k == 0
  std::vector<std::uint32_t> neg_;
};

// F_q ⊂ F_{q^2} with q = p^h, realised as GF(p^{2h}). The subfield is the fixed
// set of the q-power Frobenius.
class FieldTower {
 public:
  FieldTower(std::uint32_t p, std::uint32_t h);

  std::uint32_t p() const { return p_; }
  std::uint32_t h() const { return h_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order() const { return field_->size(); }

  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }

  Element frobenius(Element a) const { return field_->pow(a, q_); }
  // a^{q+1}, the norm to F_q.
  Element norm(Element a) const { return field_->pow(a, q_ + 1); }
  // a^q + a, the trace to F_q.
  Element trace(Element a) const { return field_->add(frobenius(a), a); }
  bool in_subfield(Element a) const { return frobenius(a) == a; }
  std::vector<Element> subfield_elements() const;

  std::vector<Element> enumerate() const { return field_->elements(); }
  Element sample(Rng& rng) const { return field_->sample(rng); }

 private:
  std::uint32_t p_;
  std::uint32_t h_;
  std::uint32_t q_;
  std::shared_ptr<const Field> field_;
};

bool is_prime(std::uint64_t n);

// Splits a prime power into (p, h); throws InvalidArgument otherwise.
struct PrimePower {
  std::uint32_t p;
  std::uint32_t h;
};
PrimePower factor_prime_power(std::uint64_t q);

std::shared_ptr<const FieldTower> create_tower(std::uint32_t p, std::uint32_t h);

// Exact irreducibility test over F_p (Rabin); coefficients constant term first,
// leading coefficient last and nonzero.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

}  // namespace hermpir::gf
