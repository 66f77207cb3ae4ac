#pragma once

// Exact scalars over Q, F_p (p >= 5) and Q(sqrt d).
//
// A Field is a small value descriptor; an Element carries its Field so that
// mixing elements from different fields is detected at the operation site.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "f4kit/error.hpp"

namespace f4kit {

enum class FieldKind { Rationals, PrimeField, QuadExt };

class Element;

class Field {
 public:
  Field() = default;

  static Field rationals();
  /// Throws InvalidField unless p is a prime >= 5.
  static Field prime(std::int64_t p);
  /// Q(sqrt d); d squarefree and not in {0, 1}.
  static Field quadratic(std::int64_t d);

  FieldKind kind() const noexcept { return kind_; }
  std::int64_t p() const noexcept { return p_; }
  std::int64_t d() const noexcept { return d_; }

  bool is_rationals() const noexcept { return kind_ == FieldKind::Rationals; }
  bool is_prime() const noexcept { return kind_ == FieldKind::PrimeField; }
  bool is_quadratic() const noexcept { return kind_ == FieldKind::QuadExt; }

  /// Number of real embeddings: 1 for Q, 2 for real quadratic fields, else 0.
  int real_places() const noexcept;

  /// True when `*this` is `base` or a supported extension of it (Q -> Q(sqrt d)).
  bool extends(const Field& base) const noexcept;

  std::string name() const;

  Element zero() const;
  Element one() const;
  Element from_int(long long v) const;
  Element from_integer(const mpz_class& v) const;
  Element from_rational(const mpq_class& v) const;
  /// a + b sqrt(d); only valid for QuadExt.
  Element from_parts(const mpq_class& a, const mpq_class& b) const;
  /// The generator sqrt(d); only valid for QuadExt.
  Element sqrt_d() const;
  /// Element literal: "-3/4", "1/2+3/5*r", "7" (residue mod p).
  Element parse(std::string_view literal) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(FieldKind kind, std::int64_t p, std::int64_t d) : kind_(kind), p_(p), d_(d) {}

  FieldKind kind_ = FieldKind::Rationals;
  std::int64_t p_ = 0;
  std::int64_t d_ = 0;
};

class Element {
 public:
  /// Zero of Q.
  Element() = default;

  const Field& field() const noexcept { return field_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the element lies in the prime subfield Q, or is any F_p element.
  bool is_rational() const;

  /// Rational part a of a + b sqrt d (or the value itself over Q).
  const mpq_class& rational_part() const { return a_; }
  /// Coefficient b of sqrt d (zero over Q).
  const mpq_class& sqrt_part() const { return b_; }
  std::uint64_t residue() const noexcept { return r_; }

  /// The element as a rational number; requires is_rational() and characteristic 0.
  mpq_class to_rational() const;

  Element operator-() const;
  Element inv() const;

  friend Element operator+(const Element& x, const Element& y);
  friend Element operator-(const Element& x, const Element& y);
  friend Element operator*(const Element& x, const Element& y);
  friend Element operator/(const Element& x, const Element& y);
  Element& operator+=(const Element& y);
  Element& operator-=(const Element& y);
  Element& operator*=(const Element& y);

  friend bool operator==(const Element& x, const Element& y);

  /// Galois conjugate a - b sqrt d (identity outside QuadExt).
  Element conjugate() const;
  /// The same value regarded in the larger field L (Q -> Q(sqrt d), or identity).
  Element embed(const Field& target) const;

  std::string to_string() const;

 private:
  friend class Field;

  void normalize();

  Field field_;
  mpq_class a_;
  mpq_class b_;
  std::uint64_t r_ = 0;
};

enum class FieldOp { Add, Sub, Mul, Div, Neg, Inv, Eq, IsZero };

/// Result of the dispatching arithmetic entry point: either an element or a flag.
struct ArithResult {
  std::optional<Element> value;
  std::optional<bool> flag;
};

ArithResult field_arith(FieldOp op, const Element& x, const std::optional<Element>& y = std::nullopt);

/// Square root witness when x is a square in its field.
std::optional<Element> is_square(const Element& x);

/// Signs (+1 / -1) of x under each real embedding. For Q(sqrt d), d > 0, the
/// first entry is sqrt d -> +sqrt d. Imaginary quadratic fields give [].
std::vector<int> real_signs(const Element& x);

/// x / y is a nonzero square.
bool same_square_class(const Element& x, const Element& y);

/// Canonical representative of the square class of a nonzero element:
/// squarefree integer over Q, 1 or the least nonresidue over F_p, and the
/// element itself over Q(sqrt d).
Element square_class_rep(const Element& x);

// ---------------------------------------------------------------------------
// Integer helpers shared by the local-invariant code.

namespace nt {

bool is_prime(const mpz_class& n);
bool is_prime(std::uint64_t n);

/// Prime factorisation of |n| (n != 0) with multiplicities, primes ascending.
std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n);

/// Squarefree integer s with n = s * m^2 (sign kept).
mpz_class squarefree_part(const mpz_class& n);
/// Squarefree integer in the square class of a nonzero rational.
mpz_class squarefree_part(const mpq_class& q);

/// p-adic valuation of a nonzero integer.
unsigned valuation(const mpz_class& n, const mpz_class& p);

/// Legendre symbol via Euler's criterion; 0 when p | a.
int legendre(const mpz_class& a, std::uint64_t p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

}  // namespace nt

}  // namespace f4kit
