#include <set>

#include "doctest.h"
#include "f4kit/fields.hpp"
#include "f4kit/sampling.hpp"

using namespace f4kit;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an f4kit::Error");
  return ErrorCode::InternalInvariant;
}

}  // namespace

TEST_CASE("field descriptors validate their parameters") {
  CHECK(code_of([] { Field::prime(2); }) == ErrorCode::InvalidField);
  CHECK(code_of([] { Field::prime(3); }) == ErrorCode::InvalidField);
  CHECK(code_of([] { Field::prime(9); }) == ErrorCode::InvalidField);
  CHECK(code_of([] { Field::quadratic(1); }) == ErrorCode::InvalidField);
  CHECK(code_of([] { Field::quadratic(0); }) == ErrorCode::InvalidField);
  CHECK(code_of([] { Field::quadratic(8); }) == ErrorCode::InvalidField);
  CHECK(Field::prime(5).p() == 5);
  CHECK(Field::quadratic(-1).real_places() == 0);
  CHECK(Field::quadratic(2).real_places() == 2);
  CHECK(Field::rationals().real_places() == 1);
}

TEST_CASE("exact arithmetic on the three field kinds") {
  const Field Q = Field::rationals();
  CHECK(Q.parse("1/2") + Q.parse("1/3") == Q.parse("5/6"));
  const Field F7 = Field::prime(7);
  CHECK(F7.from_int(3) * F7.from_int(5) == F7.one());
  CHECK(F7.from_int(-1).residue() == 6);
  const Field K = Field::quadratic(2);
  CHECK(K.parse("1+r") * K.parse("1-r") == K.from_int(-1));
  CHECK(K.parse("1/2+3/5*r").to_string() == "1/2+3/5*r");
  CHECK(Q.parse("−3/4") == Q.parse("-3/4"));
  CHECK(code_of([&] { (void)Q.zero().inv(); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([&] { (void)(Q.one() + F7.one()); }) == ErrorCode::FieldMismatch);
  CHECK(code_of([&] { (void)Q.parse("1/0"); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("field_arith dispatches every operation") {
  const Field Q = Field::rationals();
  auto x = Q.parse("2/3"), y = Q.parse("-5/7");
  CHECK(*field_arith(FieldOp::Add, x, y).value == x + y);
  CHECK(*field_arith(FieldOp::Neg, x).value == -x);
  CHECK(*field_arith(FieldOp::Inv, x).value == Q.parse("3/2"));
  CHECK(*field_arith(FieldOp::Eq, x, x).flag);
  CHECK_FALSE(*field_arith(FieldOp::IsZero, x).flag);
}

TEST_CASE("is_square with witnesses") {
  const Field Q = Field::rationals();
  auto w = is_square(Q.parse("4/9"));
  REQUIRE(w);
  CHECK(*w * *w == Q.parse("4/9"));
  CHECK_FALSE(is_square(Q.parse("2")));
  CHECK_FALSE(is_square(Q.parse("-1")));
  CHECK(is_square(Q.zero()));

  // Oracle: squares mod 7 by enumeration.
  const Field F7 = Field::prime(7);
  std::set<std::uint64_t> squares;
  for (int t = 0; t < 7; ++t) squares.insert(static_cast<std::uint64_t>(t * t % 7));
  for (int t = 0; t < 7; ++t) {
    auto s = is_square(F7.from_int(t));
    CHECK(s.has_value() == (squares.count(static_cast<std::uint64_t>(t)) == 1));
    if (s) CHECK(*s * *s == F7.from_int(t));
  }
  auto w2 = is_square(F7.from_int(2));
  REQUIRE(w2);
  CHECK((w2->residue() == 3 || w2->residue() == 4));

  const Field K = Field::quadratic(2);
  auto r = is_square(K.parse("3+2*r"));
  REQUIRE(r);
  CHECK(*r * *r == K.parse("3+2*r"));
  CHECK((*r == K.parse("1+r") || *r == K.parse("-1-r")));
  CHECK(is_square(K.from_int(2)));
  CHECK_FALSE(is_square(K.from_int(3)));
  CHECK_FALSE(is_square(K.parse("1+r")));
  const Field Ki = Field::quadratic(-1);
  CHECK(is_square(Ki.from_int(-1)));
  CHECK(is_square(Ki.parse("2*r")));  // (1+i)^2 = 2i
}

TEST_CASE("real signs are computed exactly") {
  const Field Q = Field::rationals();
  CHECK(real_signs(Q.parse("-3/4")) == std::vector<int>{-1});
  const Field K = Field::quadratic(2);
  CHECK(real_signs(K.parse("1-r")) == std::vector<int>{-1, 1});
  CHECK(real_signs(K.parse("3/2-r")) == std::vector<int>{1, 1});
  CHECK(real_signs(Field::quadratic(-1).from_int(5)).empty());
  CHECK(code_of([&] { real_signs(Q.zero()); }) == ErrorCode::ZeroElement);
  CHECK(code_of([] { real_signs(Field::prime(7).one()); }) == ErrorCode::PrimeFieldHasNoRealPlaces);
  // Pointwise multiplicativity.
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    auto x = random_nonzero_element(K, rng, 30), y = random_nonzero_element(K, rng, 30);
    auto sx = real_signs(x), sy = real_signs(y), sxy = real_signs(x * y);
    CHECK(sxy[0] == sx[0] * sy[0]);
    CHECK(sxy[1] == sx[1] * sy[1]);
  }
}

TEST_CASE("Legendre symbol") {
  CHECK(nt::legendre(1, 7) == 1);
  CHECK(nt::legendre(2, 3) == -1);
  CHECK(nt::legendre(3, 3) == 0);
  CHECK(nt::legendre(-1, 5) == 1);
  CHECK(nt::legendre(-1, 7) == -1);
  Rng rng(11);
  for (std::uint64_t p : {5u, 7u, 11u, 101u, 1009u}) {
    std::uniform_int_distribution<long> dist(1, 5000);
    for (int i = 0; i < 50; ++i) {
      long a = dist(rng), b = dist(rng);
      if (a % static_cast<long>(p) == 0 || b % static_cast<long>(p) == 0) continue;
      CHECK(nt::legendre(a, p) * nt::legendre(b, p) == nt::legendre(mpz_class(a) * b, p));
    }
  }
}

TEST_CASE("number theory helpers") {
  CHECK(nt::squarefree_part(mpz_class(-72)) == -2);
  CHECK(nt::squarefree_part(mpq_class(3, 8)) == 6);
  CHECK(nt::is_prime(std::uint64_t{1000000007}));
  CHECK_FALSE(nt::is_prime(std::uint64_t{1000000007} * 3));
  auto f = nt::factor(mpz_class("600851475143"));
  REQUIRE(f.size() == 4);
  CHECK(f.back().first == 6857);
  for (std::uint64_t p : {5u, 13u, 1000003u}) {
    for (std::uint64_t a = 1; a < 40; ++a) {
      auto r = nt::sqrt_mod(a % p, p);
      CHECK(r.has_value() == (nt::legendre(static_cast<long>(a % p), p) != -1));
      if (r) CHECK(nt::mulmod(*r, *r, p) == a % p);
    }
  }
}

TEST_CASE("square classes and embeddings") {
  const Field Q = Field::rationals();
  CHECK(same_square_class(Q.from_int(2), Q.from_int(8)));
  CHECK_FALSE(same_square_class(Q.from_int(2), Q.from_int(3)));
  CHECK(square_class_rep(Q.parse("12/5")) == Q.from_int(15));
  const Field F7 = Field::prime(7);
  CHECK(square_class_rep(F7.from_int(5)) == F7.from_int(3));
  CHECK(square_class_rep(F7.from_int(4)) == F7.one());
  const Field K = Field::quadratic(5);
  CHECK(K.extends(Q));
  CHECK(Q.parse("2/3").embed(K) == K.parse("2/3"));
  CHECK(K.parse("1+r").conjugate() == K.parse("1-r"));
  CHECK(code_of([&] { (void)K.parse("r").to_rational(); }) == ErrorCode::UnsupportedField);
}

TEST_CASE("field axioms on seeded samples") {
  for (const Field& f : {Field::rationals(), Field::prime(7), Field::prime(1000003), Field::quadratic(2),
                         Field::quadratic(-7)}) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
      auto x = random_element(f, rng), y = random_element(f, rng), z = random_element(f, rng);
      REQUIRE((x + y) + z == x + (y + z));
      REQUIRE((x * y) * z == x * (y * z));
      REQUIRE(x + y == y + x);
      REQUIRE(x * y == y * x);
      REQUIRE(x * (y + z) == x * y + x * z);
      if (!y.is_zero()) REQUIRE((x * y) / y == x);
      auto s = is_square(x * x);
      REQUIRE(s);
      REQUIRE(*s * *s == x * x);
    }
  }
}
