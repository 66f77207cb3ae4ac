#include "doctest.h"
#include "f4kit/composition.hpp"
#include "f4kit/sampling.hpp"

using namespace f4kit;

namespace {

const Field Q = Field::rationals();

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an f4kit::Error");
  return ErrorCode::InternalInvariant;
}

Vector ints(const Field& f, std::initializer_list<int> v) {
  Vector out;
  for (int x : v) out.push_back(f.from_int(x));
  return out;
}

// Oracle: the doubling rule evaluated recursively on coordinate vectors,
// independently of the cached structure table.
Vector cd_conj(const Vector& x) {
  Vector z = x;
  for (std::size_t i = 1; i < z.size(); ++i) z[i] = -z[i];
  return z;
}

Vector cd_mul(const Vector& x, const Vector& y, const Vector& params, std::size_t level) {
  if (level == 0) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const Element& g = params[level - 1];
  Vector a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  Vector c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  Vector ac = cd_mul(a, c, params, level - 1), dbb = cd_mul(d, cd_conj(b), params, level - 1);
  Vector ad = cd_mul(cd_conj(a), d, params, level - 1), cb = cd_mul(c, b, params, level - 1);
  Vector z;
  for (std::size_t i = 0; i < h; ++i) z.push_back(ac[i] + g * dbb[i]);
  for (std::size_t i = 0; i < h; ++i) z.push_back(ad[i] + cb[i]);
  return z;
}

}  // namespace

TEST_CASE("construction and errors") {
  auto g = CompositionAlgebra::graves();
  CHECK(g.dim() == 8);
  CHECK(g.norm_form() == QuadraticForm(Q, ints(Q, {1, 1, 1, 1, 1, 1, 1, 1})));
  auto k = CompositionAlgebra::cayley_dickson(Q, {});
  CHECK(k.dim() == 1);
  CHECK(k.norm(ints(Q, {3})) == Q.from_int(9));
  CHECK(k.norm_form() == QuadraticForm(Q, ints(Q, {1})));
  CHECK(code_of([] { CompositionAlgebra::cayley_dickson(Q, ints(Q, {1, 0})); }) == ErrorCode::ZeroParameter);
  CHECK(code_of([] { CompositionAlgebra::cayley_dickson(Q, ints(Q, {1, 1, 1, 1})); }) ==
        ErrorCode::TooManyDoublings);
}

TEST_CASE("structure table matches the recursive doubling rule") {
  for (const Field& f : {Q, Field::prime(7)}) {
    for (auto params : {ints(f, {-1}), ints(f, {-1, -1}), ints(f, {-1, -1, -1}), ints(f, {2, -3, 5}),
                        ints(f, {1, 1, 1})}) {
      auto c = CompositionAlgebra::cayley_dickson(f, params);
      for (std::size_t i = 0; i < c.dim(); ++i)
        for (std::size_t j = 0; j < c.dim(); ++j)
          CHECK(c.mul(c.basis(i), c.basis(j)) == cd_mul(c.basis(i), c.basis(j), params, params.size()));
    }
  }
}

TEST_CASE("quaternion signs under the fixed doubling rule") {
  auto h = CompositionAlgebra::cayley_dickson(Q, ints(Q, {-1, -1}));
  Vector e1 = h.basis(1), e2 = h.basis(2), e3 = h.basis(3);
  Vector minus_e3 = e3;
  minus_e3[3] = Q.from_int(-1);
  CHECK(h.mul(e1, e2) == minus_e3);
  CHECK(h.mul(e2, e1) == e3);
  CHECK(h.mul(e1, e1) == Vector{Q.from_int(-1), Q.zero(), Q.zero(), Q.zero()});
}

TEST_CASE("element operations") {
  auto g = CompositionAlgebra::graves();
  auto one = g.unit();
  CHECK(one.conj() == one);
  CHECK(one.norm() == Q.one());
  auto x = g.element(g.basis(1)) + g.element(g.basis(2));
  CHECK(x.norm() == Q.from_int(2));
  CHECK(comp_eval(CompOp::Norm, x).scalar == Q.from_int(2));
  CHECK(comp_eval(CompOp::Trace, one).scalar == Q.from_int(2));
  CHECK(comp_eval(CompOp::ScalarMul, one, std::nullopt, Q.from_int(3)).element->coords()[0] == Q.from_int(3));
  auto e1 = g.element(g.basis(1)), e2 = g.element(g.basis(2)), e4 = g.element(g.basis(4));
  CHECK_FALSE((e1 * e2) * e4 == e1 * (e2 * e4));
  auto h = CompositionAlgebra::cayley_dickson(Q, ints(Q, {-1, -1}));
  CHECK(code_of([&] { (void)(h.unit() * g.unit()); }) == ErrorCode::AlgebraMismatch);
  auto other = CompositionAlgebra::cayley_dickson(Q, ints(Q, {-1, -1, -2}));
  CHECK(code_of([&] { (void)(other.unit() + g.unit()); }) == ErrorCode::AlgebraMismatch);
}

TEST_CASE("composition law, alternativity and the quadratic relation") {
  for (const Field& f : {Q, Field::prime(7)}) {
    Rng rng(21);
    for (auto params : {Vector{}, ints(f, {-1}), ints(f, {2, -1}), ints(f, {-1, -1, -1}), ints(f, {3, -2, 5})}) {
      auto c = CompositionAlgebra::cayley_dickson(f, params);
      for (int i = 0; i < 200; ++i) {
        Vector x = random_vector(f, c.dim(), rng, 6), y = random_vector(f, c.dim(), rng, 6);
        Vector xy = c.mul(x, y);
        REQUIRE(c.norm(xy) == c.norm(x) * c.norm(y));
        REQUIRE(c.conj(c.conj(x)) == x);
        REQUIRE(c.conj(xy) == c.mul(c.conj(y), c.conj(x)));
        REQUIRE(c.mul(x, c.mul(x, y)) == c.mul(c.mul(x, x), y));
        REQUIRE(c.mul(c.mul(y, x), x) == c.mul(y, c.mul(x, x)));
        // x^2 - t(x) x + N(x) = 0
        Vector rel = c.mul(x, x);
        for (std::size_t k = 0; k < c.dim(); ++k) rel[k] -= c.trace(x) * x[k];
        rel[0] += c.norm(x);
        REQUIRE(is_zero_vector(rel));
        Vector xx = c.mul(x, c.conj(x));
        REQUIRE(xx[0] == c.norm(x));
        if (i < 50) REQUIRE(c.norm_form().evaluate(x) == c.norm(x));
      }
    }
  }
}

TEST_CASE("division octonions have no zero divisors on samples") {
  auto g = CompositionAlgebra::graves();
  Rng rng(22);
  for (int i = 0; i < 500; ++i) {
    Vector x = random_vector(Q, 8, rng, 5), y = random_vector(Q, 8, rng, 5);
    if (is_zero_vector(x) || is_zero_vector(y)) continue;
    CHECK_FALSE(is_zero_vector(g.mul(x, y)));
  }
}

TEST_CASE("split detection") {
  auto g = CompositionAlgebra::graves();
  CHECK_FALSE(is_split(g));
  CHECK(is_split(CompositionAlgebra::graves(Field::prime(7))));
  CHECK(is_split(base_change_comp(g, Field::quadratic(-1))));
  CHECK_FALSE(is_split(base_change_comp(g, Field::quadratic(2))));
  CHECK(is_split(CompositionAlgebra::split_octonions()));
  auto mixed = CompositionAlgebra::cayley_dickson(Q, ints(Q, {1, -1, -1}));
  CHECK(is_split(mixed));
  CHECK(witt_decompose(mixed.norm_form()).witt_index == 4);
}

TEST_CASE("isomorphism via norm forms") {
  auto g = CompositionAlgebra::graves();
  CHECK(comp_isomorphic(g, CompositionAlgebra::cayley_dickson(Q, ints(Q, {-1, -1, -4}))));
  CHECK_FALSE(comp_isomorphic(g, CompositionAlgebra::split_octonions()));
  CHECK(comp_isomorphic(g, g));
  // <<-1,-1,-1>> and <<-1,-1,-3>> are both definite but differ at 3.
  CHECK_FALSE(comp_isomorphic(CompositionAlgebra::cayley_dickson(Q, ints(Q, {-1, -1})),
                              CompositionAlgebra::cayley_dickson(Q, ints(Q, {-1, -3}))));
  const Field Ki = Field::quadratic(-1);
  CHECK(comp_isomorphic(base_change_comp(g, Ki), CompositionAlgebra::split_octonions(Ki)));
  const Field K2 = Field::quadratic(2);
  CHECK_FALSE(comp_isomorphic(base_change_comp(g, K2), CompositionAlgebra::split_octonions(K2)));
  CHECK(code_of([&] {
          comp_isomorphic(base_change_comp(g, K2),
                          CompositionAlgebra::cayley_dickson(K2, ints(K2, {-1, -1, -3})));
        }) == ErrorCode::UnsupportedCase);
}

TEST_CASE("base change") {
  auto g = CompositionAlgebra::graves();
  auto g2 = base_change_comp(g, Field::quadratic(2));
  CHECK(g2.field() == Field::quadratic(2));
  CHECK(g2.params() == ints(Field::quadratic(2), {-1, -1, -1}));
  CHECK(code_of([&] { base_change_comp(g, Field::prime(7)); }) == ErrorCode::UnsupportedExtension);
  CHECK(code_of([&] { base_change_comp(g2, Field::quadratic(3)); }) == ErrorCode::UnsupportedExtension);
}
