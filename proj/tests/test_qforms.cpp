#include <set>

#include "doctest.h"
#include "f4kit/qforms.hpp"
#include "f4kit/sampling.hpp"

using namespace f4kit;

namespace {

const Field Q = Field::rationals();

QuadraticForm form(const Field& f, std::initializer_list<const char*> coeffs) {
  Vector c;
  for (auto s : coeffs) c.push_back(f.parse(s));
  return QuadraticForm(f, c);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an f4kit::Error");
  return ErrorCode::InternalInvariant;
}

// Independent oracle: z^2 = a x^2 + b y^2 has a primitive solution modulo
// p^k (k = 3 for odd p, 6 for p = 2), which Hensel-lifts for squarefree a, b.
int hilbert_bruteforce(long a, long b, long p) {
  const long k = p == 2 ? 6 : 3;
  long m = 1;
  for (long i = 0; i < k; ++i) m *= p;
  auto mod = [m](long v) { return ((v % m) + m) % m; };
  std::set<long> all_squares, unit_squares;
  for (long z = 0; z < m; ++z) {
    all_squares.insert(z * z % m);
    if (z % p != 0) unit_squares.insert(z * z % m);
  }
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y) {
      const long v = mod(mod(a * x % m * x) + mod(b * y % m * y));
      const bool unit_xy = x % p != 0 || y % p != 0;
      if ((unit_xy ? all_squares : unit_squares).count(v)) return 1;
    }
  return -1;
}

}  // namespace

TEST_CASE("forms reject zero coefficients and support basic algebra") {
  CHECK(code_of([] { form(Q, {"1", "0"}); }) == ErrorCode::DegenerateForm);
  auto q = form(Q, {"1", "-1", "2"});
  CHECK(q.evaluate({Q.one(), Q.one(), Q.zero()}).is_zero());
  CHECK(q.determinant() == Q.from_int(-2));
  CHECK(q.orthogonal_sum(form(Q, {"3"})).dim() == 4);
  CHECK(q.scaled(Q.from_int(2)) == form(Q, {"2", "-2", "4"}));
  CHECK(q.to_string() == "<1,-1,2>");
}

TEST_CASE("diagonalize") {
  auto d = diagonalize(Matrix::diagonal(Q, {Q.one(), -Q.one()}));
  CHECK(d.form == form(Q, {"1", "-1"}));
  CHECK(d.basis == Matrix::identity(Q, 2));

  Matrix h(Q, 2, 2);
  h(0, 1) = Q.one();
  h(1, 0) = Q.one();
  auto dh = diagonalize(h);
  CHECK(congruent_via(h, dh.form.gram(), dh.basis));
  CHECK(equivalent(dh.form, form(Q, {"2", "-1/2"})));

  Matrix sing(Q, 3, 3);
  sing(0, 0) = Q.one();
  sing(0, 1) = sing(1, 0) = Q.one();
  sing(1, 1) = Q.one();
  sing(2, 2) = Q.from_int(5);
  try {
    diagonalize(sing);
    FAIL("singular Gram accepted");
  } catch (const DegenerateFormError& e) {
    REQUIRE(e.radical().size() == 1);
    CHECK(is_zero_vector(sing * e.radical()[0]));
    CHECK_FALSE(is_zero_vector(e.radical()[0]));
  }

  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    Matrix g(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = random_element(Q, rng, 5);
    if (g.determinant().is_zero()) continue;
    auto dg = diagonalize(g);
    CHECK(congruent_via(g, dg.form.gram(), dg.basis));
    CHECK(dg.basis.inverse().has_value());
  }
}

TEST_CASE("Hilbert symbols: closed formulas against brute force") {
  const Field Qf = Q;
  CHECK(hilbert_symbol(Qf.from_int(-1), Qf.from_int(-1), Place::infinity()) == -1);
  CHECK(hilbert_symbol(Qf.from_int(-1), Qf.from_int(-1), Place::at(2)) == -1);
  CHECK(hilbert_bruteforce(-1, -1, 2) == -1);
  for (long b : {-7L, -1L, 2L, 3L, 6L}) CHECK(hilbert_symbol(Qf.one(), Qf.from_int(b), Place::at(2)) == 1);
  std::vector<long> values;
  for (long v = -15; v <= 15; ++v)
    if (v != 0 && nt::squarefree_part(mpz_class(v)) == v) values.push_back(v);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (std::size_t i = 0; i < values.size(); i += 2)
      for (std::size_t j = 1; j < values.size(); j += 3) {
        const long a = values[i], b = values[j];
        CHECK_MESSAGE(hilbert_symbol(Qf.from_int(a), Qf.from_int(b), Place::at(static_cast<std::uint64_t>(p))) ==
                          hilbert_bruteforce(a, b, p),
                      "(" << a << "," << b << ")_" << p);
      }
  }
}

TEST_CASE("Hilbert symbol algebraic properties and product formula") {
  Rng rng(20);
  auto rnd = [&] { return random_nonzero_element(Q, rng, 20); };
  for (int i = 0; i < 100; ++i) {
    auto a = rnd(), b = rnd(), c = rnd();
    struct Places {
      std::vector<Place> list;
    } pl{relevant_places(QuadraticForm(Q, {a, b, c}))};
    int product = 1;
    for (auto place : pl.list) {
      CHECK(hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place));
      CHECK(hilbert_symbol(a, b * c, place) == hilbert_symbol(a, b, place) * hilbert_symbol(a, c, place));
      CHECK(hilbert_symbol(a, -a, place) == 1);
      product *= hilbert_symbol(a, b, place);
    }
    CHECK(product == 1);
  }
  CHECK(code_of([] { hilbert_symbol(Field::prime(7).one(), Field::prime(7).one(), Place::at(7)); }) ==
        ErrorCode::UnsupportedField);
}

TEST_CASE("Hasse invariants") {
  for (auto place : {Place::infinity(), Place::at(2), Place::at(3)})
    CHECK(hasse_invariant(form(Q, {"1", "1"}), place) == 1);
  CHECK(hasse_invariant(form(Q, {"-1", "-1"}), Place::infinity()) == -1);
  auto q9 = form(Q, {"1", "-1", "-1", "-1", "-1", "-1", "-1", "-1", "-1"});
  CHECK(hasse_invariant(q9, Place::at(2)) == 1);  // regression constant
  CHECK(hasse_invariant(q9, Place::infinity()) == 1);
}

TEST_CASE("isotropy decisions") {
  auto h = is_isotropic(form(Q, {"1", "-1"}));
  CHECK(h.isotropic);
  REQUIRE(h.witness);
  CHECK(form(Q, {"1", "-1"}).evaluate(*h.witness).is_zero());
  auto def = is_isotropic(form(Q, {"1", "1", "1", "1", "1", "1", "1", "1"}));
  CHECK_FALSE(def.isotropic);
  CHECK(def.method == DecisionMethod::RealPlaces);
  // <1,1,1> is anisotropic at 2; <1,1,-3>... x^2+y^2 = 3z^2 has no solution.
  auto a3 = is_isotropic(form(Q, {"1", "1", "-3"}));
  CHECK_FALSE(a3.isotropic);
  CHECK(a3.method == DecisionMethod::LocalInvariants);
  auto i3 = is_isotropic(form(Q, {"1", "1", "-2"}));
  CHECK(i3.isotropic);
  auto i5 = is_isotropic(form(Q, {"1", "1", "1", "1", "-7"}));
  CHECK(i5.isotropic);
  REQUIRE(i5.witness);
  CHECK(form(Q, {"1", "1", "1", "1", "-7"}).evaluate(*i5.witness).is_zero());
  // <1,1,1,-7>: det -7 not a square in Q_2 ... anisotropic at 2 (7 = sum of four squares needs all four).
  auto q4 = form(Q, {"1", "1", "1", "-7"});
  CHECK(is_isotropic(q4).isotropic == is_locally_isotropic(q4, Place::at(2)));
  CHECK_FALSE(is_locally_isotropic(q4, Place::at(2)));

  const Field F5 = Field::prime(5);
  auto f = form(F5, {"1", "1", "1"});
  auto c = is_isotropic(f);
  CHECK(c.isotropic);
  CHECK(c.method == DecisionMethod::FiniteFieldCount);
  REQUIRE(c.witness);
  CHECK(f.evaluate(*c.witness).is_zero());
  CHECK_FALSE(is_isotropic(form(Field::prime(7), {"1", "1"})).isotropic);
  CHECK(is_isotropic(form(F5, {"1", "1"})).isotropic);
  CHECK_FALSE(is_isotropic(form(F5, {"3"})).isotropic);
}

TEST_CASE("isotropy over quadratic fields") {
  const Field Ki = Field::quadratic(-1);
  auto g = is_isotropic(form(Ki, {"1", "1", "1", "1", "1", "1", "1", "1"}));
  CHECK(g.isotropic);
  REQUIRE(g.witness);
  CHECK(form(Ki, {"1", "1", "1", "1", "1", "1", "1", "1"}).evaluate(*g.witness).is_zero());
  const Field K2 = Field::quadratic(2);
  auto d = is_isotropic(form(K2, {"1", "1", "1", "1", "1", "1", "1", "1"}));
  CHECK_FALSE(d.isotropic);
  CHECK(d.method == DecisionMethod::RealPlaces);
  // <1, -2> splits over Q(sqrt 2).
  CHECK(is_isotropic(form(K2, {"1", "-2"})).isotropic);
  // Definite at one embedding only: 1 + r > 0, 1 - r < 0 at the other.
  CHECK_FALSE(is_isotropic(form(K2, {"1", "1", "1", "1+r"})).isotropic);
  // Witness via the sqrt(d) partition: 2x^2 - ... <1,1,-6> over Q(sqrt 3): (sqrt3)^2 + (sqrt3)^2 = 6.
  auto w = is_isotropic(form(Field::quadratic(3), {"1", "1", "-6"}));
  CHECK(w.isotropic);
  REQUIRE(w.witness);
  CHECK(form(Field::quadratic(3), {"1", "1", "-6"}).evaluate(*w.witness).is_zero());
  // <1,1,1,-7> over Q(sqrt 5) is caught by the sqrt(d) partition: 5 + 1 + 1 = 7.
  const Field K5 = Field::quadratic(5);
  auto p5 = is_isotropic(form(K5, {"1", "1", "1", "-7"}));
  REQUIRE(p5.witness);
  CHECK(form(K5, {"1", "1", "1", "-7"}).evaluate(*p5.witness).is_zero());
  // Indefinite at both real places, no witness: reported, not guessed.
  CHECK(code_of([&] { is_isotropic(form(K5, {"1", "1", "1", "-7-r"}), SearchOptions{8}); }) ==
        ErrorCode::UnsupportedCase);
}

TEST_CASE("Witt decompositions") {
  auto w = witt_decompose(form(Q, {"1", "-1", "1"}));
  CHECK(w.witt_index == 1);
  CHECK(equivalent(w.anisotropic, form(Q, {"1"})));
  CHECK(w.method == DecisionMethod::ExplicitWitness);

  auto q9 = form(Q, {"1", "-1", "-1", "-1", "-1", "-1", "-1", "-1", "-1"});
  auto w9 = witt_decompose(q9);
  CHECK(w9.witt_index == 1);
  CHECK(w9.anisotropic.dim() == 7);
  CHECK(equivalent(w9.anisotropic, form(Q, {"-1", "-1", "-1", "-1", "-1", "-1", "-1"})));
  REQUIRE(w9.basis);
  CHECK(congruent_via(q9, hyperbolic(Q, 1).orthogonal_sum(w9.anisotropic), *w9.basis));
  CHECK_FALSE(w9.anisotropy.isotropic);

  const Field F5 = Field::prime(5);
  auto wf = witt_decompose(form(F5, {"1", "1", "1"}));
  CHECK(wf.witt_index == 1);
  CHECK(equivalent(wf.anisotropic, form(F5, {"1"})));

  // An isotropic form whose witnesses are out of reach of the bounded search
  // is still decomposed from local invariants.
  auto big = form(Q, {"1", "1", "-1009"});
  CHECK(is_isotropic(big).isotropic);
  auto wb = witt_decompose(big, SearchOptions{8});
  CHECK(wb.witt_index == 1);
  CHECK(wb.anisotropic.dim() == 1);
  CHECK(equivalent(hyperbolic(Q, 1).orthogonal_sum(wb.anisotropic), big));
}

TEST_CASE("Witt decomposition preserves invariants on random rational forms") {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 6;
    Vector c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(random_nonzero_element(Q, rng, 10));
    QuadraticForm q(Q, c);
    auto w = witt_decompose(q);
    auto rebuilt = hyperbolic(Q, w.witt_index).orthogonal_sum(w.anisotropic);
    CHECK(rebuilt.dim() == q.dim());
    CHECK(signature(rebuilt) == signature(q));
    CHECK(same_square_class(rebuilt.determinant(), q.determinant()));
    for (auto place : relevant_places(q)) CHECK(hasse_invariant(rebuilt, place) == hasse_invariant(q, place));
    CHECK_FALSE(is_isotropic(w.anisotropic).isotropic);
    if (w.basis) CHECK(congruent_via(q, rebuilt, *w.basis));
  }
}

TEST_CASE("equivalence") {
  CHECK(equivalent(form(Q, {"1", "1"}), form(Q, {"4", "9"})));
  CHECK_FALSE(equivalent(form(Q, {"1", "1"}), form(Q, {"1", "-1"})));
  CHECK(equivalent(form(Q, {"1", "1"}), form(Q, {"2", "2"})));
  CHECK_FALSE(equivalent(form(Q, {"1", "1"}), form(Q, {"3", "3"})));
  const Field F7 = Field::prime(7);
  CHECK(equivalent(form(F7, {"1", "2"}), form(F7, {"2", "1"})));
  // Oracle: an explicit change of basis exists by brute force over F_7^{2x2}.
  auto a = form(F7, {"1", "2"}), b = form(F7, {"2", "1"});
  bool found = false;
  for (int m = 0; m < 7 * 7 * 7 * 7 && !found; ++m) {
    Matrix P(F7, 2, 2);
    P(0, 0) = F7.from_int(m % 7);
    P(0, 1) = F7.from_int(m / 7 % 7);
    P(1, 0) = F7.from_int(m / 49 % 7);
    P(1, 1) = F7.from_int(m / 343);
    found = congruent_via(a, b, P);
  }
  CHECK(found);
  CHECK_FALSE(equivalent(form(F7, {"1", "1"}), form(F7, {"1", "3"})));
  const Field K = Field::quadratic(2);
  CHECK(code_of([&] { equivalent(form(K, {"1", "1", "1", "1"}), form(K, {"1", "1", "1", "2"})); }) ==
        ErrorCode::UnsupportedCase);
}

TEST_CASE("Pfister forms") {
  CHECK(pfister(Q, {Q.from_int(-1), Q.from_int(-1), Q.from_int(-1)}) ==
        form(Q, {"1", "1", "1", "1", "1", "1", "1", "1"}));
  CHECK(pfister(Q, {Q.one()}) == form(Q, {"1", "-1"}));
  CHECK(pfister(Q, {Q.from_int(-1), Q.from_int(-1)}) == form(Q, {"1", "1", "1", "1"}));
  for (int mask = 0; mask < 8; ++mask) {
    Vector slots;
    for (int b = 0; b < 3; ++b) slots.push_back(Q.from_int(mask >> b & 1 ? 1 : -1));
    auto p = pfister(Q, slots);
    auto w = witt_decompose(p);
    if (is_isotropic(p).isotropic) CHECK(w.witt_index == 4);
    else CHECK(w.witt_index == 0);
  }
  CHECK(code_of([] { pfister(Q, {}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("bounded isotropic vector search") {
  auto w = isotropic_vector_search(form(Q, {"1", "-1"}), 1);
  REQUIRE(w);
  CHECK(form(Q, {"1", "-1"}).evaluate(*w).is_zero());
  CHECK_FALSE(isotropic_vector_search(form(Q, {"1", "1", "1"}), 20));
  // x^2 = 2y^2 + 3z^2 forces 3 | x, y, z: anisotropic at 3, so no bound finds a witness.
  auto q = form(Q, {"1", "-2", "-3"});
  CHECK_FALSE(is_isotropic(q).isotropic);
  CHECK_FALSE(isotropic_vector_search(q, 2));
  CHECK_FALSE(isotropic_vector_search(q, 2, kernels::Exec::Serial));
  CHECK_FALSE(isotropic_vector_search(q, 1000));
  // x^2 = 2y^2 + 7z^2 has (3, 1, 1).
  auto q2 = form(Q, {"1", "-2", "-7"});
  for (auto exec : {kernels::Exec::Serial, kernels::Exec::Parallel}) {
    auto v = isotropic_vector_search(q2, 3, exec);
    REQUIRE(v);
    CHECK(q2.evaluate(*v).is_zero());
  }
  auto fp = isotropic_vector_search(form(Field::prime(1000003), {"1", "1", "1", "1", "5"}), 0);
  REQUIRE(fp);
  CHECK(form(Field::prime(1000003), {"1", "1", "1", "1", "5"}).evaluate(*fp).is_zero());
  CHECK(code_of([] { isotropic_vector_search(form(Field::quadratic(2), {"1", "-1"}), 3); }) ==
        ErrorCode::UnsupportedField);
}

TEST_CASE("Hasse-Minkowski verdicts agree with bounded search") {
  Rng rng(6);
  std::uniform_int_distribution<int> coef(-10, 10);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 3;
    Vector c;
    while (c.size() < n) {
      int v = coef(rng);
      if (v != 0) c.push_back(Q.from_int(v));
    }
    QuadraticForm q(Q, c);
    const bool verdict = is_isotropic(q).isotropic;
    auto small = isotropic_vector_search(q, 30);
    if (small) CHECK(verdict);
    if (!verdict) CHECK_FALSE(isotropic_vector_search(q, 1000));
    if (verdict) CHECK(find_isotropic_vector(q, SearchOptions{1000}).has_value());
  }
}

TEST_CASE("F_p Witt indices match exhaustive enumeration") {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t primes[] = {5, 7, 11};
    const std::uint64_t p = primes[trial % 3];
    const Field F = Field::prime(static_cast<long>(p));
    const std::size_t n = 1 + trial % 5;
    Vector c;
    std::vector<std::uint64_t> res;
    for (std::size_t i = 0; i < n; ++i) {
      c.push_back(random_nonzero_element(F, rng));
      res.push_back(c.back().residue());
    }
    auto w = witt_decompose(QuadraticForm(F, c));
    CHECK(w.witt_index == kernels::witt_index_fp_enumeration(res, p, kernels::Exec::Serial));
    CHECK(w.witt_index == kernels::witt_index_fp_enumeration(res, p, kernels::Exec::Parallel));
  }
}
