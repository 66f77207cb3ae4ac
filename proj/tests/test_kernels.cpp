#include "doctest.h"
#include "f4kit/error.hpp"
#include "f4kit/kernels.hpp"
#include "f4kit/sampling.hpp"

using namespace f4kit;
using namespace f4kit::kernels;

namespace {

std::int64_t value(const std::vector<std::int64_t>& c, const IntVec& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i] * x[i];
  return s;
}

// Oracle: naive count over F_p^n.
std::uint64_t naive_count(const std::vector<std::uint64_t>& c, std::uint64_t p) {
  std::uint64_t total = 1, count = 0;
  for (std::size_t i = 0; i < c.size(); ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx, s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      s += c[i] * (t % p) * (t % p);
      t /= p;
    }
    if (s % p == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("integer search: serial and parallel agree on existence") {
  Rng rng(12);
  std::uniform_int_distribution<int> coef(-12, 12);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + trial % 4;
    std::vector<std::int64_t> c;
    while (c.size() < n) {
      int v = coef(rng);
      if (v != 0) c.push_back(v);
    }
    const std::int64_t bound = 1 + trial % 6;
    auto s = integer_search_serial(c, bound);
    auto p = integer_search_parallel(c, bound);
    REQUIRE(s.has_value() == p.has_value());
    if (s) {
      CHECK(value(c, *s) == 0);
      CHECK(value(c, *p) == 0);
      for (auto x : *p) CHECK(std::abs(x) <= bound);
    }
  }
}

TEST_CASE("integer search: parallel result is deterministic") {
  std::vector<std::int64_t> c{1, 1, 1, -3, -5};
  auto a = integer_search_parallel(c, 12), b = integer_search_parallel(c, 12);
  REQUIRE(a);
  CHECK(*a == *b);
  CHECK(value(c, *a) == 0);
}

TEST_CASE("integer search: budget and input checks") {
  std::vector<std::int64_t> c(12, 1);
  c[0] = -1;
  CHECK_THROWS_AS(integer_search_parallel(c, 1000), Error);
  CHECK_FALSE(integer_search_fits(12, 1000));
  CHECK(integer_search_fits(4, 1000));
  std::vector<std::int64_t> z{1, 0};
  CHECK_THROWS_AS(integer_search_serial(z, 3), Error);
  CHECK(integer_search_cost(3, 2) == 125u);
}

TEST_CASE("F_p counting against a naive oracle") {
  Rng rng(13);
  for (std::uint64_t p : {5u, 7u, 11u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<std::uint64_t> c;
      std::uniform_int_distribution<std::uint64_t> r(1, p - 1);
      for (std::size_t i = 0; i < n; ++i) c.push_back(r(rng));
      const auto expect = naive_count(c, p);
      CHECK(count_isotropic_fp(c, p, Exec::Serial) == expect);
      CHECK(count_isotropic_fp(c, p, Exec::Parallel) == expect);
    }
  }
  // <1,1,1> over F_5 has p^2 = 25 zeros (a nondegenerate conic has p + 1 points).
  CHECK(count_isotropic_fp(std::vector<std::uint64_t>{1, 1, 1}, 5, Exec::Serial) == 25);
}

TEST_CASE("F_p constrained search") {
  std::vector<std::uint64_t> c{1, 1, 1};
  auto v = find_isotropic_fp(c, 5, {}, Exec::Serial);
  REQUIRE(v);
  auto w = find_isotropic_fp(c, 5, {}, Exec::Parallel);
  CHECK(*v == *w);
  FpConstraints k;
  k.orthogonal_to.push_back(*v);
  k.zero_positions.push_back(0);
  auto u = find_isotropic_fp(c, 5, k, Exec::Serial);
  auto u2 = find_isotropic_fp(c, 5, k, Exec::Parallel);
  CHECK(u == u2);
  if (u) {
    CHECK((*u)[0] == 0);
    std::uint64_t dot = 0;
    for (int i = 0; i < 3; ++i) dot += (*u)[i] * (*v)[i];
    CHECK(dot % 5 == 0);
  }
  CHECK(witt_index_fp_enumeration(c, 5, Exec::Serial) == 1);
  CHECK(witt_index_fp_enumeration(std::vector<std::uint64_t>{1, 1, 1, 1}, 5, Exec::Parallel) == 2);
  CHECK(witt_index_fp_enumeration(std::vector<std::uint64_t>{1, 1}, 7, Exec::Serial) == 0);
  CHECK(witt_index_fp_enumeration(std::vector<std::uint64_t>{1, 1, 1, 3}, 7, Exec::Serial) == 1);
}
