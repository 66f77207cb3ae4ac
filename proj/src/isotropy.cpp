// Isotropy decisions and witness constructions for diagonal forms.

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "f4kit/qforms.hpp"

namespace f4kit {

namespace {

constexpr std::int64_t kFirstBound = 4;
constexpr std::uint64_t kSerialSearchLimit = 50'000'000;
constexpr std::size_t kSubformCandidates = 8;
constexpr std::size_t kSubformAttempts = 10;

// Nonzero v with c_i v_i^2 + c_j v_j^2 = 0 whenever -c_i/c_j is a square.
std::optional<Vector> pair_witness(const QuadraticForm& q) {
  const Field& f = q.field();
  const auto& c = q.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (auto r = is_square(-c[i] / c[j])) {
        Vector v = zero_vector(f, c.size());
        v[i] = f.one();
        v[j] = *r;
        return v;
      }
    }
  return std::nullopt;
}

std::optional<kernels::IntVec> run_integer_search(const std::vector<std::int64_t>& coeffs, std::int64_t bound,
                                                  kernels::Exec exec) {
  if (exec == kernels::Exec::Parallel) {
    if (!kernels::integer_search_fits(coeffs.size(), bound)) return std::nullopt;
    return kernels::integer_search_parallel(coeffs, bound);
  }
  auto cost = kernels::integer_search_cost(coeffs.size(), bound);
  if (!cost || *cost > kSerialSearchLimit) return std::nullopt;
  return kernels::integer_search_serial(coeffs, bound);
}

// Escalating bounded search for a nonzero integer zero of sum c_i x_i^2.
std::optional<kernels::IntVec> escalate(const std::vector<std::int64_t>& coeffs, const SearchOptions& options) {
  if (options.max_bound <= 0) return std::nullopt;
  std::int64_t bound = std::min(kFirstBound, options.max_bound);
  while (true) {
    if (auto x = run_integer_search(coeffs, bound, options.exec)) return x;
    if (bound >= options.max_bound) break;
    bound = std::min(bound * 2, options.max_bound);
  }
  return std::nullopt;
}

bool indefinite(const std::vector<std::int64_t>& c) {
  return std::any_of(c.begin(), c.end(), [](auto x) { return x > 0; }) &&
         std::any_of(c.begin(), c.end(), [](auto x) { return x < 0; });
}

// Witness for sum c_i x_i^2 over Q, or nullopt when the bounded searches fail.
std::optional<std::vector<mpq_class>> rational_witness(const std::vector<mpq_class>& c, const SearchOptions& options) {
  const std::size_t n = c.size();
  if (n < 2) return std::nullopt;
  // c_i = f_i * s_i^2 with f_i a squarefree integer; solutions scale by 1/s_i.
  std::vector<std::int64_t> f(n);
  std::vector<mpq_class> s(n);
  const mpz_class limit = mpz_class(1) << 62;
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class nd = c[i].get_num() * c[i].get_den();
    const mpz_class fi = nt::squarefree_part(nd);
    if (abs(fi) >= limit) return std::nullopt;
    mpz_class t2 = nd / fi, t;
    mpz_sqrt(t.get_mpz_t(), t2.get_mpz_t());
    s[i] = mpq_class(t, c[i].get_den());
    s[i].canonicalize();
    f[i] = fi.get_si();
  }
  auto lift = [&](const std::vector<std::size_t>& idx, const kernels::IntVec& y) {
    std::vector<mpq_class> x(n, 0);
    for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = mpq_class(static_cast<long>(y[k])) / s[idx[k]];
    return x;
  };
  auto attempt = [&](const std::vector<std::size_t>& idx) -> std::optional<std::vector<mpq_class>> {
    std::vector<std::int64_t> sub;
    for (auto i : idx) sub.push_back(f[i]);
    if (!indefinite(sub)) return std::nullopt;
    if (auto y = escalate(sub, options)) return lift(idx, *y);
    return std::nullopt;
  };
  if (n <= 4) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return attempt(all);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return std::abs(f[a]) < std::abs(f[b]); });
  order.resize(std::min(n, kSubformCandidates));
  const std::size_t m = order.size();
  std::size_t tried = 0;
  for (std::uint32_t mask = 0; mask < (1u << m) && tried < kSubformAttempts; ++mask) {
    if (std::popcount(mask) != 5) continue;
    std::vector<std::size_t> idx;
    for (std::size_t b = 0; b < m; ++b)
      if (mask >> b & 1) idx.push_back(order[b]);
    std::sort(idx.begin(), idx.end());
    std::vector<std::int64_t> sub;
    for (auto i : idx) sub.push_back(f[i]);
    if (!indefinite(sub)) continue;
    ++tried;
    if (auto x = attempt(idx)) return x;
  }
  return std::nullopt;
}

std::optional<Vector> rational_form_witness(const QuadraticForm& q, const SearchOptions& options) {
  std::vector<mpq_class> c;
  for (const auto& a : q.coeffs()) c.push_back(a.rational_part());
  auto x = rational_witness(c, options);
  if (!x) return std::nullopt;
  Vector v;
  for (const auto& xi : *x) v.push_back(q.field().from_rational(xi));
  return v;
}

std::optional<Vector> prime_field_witness(const QuadraticForm& q) {
  const Field& f = q.field();
  const std::size_t n = q.dim();
  if (n < 2) return std::nullopt;
  if (n == 2) return pair_witness(q);
  const auto& c = q.coeffs();
  // a x^2 + b y^2 + c = 0 always has a solution over F_p.
  for (long long x = 0; x < f.p(); ++x) {
    const Element ex = f.from_int(x);
    if (auto y = is_square(-(c[2] + c[0] * ex * ex) / c[1])) {
      Vector v = zero_vector(f, n);
      v[0] = ex;
      v[1] = *y;
      v[2] = f.one();
      return v;
    }
  }
  raise(ErrorCode::InternalInvariant, "no isotropic vector for a ternary form over " + f.name());
}

// Over Q(sqrt d): coefficients whose ratios are rational form a rescaled
// rational subform; moving sqrt(d) into some coordinates turns
// c r_j x_j^2 into c (d r_j) y_j^2.
std::optional<Vector> quadratic_field_witness(const QuadraticForm& q, const SearchOptions& options) {
  if (auto v = pair_witness(q)) return v;
  const Field& f = q.field();
  const auto& c = q.coeffs();
  const std::size_t n = c.size();
  const mpq_class d(f.d());
  std::vector<bool> grouped(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (grouped[k]) continue;
    std::vector<std::size_t> group;
    std::vector<mpq_class> ratios;
    for (std::size_t j = k; j < n; ++j) {
      const Element r = c[j] / c[k];
      if (!r.is_rational()) continue;
      grouped[j] = true;
      group.push_back(j);
      ratios.push_back(r.rational_part());
    }
    if (group.size() < 2) continue;
    const std::size_t g = std::min<std::size_t>(group.size(), 8);
    // Masks containing the first coordinate only rescale the subform by d.
    for (std::uint32_t mask = 0; mask < (1u << g); mask += 2) {
      std::vector<mpq_class> sub = ratios;
      for (std::size_t b = 0; b < g; ++b)
        if (mask >> b & 1) sub[b] *= d;
      auto y = rational_witness(sub, options);
      if (!y) continue;
      Vector v = zero_vector(f, n);
      for (std::size_t t = 0; t < group.size(); ++t) {
        Element x = f.from_rational((*y)[t]);
        if (t < g && (mask >> t & 1)) x *= f.sqrt_d();
        v[group[t]] = x;
      }
      return v;
    }
  }
  return std::nullopt;
}

DecisionMethod trivial_method(const Field& f) {
  switch (f.kind()) {
    case FieldKind::PrimeField: return DecisionMethod::FiniteFieldCount;
    case FieldKind::QuadExt: return DecisionMethod::RealPlaces;
    case FieldKind::Rationals: break;
  }
  return DecisionMethod::LocalInvariants;
}

IsotropyCertificate decide_rational(const QuadraticForm& q, const SearchOptions& options) {
  for (auto place : relevant_places(q)) {
    if (!is_locally_isotropic(q, place)) {
      const bool real = place.is_infinite();
      return {false, real ? DecisionMethod::RealPlaces : DecisionMethod::LocalInvariants, std::nullopt,
              real ? "definite over R" : "anisotropic over Q_" + place.name()};
    }
  }
  return {true, DecisionMethod::LocalInvariants, rational_form_witness(q, options),
          "isotropic at every place (Hasse-Minkowski)"};
}

IsotropyCertificate decide_prime_field(const QuadraticForm& q) {
  const std::size_t n = q.dim();
  if (n == 2) {
    auto w = pair_witness(q);
    return {w.has_value(), DecisionMethod::FiniteFieldCount, w,
            w ? "-a1*a2 is a square" : "-a1*a2 is a non-square"};
  }
  return {true, DecisionMethod::FiniteFieldCount, prime_field_witness(q),
          "every form of dimension >= 3 over a finite field is isotropic"};
}

IsotropyCertificate decide_quadratic(const QuadraticForm& q, const SearchOptions& options) {
  const Field& f = q.field();
  for (int e = 0; e < f.real_places(); ++e) {
    auto [pos, neg] = signature(q, e);
    if (pos == 0 || neg == 0) {
      return {false, DecisionMethod::RealPlaces, std::nullopt,
              "definite at real place " + std::to_string(e)};
    }
  }
  if (auto w = quadratic_field_witness(q, options)) {
    return {true, DecisionMethod::ExplicitWitness, w, "explicit isotropic vector"};
  }
  if (q.dim() >= 5) {
    return {true, DecisionMethod::RealPlaces, std::nullopt,
            "dimension >= 5 and indefinite at every real place"};
  }
  raise(ErrorCode::UnsupportedCase, "isotropy of " + q.to_string() + " over " + f.name() +
                                        " is undecided: indefinite at every real place, no witness found");
}

}  // namespace

IsotropyCertificate is_isotropic(const QuadraticForm& q, const SearchOptions& options) {
  if (q.dim() <= 1) {
    return {false, trivial_method(q.field()), std::nullopt,
            q.dim() == 0 ? "zero-dimensional form" : "regular one-dimensional form"};
  }
  switch (q.field().kind()) {
    case FieldKind::Rationals: return decide_rational(q, options);
    case FieldKind::PrimeField: return decide_prime_field(q);
    case FieldKind::QuadExt: return decide_quadratic(q, options);
  }
  raise(ErrorCode::InternalInvariant, "unknown field kind");
}

std::optional<Vector> find_isotropic_vector(const QuadraticForm& q, const SearchOptions& options) {
  switch (q.field().kind()) {
    case FieldKind::Rationals: {
      if (auto v = pair_witness(q)) return v;
      return rational_form_witness(q, options);
    }
    case FieldKind::PrimeField: return prime_field_witness(q);
    case FieldKind::QuadExt: return quadratic_field_witness(q, options);
  }
  return std::nullopt;
}

std::optional<Vector> isotropic_vector_search(const QuadraticForm& q, std::int64_t bound, kernels::Exec exec) {
  const Field& f = q.field();
  const std::size_t n = q.dim();
  if (n == 0) return std::nullopt;
  switch (f.kind()) {
    case FieldKind::QuadExt:
      raise(ErrorCode::UnsupportedField, "bounded vector search is defined over Q and F_p only");
    case FieldKind::Rationals: {
      mpz_class l = 1;
      for (const auto& c : q.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational_part().get_den().get_mpz_t());
      std::vector<std::int64_t> ints;
      const mpz_class limit = mpz_class(1) << 62;
      for (const auto& c : q.coeffs()) {
        mpz_class v = mpz_class(c.rational_part() * l);
        if (abs(v) >= limit) raise(ErrorCode::SearchSpaceTooLarge, "coefficient too large for the integer search");
        ints.push_back(v.get_si());
      }
      auto x = exec == kernels::Exec::Serial ? kernels::integer_search_serial(ints, bound)
                                             : kernels::integer_search_parallel(ints, bound);
      if (!x) return std::nullopt;
      Vector v;
      for (auto xi : *x) v.push_back(f.from_int(xi));
      return v;
    }
    case FieldKind::PrimeField: {
      const auto p = static_cast<std::uint64_t>(f.p());
      std::vector<std::uint64_t> res;
      for (const auto& c : q.coeffs()) res.push_back(c.residue());
      Vector v;
      unsigned __int128 space = 1;
      for (std::size_t i = 0; i < n && space <= kernels::kMaxFpEnumeration; ++i) space *= p;
      if (space <= kernels::kMaxFpEnumeration) {
        auto x = kernels::find_isotropic_fp(res, p, {}, exec);
        if (!x) return std::nullopt;
        for (auto xi : *x) v.push_back(f.from_int(static_cast<long long>(xi)));
        return v;
      }
      // Random sampling: choose all but the last coordinate, solve for it.
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
      for (int attempt = 0; attempt < 100'000; ++attempt) {
        Vector x(n, f.zero());
        Element partial = f.zero();
        for (std::size_t i = 0; i + 1 < n; ++i) {
          x[i] = f.from_int(static_cast<long long>(dist(rng)));
          partial += q.coeffs()[i] * x[i] * x[i];
        }
        if (auto y = is_square(-partial / q.coeffs()[n - 1])) {
          x[n - 1] = *y;
          if (!is_zero_vector(x)) return x;
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace f4kit
