// Local invariants of forms over Q: Hilbert symbols, Hasse invariants,
// local isotropy and local Witt indices.

#include <algorithm>
#include <set>

#include "f4kit/qforms.hpp"

namespace f4kit {

namespace {

mpz_class square_class_integer(const Element& a) {
  if (!a.field().is_rationals()) {
    raise(ErrorCode::UnsupportedField, "Hilbert symbols are implemented over Q only, not " + a.field().name());
  }
  if (a.is_zero()) raise(ErrorCode::ZeroElement, "Hilbert symbol of zero");
  const mpq_class& q = a.rational_part();
  return q.get_num() * q.get_den();
}

mpz_class strip(const mpz_class& n, const mpz_class& p, unsigned& val) {
  mpz_class u;
  val = static_cast<unsigned>(mpz_remove(u.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  return u;
}

int hilbert_integers(const mpz_class& a, const mpz_class& b, Place place) {
  if (place.is_infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  const mpz_class p(static_cast<unsigned long>(place.prime));
  unsigned alpha = 0, beta = 0;
  mpz_class u = strip(a, p, alpha);
  mpz_class v = strip(b, p, beta);
  if (place.prime == 2) {
    const unsigned long um = mpz_fdiv_ui(u.get_mpz_t(), 8);
    const unsigned long vm = mpz_fdiv_ui(v.get_mpz_t(), 8);
    auto eps = [](unsigned long r) { return r % 4 == 3 ? 1 : 0; };
    auto omega = [](unsigned long r) { return (r == 3 || r == 5) ? 1 : 0; };
    int e = eps(um) * eps(vm) + static_cast<int>(alpha % 2) * omega(vm) + static_cast<int>(beta % 2) * omega(um);
    return e % 2 == 0 ? 1 : -1;
  }
  int s = 1;
  if ((alpha % 2) && (beta % 2) && place.prime % 4 == 3) s = -s;
  if (beta % 2) s *= nt::legendre(u, place.prime);
  if (alpha % 2) s *= nt::legendre(v, place.prime);
  return s;
}

void require_rational_form(const QuadraticForm& q) {
  if (!q.field().is_rationals()) {
    raise(ErrorCode::UnsupportedField, "local invariants are implemented over Q only, not " + q.field().name());
  }
}

// Serre's existence criterion for a form of dimension m over Q_p with
// determinant class d and Hasse invariant eps.
bool local_form_exists(std::size_t m, const mpq_class& d, int eps, std::uint64_t p) {
  switch (m) {
    case 0: return is_local_square(d, p) && eps == 1;
    case 1: return eps == 1;
    case 2: return !is_local_square(-d, p) || eps == 1;
    default: return true;
  }
}

}  // namespace

int hilbert_symbol(const Element& a, const Element& b, Place place) {
  return hilbert_integers(square_class_integer(a), square_class_integer(b), place);
}

int hasse_invariant(const QuadraticForm& q, Place place) {
  require_rational_form(q);
  std::vector<mpz_class> ints;
  ints.reserve(q.dim());
  for (const auto& c : q.coeffs()) ints.push_back(square_class_integer(c));
  int s = 1;
  for (std::size_t i = 0; i < ints.size(); ++i)
    for (std::size_t j = i + 1; j < ints.size(); ++j) s *= hilbert_integers(ints[i], ints[j], place);
  return s;
}

std::vector<Place> relevant_places(const QuadraticForm& q) {
  require_rational_form(q);
  std::set<std::uint64_t> primes{2};
  for (const auto& c : q.coeffs()) {
    const mpq_class& r = c.rational_part();
    for (const mpz_class* part : {&r.get_num(), &r.get_den()}) {
      if (abs(*part) == 1) continue;
      for (const auto& [p, e] : nt::factor(*part)) {
        if (!p.fits_ulong_p()) raise(ErrorCode::UnsupportedCase, "prime factor beyond 64 bits");
        primes.insert(p.get_ui());
      }
    }
  }
  std::vector<Place> places{Place::infinity()};
  for (auto p : primes) places.push_back(Place::at(p));
  return places;
}

std::pair<std::size_t, std::size_t> signature(const QuadraticForm& q, int embedding) {
  std::size_t pos = 0, neg = 0;
  for (const auto& c : q.coeffs()) {
    auto signs = real_signs(c);
    if (embedding < 0 || static_cast<std::size_t>(embedding) >= signs.size()) {
      raise(ErrorCode::InvalidInput, q.field().name() + " has no real embedding #" + std::to_string(embedding));
    }
    (signs[static_cast<std::size_t>(embedding)] > 0 ? pos : neg)++;
  }
  return {pos, neg};
}

bool is_local_square(const mpq_class& x, std::uint64_t p) {
  if (sgn(x) == 0) raise(ErrorCode::ZeroElement, "local square class of zero");
  mpz_class z = x.get_num() * x.get_den();
  unsigned v = 0;
  mpz_class u = strip(z, mpz_class(static_cast<unsigned long>(p)), v);
  if (v % 2) return false;
  if (p == 2) return mpz_fdiv_ui(u.get_mpz_t(), 8) == 1;
  return nt::legendre(u, p) == 1;
}

bool is_locally_isotropic(const QuadraticForm& q, Place place) {
  require_rational_form(q);
  const std::size_t n = q.dim();
  if (place.is_infinite()) {
    auto [pos, neg] = signature(q);
    return pos > 0 && neg > 0;
  }
  if (n <= 1) return false;
  if (n >= 5) return true;
  const mpq_class d = q.determinant().rational_part();
  const Field Q = Field::rationals();
  const int eps = hasse_invariant(q, place);
  if (n == 2) return is_local_square(-d, place.prime);
  if (n == 3) return eps == hilbert_symbol(Q.from_int(-1), Q.from_rational(-d), place);
  return !is_local_square(d, place.prime) || eps == hilbert_symbol(Q.from_int(-1), Q.from_int(-1), place);
}

std::size_t local_witt_index(const QuadraticForm& q, Place place) {
  require_rational_form(q);
  if (place.is_infinite()) {
    auto [pos, neg] = signature(q);
    return std::min(pos, neg);
  }
  const std::size_t n = q.dim();
  const Field Q = Field::rationals();
  const mpq_class d = n == 0 ? mpq_class(1) : q.determinant().rational_part();
  const int eps = hasse_invariant(q, place);
  for (std::size_t i = n / 2 + 1; i-- > 0;) {
    const mpq_class sign = (i % 2) ? -1 : 1;
    const mpq_class rest_det = d * sign;
    const int hyp_eps = hasse_invariant(hyperbolic(Q, i), place);
    const int cross = hilbert_symbol(Q.from_rational(sign), Q.from_rational(rest_det), place);
    if (local_form_exists(n - 2 * i, rest_det, eps * hyp_eps * cross, place.prime)) return i;
  }
  return 0;
}

}  // namespace f4kit
