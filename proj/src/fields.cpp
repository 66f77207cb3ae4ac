#include "f4kit/fields.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace f4kit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::PrimeFieldHasNoRealPlaces: return "PrimeFieldHasNoRealPlaces";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::TooManyDoublings: return "TooManyDoublings";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::UnsupportedExtension: return "UnsupportedExtension";
    case ErrorCode::NotPrimitiveIdempotent: return "NotPrimitiveIdempotent";
    case ErrorCode::UnsupportedIdempotent: return "UnsupportedIdempotent";
    case ErrorCode::NotOnTorus: return "NotOnTorus";
    case ErrorCode::SingularCayley: return "SingularCayley";
    case ErrorCode::NotGammaOrthogonal: return "NotGammaOrthogonal";
    case ErrorCode::NonNormalizableGamma: return "NonNormalizableGamma";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Number theory helpers

namespace nt {

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) { return is_prime(mpz_class(static_cast<unsigned long>(n))); }

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const mpz_class& v) -> mpz_class {
      mpz_class t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          mpz_class diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& value) {
  if (value == 0) raise(ErrorCode::ZeroElement, "cannot factor zero");
  mpz_class n = abs(value);
  std::vector<mpz_class> primes;
  for (unsigned long p = 2; p < 1000 && n > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<mpz_class, unsigned>> result;
  for (const auto& p : primes) {
    if (!result.empty() && result.back().first == p) {
      ++result.back().second;
    } else {
      result.emplace_back(p, 1u);
    }
  }
  return result;
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) raise(ErrorCode::ZeroElement, "zero has no square class");
  mpz_class s = sgn(n) < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(n)) {
    if (e % 2 == 1) s *= p;
  }
  return s;
}

mpz_class squarefree_part(const mpq_class& q) {
  mpz_class prod = q.get_num() * q.get_den();
  return squarefree_part(prod);
}

unsigned valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) raise(ErrorCode::ZeroElement, "valuation of zero");
  return static_cast<unsigned>(mpz_remove(mpz_class().get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

int legendre(const mpz_class& a, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
  std::uint64_t residue = r.get_ui();
  if (residue == 0) return 0;
  return powmod(residue, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(a, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace nt

// ---------------------------------------------------------------------------
// Field

Field Field::rationals() { return Field(FieldKind::Rationals, 0, 0); }

Field Field::prime(std::int64_t p) {
  if (p == 2 || p == 3) {
    raise(ErrorCode::InvalidField, "characteristic " + std::to_string(p) + " is not supported");
  }
  if (p < 5 || p > (std::int64_t{1} << 62) || !nt::is_prime(static_cast<std::uint64_t>(p))) {
    raise(ErrorCode::InvalidField, "p = " + std::to_string(p) + " is not a prime >= 5");
  }
  return Field(FieldKind::PrimeField, p, 0);
}

Field Field::quadratic(std::int64_t d) {
  if (d == 0 || d == 1) raise(ErrorCode::InvalidField, "d must not be 0 or 1");
  if (nt::squarefree_part(mpz_class(static_cast<long>(d))) != d) {
    raise(ErrorCode::InvalidField, "d = " + std::to_string(d) + " is not squarefree");
  }
  return Field(FieldKind::QuadExt, 0, d);
}

int Field::real_places() const noexcept {
  switch (kind_) {
    case FieldKind::Rationals: return 1;
    case FieldKind::PrimeField: return 0;
    case FieldKind::QuadExt: return d_ > 0 ? 2 : 0;
  }
  return 0;
}

bool Field::extends(const Field& base) const noexcept {
  if (*this == base) return true;
  return base.is_rationals() && is_quadratic();
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::PrimeField: return "F" + std::to_string(p_);
    case FieldKind::QuadExt: return "Q(sqrt(" + std::to_string(d_) + "))";
  }
  return "?";
}

Element Field::zero() const {
  Element e;
  e.field_ = *this;
  return e;
}

Element Field::one() const { return from_int(1); }

Element Field::from_int(long long v) const { return from_integer(mpz_class(static_cast<long>(v))); }

Element Field::from_integer(const mpz_class& v) const {
  Element e = zero();
  if (is_prime()) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p_));
    e.r_ = r.get_ui();
  } else {
    e.a_ = v;
  }
  return e;
}

Element Field::from_rational(const mpq_class& v) const {
  if (is_prime()) {
    Element num = from_integer(v.get_num());
    Element den = from_integer(v.get_den());
    return num / den;
  }
  Element e = zero();
  e.a_ = v;
  return e;
}

Element Field::from_parts(const mpq_class& a, const mpq_class& b) const {
  if (!is_quadratic()) {
    if (b != 0) raise(ErrorCode::FieldMismatch, "sqrt(d) part given for " + name());
    return from_rational(a);
  }
  Element e = zero();
  e.a_ = a;
  e.b_ = b;
  return e;
}

Element Field::sqrt_d() const {
  if (!is_quadratic()) raise(ErrorCode::FieldMismatch, name() + " has no generator sqrt(d)");
  return from_parts(0, 1);
}

namespace {

std::string clean_literal(std::string_view literal) {
  std::string s;
  for (std::size_t i = 0; i < literal.size(); ++i) {
    unsigned char ch = static_cast<unsigned char>(literal[i]);
    // U+2212 MINUS SIGN
    if (ch == 0xE2 && i + 2 < literal.size() && static_cast<unsigned char>(literal[i + 1]) == 0x88 &&
        static_cast<unsigned char>(literal[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (std::isspace(ch)) continue;
    s.push_back(static_cast<char>(ch));
  }
  return s;
}

mpq_class parse_rational(const std::string& body, std::string_view whole) {
  if (body.empty()) raise(ErrorCode::InvalidInput, "empty number in literal '" + std::string(whole) + "'");
  std::size_t slash = body.find('/');
  auto digits_ok = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  std::string num = body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den)) {
    raise(ErrorCode::InvalidInput, "malformed number '" + body + "' in literal '" + std::string(whole) + "'");
  }
  mpz_class n(num), d(den);
  if (d == 0) raise(ErrorCode::DivisionByZero, "zero denominator in literal '" + std::string(whole) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace

Element Field::parse(std::string_view literal) const {
  std::string s = clean_literal(literal);
  if (s.empty()) raise(ErrorCode::InvalidInput, "empty element literal");

  mpq_class a = 0, b = 0;
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (any) {
      raise(ErrorCode::InvalidInput, "malformed literal '" + std::string(literal) + "'");
    }
    std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    if (term.empty()) raise(ErrorCode::InvalidInput, "malformed literal '" + std::string(literal) + "'");
    if (term.back() == 'r') {
      if (!is_quadratic()) {
        raise(ErrorCode::InvalidInput, "literal '" + std::string(literal) + "' uses r outside Q(sqrt d)");
      }
      std::string coeff = term.substr(0, term.size() - 1);
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      b += sign * (coeff.empty() ? mpq_class(1) : parse_rational(coeff, literal));
    } else {
      a += sign * parse_rational(term, literal);
    }
    any = true;
  }
  return from_parts(a, b);
}

// ---------------------------------------------------------------------------
// Element

namespace {

void check_same(const Element& x, const Element& y) {
  if (!(x.field() == y.field())) {
    raise(ErrorCode::FieldMismatch, "operands from " + x.field().name() + " and " + y.field().name());
  }
}

}  // namespace

void Element::normalize() {
  if (!field_.is_quadratic()) b_ = 0;
}

bool Element::is_zero() const {
  if (field_.is_prime()) return r_ == 0;
  return sgn(a_) == 0 && sgn(b_) == 0;
}

bool Element::is_one() const {
  if (field_.is_prime()) return r_ == 1;
  return a_ == 1 && sgn(b_) == 0;
}

bool Element::is_rational() const { return field_.is_prime() || sgn(b_) == 0; }

mpq_class Element::to_rational() const {
  if (field_.is_prime() || sgn(b_) != 0) {
    raise(ErrorCode::UnsupportedField, "element " + to_string() + " is not a rational number");
  }
  return a_;
}

Element Element::operator-() const {
  Element e = *this;
  if (field_.is_prime()) {
    e.r_ = r_ == 0 ? 0 : static_cast<std::uint64_t>(field_.p()) - r_;
  } else {
    e.a_ = -a_;
    e.b_ = -b_;
  }
  return e;
}

Element Element::inv() const {
  if (is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero");
  Element e = *this;
  const auto p = static_cast<std::uint64_t>(field_.p());
  switch (field_.kind()) {
    case FieldKind::PrimeField: e.r_ = nt::powmod(r_, p - 2, p); break;
    case FieldKind::Rationals: e.a_ = 1 / a_; break;
    case FieldKind::QuadExt: {
      mpq_class n = a_ * a_ - field_.d() * b_ * b_;
      e.a_ = a_ / n;
      e.b_ = -b_ / n;
      break;
    }
  }
  return e;
}

Element operator+(const Element& x, const Element& y) {
  Element e = x;
  e += y;
  return e;
}

Element operator-(const Element& x, const Element& y) {
  Element e = x;
  e -= y;
  return e;
}

Element& Element::operator+=(const Element& y) {
  check_same(*this, y);
  if (field_.is_prime()) {
    const auto p = static_cast<std::uint64_t>(field_.p());
    r_ = (r_ + y.r_) % p;
  } else {
    a_ += y.a_;
    if (field_.is_quadratic()) b_ += y.b_;
  }
  return *this;
}

Element& Element::operator-=(const Element& y) {
  check_same(*this, y);
  if (field_.is_prime()) {
    const auto p = static_cast<std::uint64_t>(field_.p());
    r_ = (r_ + p - y.r_) % p;
  } else {
    a_ -= y.a_;
    if (field_.is_quadratic()) b_ -= y.b_;
  }
  return *this;
}

Element& Element::operator*=(const Element& y) {
  check_same(*this, y);
  switch (field_.kind()) {
    case FieldKind::PrimeField: r_ = nt::mulmod(r_, y.r_, static_cast<std::uint64_t>(field_.p())); break;
    case FieldKind::Rationals: a_ *= y.a_; break;
    case FieldKind::QuadExt: {
      mpq_class a = a_ * y.a_ + field_.d() * b_ * y.b_;
      mpq_class b = a_ * y.b_ + b_ * y.a_;
      a_ = std::move(a);
      b_ = std::move(b);
      break;
    }
  }
  return *this;
}

Element operator*(const Element& x, const Element& y) {
  Element e = x;
  e *= y;
  return e;
}

Element operator/(const Element& x, const Element& y) {
  check_same(x, y);
  if (y.is_zero()) raise(ErrorCode::DivisionByZero, "division by zero");
  if (x.field().is_rationals()) {
    Element e = x;
    e.a_ /= y.a_;
    return e;
  }
  return x * y.inv();
}

bool operator==(const Element& x, const Element& y) {
  check_same(x, y);
  if (x.field().is_prime()) return x.r_ == y.r_;
  return x.a_ == y.a_ && x.b_ == y.b_;
}

Element Element::conjugate() const {
  Element e = *this;
  if (field_.is_quadratic()) e.b_ = -b_;
  return e;
}

Element Element::embed(const Field& target) const {
  if (field_ == target) return *this;
  if (!target.extends(field_)) {
    raise(ErrorCode::UnsupportedExtension, target.name() + " is not an extension of " + field_.name());
  }
  return target.from_parts(a_, 0);
}

std::string Element::to_string() const {
  switch (field_.kind()) {
    case FieldKind::PrimeField: return std::to_string(r_);
    case FieldKind::Rationals: return a_.get_str();
    case FieldKind::QuadExt: {
      if (sgn(b_) == 0) return a_.get_str();
      std::string out;
      if (sgn(a_) != 0) out = a_.get_str();
      mpq_class mag = abs(b_);
      if (sgn(b_) < 0) {
        out += "-";
      } else if (!out.empty()) {
        out += "+";
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += "r";
      return out;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Free operations

ArithResult field_arith(FieldOp op, const Element& x, const std::optional<Element>& y) {
  auto need_y = [&]() -> const Element& {
    if (!y) raise(ErrorCode::InvalidInput, "binary field operation needs two operands");
    return *y;
  };
  ArithResult r;
  switch (op) {
    case FieldOp::Add: r.value = x + need_y(); break;
    case FieldOp::Sub: r.value = x - need_y(); break;
    case FieldOp::Mul: r.value = x * need_y(); break;
    case FieldOp::Div: r.value = x / need_y(); break;
    case FieldOp::Neg: r.value = -x; break;
    case FieldOp::Inv: r.value = x.inv(); break;
    case FieldOp::Eq: r.flag = x == need_y(); break;
    case FieldOp::IsZero: r.flag = x.is_zero(); break;
  }
  return r;
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return mpq_class(0);
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return mpq_class(n, d);
}

int sign_plus_embedding(const mpq_class& a, const mpq_class& b, long d) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  mpq_class lhs = a * a, rhs = d * b * b;
  return lhs > rhs ? sa : sb;
}

}  // namespace

std::optional<Element> is_square(const Element& x) {
  const Field& f = x.field();
  if (x.is_zero()) return f.zero();
  switch (f.kind()) {
    case FieldKind::Rationals: {
      auto s = rational_sqrt(x.rational_part());
      if (!s) return std::nullopt;
      return f.from_rational(*s);
    }
    case FieldKind::PrimeField: {
      auto s = nt::sqrt_mod(x.residue(), static_cast<std::uint64_t>(f.p()));
      if (!s) return std::nullopt;
      return f.from_integer(mpz_class(static_cast<unsigned long>(*s)));
    }
    case FieldKind::QuadExt: {
      const mpq_class& a = x.rational_part();
      const mpq_class& b = x.sqrt_part();
      if (sgn(b) == 0) {
        if (auto s = rational_sqrt(a)) return f.from_parts(*s, 0);
        if (auto s = rational_sqrt(a / f.d())) return f.from_parts(0, *s);
        return std::nullopt;
      }
      auto s = rational_sqrt(a * a - f.d() * b * b);
      if (!s) return std::nullopt;
      for (int sign : {1, -1}) {
        mpq_class half = (a + sign * *s) / 2;
        auto u = rational_sqrt(half);
        if (!u || sgn(*u) == 0) continue;
        Element w = f.from_parts(*u, b / (2 * *u));
        if (w * w == x) return w;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<int> real_signs(const Element& x) {
  const Field& f = x.field();
  if (f.is_prime()) raise(ErrorCode::PrimeFieldHasNoRealPlaces, f.name() + " has no real places");
  if (x.is_zero()) raise(ErrorCode::ZeroElement, "sign of zero");
  if (f.is_rationals()) return {sgn(x.rational_part())};
  if (f.d() < 0) return {};
  const mpq_class& a = x.rational_part();
  const mpq_class& b = x.sqrt_part();
  return {sign_plus_embedding(a, b, f.d()), sign_plus_embedding(a, -b, f.d())};
}

bool same_square_class(const Element& x, const Element& y) {
  if (x.is_zero() || y.is_zero()) raise(ErrorCode::ZeroElement, "square class of zero");
  return is_square(x / y).has_value();
}

Element square_class_rep(const Element& x) {
  if (x.is_zero()) raise(ErrorCode::ZeroElement, "square class of zero");
  const Field& f = x.field();
  switch (f.kind()) {
    case FieldKind::Rationals: return f.from_integer(nt::squarefree_part(x.rational_part()));
    case FieldKind::PrimeField: {
      if (is_square(x)) return f.one();
      const auto p = static_cast<std::uint64_t>(f.p());
      std::uint64_t n = 2;
      while (nt::powmod(n, (p - 1) / 2, p) == 1) ++n;
      return f.from_integer(mpz_class(static_cast<unsigned long>(n)));
    }
    case FieldKind::QuadExt: return x;
  }
  return x;
}

}  // namespace f4kit
