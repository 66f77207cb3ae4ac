#include "f4kit/qforms.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace f4kit {

// ---------------------------------------------------------------------------
// QuadraticForm

QuadraticForm::QuadraticForm(Field field, Vector coeffs, std::string label)
    : field_(field), coeffs_(std::move(coeffs)), label_(std::move(label)) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!(coeffs_[i].field() == field_)) {
      raise(ErrorCode::FieldMismatch, "coefficient " + std::to_string(i) + " is not in " + field_.name());
    }
    if (coeffs_[i].is_zero()) {
      raise(ErrorCode::DegenerateForm, "coefficient " + std::to_string(i) + " is zero; forms must be regular");
    }
  }
}

Element QuadraticForm::evaluate(const Vector& x) const { return polar(x, x); }

Element QuadraticForm::polar(const Vector& x, const Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) raise(ErrorCode::InvalidInput, "vector length does not match form");
  Element s = field_.zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero() || y[i].is_zero()) continue;
    s += coeffs_[i] * x[i] * y[i];
  }
  return s;
}

Element QuadraticForm::determinant() const {
  Element d = field_.one();
  for (const auto& c : coeffs_) d *= c;
  return d;
}

Matrix QuadraticForm::gram() const { return Matrix::diagonal(field_, coeffs_); }

QuadraticForm QuadraticForm::scaled(const Element& lambda) const {
  Vector c;
  c.reserve(dim());
  for (const auto& a : coeffs_) c.push_back(lambda * a);
  return QuadraticForm(field_, std::move(c));
}

QuadraticForm QuadraticForm::orthogonal_sum(const QuadraticForm& other) const {
  if (!(field_ == other.field_)) raise(ErrorCode::FieldMismatch, "orthogonal sum across fields");
  Vector c = coeffs_;
  c.insert(c.end(), other.coeffs_.begin(), other.coeffs_.end());
  return QuadraticForm(field_, std::move(c));
}

QuadraticForm QuadraticForm::embed(const Field& target) const {
  return QuadraticForm(target, f4kit::embed(coeffs_, target), label_);
}

bool QuadraticForm::has_rational_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Element& e) { return e.is_rational(); });
}

std::string QuadraticForm::to_string() const {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < dim(); ++i) out << (i ? "," : "") << coeffs_[i].to_string();
  out << ">";
  return out.str();
}

QuadraticForm hyperbolic(const Field& field, std::size_t planes) {
  Vector c;
  for (std::size_t i = 0; i < planes; ++i) {
    c.push_back(field.one());
    c.push_back(-field.one());
  }
  return QuadraticForm(field, std::move(c));
}

std::string_view method_name(DecisionMethod m) {
  switch (m) {
    case DecisionMethod::LocalInvariants: return "local_invariants";
    case DecisionMethod::FiniteFieldCount: return "finite_field_count";
    case DecisionMethod::RealPlaces: return "real_places";
    case DecisionMethod::ExplicitWitness: return "explicit_witness";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Diagonalization

namespace {

void swap_basis(Matrix& a, Matrix& p, std::size_t i, std::size_t j) {
  if (i == j) return;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
  for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  for (std::size_t k = 0; k < p.rows(); ++k) std::swap(p(k, i), p(k, j));
}

// b_target <- b_target + f * b_source, applied to the Gram matrix and basis.
void add_basis(Matrix& a, Matrix& p, std::size_t target, std::size_t source, const Element& f) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) a(target, k) += f * a(source, k);
  for (std::size_t k = 0; k < n; ++k) a(k, target) += f * a(k, source);
  for (std::size_t k = 0; k < p.rows(); ++k) p(k, target) += f * p(k, source);
}

}  // namespace

Diagonalization diagonalize(const Matrix& gram) {
  if (!gram.is_symmetric()) raise(ErrorCode::InvalidInput, "Gram matrix is not symmetric");
  const Field& f = gram.field();
  const std::size_t n = gram.rows();
  Matrix a = gram;
  Matrix p = Matrix::identity(f, n);
  Vector diag;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t pivot = i;
    while (pivot < n && a(pivot, pivot).is_zero()) ++pivot;
    if (pivot == n) {
      bool fixed = false;
      for (std::size_t j = i; j < n && !fixed; ++j)
        for (std::size_t k = j + 1; k < n && !fixed; ++k)
          if (!a(j, k).is_zero()) {
            add_basis(a, p, j, k, f.one());
            pivot = j;
            fixed = true;
          }
      if (!fixed) {
        std::vector<Vector> radical;
        for (std::size_t j = i; j < n; ++j) radical.push_back(p.column(j));
        throw DegenerateFormError("Gram matrix has rank " + std::to_string(i) + " < " + std::to_string(n),
                                  std::move(radical));
      }
    }
    swap_basis(a, p, i, pivot);
    const Element inv = a(i, i).inv();
    for (std::size_t k = i + 1; k < n; ++k) {
      if (a(i, k).is_zero()) continue;
      add_basis(a, p, k, i, -(a(i, k) * inv));
    }
    diag.push_back(a(i, i));
  }
  return Diagonalization{QuadraticForm(f, std::move(diag)), std::move(p)};
}

// ---------------------------------------------------------------------------
// Hyperbolic splitting

HyperbolicSplit split_hyperbolic(const QuadraticForm& q, const Vector& v) {
  const Field& f = q.field();
  const std::size_t n = q.dim();
  if (n < 2 || v.size() != n || is_zero_vector(v) || !q.evaluate(v).is_zero()) {
    raise(ErrorCode::InvalidInput, "split_hyperbolic needs a nonzero isotropic vector");
  }
  std::size_t i = 0;
  while (v[i].is_zero()) ++i;
  // b(v, e_i) = a_i v_i != 0; scale e_i so that b(v, w) = 1/2.
  Vector w = zero_vector(f, n);
  w[i] = (f.from_int(2) * q.coeffs()[i] * v[i]).inv();
  const Element qw = q.evaluate(w);
  for (std::size_t k = 0; k < n; ++k) w[k] -= qw * v[k];

  HyperbolicSplit out{Vector(n, f.zero()), Vector(n, f.zero()), QuadraticForm(f, {}), Matrix()};
  for (std::size_t k = 0; k < n; ++k) {
    out.plus[k] = v[k] + w[k];
    out.minus[k] = v[k] - w[k];
  }

  Matrix constraints(f, 2, n);
  for (std::size_t k = 0; k < n; ++k) {
    constraints(0, k) = q.coeffs()[k] * v[k];
    constraints(1, k) = q.coeffs()[k] * w[k];
  }
  const auto kernel = constraints.null_space();
  if (kernel.size() != n - 2) raise(ErrorCode::InternalInvariant, "hyperbolic plane complement has wrong dimension");
  Matrix k = Matrix::from_columns(f, n, kernel);
  if (n == 2) {
    out.complement_basis = Matrix(f, 2, 0);
    return out;
  }
  Matrix g = k.transpose() * q.gram() * k;
  auto diag = diagonalize(g);
  out.complement = diag.form;
  out.complement_basis = k * diag.basis;
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence

bool equivalent(const QuadraticForm& a, const QuadraticForm& b) {
  if (!(a.field() == b.field())) raise(ErrorCode::FieldMismatch, "equivalence across fields");
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  const Field& f = a.field();
  switch (f.kind()) {
    case FieldKind::QuadExt:
      raise(ErrorCode::UnsupportedCase,
            "invariant-based equivalence over " + f.name() + " is not supported; supply a change of basis");
    case FieldKind::PrimeField: return same_square_class(a.determinant(), b.determinant());
    case FieldKind::Rationals: {
      if (!same_square_class(a.determinant(), b.determinant())) return false;
      if (signature(a) != signature(b)) return false;
      std::set<Place> places;
      for (auto p : relevant_places(a)) places.insert(p);
      for (auto p : relevant_places(b)) places.insert(p);
      for (auto p : places)
        if (hasse_invariant(a, p) != hasse_invariant(b, p)) return false;
      return true;
    }
  }
  return false;
}

bool congruent_via(const Matrix& from_gram, const Matrix& to_gram, const Matrix& P) {
  if (P.rows() != from_gram.rows() || P.cols() != to_gram.rows()) return false;
  return P.transpose() * from_gram * P == to_gram;
}

bool congruent_via(const QuadraticForm& from, const QuadraticForm& to, const Matrix& P) {
  if (P.rows() != from.dim() || P.cols() != to.dim()) return false;
  if (P.cols() == from.dim() && !P.inverse()) return false;
  return congruent_via(from.gram(), to.gram(), P);
}

QuadraticForm pfister(const Field& field, const Vector& slots) {
  if (slots.empty() || slots.size() > 3) raise(ErrorCode::InvalidInput, "pfister needs 1 to 3 slots");
  Vector c{field.one()};
  for (const auto& s : slots) {
    if (s.is_zero()) raise(ErrorCode::ZeroElement, "pfister slot is zero");
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) c.push_back(-s * c[i]);
  }
  return QuadraticForm(field, std::move(c));
}

// ---------------------------------------------------------------------------
// Witt decomposition

namespace {

// Diagonal rational form of dimension m with the given determinant class,
// positive count and Hasse invariants. The candidates use squarefree
// coefficients built from `primes`, widened by a few auxiliary primes.
QuadraticForm construct_with_invariants(std::size_t m, const mpq_class& det, std::size_t positives,
                                        const std::map<Place, int>& hasse, std::vector<std::uint64_t> primes) {
  const Field Q = Field::rationals();
  const mpz_class target_det = nt::squarefree_part(det);
  auto matches = [&](const QuadraticForm& cand) {
    if (signature(cand).first != positives) return false;
    for (const auto& [place, eps] : hasse)
      if (hasse_invariant(cand, place) != eps) return false;
    for (auto p : relevant_places(cand))
      if (!hasse.count(p) && !p.is_infinite() && hasse_invariant(cand, p) != 1) return false;
    return true;
  };
  if (m == 1) {
    QuadraticForm cand(Q, {Q.from_integer(target_det)});
    if (matches(cand)) return cand;
    raise(ErrorCode::InternalInvariant, "no one-dimensional form matches the local invariants");
  }
  const std::uint64_t extras[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  std::size_t added = 0;
  for (int round = 0; round < 4; ++round) {
    std::vector<mpz_class> values;
    const std::size_t k = primes.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      mpz_class v = 1;
      for (std::size_t b = 0; b < k; ++b)
        if (mask >> b & 1) v *= static_cast<unsigned long>(primes[b]);
      values.push_back(v);
      values.push_back(-v);
    }
    // Multisets of m - 1 leading coefficients; the last one fixes the determinant.
    std::vector<std::size_t> idx(m - 1, 0);
    std::uint64_t visited = 0;
    while (true) {
      if (++visited > 3'000'000) {
        raise(ErrorCode::UnsupportedCase, "anisotropic part search exceeded its budget");
      }
      mpz_class prod = 1;
      Vector c;
      for (auto i : idx) {
        prod *= values[i];
        c.push_back(Q.from_integer(values[i]));
      }
      c.push_back(Q.from_integer(nt::squarefree_part(mpq_class(target_det, 1) / prod)));
      QuadraticForm cand(Q, c);
      if (matches(cand)) return cand;
      std::size_t pos = m - 1;
      while (pos > 0 && idx[pos - 1] + 1 == values.size()) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < m - 1; ++j) idx[j] = idx[pos - 1];
    }
    while (added < std::size(extras) &&
           std::find(primes.begin(), primes.end(), extras[added]) != primes.end())
      ++added;
    if (added == std::size(extras)) break;
    primes.push_back(extras[added++]);
  }
  raise(ErrorCode::UnsupportedCase, "could not materialise an anisotropic part with the required invariants");
}

// Witt index and anisotropic part of a rational form from local data alone.
std::pair<std::size_t, QuadraticForm> decompose_by_invariants(const QuadraticForm& q) {
  const Field Q = Field::rationals();
  const auto places = relevant_places(q);
  std::size_t index = q.dim() / 2;
  for (auto place : places) index = std::min(index, local_witt_index(q, place));
  const std::size_t m = q.dim() - 2 * index;
  if (m == 0) return {index, QuadraticForm(Q, {})};
  const mpq_class sign = (index % 2) ? -1 : 1;
  const mpq_class det = q.determinant().rational_part() * sign;
  const QuadraticForm h = hyperbolic(Q, index);
  std::map<Place, int> hasse;
  for (auto place : places) {
    hasse[place] = hasse_invariant(q, place) * hasse_invariant(h, place) *
                   hilbert_symbol(Q.from_rational(sign), Q.from_rational(det), place);
  }
  std::vector<std::uint64_t> primes;
  for (auto place : places)
    if (!place.is_infinite()) primes.push_back(place.prime);
  auto [pos, neg] = signature(q);
  QuadraticForm an = construct_with_invariants(m, det, pos - index, hasse, primes);
  if (!equivalent(h.orthogonal_sum(an), q)) {
    raise(ErrorCode::InternalInvariant, "invariant-built decomposition is not equivalent to the input");
  }
  return {index, an};
}

}  // namespace

WittDecomposition witt_decompose(const QuadraticForm& q, const SearchOptions& options) {
  const Field& f = q.field();
  const std::size_t n = q.dim();
  QuadraticForm cur = q;
  Matrix basis = Matrix::identity(f, n);
  std::vector<Vector> hyp_columns;
  WittDecomposition out{0, QuadraticForm(f, {}), DecisionMethod::ExplicitWitness, {}, std::nullopt, {}};

  while (true) {
    IsotropyCertificate cert = is_isotropic(cur, options);
    if (!cert.isotropic) {
      out.anisotropy = cert;
      break;
    }
    if (!cert.witness) {
      if (!f.is_rationals()) {
        raise(ErrorCode::UnsupportedCase,
              "form " + cur.to_string() + " over " + f.name() + " is isotropic but no witness was constructed");
      }
      auto [index, an] = decompose_by_invariants(cur);
      if (index == 0) raise(ErrorCode::InternalInvariant, "local invariants contradict the isotropy verdict");
      out.witt_index += index;
      out.anisotropic = an;
      out.method = DecisionMethod::LocalInvariants;
      out.anisotropy = is_isotropic(an, SearchOptions{0, options.exec});
      return out;
    }
    HyperbolicSplit split = split_hyperbolic(cur, *cert.witness);
    if (!f.is_quadratic() && !equivalent(hyperbolic(f, 1).orthogonal_sum(split.complement), cur)) {
      raise(ErrorCode::InternalInvariant, "invariants changed while splitting a hyperbolic plane");
    }
    out.witnesses.push_back(basis * *cert.witness);
    hyp_columns.push_back(basis * split.plus);
    hyp_columns.push_back(basis * split.minus);
    basis = basis * split.complement_basis;
    cur = split.complement;
    ++out.witt_index;
  }
  out.anisotropic = cur;
  if (out.witt_index == 0) out.method = out.anisotropy.method;

  std::vector<Vector> columns = hyp_columns;
  for (std::size_t j = 0; j < basis.cols(); ++j) columns.push_back(basis.column(j));
  Matrix full = Matrix::from_columns(f, n, columns);
  const QuadraticForm target = hyperbolic(f, out.witt_index).orthogonal_sum(cur);
  if (!congruent_via(q, target, full)) {
    raise(ErrorCode::InternalInvariant, "Witt decomposition basis fails the congruence check");
  }
  out.basis = std::move(full);
  return out;
}

}  // namespace f4kit
