#pragma once

// Diagonal quadratic forms: local invariants, isotropy decisions, Witt
// decomposition and equivalence.
//
// A form <a_1, ..., a_n> is q(x) = sum a_i x_i^2 with symmetric bilinear
// form b(x, y) = sum a_i x_i y_i, so that b(x, x) = q(x). Gram matrices are
// always Gram matrices of b.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "f4kit/fields.hpp"
#include "f4kit/kernels.hpp"
#include "f4kit/matrix.hpp"

namespace f4kit {

class QuadraticForm {
 public:
  /// Throws DegenerateForm if a coefficient is zero and FieldMismatch if a
  /// coefficient lives in another field.
  QuadraticForm(Field field, Vector coeffs, std::string label = {});

  const Field& field() const noexcept { return field_; }
  const Vector& coeffs() const noexcept { return coeffs_; }
  std::size_t dim() const noexcept { return coeffs_.size(); }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  Element evaluate(const Vector& x) const;
  Element polar(const Vector& x, const Vector& y) const;
  Element determinant() const;
  Matrix gram() const;

  QuadraticForm scaled(const Element& lambda) const;
  QuadraticForm orthogonal_sum(const QuadraticForm& other) const;
  QuadraticForm embed(const Field& target) const;
  bool has_rational_coefficients() const;

  std::string to_string() const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Field field_;
  Vector coeffs_;
  std::string label_;
};

/// m copies of the hyperbolic plane <1, -1>.
QuadraticForm hyperbolic(const Field& field, std::size_t planes);

class DegenerateFormError : public Error {
 public:
  DegenerateFormError(const std::string& message, std::vector<Vector> radical)
      : Error(ErrorCode::DegenerateForm, message), radical_(std::move(radical)) {}
  const std::vector<Vector>& radical() const noexcept { return radical_; }

 private:
  std::vector<Vector> radical_;
};

struct Diagonalization {
  QuadraticForm form;
  /// Columns are the new basis: basis^T * gram * basis = diag(form.coeffs()).
  Matrix basis;
};

/// Symmetric elimination; throws DegenerateFormError with a radical basis.
Diagonalization diagonalize(const Matrix& gram);

/// A place of Q: a prime, or infinity (prime == 0).
struct Place {
  std::uint64_t prime = 0;

  static Place infinity() { return Place{0}; }
  static Place at(std::uint64_t p) { return Place{p}; }
  bool is_infinite() const noexcept { return prime == 0; }
  std::string name() const { return is_infinite() ? "inf" : std::to_string(prime); }
  friend bool operator==(const Place&, const Place&) = default;
  friend auto operator<=>(const Place&, const Place&) = default;
};

/// (a, b)_v over Q; throws UnsupportedField for other fields.
int hilbert_symbol(const Element& a, const Element& b, Place place);

/// prod_{i<j} (a_i, a_j)_v.
int hasse_invariant(const QuadraticForm& q, Place place);

/// infinity, 2 and every odd prime dividing a numerator or denominator of q.
std::vector<Place> relevant_places(const QuadraticForm& q);

/// (positive, negative) coefficient counts under real embedding `embedding`.
std::pair<std::size_t, std::size_t> signature(const QuadraticForm& q, int embedding = 0);

/// x is a square in Q_p (x rational, nonzero).
bool is_local_square(const mpq_class& x, std::uint64_t p);

/// Decision over Q_p (finite p) or R (infinity) for a form over Q.
bool is_locally_isotropic(const QuadraticForm& q, Place place);

/// Witt index of q over Q_v.
std::size_t local_witt_index(const QuadraticForm& q, Place place);

enum class DecisionMethod { LocalInvariants, FiniteFieldCount, RealPlaces, ExplicitWitness };

std::string_view method_name(DecisionMethod m);

struct SearchOptions {
  /// Largest coordinate bound the witness searches escalate to.
  std::int64_t max_bound = 128;
  kernels::Exec exec = kernels::Exec::Parallel;
};

struct IsotropyCertificate {
  bool isotropic = false;
  DecisionMethod method = DecisionMethod::LocalInvariants;
  /// Nonzero v with q(v) = 0, whenever one was constructed.
  std::optional<Vector> witness;
  std::string detail;
};

/// Throws UnsupportedCase for Q(sqrt d) forms of dimension <= 4 that are
/// indefinite at every real place and have no witness within the bound.
IsotropyCertificate is_isotropic(const QuadraticForm& q, const SearchOptions& options = {});

/// Isotropic vector attempts used by is_isotropic (no decision when nullopt).
std::optional<Vector> find_isotropic_vector(const QuadraticForm& q, const SearchOptions& options = {});

struct HyperbolicSplit {
  /// q(plus) = 1, q(minus) = -1, b(plus, minus) = 0; both orthogonal to the complement.
  Vector plus;
  Vector minus;
  QuadraticForm complement;
  /// dim x (dim - 2); columns span the orthogonal complement of the plane,
  /// diagonalised so that columns carry complement.coeffs().
  Matrix complement_basis;
};

/// Splits the hyperbolic plane through the isotropic vector v.
HyperbolicSplit split_hyperbolic(const QuadraticForm& q, const Vector& v);

struct WittDecomposition {
  std::size_t witt_index = 0;
  QuadraticForm anisotropic;
  DecisionMethod method = DecisionMethod::ExplicitWitness;
  /// One isotropic vector per split plane, in the coordinates of the input.
  std::vector<Vector> witnesses;
  /// Present when every plane was split explicitly: basis^T diag(q) basis =
  /// diag(1, -1, ..., 1, -1, anisotropic...).
  std::optional<Matrix> basis;
  IsotropyCertificate anisotropy;
};

WittDecomposition witt_decompose(const QuadraticForm& q, const SearchOptions& options = {});

/// Invariant comparison over Q and F_p; UnsupportedCase over Q(sqrt d).
bool equivalent(const QuadraticForm& a, const QuadraticForm& b);

/// Exact check P^T diag(from) P == diag(to): the caller-supplied change of basis.
bool congruent_via(const QuadraticForm& from, const QuadraticForm& to, const Matrix& P);
/// Exact check P^T G P == H for Gram matrices.
bool congruent_via(const Matrix& from_gram, const Matrix& to_gram, const Matrix& P);

/// <1, -s_1> (x) ... (x) <1, -s_k>, new blocks appended after old ones.
QuadraticForm pfister(const Field& field, const Vector& slots);

/// Bounded search over Q (integer vectors with |x_i| <= bound after clearing
/// denominators) or F_p (exhaustive up to 10^7 vectors, else random
/// sampling). `nullopt` over Q is not an anisotropy proof.
std::optional<Vector> isotropic_vector_search(const QuadraticForm& q, std::int64_t bound,
                                              kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace f4kit
