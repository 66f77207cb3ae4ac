#pragma once

// Cayley–Dickson composition algebras of dimension 1, 2, 4 and 8.
//
// Doubling rule, fixed for the whole library:
//   (a, b)(c, d) = (ac + γ d b̄, ā d + c b),   (a, b)‾ = (ā, −b).
// Basis e_0 = 1, ..., e_{2^k - 1}; each doubling appends the (0, e_i) block
// after the (e_i, 0) block, so e_i e_j = c_ij e_{i xor j}.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "f4kit/fields.hpp"
#include "f4kit/matrix.hpp"
#include "f4kit/qforms.hpp"

namespace f4kit {

class CompElement;

class CompositionAlgebra {
 public:
  /// Throws ZeroParameter for a zero parameter and TooManyDoublings past 3.
  static CompositionAlgebra cayley_dickson(const Field& field, Vector params);
  /// Params (−1, −1, −1): norm x_0^2 + ... + x_7^2.
  static CompositionAlgebra graves(const Field& field = Field::rationals());
  /// Params (1, 1, 1): hyperbolic norm.
  static CompositionAlgebra split_octonions(const Field& field = Field::rationals());

  const Field& field() const noexcept { return impl_->field; }
  const Vector& params() const noexcept { return impl_->params; }
  std::size_t dim() const noexcept { return impl_->dim; }

  /// c_ij in e_i e_j = c_ij e_{i xor j}.
  const Element& structure(std::size_t i, std::size_t j) const { return impl_->table[i * impl_->dim + j]; }
  /// N(e_i); the canonical basis is orthogonal for the norm.
  const Element& basis_norm(std::size_t i) const { return impl_->norms[i]; }

  // Coordinate-level operations (vectors of length dim over field()).
  Vector mul(const Vector& x, const Vector& y) const;
  Vector conj(const Vector& x) const;
  Element norm(const Vector& x) const;
  Element trace(const Vector& x) const;
  Vector one() const;
  Vector basis(std::size_t i) const;

  CompElement element(Vector coords) const;
  CompElement unit() const;

  /// Diagonal form x ↦ N(x) in the canonical basis.
  QuadraticForm norm_form() const;

  std::string describe() const;

  friend bool operator==(const CompositionAlgebra& a, const CompositionAlgebra& b) {
    return a.impl_ == b.impl_ || (a.field() == b.field() && a.params() == b.params());
  }

 private:
  struct Impl {
    Field field;
    Vector params;
    std::size_t dim = 1;
    std::vector<Element> table;
    std::vector<Element> norms;
  };
  explicit CompositionAlgebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void check(const Vector& x) const;

  std::shared_ptr<const Impl> impl_;
};

class CompElement {
 public:
  /// Throws InvalidInput unless coords has the algebra's dimension and field.
  CompElement(CompositionAlgebra algebra, Vector coords);

  const CompositionAlgebra& algebra() const noexcept { return algebra_; }
  const Vector& coords() const noexcept { return coords_; }

  /// All binary operations throw AlgebraMismatch across algebras.
  friend CompElement operator+(const CompElement& x, const CompElement& y);
  friend CompElement operator-(const CompElement& x, const CompElement& y);
  friend CompElement operator*(const CompElement& x, const CompElement& y);
  CompElement scaled(const Element& s) const;
  CompElement conj() const;
  Element norm() const;
  Element trace() const;
  bool is_zero() const { return is_zero_vector(coords_); }

  friend bool operator==(const CompElement& x, const CompElement& y);

 private:
  CompositionAlgebra algebra_;
  Vector coords_;
};

enum class CompOp { Mul, Conj, Norm, Trace, Add, ScalarMul };

struct CompResult {
  std::optional<CompElement> element;
  std::optional<Element> scalar;
};

/// Mul/Add need y; ScalarMul needs s; Conj/Norm/Trace are unary.
CompResult comp_eval(CompOp op, const CompElement& x, const std::optional<CompElement>& y = std::nullopt,
                     const std::optional<Element>& s = std::nullopt);

/// The norm form is isotropic.
bool is_split(const CompositionAlgebra& c, const SearchOptions& options = {});

/// Norm forms are equivalent. Over Q(sqrt d) decided only when the answer
/// follows from isotropy (isotropic Pfister forms are hyperbolic) or the
/// parameters agree slotwise up to squares; otherwise UnsupportedCase.
bool comp_isomorphic(const CompositionAlgebra& a, const CompositionAlgebra& b, const SearchOptions& options = {});

/// Same parameters over L; only Q → Q(sqrt d) (and the identity) are extensions.
CompositionAlgebra base_change_comp(const CompositionAlgebra& c, const Field& target);

/// Throws UnsupportedExtension unless target is base or a quadratic field over Q.
void require_extension(const Field& base, const Field& target);

}  // namespace f4kit
