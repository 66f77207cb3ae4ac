#pragma once

// The Albert algebra H(C; Γ) of Γ-hermitian 3x3 matrices over an octonion
// algebra C, with Γ = diag(γ1, γ2, γ3). An element
//
//   [ x1              c3              γ1⁻¹γ3 c̄2 ]
//   [ γ2⁻¹γ1 c̄3       x2              c1        ]
//   [ c2              γ3⁻¹γ2 c̄1       x3        ]
//
// is stored by its free entries. Canonical coordinates (27 of them) are
// x1, x2, x3, then the eight coordinates of c1, of c2 and of c3.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "f4kit/composition.hpp"
#include "f4kit/kernels.hpp"
#include "f4kit/matrix.hpp"
#include "f4kit/qforms.hpp"

namespace f4kit {

struct AlbertElement {
  std::array<Element, 3> x;
  std::array<Vector, 3> c;  // c[0] = c1, c[1] = c2, c[2] = c3

  friend bool operator==(const AlbertElement&, const AlbertElement&) = default;
};

using OctMatrix = std::array<std::array<Vector, 3>, 3>;

class AlbertAlgebra {
 public:
  /// Throws InvalidInput unless C is 8-dimensional, ZeroParameter for a zero γ.
  AlbertAlgebra(CompositionAlgebra octonions, std::array<Element, 3> gamma);

  const CompositionAlgebra& octonions() const noexcept { return c_; }
  const Field& field() const noexcept { return c_.field(); }
  const std::array<Element, 3>& gamma() const noexcept { return gamma_; }
  /// Coefficient of N(c_k) in Q: γ2/γ3, γ3/γ1, γ1/γ2 for k = 1, 2, 3.
  const Element& slot_weight(std::size_t k) const { return weight_[k]; }

  static constexpr std::size_t kDim = 27;

  AlbertElement zero() const;
  AlbertElement one() const;
  /// Matrix unit E_ii (i = 1, 2, 3).
  AlbertElement unit_diagonal(std::size_t i) const;
  AlbertElement basis(std::size_t k) const;
  AlbertElement from_coords(const Vector& coords) const;
  Vector coords(const AlbertElement& a) const;
  /// Throws AlgebraMismatch if a does not have the shape and field of this algebra.
  void check(const AlbertElement& a) const;

  AlbertElement add(const AlbertElement& a, const AlbertElement& b) const;
  AlbertElement scale(const Element& s, const AlbertElement& a) const;

  /// The full 3x3 octonion matrix of a.
  OctMatrix to_matrix(const AlbertElement& a) const;
  /// Reads the free entries back, checking that m is Γ-hermitian.
  AlbertElement from_matrix(const OctMatrix& m) const;
  /// The plain matrix product x · y (not hermitian in general).
  OctMatrix matrix_mul(const AlbertElement& a, const AlbertElement& b) const;
  /// (x · y + y · x) / 2.
  AlbertElement jordan_mul(const AlbertElement& a, const AlbertElement& b) const;

  Element trace(const AlbertElement& a) const;
  /// tr(x^2) / 2.
  Element norm_Q(const AlbertElement& a) const;
  /// tr(xy) = Q(x + y) − Q(x) − Q(y).
  Element bilinear(const AlbertElement& a, const AlbertElement& b) const;
  /// Q as a diagonal form in canonical coordinates.
  QuadraticForm quadratic_trace_form() const;

  bool is_idempotent(const AlbertElement& u) const;
  bool is_primitive_idempotent(const AlbertElement& u) const;
  /// z ≠ 0 with z² = 0 or z³ = 0.
  bool is_nilpotent(const AlbertElement& z) const;

  std::string describe() const;

  friend bool operator==(const AlbertAlgebra& a, const AlbertAlgebra& b) {
    return a.c_ == b.c_ && a.gamma_ == b.gamma_;
  }

 private:
  CompositionAlgebra c_;
  std::array<Element, 3> gamma_;
  std::array<Element, 3> weight_;
};

/// Slot pairs in the order slot 1 (E22, E33), slot 2 (E33, E11), slot 3 (E11, E22).
struct NilpotentTest {
  std::size_t slot = 0;  // 0-based octonion slot
  QuadraticForm form;    // <1> ⊥ weight · N
  IsotropyCertificate certificate;
};

struct NilpotentSearch {
  std::optional<AlbertElement> witness;
  std::vector<NilpotentTest> tests;
};

/// The three 9-dimensional test forms <1> ⊥ w_k N.
std::vector<QuadraticForm> nilpotent_test_forms(const AlbertAlgebra& a);

/// Square-zero element from the first isotropic test form, with every test
/// performed so far. UnsupportedCase when a test form is isotropic but no
/// explicit vector is available.
NilpotentSearch nilpotent_search(const AlbertAlgebra& a, const SearchOptions& options = {});
std::optional<AlbertElement> nilpotent_witness(const AlbertAlgebra& a, const SearchOptions& options = {});

/// Two non-proportional nilpotents with z1 ∘ z2 = 0, constructed only when
/// C is split; nullopt otherwise.
std::optional<std::pair<AlbertElement, AlbertElement>> orthogonal_nilpotent_pair(const AlbertAlgebra& a,
                                                                                 const SearchOptions& options = {});

struct E0Data {
  std::vector<AlbertElement> basis;  // 9 vectors
  Matrix gram;                       // Gram matrix of Q (polar form) on the basis
  QuadraticForm form;                // diagonalised Q0
  Matrix change;                     // change^T gram change = diag(form)
};

/// E0 = {x : <x,1> = <x,u> = 0, u∘x = 0} for u = E33; each basis vector is
/// checked against the defining conditions.
E0Data e0_subspace(const AlbertAlgebra& a, const AlbertElement& u);
QuadraticForm q0_form(const AlbertAlgebra& a, const AlbertElement& u);

/// [[a, b, 0], [b, a, 0], [0, 0, 1]]; throws NotOnTorus unless a² − b² = 1.
Matrix torus_element(const Element& a, const Element& b);
/// Torus point with parameter t ≠ 0, ±1: a = (t² + 1)/(2t), b = (t² − 1)/(2t).
Matrix torus_point(const Element& t);
/// Cayley transform (I − S)(I + S)⁻¹ with S = Γ⁻¹K, K skew with seeded entries.
Matrix so_gamma_sample(const std::array<Element, 3>& gamma, std::uint64_t seed);
/// X^T Γ X = Γ and det X = 1.
bool in_so_gamma(const Matrix& x, const std::array<Element, 3>& gamma);

struct Automorphism {
  Matrix matrix;  // 27 x 27, acting on canonical coordinates

  AlbertElement apply(const AlbertAlgebra& a, const AlbertElement& x) const;
};

/// θ ↦ X θ X⁻¹; throws NotGammaOrthogonal unless X ∈ SO(Γ).
Automorphism phi(const AlbertAlgebra& a, const Matrix& x);

/// Pairs (i ≤ j) of canonical basis vectors with f(e_i ∘ e_j) ≠ f(e_i) ∘ f(e_j);
/// empty iff f preserves the Jordan product (378 pairs).
std::vector<std::pair<std::size_t, std::size_t>> jordan_panel_failures(const AlbertAlgebra& a,
                                                                       const Automorphism& f,
                                                                       kernels::Exec exec = kernels::Exec::Parallel);

/// H(C ⊗ L; Γ).
AlbertAlgebra base_change_albert(const AlbertAlgebra& a, const Field& target);

}  // namespace f4kit
