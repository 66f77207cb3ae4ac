#include "f4kit/albert.hpp"

#include <sstream>

#include "f4kit/sampling.hpp"

namespace f4kit {

namespace {

Vector vadd(const Vector& a, const Vector& b) {
  Vector z = a;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += b[i];
  return z;
}

Vector vscale(const Element& s, const Vector& a) {
  Vector z = a;
  for (auto& e : z) e *= s;
  return z;
}

// (row, col) of the free entry c_k and of its twisted conjugate.
constexpr std::size_t kUpper[3][2] = {{1, 2}, {2, 0}, {0, 1}};

}  // namespace

AlbertAlgebra::AlbertAlgebra(CompositionAlgebra octonions, std::array<Element, 3> gamma)
    : c_(std::move(octonions)), gamma_(std::move(gamma)) {
  if (c_.dim() != 8) {
    raise(ErrorCode::InvalidInput, "the coordinate algebra must be an octonion algebra (dimension 8), got dimension " +
                                       std::to_string(c_.dim()));
  }
  for (const auto& g : gamma_) {
    if (!(g.field() == c_.field())) raise(ErrorCode::FieldMismatch, "gamma entry is not in " + c_.field().name());
    if (g.is_zero()) raise(ErrorCode::ZeroParameter, "gamma entries must be nonzero");
  }
  weight_ = {gamma_[1] / gamma_[2], gamma_[2] / gamma_[0], gamma_[0] / gamma_[1]};
}

AlbertElement AlbertAlgebra::zero() const {
  const Element z = field().zero();
  const Vector zc = zero_vector(field(), 8);
  return AlbertElement{{z, z, z}, {zc, zc, zc}};
}

AlbertElement AlbertAlgebra::one() const {
  AlbertElement e = zero();
  for (auto& xi : e.x) xi = field().one();
  return e;
}

AlbertElement AlbertAlgebra::unit_diagonal(std::size_t i) const {
  if (i < 1 || i > 3) raise(ErrorCode::InvalidInput, "matrix unit index must be 1, 2 or 3");
  AlbertElement e = zero();
  e.x[i - 1] = field().one();
  return e;
}

AlbertElement AlbertAlgebra::basis(std::size_t k) const {
  return from_coords(unit_vector(field(), kDim, k));
}

AlbertElement AlbertAlgebra::from_coords(const Vector& v) const {
  if (v.size() != kDim) raise(ErrorCode::InvalidInput, "an Albert element has 27 coordinates");
  AlbertElement e = zero();
  for (std::size_t i = 0; i < 3; ++i) e.x[i] = v[i];
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 8; ++i) e.c[k][i] = v[3 + 8 * k + i];
  check(e);
  return e;
}

Vector AlbertAlgebra::coords(const AlbertElement& a) const {
  check(a);
  Vector v(a.x.begin(), a.x.end());
  for (const auto& ck : a.c) v.insert(v.end(), ck.begin(), ck.end());
  return v;
}

void AlbertAlgebra::check(const AlbertElement& a) const {
  for (const auto& xi : a.x)
    if (!(xi.field() == field())) raise(ErrorCode::AlgebraMismatch, "diagonal entry is not in " + field().name());
  for (const auto& ck : a.c) {
    if (ck.size() != 8) raise(ErrorCode::AlgebraMismatch, "octonion slot must have 8 coordinates");
    for (const auto& e : ck)
      if (!(e.field() == field())) raise(ErrorCode::AlgebraMismatch, "octonion coordinate is not in " + field().name());
  }
}

AlbertElement AlbertAlgebra::add(const AlbertElement& a, const AlbertElement& b) const {
  check(a);
  check(b);
  AlbertElement z = a;
  for (std::size_t i = 0; i < 3; ++i) z.x[i] += b.x[i];
  for (std::size_t k = 0; k < 3; ++k) z.c[k] = vadd(a.c[k], b.c[k]);
  return z;
}

AlbertElement AlbertAlgebra::scale(const Element& s, const AlbertElement& a) const {
  check(a);
  AlbertElement z = a;
  for (auto& xi : z.x) xi *= s;
  for (auto& ck : z.c) ck = vscale(s, ck);
  return z;
}

OctMatrix AlbertAlgebra::to_matrix(const AlbertElement& a) const {
  check(a);
  OctMatrix m;
  for (std::size_t i = 0; i < 3; ++i) m[i][i] = vscale(a.x[i], c_.one());
  for (std::size_t k = 0; k < 3; ++k) {
    const auto [r, s] = std::pair{kUpper[k][0], kUpper[k][1]};
    m[r][s] = a.c[k];
    // (s, r) entry: γ_s⁻¹ γ_r c̄_k.
    m[s][r] = vscale(gamma_[r] / gamma_[s], c_.conj(a.c[k]));
  }
  return m;
}

AlbertElement AlbertAlgebra::from_matrix(const OctMatrix& m) const {
  AlbertElement e = zero();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 1; j < 8; ++j)
      if (!m[i][i][j].is_zero()) raise(ErrorCode::InternalInvariant, "diagonal entry is not a scalar");
    e.x[i] = m[i][i][0];
  }
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t r = kUpper[k][0], s = kUpper[k][1];
    e.c[k] = m[r][s];
    if (!(m[s][r] == vscale(gamma_[r] / gamma_[s], c_.conj(m[r][s])))) {
      raise(ErrorCode::InternalInvariant, "matrix is not Γ-hermitian");
    }
  }
  return e;
}

OctMatrix AlbertAlgebra::matrix_mul(const AlbertElement& a, const AlbertElement& b) const {
  const OctMatrix x = to_matrix(a), y = to_matrix(b);
  OctMatrix z;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vector s = zero_vector(field(), 8);
      for (std::size_t l = 0; l < 3; ++l) s = vadd(s, c_.mul(x[i][l], y[l][j]));
      z[i][j] = std::move(s);
    }
  return z;
}

AlbertElement AlbertAlgebra::jordan_mul(const AlbertElement& a, const AlbertElement& b) const {
  const OctMatrix xy = matrix_mul(a, b), yx = matrix_mul(b, a);
  const Element half = field().from_int(2).inv();
  OctMatrix m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = vscale(half, vadd(xy[i][j], yx[i][j]));
  return from_matrix(m);
}

Element AlbertAlgebra::trace(const AlbertElement& a) const {
  check(a);
  return a.x[0] + a.x[1] + a.x[2];
}

Element AlbertAlgebra::norm_Q(const AlbertElement& a) const {
  return trace(jordan_mul(a, a)) * field().from_int(2).inv();
}

Element AlbertAlgebra::bilinear(const AlbertElement& a, const AlbertElement& b) const {
  return trace(jordan_mul(a, b));
}

QuadraticForm AlbertAlgebra::quadratic_trace_form() const {
  const Element half = field().from_int(2).inv();
  Vector coeffs{half, half, half};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 8; ++i) coeffs.push_back(weight_[k] * c_.basis_norm(i));
  return QuadraticForm(field(), std::move(coeffs), "Q");
}

bool AlbertAlgebra::is_idempotent(const AlbertElement& u) const {
  return !(u == zero()) && jordan_mul(u, u) == u;
}

bool AlbertAlgebra::is_primitive_idempotent(const AlbertElement& u) const {
  return is_idempotent(u) && norm_Q(u) == field().from_int(2).inv();
}

bool AlbertAlgebra::is_nilpotent(const AlbertElement& z) const {
  if (z == zero()) return false;
  const AlbertElement z2 = jordan_mul(z, z);
  return z2 == zero() || jordan_mul(z2, z) == zero();
}

std::string AlbertAlgebra::describe() const {
  std::ostringstream out;
  out << "H(" << c_.describe() << "; " << gamma_[0].to_string() << "," << gamma_[1].to_string() << ","
      << gamma_[2].to_string() << ")";
  return out.str();
}

// ---------------------------------------------------------------------------
// Nilpotents

std::vector<QuadraticForm> nilpotent_test_forms(const AlbertAlgebra& a) {
  std::vector<QuadraticForm> forms;
  const QuadraticForm n = a.octonions().norm_form();
  for (std::size_t k = 0; k < 3; ++k) {
    QuadraticForm t = QuadraticForm(a.field(), {a.field().one()}).orthogonal_sum(n.scaled(a.slot_weight(k)));
    t.set_label("T" + std::to_string(k + 1));
    forms.push_back(std::move(t));
  }
  return forms;
}

namespace {

// Element with x_j = t, x_l = −t around slot k and c_k = c; its square is
// (t² + w_k N(c)) (E_jj + E_ll).
AlbertElement slot_element(const AlbertAlgebra& a, std::size_t k, const Element& t, const Vector& c) {
  AlbertElement z = a.zero();
  const std::size_t j = kUpper[k][0], l = kUpper[k][1];
  z.x[j] = t;
  z.x[l] = -t;
  z.c[k] = c;
  return z;
}

}  // namespace

NilpotentSearch nilpotent_search(const AlbertAlgebra& a, const SearchOptions& options) {
  NilpotentSearch out;
  const auto forms = nilpotent_test_forms(a);
  for (std::size_t k = 0; k < 3; ++k) {
    IsotropyCertificate cert = is_isotropic(forms[k], options);
    if (cert.isotropic && !cert.witness) {
      // An isotropic norm gives (0, c); otherwise a generic search.
      if (auto w = find_isotropic_vector(a.octonions().norm_form(), options)) {
        Vector v{a.field().zero()};
        v.insert(v.end(), w->begin(), w->end());
        cert.witness = v;
      } else if (auto v = find_isotropic_vector(forms[k], SearchOptions{4 * options.max_bound, options.exec})) {
        cert.witness = v;
      }
    }
    out.tests.push_back({k, forms[k], cert});
    if (!cert.isotropic) continue;
    if (!cert.witness) {
      raise(ErrorCode::UnsupportedCase, "test form " + forms[k].to_string() +
                                            " is isotropic but no explicit vector was constructed");
    }
    const Vector& v = *cert.witness;
    AlbertElement z = slot_element(a, k, v[0], Vector(v.begin() + 1, v.end()));
    if (!(a.jordan_mul(z, z) == a.zero()) || z == a.zero()) {
      raise(ErrorCode::InternalInvariant, "constructed nilpotent does not square to zero");
    }
    out.witness = z;
    return out;
  }
  return out;
}

std::optional<AlbertElement> nilpotent_witness(const AlbertAlgebra& a, const SearchOptions& options) {
  return nilpotent_search(a, options).witness;
}

std::optional<std::pair<AlbertElement, AlbertElement>> orthogonal_nilpotent_pair(const AlbertAlgebra& a,
                                                                                 const SearchOptions& options) {
  const CompositionAlgebra& c = a.octonions();
  auto cert = is_isotropic(c.norm_form(), options);
  if (!cert.isotropic) return std::nullopt;
  auto w = cert.witness ? cert.witness : find_isotropic_vector(c.norm_form(), options);
  if (!w) raise(ErrorCode::UnsupportedCase, "split norm form without an explicit isotropic vector");
  // z1 = a in slot 1, z2 = ā in slot 2: the only products are a ā = N(a) = 0.
  AlbertElement z1 = a.zero(), z2 = a.zero();
  z1.c[0] = *w;
  z2.c[1] = c.conj(*w);
  const AlbertElement zero = a.zero();
  if (!(a.jordan_mul(z1, z1) == zero) || !(a.jordan_mul(z2, z2) == zero) || !(a.jordan_mul(z1, z2) == zero)) {
    raise(ErrorCode::InternalInvariant, "orthogonal nilpotent pair failed verification");
  }
  return std::pair{z1, z2};
}

// ---------------------------------------------------------------------------
// E0 and Q0

E0Data e0_subspace(const AlbertAlgebra& a, const AlbertElement& u) {
  if (!a.is_primitive_idempotent(u)) raise(ErrorCode::NotPrimitiveIdempotent, "u is not a primitive idempotent");
  if (!(u == a.unit_diagonal(3))) {
    raise(ErrorCode::UnsupportedIdempotent, "E0 is implemented for u = E33; move u there by an automorphism first");
  }
  const Field& f = a.field();
  E0Data out{{}, Matrix(), QuadraticForm(f, {}), Matrix()};
  AlbertElement d = a.zero();
  d.x[0] = f.one();
  d.x[1] = -f.one();
  out.basis.push_back(d);
  for (std::size_t i = 0; i < 8; ++i) {
    AlbertElement b = a.zero();
    b.c[2] = a.octonions().basis(i);
    out.basis.push_back(b);
  }
  const AlbertElement one = a.one();
  std::vector<Vector> columns;
  for (const auto& b : out.basis) {
    if (!a.bilinear(b, one).is_zero() || !a.bilinear(b, u).is_zero() || !(a.jordan_mul(u, b) == a.zero())) {
      raise(ErrorCode::InternalInvariant, "E0 basis vector violates a defining condition");
    }
    columns.push_back(a.coords(b));
  }
  if (Matrix::from_columns(f, AlbertAlgebra::kDim, columns).rank() != 9) {
    raise(ErrorCode::InternalInvariant, "E0 basis is not 9-dimensional");
  }
  const Element half = f.from_int(2).inv();
  out.gram = Matrix(f, 9, 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) out.gram(i, j) = half * a.bilinear(out.basis[i], out.basis[j]);
  auto diag = diagonalize(out.gram);
  out.form = diag.form;
  out.form.set_label("Q0");
  out.change = diag.basis;
  return out;
}

QuadraticForm q0_form(const AlbertAlgebra& a, const AlbertElement& u) { return e0_subspace(a, u).form; }

// ---------------------------------------------------------------------------
// SO(Γ) and φ

Matrix torus_element(const Element& a, const Element& b) {
  const Field& f = a.field();
  if (!(a * a - b * b == f.one())) raise(ErrorCode::NotOnTorus, "torus parameters need a^2 - b^2 = 1");
  Matrix x(f, 3, 3);
  x(0, 0) = a;
  x(0, 1) = b;
  x(1, 0) = b;
  x(1, 1) = a;
  x(2, 2) = f.one();
  return x;
}

Matrix torus_point(const Element& t) {
  const Field& f = t.field();
  const Element two_t = f.from_int(2) * t;
  if (two_t.is_zero() || (t * t).is_one()) raise(ErrorCode::NotOnTorus, "torus parameter must avoid 0 and ±1");
  return torus_element((t * t + f.one()) / two_t, (t * t - f.one()) / two_t);
}

bool in_so_gamma(const Matrix& x, const std::array<Element, 3>& gamma) {
  if (x.rows() != 3 || x.cols() != 3) return false;
  const Vector g(gamma.begin(), gamma.end());
  const Matrix G = Matrix::diagonal(x.field(), g);
  return x.transpose() * G * x == G && x.determinant().is_one();
}

Matrix so_gamma_sample(const std::array<Element, 3>& gamma, std::uint64_t seed) {
  const Field& f = gamma[0].field();
  Rng rng(seed);
  const Matrix I = Matrix::identity(f, 3);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix s(f, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        const Element k = random_element(f, rng, 5);
        s(i, j) = k / gamma[i];
        s(j, i) = -k / gamma[j];
      }
    Matrix plus = I, minus = I;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        plus(i, j) += s(i, j);
        minus(i, j) -= s(i, j);
      }
    auto inv = plus.inverse();
    if (!inv) continue;
    Matrix x = minus * *inv;
    if (!in_so_gamma(x, gamma)) raise(ErrorCode::InternalInvariant, "Cayley transform left SO(Γ)");
    return x;
  }
  raise(ErrorCode::SingularCayley, "I + S stayed singular after 16 samples");
}

AlbertElement Automorphism::apply(const AlbertAlgebra& a, const AlbertElement& x) const {
  return a.from_coords(matrix * a.coords(x));
}

namespace {

// Scalar 3x3 matrix times octonion matrix (and the other way round).
OctMatrix scalar_left(const Matrix& s, const OctMatrix& m, const Field& f) {
  OctMatrix z;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vector acc = zero_vector(f, 8);
      for (std::size_t l = 0; l < 3; ++l)
        if (!s(i, l).is_zero()) acc = vadd(acc, vscale(s(i, l), m[l][j]));
      z[i][j] = std::move(acc);
    }
  return z;
}

OctMatrix scalar_right(const OctMatrix& m, const Matrix& s, const Field& f) {
  OctMatrix z;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vector acc = zero_vector(f, 8);
      for (std::size_t l = 0; l < 3; ++l)
        if (!s(l, j).is_zero()) acc = vadd(acc, vscale(s(l, j), m[i][l]));
      z[i][j] = std::move(acc);
    }
  return z;
}

}  // namespace

Automorphism phi(const AlbertAlgebra& a, const Matrix& x) {
  if (!(x.field() == a.field()) || !in_so_gamma(x, a.gamma())) {
    raise(ErrorCode::NotGammaOrthogonal, "X must satisfy X^T Γ X = Γ and det X = 1");
  }
  const Matrix xinv = *x.inverse();
  std::vector<Vector> columns;
  for (std::size_t k = 0; k < AlbertAlgebra::kDim; ++k) {
    const OctMatrix m = scalar_right(scalar_left(x, a.to_matrix(a.basis(k)), a.field()), xinv, a.field());
    columns.push_back(a.coords(a.from_matrix(m)));
  }
  return Automorphism{Matrix::from_columns(a.field(), AlbertAlgebra::kDim, columns)};
}

std::vector<std::pair<std::size_t, std::size_t>> jordan_panel_failures(const AlbertAlgebra& a,
                                                                       const Automorphism& f,
                                                                       kernels::Exec exec) {
  constexpr std::size_t n = AlbertAlgebra::kDim;
  std::vector<AlbertElement> images;
  for (std::size_t k = 0; k < n; ++k) images.push_back(f.apply(a, a.basis(k)));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<char> bad(pairs.size(), 0);
  auto check = [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const AlbertElement lhs = f.apply(a, a.jordan_mul(a.basis(i), a.basis(j)));
    bad[p] = !(lhs == a.jordan_mul(images[i], images[j]));
  };
  if (exec == kernels::Exec::Serial) {
    for (std::size_t p = 0; p < pairs.size(); ++p) check(p);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(pairs.size()); ++p) check(static_cast<std::size_t>(p));
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (bad[p]) out.push_back(pairs[p]);
  return out;
}

AlbertAlgebra base_change_albert(const AlbertAlgebra& a, const Field& target) {
  require_extension(a.field(), target);
  return AlbertAlgebra(base_change_comp(a.octonions(), target),
                       {a.gamma()[0].embed(target), a.gamma()[1].embed(target), a.gamma()[2].embed(target)});
}

}  // namespace f4kit
