#include "f4kit/composition.hpp"

#include <algorithm>
#include <sstream>

namespace f4kit {

CompositionAlgebra CompositionAlgebra::cayley_dickson(const Field& field, Vector params) {
  if (params.size() > 3) {
    raise(ErrorCode::TooManyDoublings, "at most three doublings (dimension 8) are supported; the 16-dimensional "
                                       "algebra is not a composition algebra");
  }
  for (const auto& g : params) {
    if (!(g.field() == field)) raise(ErrorCode::FieldMismatch, "doubling parameter is not in " + field.name());
    if (g.is_zero()) raise(ErrorCode::ZeroParameter, "doubling parameters must be nonzero");
  }
  auto impl = std::make_shared<Impl>();
  impl->field = field;
  impl->params = std::move(params);
  impl->table = {field.one()};
  std::size_t m = 1;
  // conj(e_i) = s(i) e_i.
  auto s = [](std::size_t i) { return i == 0 ? 1 : -1; };
  for (const auto& gamma : impl->params) {
    const std::size_t n = 2 * m;
    std::vector<Element> t(n * n, field.zero());
    auto old = [&](std::size_t i, std::size_t j) -> const Element& { return impl->table[i * m + j]; };
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        t[i * n + j] = old(i, j);                                        // (e_i,0)(e_j,0) = (e_i e_j, 0)
        t[i * n + m + j] = s(i) == 1 ? old(i, j) : -old(i, j);           // (e_i,0)(0,e_j) = (0, ē_i e_j)
        t[(m + i) * n + j] = old(j, i);                                  // (0,e_i)(e_j,0) = (0, e_j e_i)
        t[(m + i) * n + m + j] = s(i) == 1 ? gamma * old(j, i) : -(gamma * old(j, i));  // (γ e_j ē_i, 0)
      }
    impl->table = std::move(t);
    m = n;
  }
  impl->dim = m;
  for (std::size_t i = 0; i < m; ++i) {
    const Element& c = impl->table[i * m + i];
    impl->norms.push_back(i == 0 ? c : -c);
  }
  return CompositionAlgebra(std::move(impl));
}

CompositionAlgebra CompositionAlgebra::graves(const Field& field) {
  return cayley_dickson(field, {field.from_int(-1), field.from_int(-1), field.from_int(-1)});
}

CompositionAlgebra CompositionAlgebra::split_octonions(const Field& field) {
  return cayley_dickson(field, {field.one(), field.one(), field.one()});
}

void CompositionAlgebra::check(const Vector& x) const {
  if (x.size() != dim()) {
    raise(ErrorCode::AlgebraMismatch, "element of dimension " + std::to_string(x.size()) + " used in a " +
                                          std::to_string(dim()) + "-dimensional algebra");
  }
  for (const auto& e : x)
    if (!(e.field() == field())) raise(ErrorCode::AlgebraMismatch, "element coordinates are not in " + field().name());
}

Vector CompositionAlgebra::mul(const Vector& x, const Vector& y) const {
  check(x);
  check(y);
  const std::size_t n = dim();
  Vector z(n, field().zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      z[i ^ j] += structure(i, j) * x[i] * y[j];
    }
  }
  return z;
}

Vector CompositionAlgebra::conj(const Vector& x) const {
  check(x);
  Vector z = x;
  for (std::size_t i = 1; i < z.size(); ++i) z[i] = -z[i];
  return z;
}

Element CompositionAlgebra::norm(const Vector& x) const {
  check(x);
  Element s = field().zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) s += basis_norm(i) * x[i] * x[i];
  return s;
}

Element CompositionAlgebra::trace(const Vector& x) const {
  check(x);
  return field().from_int(2) * x[0];
}

Vector CompositionAlgebra::one() const { return unit_vector(field(), dim(), 0); }

Vector CompositionAlgebra::basis(std::size_t i) const { return unit_vector(field(), dim(), i); }

CompElement CompositionAlgebra::element(Vector coords) const { return CompElement(*this, std::move(coords)); }

CompElement CompositionAlgebra::unit() const { return element(one()); }

QuadraticForm CompositionAlgebra::norm_form() const {
  QuadraticForm q(field(), impl_->norms);
  if (dim() > 1 && !(q == pfister(field(), params()))) {
    raise(ErrorCode::InternalInvariant, "norm form does not match the Pfister form of the parameters");
  }
  q.set_label("N");
  return q;
}

std::string CompositionAlgebra::describe() const {
  std::ostringstream out;
  out << "CD(" << field().name() << "; ";
  for (std::size_t i = 0; i < params().size(); ++i) out << (i ? "," : "") << params()[i].to_string();
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------------------

CompElement::CompElement(CompositionAlgebra algebra, Vector coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (coords_.size() != algebra_.dim()) {
    raise(ErrorCode::InvalidInput, "expected " + std::to_string(algebra_.dim()) + " coordinates, got " +
                                       std::to_string(coords_.size()));
  }
  for (const auto& c : coords_)
    if (!(c.field() == algebra_.field())) raise(ErrorCode::InvalidInput, "coordinate outside " + algebra_.field().name());
}

namespace {

void same_algebra(const CompElement& x, const CompElement& y) {
  if (!(x.algebra() == y.algebra())) {
    raise(ErrorCode::AlgebraMismatch, "elements of " + x.algebra().describe() + " and " + y.algebra().describe());
  }
}

}  // namespace

CompElement operator+(const CompElement& x, const CompElement& y) {
  same_algebra(x, y);
  Vector z = x.coords_;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += y.coords_[i];
  return CompElement(x.algebra_, std::move(z));
}

CompElement operator-(const CompElement& x, const CompElement& y) {
  same_algebra(x, y);
  Vector z = x.coords_;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y.coords_[i];
  return CompElement(x.algebra_, std::move(z));
}

CompElement operator*(const CompElement& x, const CompElement& y) {
  same_algebra(x, y);
  return CompElement(x.algebra_, x.algebra_.mul(x.coords_, y.coords_));
}

bool operator==(const CompElement& x, const CompElement& y) {
  return x.algebra_ == y.algebra_ && x.coords_ == y.coords_;
}

CompElement CompElement::scaled(const Element& s) const {
  if (!(s.field() == algebra_.field())) raise(ErrorCode::FieldMismatch, "scalar outside " + algebra_.field().name());
  Vector z = coords_;
  for (auto& c : z) c *= s;
  return CompElement(algebra_, std::move(z));
}

CompElement CompElement::conj() const { return CompElement(algebra_, algebra_.conj(coords_)); }
Element CompElement::norm() const { return algebra_.norm(coords_); }
Element CompElement::trace() const { return algebra_.trace(coords_); }

CompResult comp_eval(CompOp op, const CompElement& x, const std::optional<CompElement>& y,
                     const std::optional<Element>& s) {
  auto need_y = [&]() -> const CompElement& {
    if (!y) raise(ErrorCode::InvalidInput, "binary operation needs a second element");
    return *y;
  };
  switch (op) {
    case CompOp::Mul: return {x * need_y(), std::nullopt};
    case CompOp::Add: return {x + need_y(), std::nullopt};
    case CompOp::Conj: return {x.conj(), std::nullopt};
    case CompOp::Norm: return {std::nullopt, x.norm()};
    case CompOp::Trace: return {std::nullopt, x.trace()};
    case CompOp::ScalarMul:
      if (!s) raise(ErrorCode::InvalidInput, "scalar multiplication needs a scalar");
      return {x.scaled(*s), std::nullopt};
  }
  raise(ErrorCode::InvalidInput, "unknown composition operation");
}

// ---------------------------------------------------------------------------

bool is_split(const CompositionAlgebra& c, const SearchOptions& options) {
  if (c.dim() == 1) return false;
  return is_isotropic(c.norm_form(), options).isotropic;
}

namespace {

// Same multiset of parameters up to square factors, slot by slot.
bool slotwise_squares(const CompositionAlgebra& a, const CompositionAlgebra& b) {
  std::vector<Element> rest = b.params();
  for (const auto& g : a.params()) {
    auto it = std::find_if(rest.begin(), rest.end(), [&](const Element& h) { return same_square_class(g, h); });
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  return true;
}

}  // namespace

bool comp_isomorphic(const CompositionAlgebra& a, const CompositionAlgebra& b, const SearchOptions& options) {
  if (!(a.field() == b.field())) raise(ErrorCode::FieldMismatch, "algebras over different fields");
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 1 || slotwise_squares(a, b)) return true;
  if (!a.field().is_quadratic()) return equivalent(a.norm_form(), b.norm_form());
  const bool sa = is_split(a, options), sb = is_split(b, options);
  if (sa && sb) return true;
  if (sa != sb) return false;
  raise(ErrorCode::UnsupportedCase, "isomorphism of two division algebras over " + a.field().name() +
                                        " needs Hasse invariants over a number field");
}

void require_extension(const Field& base, const Field& target) {
  if (base == target) return;
  if (base.is_rationals() && target.is_quadratic()) return;
  raise(ErrorCode::UnsupportedExtension, target.name() + " is not a supported extension of " + base.name());
}

CompositionAlgebra base_change_comp(const CompositionAlgebra& c, const Field& target) {
  require_extension(c.field(), target);
  return CompositionAlgebra::cayley_dickson(target, embed(c.params(), target));
}

}  // namespace f4kit
