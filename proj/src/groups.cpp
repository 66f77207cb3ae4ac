#include "f4kit/groups.hpp"

#include <algorithm>

namespace f4kit {

std::string_view group_name(GroupType t) { return t == GroupType::G2 ? "G2" : "F4"; }

std::string_view certificate_name(RankCertificate c) {
  switch (c) {
    case RankCertificate::SplitNormWitness: return "split_norm_witness";
    case RankCertificate::NilpotentElement: return "nilpotent_element";
    case RankCertificate::ThreeFormAnisotropy: return "three_form_anisotropy";
    case RankCertificate::NormAnisotropy: return "norm_anisotropy";
  }
  return "?";
}

std::string_view kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::Trivial: return "trivial";
    case KernelKind::WholeGroup: return "whole_group";
    case KernelKind::SpinForm: return "spin_form";
  }
  return "?";
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::ExcellentWitnessed ? "excellent_witnessed" : "unsupported";
}

namespace {

// Explicit isotropic vector of the norm form, or UnsupportedCase.
std::optional<Vector> norm_isotropy(const CompositionAlgebra& c, const SearchOptions& options,
                                    IsotropyCertificate& cert) {
  const QuadraticForm n = c.norm_form();
  cert = is_isotropic(n, options);
  if (!cert.isotropic) return std::nullopt;
  if (cert.witness) return cert.witness;
  if (auto w = find_isotropic_vector(n, SearchOptions{4 * options.max_bound, options.exec})) return w;
  raise(ErrorCode::UnsupportedCase,
        "norm form " + n.to_string() + " over " + c.field().name() + " is isotropic but no explicit vector was found");
}

}  // namespace

RankReport g2_rank(const CompositionAlgebra& c, const SearchOptions& options) {
  if (c.dim() != 8) raise(ErrorCode::InvalidInput, "G2 needs an octonion algebra (dimension 8)");
  RankReport r;
  r.type = GroupType::G2;
  r.field = c.field();
  IsotropyCertificate cert;
  if (auto w = norm_isotropy(c, options, cert)) {
    r.rank = 2;
    r.certificate = RankCertificate::SplitNormWitness;
    r.method = "split_norm";
    r.norm_witness = w;
  } else {
    r.rank = 0;
    r.certificate = RankCertificate::NormAnisotropy;
    r.method = std::string(method_name(cert.method));
    r.norm_certificate = cert;
  }
  return r;
}

RankReport f4_rank(const AlbertAlgebra& a, const SearchOptions& options) {
  RankReport r;
  r.type = GroupType::F4;
  r.field = a.field();
  IsotropyCertificate cert;
  if (auto w = norm_isotropy(a.octonions(), options, cert)) {
    r.rank = 4;
    r.certificate = RankCertificate::SplitNormWitness;
    r.method = "split_norm";
    r.norm_witness = w;
    return r;
  }
  r.norm_certificate = cert;
  NilpotentSearch s = nilpotent_search(a, options);
  r.tests = s.tests;
  if (s.witness) {
    r.rank = 1;
    r.certificate = RankCertificate::NilpotentElement;
    r.method = "nilpotent_element";
    r.nilpotent = s.witness;
  } else {
    r.rank = 0;
    r.certificate = RankCertificate::ThreeFormAnisotropy;
    r.method = "three_form_criterion";
  }
  return r;
}

std::optional<GammaNormalization> normalize_gamma(const std::array<Element, 3>& gamma) {
  std::array<std::size_t, 3> perm{0, 1, 2};
  const Field& f = gamma[0].field();
  do {
    const Element lambda = gamma[perm[0]].inv();
    auto s1 = is_square(-(lambda * gamma[perm[1]]));
    auto s2 = is_square(lambda * gamma[perm[2]]);
    if (s1 && s2) {
      GammaNormalization n;
      n.permutation = perm;
      n.scale = lambda;
      n.square_roots = {f.one(), *s1, *s2};
      n.normalized = {f.one(), -f.one(), f.one()};
      return n;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

KernelProvenance split_q0_kernel(const CompositionAlgebra& c, const SearchOptions& options) {
  const Field& f = c.field();
  const AlbertAlgebra a(c, {f.one(), -f.one(), f.one()});
  const AlbertElement u = a.unit_diagonal(3);
  const E0Data e0 = e0_subspace(a, u);
  if (!(e0.change == Matrix::identity(f, 9))) {
    raise(ErrorCode::InternalInvariant, "E0 basis is expected to be orthogonal");
  }
  const QuadraticForm& q0 = e0.form;
  // (x, c) = (1, 1_C): the first two E0 coordinates.
  Vector v = zero_vector(f, 9);
  v[0] = f.one();
  v[1] = f.one();
  if (!q0.evaluate(v).is_zero()) raise(ErrorCode::InternalInvariant, "Q0(1, 1) is not zero");
  const HyperbolicSplit split = split_hyperbolic(q0, v);
  std::vector<Vector> columns{split.plus, split.minus};
  for (std::size_t j = 0; j < split.complement_basis.cols(); ++j) columns.push_back(split.complement_basis.column(j));
  Matrix basis = Matrix::from_columns(f, 9, columns);
  if (!congruent_via(q0, hyperbolic(f, 1).orthogonal_sum(split.complement), basis)) {
    raise(ErrorCode::InternalInvariant, "hyperbolic split of Q0 fails the congruence check");
  }
  IsotropyCertificate anis = is_isotropic(split.complement, options);
  if (anis.isotropic) raise(ErrorCode::InternalInvariant, "the 7-dimensional remainder is isotropic; C is split");
  QuadraticForm kernel = split.complement;
  kernel.set_label("-N'");
  GammaNormalization identity;
  identity.scale = f.one();
  identity.square_roots = {f.one(), f.one(), f.one()};
  identity.normalized = {f.one(), -f.one(), f.one()};
  return KernelProvenance{identity, u, q0, v, split.plus, split.minus, std::move(basis), anis};
}

KernelDescriptor f4_kernel(const AlbertAlgebra& a, const SearchOptions& options) {
  KernelDescriptor k;
  k.rank = f4_rank(a, options);
  if (k.rank.rank == 4) {
    k.kind = KernelKind::Trivial;
    return k;
  }
  if (k.rank.rank == 0) {
    k.kind = KernelKind::WholeGroup;
    return k;
  }
  auto norm = normalize_gamma(a.gamma());
  if (!norm) {
    raise(ErrorCode::NonNormalizableGamma,
          "rank-1 algebra " + a.describe() +
              ": no permutation and square scaling of Γ reaches (1, -1, 1); the general reduction is not implemented");
  }
  KernelProvenance p = split_q0_kernel(a.octonions(), options);
  p.normalization = *norm;
  k.kind = KernelKind::SpinForm;
  // Kernel form: the diagonal entries carried by the last seven basis columns.
  Vector coeffs;
  for (std::size_t j = 2; j < 9; ++j) coeffs.push_back(p.q0.polar(p.basis.column(j), p.basis.column(j)));
  k.form = QuadraticForm(a.field(), coeffs, "-N'");
  if (k.form->dim() != 7) raise(ErrorCode::InternalInvariant, "spin-form kernel must be 7-dimensional");
  k.provenance = std::move(p);
  return k;
}

// ---------------------------------------------------------------------------

namespace {

bool unsupported(const Error& e) {
  return e.code() == ErrorCode::UnsupportedCase || e.code() == ErrorCode::NonNormalizableGamma;
}

}  // namespace

ExcellenceReport g2_excellence(const CompositionAlgebra& c, const Field& ext, const SearchOptions& options) {
  require_extension(c.field(), ext);
  ExcellenceReport r;
  r.type = GroupType::G2;
  r.base = c.field();
  r.extension = ext;
  try {
    r.rank_k = g2_rank(c, options);
    r.rank_L = g2_rank(base_change_comp(c, ext), options);
  } catch (const Error& e) {
    if (!unsupported(e)) throw;
    r.unsupported_reason = std::string(error_code_name(e.code())) + ": " + e.what();
    return r;
  }
  KernelDescriptor k;
  k.rank = *r.rank_L;
  k.kind = r.rank_L->rank == 2 ? KernelKind::Trivial : KernelKind::WholeGroup;
  r.kernel_L = k;
  r.descent_note = k.kind == KernelKind::Trivial ? "trivial group" : "whole group Aut(C), C defined over the base";
  r.verdict = Verdict::ExcellentWitnessed;
  return r;
}

ExcellenceReport f4_excellence(const AlbertAlgebra& a, const Field& ext, const SearchOptions& options) {
  require_extension(a.field(), ext);
  ExcellenceReport r;
  r.type = GroupType::F4;
  r.base = a.field();
  r.extension = ext;
  try {
    r.rank_k = f4_rank(a, options);
    r.kernel_L = f4_kernel(base_change_albert(a, ext), options);
    r.rank_L = r.kernel_L->rank;
    if (r.kernel_L->kind == KernelKind::Trivial) {
      r.descent_note = "trivial group";
    } else if (r.kernel_L->kind == KernelKind::WholeGroup) {
      r.descent_note = "whole group Aut(A), A defined over the base";
    } else {
      // The coordinate algebra is given over k, so its Q0 split descends.
      const KernelProvenance pk = split_q0_kernel(a.octonions(), options);
      const KernelProvenance& pl = *r.kernel_L->provenance;
      Matrix full = *pl.basis.inverse() * pk.basis.embed(ext);
      Matrix change(ext, 7, 7);
      for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) change(i, j) = full(i + 2, j + 2);
      for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) {
          const bool block = (i < 2) == (j < 2);
          if (!block && !full(i, j).is_zero()) raise(ErrorCode::InternalInvariant, "descent does not respect the split");
          if (i < 2 && j < 2 && !(full(i, j) == (i == j ? ext.one() : ext.zero())))
            raise(ErrorCode::InternalInvariant, "descent moves the hyperbolic plane");
        }
      Vector coeffs;
      for (std::size_t j = 2; j < 9; ++j) coeffs.push_back(pk.q0.polar(pk.basis.column(j), pk.basis.column(j)));
      QuadraticForm dk(a.field(), coeffs, "-N'");
      if (!congruent_via(dk.embed(ext), *r.kernel_L->form, change)) {
        raise(ErrorCode::InternalInvariant, "descent witness does not match the kernel over the extension");
      }
      r.descent = DescentWitness{dk, change, full};
      r.descent_note = "Spin(q) with q = -N' over the base";
    }
  } catch (const Error& e) {
    if (!unsupported(e)) throw;
    r.unsupported_reason = std::string(error_code_name(e.code())) + ": " + e.what();
    return r;
  }
  r.verdict = Verdict::ExcellentWitnessed;
  return r;
}

}  // namespace f4kit
