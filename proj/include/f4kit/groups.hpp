#pragma once

// Split ranks of G2 = Aut(C) and F4 = Aut(A), anisotropic-kernel
// descriptors, and the excellence checker.

#include <optional>
#include <string>
#include <vector>

#include "f4kit/albert.hpp"
#include "f4kit/composition.hpp"
#include "f4kit/qforms.hpp"

namespace f4kit {

enum class GroupType { G2, F4 };
enum class RankCertificate { SplitNormWitness, NilpotentElement, ThreeFormAnisotropy, NormAnisotropy };

std::string_view group_name(GroupType t);
std::string_view certificate_name(RankCertificate c);

struct RankReport {
  GroupType type = GroupType::F4;
  int rank = 0;
  RankCertificate certificate = RankCertificate::NormAnisotropy;
  /// "split_norm", "nilpotent_element", "three_form_criterion" or the
  /// decision method of the norm anisotropy.
  std::string method;
  Field field;
  /// Isotropic vector of the norm form (rank 2 for G2, rank 4 for F4).
  std::optional<Vector> norm_witness;
  /// Anisotropy proof of the norm form (G2 rank 0).
  std::optional<IsotropyCertificate> norm_certificate;
  /// Square-zero element (F4 rank 1).
  std::optional<AlbertElement> nilpotent;
  /// Nilpotent test forms examined (all three carry anisotropy proofs at rank 0).
  std::vector<NilpotentTest> tests;
};

RankReport g2_rank(const CompositionAlgebra& c, const SearchOptions& options = {});
RankReport f4_rank(const AlbertAlgebra& a, const SearchOptions& options = {});

enum class KernelKind { Trivial, WholeGroup, SpinForm };
std::string_view kernel_kind_name(KernelKind k);

/// The explicit isomorphisms used to bring Γ to (1, −1, 1).
struct GammaNormalization {
  std::array<std::size_t, 3> permutation{0, 1, 2};  // new slot i takes old γ_{permutation[i]}
  Element scale;                                     // global factor λ
  std::array<Element, 3> square_roots;               // λ γ_{σ(i)} = s_i² · (1, −1, 1)_i
  std::array<Element, 3> normalized;                 // (1, −1, 1)
};

/// nullopt when no permutation, global scaling and per-slot square scaling
/// maps Γ to (1, −1, 1).
std::optional<GammaNormalization> normalize_gamma(const std::array<Element, 3>& gamma);

struct KernelProvenance {
  GammaNormalization normalization;
  AlbertElement idempotent;        // u = E33 of the normalized algebra
  QuadraticForm q0;                // Q0 on the E0 basis
  Vector isotropic_vector;         // (1, 1_C) in E0 coordinates
  Vector plus;                     // q0(plus) = 1
  Vector minus;                    // q0(minus) = −1
  /// Columns plus, minus, then the kernel basis; basis^T diag(q0) basis =
  /// <1, −1> ⊥ kernel form.
  Matrix basis;
  IsotropyCertificate anisotropy;  // of the kernel form
};

struct KernelDescriptor {
  KernelKind kind = KernelKind::WholeGroup;
  RankReport rank;
  std::optional<QuadraticForm> form;  // 7-dimensional, iff kind = SpinForm
  std::optional<KernelProvenance> provenance;
};

/// Throws NonNormalizableGamma for a rank-1 algebra whose Γ the implemented
/// moves cannot bring to (1, −1, 1).
KernelDescriptor f4_kernel(const AlbertAlgebra& a, const SearchOptions& options = {});

/// Spin-form kernel construction applied to H(C; 1, −1, 1) directly.
KernelProvenance split_q0_kernel(const CompositionAlgebra& c, const SearchOptions& options = {});

enum class Verdict { ExcellentWitnessed, Unsupported };
std::string_view verdict_name(Verdict v);

struct DescentWitness {
  /// −N′ over k, built from the coordinate algebra over k.
  QuadraticForm form;
  /// 7 x 7 change of basis: P^T diag(form ⊗ L) P = diag(kernel form).
  Matrix change;
  /// basis_L⁻¹ · (basis_k ⊗ L); block-diagonal diag(I_2, change).
  Matrix full_change;
};

struct ExcellenceReport {
  GroupType type = GroupType::F4;
  Field base;
  Field extension;
  std::optional<RankReport> rank_k;
  std::optional<RankReport> rank_L;
  std::optional<KernelDescriptor> kernel_L;
  /// Present iff the kernel over L is a spin form.
  std::optional<DescentWitness> descent;
  /// What the k-defined object is: "trivial group", "whole group", "Spin(q) with q over k".
  std::string descent_note;
  Verdict verdict = Verdict::Unsupported;
  /// Error name and message when the verdict is unsupported.
  std::string unsupported_reason;
};

ExcellenceReport g2_excellence(const CompositionAlgebra& c, const Field& ext, const SearchOptions& options = {});
ExcellenceReport f4_excellence(const AlbertAlgebra& a, const Field& ext, const SearchOptions& options = {});

}  // namespace f4kit
