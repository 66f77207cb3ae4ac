#pragma once

// Exhaustive search kernels behind the isotropy oracles.
//
// Each kernel has a serial reference (plain enumeration, kept for testing)
// and an OpenMP version. Results are deterministic and independent of the
// thread count: parallel variants reduce to the smallest hit index.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace f4kit::kernels {

enum class Exec { Serial, Parallel };

using IntVec = std::vector<std::int64_t>;
using ResidueVec = std::vector<std::uint64_t>;

/// Largest sort table / probe count the meet-in-the-middle search accepts.
struct SearchBudget {
  std::uint64_t max_table = std::uint64_t{1} << 22;
  std::uint64_t max_probes = std::uint64_t{1} << 27;
};

/// Number of integer-search work items for a given dimension and bound, or
/// nullopt when the count overflows.
std::optional<std::uint64_t> integer_search_cost(std::size_t dim, std::int64_t bound);

/// Nonzero x in [-bound, bound]^n with sum c_i x_i^2 = 0, scanning in
/// lexicographic order. Cost (2 bound + 1)^n; test reference only.
std::optional<IntVec> integer_search_serial(std::span<const std::int64_t> coeffs, std::int64_t bound);

/// Same search space, solved by meet in the middle over nonnegative
/// coordinates (signs do not matter for diagonal forms). Throws
/// SearchSpaceTooLarge past the budget.
std::optional<IntVec> integer_search_parallel(std::span<const std::int64_t> coeffs, std::int64_t bound,
                                              const SearchBudget& budget = {});

/// True when the parallel search fits the budget.
bool integer_search_fits(std::size_t dim, std::int64_t bound, const SearchBudget& budget = {});

/// Constraint set for F_p enumeration: the vector must be orthogonal (for
/// b(x, y) = sum a_i x_i y_i) to every vector in `orthogonal_to` and vanish
/// on `zero_positions`.
struct FpConstraints {
  std::vector<ResidueVec> orthogonal_to;
  std::vector<std::size_t> zero_positions;
};

inline constexpr std::uint64_t kMaxFpEnumeration = 10'000'000;

/// Number of v in F_p^n (zero included) with q(v) = 0.
std::uint64_t count_isotropic_fp(std::span<const std::uint64_t> coeffs, std::uint64_t p, Exec exec);

/// Smallest (by base-p index) nonzero isotropic v satisfying the constraints.
std::optional<ResidueVec> find_isotropic_fp(std::span<const std::uint64_t> coeffs, std::uint64_t p,
                                            const FpConstraints& constraints, Exec exec);

/// Witt index by growing a totally isotropic subspace one enumerated vector at
/// a time (maximal totally isotropic subspaces all have the same dimension).
std::size_t witt_index_fp_enumeration(std::span<const std::uint64_t> coeffs, std::uint64_t p, Exec exec);

}  // namespace f4kit::kernels
