#pragma once

#include <span>
#include <vector>

#include "f4kit/kernels.hpp"

namespace f4kit::kernels::detail {

void check_coefficients(std::span<const std::int64_t> coeffs, std::int64_t bound);

/// p^free_coords, throwing SearchSpaceTooLarge past kMaxFpEnumeration.
std::uint64_t fp_space(std::size_t free_coords, std::uint64_t p);

bool fp_accept(std::span<const std::uint64_t> coeffs, std::uint64_t p, const FpConstraints& constraints,
               const ResidueVec& v);

ResidueVec fp_decode(std::uint64_t index, std::size_t n, std::uint64_t p, const std::vector<bool>& forced_zero);

}  // namespace f4kit::kernels::detail
