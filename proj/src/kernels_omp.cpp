#include <algorithm>
#include <limits>
#include <utility>

#include "f4kit/error.hpp"
#include "f4kit/fields.hpp"
#include "f4kit/kernels.hpp"
#include "kernels_common.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace f4kit::kernels {

namespace {

std::optional<std::uint64_t> power(std::uint64_t base, std::size_t e) {
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    r *= base;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(r);
}

void decode_nonneg(std::uint64_t index, std::uint64_t base, std::size_t count, std::int64_t* out) {
  for (std::size_t i = count; i > 0; --i) {
    out[i - 1] = static_cast<std::int64_t>(index % base);
    index /= base;
  }
}

__int128 partial_value(std::span<const std::int64_t> coeffs, std::uint64_t index, std::uint64_t base) {
  __int128 v = 0;
  for (std::size_t i = coeffs.size(); i > 0; --i) {
    auto x = static_cast<__int128>(index % base);
    index /= base;
    v += coeffs[i - 1] * x * x;
  }
  return v;
}

}  // namespace

bool integer_search_fits(std::size_t dim, std::int64_t bound, const SearchBudget& budget) {
  const auto base = static_cast<std::uint64_t>(bound + 1);
  const std::size_t left = dim / 2;
  auto table = power(base, dim - left);
  auto probes = power(base, left);
  return table && probes && *table <= budget.max_table && *probes <= budget.max_probes;
}

std::optional<IntVec> integer_search_parallel(std::span<const std::int64_t> coeffs, std::int64_t bound,
                                              const SearchBudget& budget) {
  const std::size_t n = coeffs.size();
  if (n == 0 || bound <= 0) return std::nullopt;
  detail::check_coefficients(coeffs, bound);
  if (!integer_search_fits(n, bound, budget)) {
    raise(ErrorCode::SearchSpaceTooLarge,
          "meet-in-the-middle search for dim " + std::to_string(n) + " at bound " + std::to_string(bound) +
              " exceeds the search budget");
  }
  const auto base = static_cast<std::uint64_t>(bound + 1);
  const std::size_t left = n / 2;
  auto lhs = coeffs.subspan(0, left);
  auto rhs = coeffs.subspan(left);
  const std::uint64_t table_size = *power(base, rhs.size());
  const std::uint64_t probe_count = *power(base, left);

  std::vector<std::pair<__int128, std::uint64_t>> table(table_size);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(table_size); ++r) {
    auto idx = static_cast<std::uint64_t>(r);
    table[idx] = {partial_value(rhs, idx, base), idx};
  }
  std::uint64_t zero_nonzero = 0;
  for (std::uint64_t r = 1; r < table_size; ++r) {
    if (table[r].first == 0) {
      zero_nonzero = r;
      break;
    }
  }
  std::sort(table.begin(), table.end());

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t l = 0; l < static_cast<std::int64_t>(probe_count); ++l) {
    auto idx = static_cast<std::uint64_t>(l);
    if (idx == 0) {
      if (zero_nonzero != 0) best = std::min(best, idx);
      continue;
    }
    const __int128 target = -partial_value(lhs, idx, base);
    auto it = std::lower_bound(table.begin(), table.end(), std::pair<__int128, std::uint64_t>{target, 0});
    if (it != table.end() && it->first == target) best = std::min(best, idx);
  }
  if (best == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;

  std::uint64_t right_index = zero_nonzero;
  if (best != 0) {
    const __int128 target = -partial_value(lhs, best, base);
    right_index = std::lower_bound(table.begin(), table.end(), std::pair<__int128, std::uint64_t>{target, 0})->second;
  }
  IntVec x(n, 0);
  decode_nonneg(best, base, left, x.data());
  decode_nonneg(right_index, base, n - left, x.data() + left);
  return x;
}

std::uint64_t count_isotropic_fp(std::span<const std::uint64_t> coeffs, std::uint64_t p, Exec exec) {
  const std::size_t n = coeffs.size();
  const std::uint64_t total = detail::fp_space(n, p);
  std::vector<std::uint64_t> sq(p);
  for (std::uint64_t t = 0; t < p; ++t) sq[t] = nt::mulmod(t, t, p);
  auto value = [&](std::uint64_t index) {
    std::uint64_t q = 0;
    for (std::size_t i = n; i > 0; --i) {
      q = (q + nt::mulmod(coeffs[i - 1], sq[index % p], p)) % p;
      index /= p;
    }
    return q;
  };
  std::uint64_t count = 0;
  if (exec == Exec::Serial) {
    for (std::uint64_t idx = 0; idx < total; ++idx)
      if (value(idx) == 0) ++count;
    return count;
  }
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx)
    if (value(static_cast<std::uint64_t>(idx)) == 0) ++count;
  return count;
}

std::optional<ResidueVec> find_isotropic_fp(std::span<const std::uint64_t> coeffs, std::uint64_t p,
                                            const FpConstraints& constraints, Exec exec) {
  const std::size_t n = coeffs.size();
  std::vector<bool> forced(n, false);
  for (auto pos : constraints.zero_positions) forced.at(pos) = true;
  const auto free_coords = static_cast<std::size_t>(std::count(forced.begin(), forced.end(), false));
  const std::uint64_t total = detail::fp_space(free_coords, p);

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  if (exec == Exec::Serial) {
    for (std::uint64_t idx = 1; idx < total; ++idx) {
      if (detail::fp_accept(coeffs, p, constraints, detail::fp_decode(idx, n, p, forced))) {
        best = idx;
        break;
      }
    }
  } else {
#pragma omp parallel for schedule(dynamic, 4096) reduction(min : best)
    for (std::int64_t i = 1; i < static_cast<std::int64_t>(total); ++i) {
      auto idx = static_cast<std::uint64_t>(i);
      if (idx > best) continue;
      if (detail::fp_accept(coeffs, p, constraints, detail::fp_decode(idx, n, p, forced))) best = std::min(best, idx);
    }
  }
  if (best == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return detail::fp_decode(best, n, p, forced);
}

}  // namespace f4kit::kernels
