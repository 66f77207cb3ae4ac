#include <limits>

#include "f4kit/error.hpp"
#include "f4kit/fields.hpp"
#include "f4kit/kernels.hpp"
#include "kernels_common.hpp"

namespace f4kit::kernels {

std::optional<std::uint64_t> integer_search_cost(std::size_t dim, std::int64_t bound) {
  const auto side = static_cast<unsigned __int128>(2 * bound + 1);
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    total *= side;
    if (total > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(total);
}

std::optional<IntVec> integer_search_serial(std::span<const std::int64_t> coeffs, std::int64_t bound) {
  const std::size_t n = coeffs.size();
  if (n == 0 || bound <= 0) return std::nullopt;
  detail::check_coefficients(coeffs, bound);
  IntVec x(n, -bound);
  while (true) {
    __int128 value = 0;
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      value += static_cast<__int128>(coeffs[i]) * x[i] * x[i];
      nonzero = nonzero || x[i] != 0;
    }
    if (nonzero && value == 0) return x;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < bound) {
        ++x[i];
        break;
      }
      x[i] = -bound;
      if (i == 0) return std::nullopt;
    }
  }
}

namespace detail {

void check_coefficients(std::span<const std::int64_t> coeffs, std::int64_t bound) {
  constexpr std::int64_t kMaxCoeff = std::int64_t{1} << 62;
  for (auto c : coeffs) {
    if (c == 0 || c >= kMaxCoeff || c <= -kMaxCoeff) {
      raise(ErrorCode::SearchSpaceTooLarge, "integer search coefficients must be nonzero and below 2^62");
    }
  }
  if (bound >= (std::int64_t{1} << 24)) raise(ErrorCode::SearchSpaceTooLarge, "search bound too large");
}

std::uint64_t fp_space(std::size_t free_coords, std::uint64_t p) {
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < free_coords; ++i) {
    total *= p;
    if (total > kMaxFpEnumeration) {
      raise(ErrorCode::SearchSpaceTooLarge, "F_p enumeration beyond 10^7 vectors");
    }
  }
  return static_cast<std::uint64_t>(total);
}

bool fp_accept(std::span<const std::uint64_t> coeffs, std::uint64_t p, const FpConstraints& constraints,
               const ResidueVec& v) {
  std::uint64_t q = 0;
  bool nonzero = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    nonzero = true;
    q = (q + nt::mulmod(coeffs[i], nt::mulmod(v[i], v[i], p), p)) % p;
  }
  if (!nonzero || q != 0) return false;
  for (const auto& u : constraints.orthogonal_to) {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0 || u[i] == 0) continue;
      b = (b + nt::mulmod(coeffs[i], nt::mulmod(v[i], u[i], p), p)) % p;
    }
    if (b != 0) return false;
  }
  return true;
}

ResidueVec fp_decode(std::uint64_t index, std::size_t n, std::uint64_t p, const std::vector<bool>& forced_zero) {
  ResidueVec v(n, 0);
  for (std::size_t i = n; i > 0; --i) {
    if (forced_zero[i - 1]) continue;
    v[i - 1] = index % p;
    index /= p;
  }
  return v;
}

}  // namespace detail

namespace {

// Reduced echelon basis helper for the Witt-index oracle.
struct EchelonSpace {
  std::uint64_t p;
  std::vector<ResidueVec> rows;
  std::vector<std::size_t> pivots;

  void insert(ResidueVec v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint64_t f = v[pivots[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = (v[j] + p - nt::mulmod(f, rows[r][j], p)) % p;
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) return;
    std::uint64_t inv = nt::powmod(v[piv], p - 2, p);
    for (auto& e : v) e = nt::mulmod(e, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint64_t f = rows[r][piv];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        rows[r][j] = (rows[r][j] + p - nt::mulmod(f, v[j], p)) % p;
    }
    rows.push_back(std::move(v));
    pivots.push_back(piv);
  }
};

}  // namespace

std::size_t witt_index_fp_enumeration(std::span<const std::uint64_t> coeffs, std::uint64_t p, Exec exec) {
  EchelonSpace space{p, {}, {}};
  FpConstraints constraints;
  while (true) {
    constraints.orthogonal_to = space.rows;
    constraints.zero_positions = space.pivots;
    auto v = find_isotropic_fp(coeffs, p, constraints, exec);
    if (!v) return space.rows.size();
    space.insert(*v);
  }
}

}  // namespace f4kit::kernels
