#pragma once

// Seeded random scalars, vectors and forms used by the property suites.

#include <cstdint>
#include <random>

#include "f4kit/fields.hpp"
#include "f4kit/matrix.hpp"

namespace f4kit {

using Rng = std::mt19937_64;

/// n/d with |n| <= height and 1 <= d <= height.
mpq_class random_rational(Rng& rng, int height);

/// Uniform residue over F_p; random_rational(height) coordinates otherwise.
Element random_element(const Field& field, Rng& rng, int height = 10);
Element random_nonzero_element(const Field& field, Rng& rng, int height = 10);
Vector random_vector(const Field& field, std::size_t n, Rng& rng, int height = 10);

}  // namespace f4kit
