#pragma once

#include <optional>
#include <vector>

#include "eqsing/arith.hpp"

namespace eqsing {

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Zero rows are dropped. Pivots are positive, strictly to the right of the
/// previous row's pivot, and every entry above a pivot is reduced into
/// [0, pivot). The result depends only on the lattice, not on the generators.
std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows, std::size_t cols);

/// Z-basis of {v in Z^n : a v = 0} in Hermite normal form. The returned
/// lattice is saturated by construction.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Q-span(vectors) intersected with Z^dim, in Hermite normal form.
std::vector<IntVector> saturate(const std::vector<IntVector>& vectors, std::size_t dim);

std::size_t rank(RatMatrix m);
std::size_t rank(const IntMatrix& m);
std::size_t rank(const std::vector<IntVector>& rows, std::size_t cols);

std::optional<RatMatrix> inverse(RatMatrix m);

// Monic characteristic polynomial det(tI - a), coefficients from t^0 upward.
std::vector<Int> characteristic_polynomial(const IntMatrix& a);

IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, std::size_t cols);

}  // namespace eqsing
