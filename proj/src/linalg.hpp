#ifndef EC23_LINALG_HPP
#define EC23_LINALG_HPP

// Integer lattice helpers for rank-3 Z-modules in coordinates on {1, a, a^2}.

#include <array>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace ec23 {

using Row3 = std::array<mpz_class, 3>;
using Mat3 = std::array<Row3, 3>;

// Hermite normal form of the row span: upper triangular, positive diagonal,
// entries above a pivot reduced into [0, pivot). Returns false if the rows do
// not span a rank-3 lattice.
bool hnf3(std::vector<Row3> rows, Mat3& out);

// Is v in the row span of the HNF matrix H? Optionally returns the (unique)
// integer coefficients z with v = z0*H0 + z1*H1 + z2*H2.
bool in_span(const Mat3& H, const Row3& v, Row3* coeffs = nullptr);

// Canonical representative of v modulo the row span (coordinates land in
// [0, H[j][j]) for each column j).
Row3 reduce_mod(const Mat3& H, Row3 v);

// Solve target = sum z_i * rows_i over Z for arbitrary (not necessarily
// square) row lists. Used to split 1 across a pair of coprime ideals.
std::optional<std::vector<mpz_class>> solve_in_span(const std::vector<Row3>& rows,
                                                    const Row3& target);

} // namespace ec23

#endif
