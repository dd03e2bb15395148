#ifndef EC23_ZPOLY_HPP
#define EC23_ZPOLY_HPP

// Dense univariate polynomials over Z and Q (little-endian coefficient
// vectors, trimmed). Includes modular gcd, Yun squarefree decomposition,
// Zassenhaus lift-and-recombine factorization, exact interpolation and a
// Sylvester resultant evaluated pointwise.

#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ec23 {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

// ---- basics ----
void z_trim(ZPoly& f);
int z_deg(const ZPoly& f); // -1 for zero
ZPoly z_add(const ZPoly& a, const ZPoly& b);
ZPoly z_sub(const ZPoly& a, const ZPoly& b);
ZPoly z_mul(const ZPoly& a, const ZPoly& b);
ZPoly z_neg(ZPoly a);
ZPoly z_derivative(const ZPoly& f);
mpz_class z_eval(const ZPoly& f, const mpz_class& x);
mpz_class z_content(const ZPoly& f);
ZPoly z_primitive(const ZPoly& f); // content removed, leading coeff > 0
bool z_divides(const ZPoly& d, const ZPoly& f, ZPoly* quot = nullptr);

void q_trim(QPoly& f);
int q_deg(const QPoly& f);
QPoly q_add(const QPoly& a, const QPoly& b);
QPoly q_sub(const QPoly& a, const QPoly& b);
QPoly q_mul(const QPoly& a, const QPoly& b);
std::pair<QPoly, QPoly> q_divrem(const QPoly& a, const QPoly& b);
mpq_class q_eval(const QPoly& f, const mpq_class& x);
QPoly q_from_z(const ZPoly& f);
// clears denominators; returns primitive integer poly (sign of lc preserved)
ZPoly z_from_q(const QPoly& f);

// gcd of integer polynomials by modular images (monic result made primitive)
ZPoly z_gcd(const ZPoly& a, const ZPoly& b);
ZPoly z_squarefree_part(const ZPoly& f);
bool z_is_squarefree(const ZPoly& f);

// Yun decomposition: list of (primitive squarefree factor, multiplicity)
std::vector<std::pair<ZPoly, int>> z_squarefree_decompose(const ZPoly& f);

// Lagrange interpolation through (x_i, y_i), exact over Q
QPoly q_interpolate(const std::vector<std::pair<mpq_class, mpq_class>>& pts);

// Res_t(A(t), sum_j B_j(X) t^j) where B has fixed t-degree tdeg_b (B.size()
// == tdeg_b+1, entries are polynomials in X). Evaluated at enough X points
// and interpolated; the Sylvester matrix shape is held fixed so evaluation
// commutes with the determinant.
QPoly resultant_in_t(const QPoly& A, const std::vector<QPoly>& B);

// Zassenhaus. Input arbitrary nonzero; returns (irreducible primitive factor,
// multiplicity) pairs together with the rational content. If max_deg is set,
// only factors of degree <= max_deg are guaranteed to be split off; whatever
// remains unsplit is returned in `tail` (true factors all of degree >
// max_deg).
struct ZFactorization {
  mpq_class content;
  std::vector<std::pair<ZPoly, int>> factors;
  std::vector<std::pair<ZPoly, int>> tail;
};
ZFactorization z_factor(const ZPoly& f, int max_deg = -1);

} // namespace ec23

#endif
