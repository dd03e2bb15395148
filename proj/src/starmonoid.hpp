#ifndef EC23_STARMONOID_HPP
#define EC23_STARMONOID_HPP

// Monoid M of monic integer polynomials with nonzero constant term under
// (P*Q)(X) = Res_Z(P(Z), Q(X/Z) Z^{deg Q}): the roots of P*Q are the pairwise
// products of roots of P and Q, and X-1 is the neutral element.

#include "zpoly.hpp"

namespace ec23 {

bool in_star_monoid(const ZPoly& P);

// Err::NotInMonoid unless both inputs are monic with nonzero constant term
ZPoly star(const ZPoly& P, const ZPoly& Q);

// P^{(r)} with P^{(r)}(X^r) = (P * (X^r - 1))(X); its roots are the r-th
// powers of the roots of P. Err::NotAPolynomialInXr if the compression
// sanity check fails (cannot happen for monoid inputs).
ZPoly root_power(const ZPoly& P, long r);

} // namespace ec23

#endif
