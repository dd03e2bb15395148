#ifndef EC23_TORSION_HPP
#define EC23_TORSION_HPP

// Exact torsion subgroups E(F)_tors.  A gcd of #E(O/p) over good odd primes
// bounds the order (reduction is injective on torsion there); division
// polynomials plus point division then pin the group exactly.

#include <set>
#include <vector>

#include "curve.hpp"
#include "ideal.hpp"

namespace ec23 {

// Z/m x Z/n with n | m; trivial group is (1, 1).  gens holds a point of
// exact order m and, when n > 1, an independent point of exact order n.
struct TorsionStructure {
  long m = 1;
  long n = 1;
  std::vector<Point> gens;

  long order() const { return m * n; }
  std::string str() const; // "0", "Z8", "Z2 x Z4", ...
};

// gcd over the first (up to 10) good odd primes of norm <= norm_bound of
// #E(O/p) = Norm(p) + 1 - a_p.  Torsion of E, and of every curve isogenous
// to E, has order dividing this. Err::InsufficientPrimes below 3 samples.
mpz_class torsion_multiple(const Curve& E, long norm_bound = 200, int samples = 10);

// primes dividing torsion_multiple: a superset of the primes dividing
// #E'(F)_tors for any E' isogenous to E
std::set<long> torsion_prime_candidates(const Curve& E, long norm_bound = 200);

// polynomial in x vanishing exactly on x-coordinates of nonzero m-torsion:
// psi_m for odd m, g_m * (4x^3 + b2 x^2 + 2 b4 x + b6) for even m
FPoly division_polynomial(const Curve& E, long m);

// the 0, 1 or 2 points of E with given x-coordinate
std::vector<Point> lift_x(const Curve& E, const FieldElement& x0);

// all Q in E(F) with [n]Q = P (empty when P is not divisible by n)
std::vector<Point> divide_point(const Curve& E, const Point& P, long n);

TorsionStructure torsion_subgroup(const Curve& E);

} // namespace ec23

#endif
