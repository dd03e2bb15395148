#ifndef EC23_SEARCH_HPP
#define EC23_SEARCH_HPP

// Curve-finding strategies over F: brute-force coefficient boxes, the
// one-parameter torsion families in Tate normal form, quadratic-twist
// candidate generation, and the discriminant-class search that enumerates
// S-unit classes w, scans E_w : Y^2 = X^3 - 1728 w for integral points in
// archimedean boxes, and rebuilds curves with prescribed bad reduction.

#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "ideal.hpp"
#include "tate.hpp"

namespace ec23 {

struct SearchBox {
  long bound = 1; // coefficient coordinates range over [-bound, bound]
};

// every curve in the box whose conductor is exactly n, as deduplicated
// canonical minimal models in cmp order; cost is (2 bound + 1)^15 raw models
std::vector<Curve> naive_search(const IdealHNF& n, const SearchBox& box);

// one-parameter families with a marked torsion point at (0,0):
// Z4 Z5 Z6 Z7 Z8 Z9 Z10 Z12 carry a point of that exact order, the Z2xN
// variants additionally have full 2-torsion (their point has order N)
std::vector<std::string> known_families();
long family_point_order(const std::string& family); // Err::UnknownFamily
// invariants (m, n) of the generic member's torsion Z/m x Z/n, n | m
std::pair<long, long> family_torsion(const std::string& family);
// member at parameter d (Err::UnknownFamily, Err::SingularParameters)
Curve tate_normal_curve(const std::string& family, const FieldElement& d);

// canonical minimal models with conductor exactly n and the family's torsion
// embedded, swept over parameters d with coordinates in the box
std::vector<Curve> torsion_family_search(const IdealHNF& n, const std::string& family,
                                         const SearchBox& box);

// squarefree twist elements d, times the unit classes 1, -1, a, -a, whose
// quadratic twists could reach conductor norm <= norm_bound: primes of d
// away from 6n force a factor N(p)^2 into the twisted conductor, primes
// shared with 6n are unconstrained (Err::DegenerateJ when j is 0 or 1728)
std::vector<FieldElement> twist_candidates(const Curve& E, const mpz_class& norm_bound);

// E_w : Y^2 = X^3 - 1728 w plus the points collected so far
struct EwCandidate {
  FieldElement w;
  Curve curve;
  std::vector<Point> points;
};
EwCandidate ew_curve(const FieldElement& w); // Err::SingularModel on w = 0

// scans X over Z[a] with |sigma_v(X)| <= bound * |sigma_v(disc_weight)|^(1/6)
// at the real and complex places, keeping X with X^3 - 1728 w a square y^2;
// returns (X, y) with the cmp-smaller y, sorted by x then y
std::vector<Point> weighted_point_search(const EwCandidate& cand,
                                         const FieldElement& disc_weight, long bound);

// curves with j = X^3/w and good reduction outside S: the base model from
// (X, Y) is unit-rescaled so discriminant valuations outside S sit in 12Z,
// then swept over the quadratic classes F(S,2); canonical minimal models
// (Err::NoRationalPoint, Err::DegenerateJ, Err::SingularParameters)
std::vector<Curve> curves_from_w(const FieldElement& w, const Point& pt,
                                 const std::vector<PrimeIdeal>& S);

struct SearchLogEntry {
  long index = 0;   // rank in the candidate ordering
  FieldElement w;   // balanced class representative
  mpz_class w_norm; // |Norm(w)|
  int rounds = 0;   // deepening rounds spent on this candidate
  long points = 0;  // distinct points found on E_w
  long curves = 0;  // curves with conductor exactly n
};

// sweeps w over the classes of F(S,6) hit from F(S,12), S = primes of n,
// ordered by |Norm(w)| with T2 ties; classes that cannot yield a j-pole at
// a conductor-exponent-1 prime are dropped.  Each round enlarges the point
// boxes and activates more candidates; effort is the last round index.
// Returns curves whose recomputed conductor is exactly n, in cmp order.
std::vector<Curve> prescribed_reduction_search(const IdealHNF& n, long effort,
                                               std::vector<SearchLogEntry>* log = nullptr);

} // namespace ec23

#endif
