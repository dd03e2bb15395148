#ifndef EC23_ISOGENY_HPP
#define EC23_ISOGENY_HPP

// Prime-degree isogenies over F: kernel polynomials from factors of division
// polynomials, codomains by Velu's summation formulas, and breadth-first
// closure of a curve's isogeny class with a simple graph per degree.

#include <string>
#include <vector>

#include "billerey.hpp"
#include "curve.hpp"
#include "ideal.hpp"

namespace ec23 {

// monic factors of the ell-division polynomial cutting out rational cyclic
// ell-subgroups. E may be any model; kernels refer to the canonical minimal
// model. Degree 1 each for ell = 2, (ell-1)/2 for odd ell. Empty when E has
// no ell-isogeny.
std::vector<FPoly> kernel_polynomials(const Curve& E, long ell);

// codomain of the ell-isogeny with the given kernel, as a canonical minimal
// model. Err::InvalidKernel if kernel does not divide the division
// polynomial or the formulas degenerate.
Curve velu(const Curve& E, const FPoly& kernel, long ell);

struct IsogenyEdge {
  int from = 0, to = 0;
  long degree = 2;
  bool operator==(const IsogenyEdge& o) const {
    return from == o.from && to == o.to && degree == o.degree;
  }
};

struct IsogenyClassGraph {
  std::vector<Curve> vertices; // canonical minimal models, lexicographic
  std::vector<IsogenyEdge> edges; // from < to, one per (pair, degree)
  std::vector<mpz_class> isogeny_primes; // the bound the closure ran under
  ReduciblePrimeReport report;
  IdealHNF conductor; // shared by all vertices
  std::string label;  // assigned by dataset labeling; empty otherwise
};

// closure under all ell in reducible_primes(E).S_prime, vertices
// deduplicated up to isomorphism. Err::ClassSizeLimit beyond cap vertices.
IsogenyClassGraph isogeny_class(const Curve& E, int cap = 64);

// undirected DOT: degree 2 solid, degree 3 dashed, larger degrees labeled
std::string graph_dot(const IsogenyClassGraph& G);

} // namespace ec23

#endif
