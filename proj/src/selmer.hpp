#ifndef EC23_SELMER_HPP
#define EC23_SELMER_HPP

// m-Selmer groups F(S,m) of F^*: classes x (F^*)^m whose valuations outside
// S are all divisible by m.  Class number 1 and unit group <-1, a> make
// these the span of -1, a and the canonical prime generators pi_p, p in S.

#include <vector>

#include "field.hpp"
#include "ideal.hpp"

namespace ec23 {

struct SelmerBasis {
  std::vector<PrimeIdeal> S;
  long m = 2;
  std::vector<FieldElement> gens; // -1, a, then pi_p in the order of S
  std::vector<long> orders;       // exact order of gens[i] in F^*/(F^*)^m
  // exponent tuples of the represented subgroup, lexicographically sorted;
  // the identity (0,...,0) comes first
  std::vector<std::vector<long>> classes;

  long order() const { return (long)classes.size(); }
  FieldElement rep(const std::vector<long>& e) const;
};

// project_from = 0 gives F(S,m) itself; project_from = m*n > 0 gives the
// image F(S,m)_{mn} of the natural map F(S,mn) -> F(S,m), computed as an
// exponent-lattice span
SelmerBasis selmer_group(std::vector<PrimeIdeal> S, long m, long project_from = 0);

} // namespace ec23

#endif
