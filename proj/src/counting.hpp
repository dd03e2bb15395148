#ifndef EC23_COUNTING_HPP
#define EC23_COUNTING_HPP

// Exhaustive point counts of reduced curves over residue fields and the
// resulting Frobenius traces a_p = Norm(p) + 1 - #E(O/p).

#include <vector>

#include "curve.hpp"
#include "ideal.hpp"

namespace ec23 {

struct ApRecord {
  PrimeIdeal prime;
  long ap = 0;
  mpz_class count; // projective points of the reduction
};

// Err::BadReduction when the reduced discriminant vanishes (run the local
// minimalization first for a non-minimal model); Err::LimitExceeded for
// residue fields too large to enumerate
ApRecord count_points(const Curve& E, const PrimeIdeal& P);

// records at every good prime of norm <= bound, (norm, ideal) order;
// non-minimal models are locally minimalized on the fly
std::vector<ApRecord> ap_list(const Curve& E, long norm_bound);

} // namespace ec23

#endif
