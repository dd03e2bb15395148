#ifndef EC23_BILLEREY_HPP
#define EC23_BILLEREY_HPP

// Bound on the primes p for which an elliptic curve over F can admit a
// p-isogeny: combine the bad/ramified primes S1 with the prime factors S2 of
// a gcd of auxiliary integers B_ell, then shrink by exhibiting Frobenius
// polynomials that are irreducible mod p.

#include <vector>

#include <gmpxx.h>

#include "curve.hpp"
#include "ideal.hpp"
#include "zpoly.hpp"

namespace ec23 {

// X^2 - a_q X + Norm(q); Err::BadReduction at a bad prime
ZPoly frobenius_poly(const Curve& E, const PrimeIdeal& q);

// B_ell = P*(1) * P*(ell^12) where P* is the star product over primes q | ell
// of root_power(P_q, 12 * v_q(ell)). Err::BadReductionAtEll unless E has good
// reduction at every prime above ell.
mpz_class billerey_B(const Curve& E, long ell);

struct SieveWitness {
  mpz_class p;  // eliminated prime
  PrimeIdeal q; // good prime with q's residue characteristic != p
  ZPoly Pq;     // Frobenius polynomial, irreducible mod p
};

struct ReduciblePrimeReport {
  std::vector<mpz_class> S1;                          // primes of 6*|disc F|*|Norm(disc E)|
  std::vector<std::pair<long, mpz_class>> B_values;   // first nonzero B_ell, ell not in S1
  std::vector<mpz_class> S2;                          // primes of gcd of the B_ell
  std::vector<mpz_class> S;                           // S1 union S2
  std::vector<mpz_class> S_prime;                     // S minus the sieved primes
  std::vector<SieveWitness> witnesses;                // one per sieved prime
};

// the four-step bound; S_prime contains every p with a p-isogeny over F
ReduciblePrimeReport reducible_primes(const Curve& E);

} // namespace ec23

#endif
