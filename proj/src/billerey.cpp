#include "billerey.hpp"

#include <algorithm>

#include "common.hpp"
#include "counting.hpp"
#include "starmonoid.hpp"
#include "tate.hpp"

namespace ec23 {

ZPoly frobenius_poly(const Curve& E, const PrimeIdeal& q) {
  ApRecord r = count_points(E, q); // Err::BadReduction on singular fibre
  return {q.norm(), -r.ap, mpz_class(1)};
}

mpz_class billerey_B(const Curve& E, long ell) {
  ZPoly pstar = {mpz_class(-1), mpz_class(1)}; // X - 1, neutral
  for (const PrimeIdeal& q : factor_rational_prime(ell)) {
    ZPoly Pq;
    try {
      Pq = frobenius_poly(E, q);
    } catch (const Error& e) {
      if (e.code == Err::BadReduction) fail(Err::BadReductionAtEll, "billerey_B: bad reduction above ell");
      throw;
    }
    pstar = star(pstar, root_power(Pq, 12L * q.e));
  }
  // degree 3 field: k ranges over {0, 1}
  mpz_class l12;
  mpz_ui_pow_ui(l12.get_mpz_t(), (unsigned long)ell, 12);
  return z_eval(pstar, mpz_class(1)) * z_eval(pstar, l12);
}

// quadratic X^2 + bX + c irreducible mod p <=> b^2 - 4c is a non-residue
static bool quadratic_irreducible_mod(const ZPoly& P, const mpz_class& p) {
  mpz_class disc = P[1] * P[1] - 4 * P[0] * P[2];
  if (p == 2) {
    // roots mod 2 exist iff P(0) or P(1) vanishes
    mpz_class at1 = P[0] + P[1] + P[2];
    return mpz_odd_p(P[0].get_mpz_t()) && mpz_odd_p(at1.get_mpz_t());
  }
  disc %= p;
  if (disc < 0) disc += p;
  if (disc == 0) return false;
  return mpz_legendre(disc.get_mpz_t(), p.get_mpz_t()) == -1;
}

ReduciblePrimeReport reducible_primes(const Curve& E) {
  ReduciblePrimeReport rep;
  Curve Ei = integral_model(E);
  mpz_class nd = invariants(Ei).disc.norm().get_num(); // integral model, denominator 1
  mpz_class s1prod = 6 * 23 * abs(nd);
  for (auto& [p, e] : factor_integer(s1prod)) rep.S1.push_back(p);

  // first four nonzero B_ell over primes ell outside S1, ascending
  mpz_class g = 0;
  for (long ell = 2; rep.B_values.size() < 4 && ell < 6000; ell++) {
    bool prime = ell >= 2;
    for (long d = 2; d * d <= ell; d++)
      if (ell % d == 0) { prime = false; break; }
    if (!prime) continue;
    if (std::find(rep.S1.begin(), rep.S1.end(), mpz_class(ell)) != rep.S1.end()) continue;
    mpz_class B = billerey_B(E, ell);
    if (B == 0) continue;
    rep.B_values.push_back({ell, B});
    g = gcd(g, B);
  }
  if (rep.B_values.empty()) fail(Err::InsufficientPrimes, "reducible_primes: no nonzero B_ell below search bound");

  if (g != 0)
    for (auto& [p, e] : factor_integer(g)) rep.S2.push_back(p);

  rep.S = rep.S1;
  for (const mpz_class& p : rep.S2)
    if (std::find(rep.S.begin(), rep.S.end(), p) == rep.S.end()) rep.S.push_back(p);
  std::sort(rep.S.begin(), rep.S.end());

  // Frobenius sieve: p is eliminated by any good q of residue characteristic
  // != p whose quadratic is irreducible mod p
  std::vector<ApRecord> aps = ap_list(E, 500);
  for (const mpz_class& p : rep.S) {
    bool eliminated = false;
    for (const ApRecord& r : aps) {
      if (r.prime.p == p) continue;
      ZPoly Pq = {r.prime.norm(), -r.ap, mpz_class(1)};
      if (quadratic_irreducible_mod(Pq, p)) {
        rep.witnesses.push_back({p, r.prime, Pq});
        eliminated = true;
        break;
      }
    }
    if (!eliminated) rep.S_prime.push_back(p);
  }
  return rep;
}

} // namespace ec23
