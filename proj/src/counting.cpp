#include "counting.hpp"

#include <algorithm>

#include "residue.hpp"
#include "tate.hpp"

namespace ec23 {

namespace {
constexpr uint64_t kCountCap = 4000000; // largest residue field we enumerate
}

ApRecord count_points(const Curve& E, const PrimeIdeal& P) {
  const ResidueField& K = residue_field(P);
  if (!K.order_fits() || K.order_u() > kCountCap)
    fail(Err::LimitExceeded, "residue field too large for exhaustive counting");
  uint64_t q = K.order_u();
  Invariants I = invariants(E);
  if (K.is_zero(K.reduce(I.disc)))
    fail(Err::BadReduction, "curve has bad reduction at " + P.ideal.str());

  mpz_class count;
  if (K.char_p() <= 3) {
    // direct enumeration of the long form (no square completion)
    RFel a1 = K.reduce(E.a1), a2 = K.reduce(E.a2), a3 = K.reduce(E.a3), a4 = K.reduce(E.a4),
         a6 = K.reduce(E.a6);
    long c = 1; // infinity
    for (uint64_t xi = 0; xi < q; xi++) {
      RFel x = K.from_code(xi);
      RFel rhs = K.add(K.mul(K.add(K.mul(K.add(x, a2), x), a4), x), a6); // x^3+a2x^2+a4x+a6
      RFel lin = K.add(K.mul(a1, x), a3);
      for (uint64_t yi = 0; yi < q; yi++) {
        RFel y = K.from_code(yi);
        if (K.add(K.mul(y, y), K.mul(lin, y)) == rhs) c++;
      }
    }
    count = c;
  } else {
    // #affine = sum over x of 1 + chi(4x^3 + b2 x^2 + 2 b4 x + b6)
    RFel b2 = K.reduce(I.b2), b4 = K.reduce(I.b4), b6 = K.reduce(I.b6);
    RFel two = K.scalar(2), four = K.scalar(4);
    long sum = 0;
    for (uint64_t xi = 0; xi < q; xi++) {
      RFel x = K.from_code(xi);
      RFel D = K.add(K.mul(K.add(K.mul(K.add(K.mul(four, x), b2), x), K.mul(two, b4)), x), b6);
      sum += K.chi(D);
    }
    count = mpz_class(q) + 1 + sum;
  }
  ApRecord rec;
  rec.prime = P;
  rec.count = count;
  mpz_class apz = mpz_class(q) + 1 - count;
  if (apz * apz > 4 * mpz_class(q))
    fail(Err::Internal, "point count violates the Hasse bound");
  rec.ap = mpz_get_si(apz.get_mpz_t());
  return rec;
}

std::vector<ApRecord> ap_list(const Curve& E, long norm_bound) {
  Curve C = integral_model(E);
  std::vector<PrimeIdeal> primes;
  for (mpz_class p = 2; p <= norm_bound; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    for (const PrimeIdeal& P : factor_rational_prime(p))
      if (P.norm() <= norm_bound) primes.push_back(P);
  }
  std::sort(primes.begin(), primes.end(), [](const PrimeIdeal& A, const PrimeIdeal& B) {
    if (A.norm() != B.norm()) return A.norm() < B.norm();
    return A.ideal < B.ideal;
  });
  std::vector<ApRecord> out;
  for (const PrimeIdeal& P : primes) {
    try {
      out.push_back(count_points(C, P));
    } catch (const Error& e) {
      if (e.code != Err::BadReduction) throw;
      LocalData L = tate_local(C, P);
      if (L.fp == 0) out.push_back(count_points(L.minimal, P));
    }
  }
  return out;
}

} // namespace ec23
