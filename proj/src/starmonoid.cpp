#include "starmonoid.hpp"

#include "common.hpp"

namespace ec23 {

bool in_star_monoid(const ZPoly& P) {
  int n = z_deg(P);
  if (n < 0) return false;
  return P[n] == 1 && P[0] != 0;
}

static void require_monoid(const ZPoly& P, const char* who) {
  if (!in_star_monoid(P)) fail(Err::NotInMonoid, std::string(who) + ": input not monic with nonzero constant term");
}

ZPoly star(const ZPoly& P, const ZPoly& Q) {
  require_monoid(P, "star");
  require_monoid(Q, "star");
  int n = z_deg(P), m = z_deg(Q);
  if (n == 0) return {mpz_class(1)};
  if (m == 0) return {mpz_class(1)};
  // Res_Z(P(Z), Q(X/Z) Z^m): the second argument, as a polynomial in Z, has
  // coefficient Q[m-k] X^{m-k} on Z^k. Leading Z-coefficient is Q[0] != 0,
  // so the Sylvester shape is exact.
  QPoly A = q_from_z(P);
  std::vector<QPoly> B(m + 1);
  for (int k = 0; k <= m; k++) {
    QPoly mono(m - k + 1, mpq_class(0));
    mono[m - k] = mpq_class(Q[m - k]);
    q_trim(mono);
    B[k] = mono;
  }
  QPoly R = resultant_in_t(A, B);
  ZPoly out = z_from_q(R); // monic up to sign; primitive already
  int d = z_deg(out);
  if (d != n * m) fail(Err::Internal, "star: resultant degree mismatch");
  if (out[d] < 0) out = z_neg(out);
  if (out[d] != 1) fail(Err::Internal, "star: non-monic resultant");
  return out;
}

ZPoly root_power(const ZPoly& P, long r) {
  require_monoid(P, "root_power");
  if (r < 1) fail(Err::NotInMonoid, "root_power: exponent must be >= 1");
  if (r == 1) return P;
  int n = z_deg(P);
  if (n == 0) return {mpz_class(1)};
  ZPoly cyc(r + 1, mpz_class(0));
  cyc[0] = -1;
  cyc[r] = 1;
  ZPoly C = star(P, cyc); // degree n*r, a polynomial in X^r
  ZPoly out(n + 1, mpz_class(0));
  for (int i = 0; i <= z_deg(C); i++) {
    if (i % r == 0)
      out[i / r] = C[i];
    else if (C[i] != 0)
      fail(Err::NotAPolynomialInXr, "root_power: resultant not a polynomial in X^r");
  }
  z_trim(out);
  return out;
}

} // namespace ec23
