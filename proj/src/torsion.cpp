#include "torsion.hpp"

#include <algorithm>

#include "counting.hpp"
#include "fpoly.hpp"

namespace ec23 {

std::string TorsionStructure::str() const {
  if (m == 1) return "0";
  if (n == 1) return "Z" + std::to_string(m);
  return "Z" + std::to_string(n) + " x Z" + std::to_string(m);
}

mpz_class torsion_multiple(const Curve& E, long norm_bound, int samples) {
  mpz_class g = 0;
  int used = 0;
  for (const ApRecord& r : ap_list(E, norm_bound)) {
    if (r.prime.p == 2) continue; // injectivity wants odd residue char
    g = gcd(g, r.count);
    if (++used >= samples) break;
  }
  if (used < 3) fail(Err::InsufficientPrimes, "torsion_multiple: fewer than 3 good odd primes below bound");
  return g;
}

std::set<long> torsion_prime_candidates(const Curve& E, long norm_bound) {
  mpz_class g = torsion_multiple(E, norm_bound);
  std::set<long> out;
  mpz_class rest = g;
  for (mpz_class q = 2; q * q <= rest; q += (q == 2 ? 1 : 2))
    if (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
      out.insert(q.get_si());
      while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) rest /= q;
    }
  if (rest > 1) out.insert(rest.get_si());
  return out;
}

FPoly division_polynomial(const Curve& E, long m) {
  if (m < 1) fail(Err::Internal, "division_polynomial: m must be >= 1");
  FPoly g = division_poly_g(E, (int)m);
  if (m % 2 == 0) g = fp_mul(g, two_division_poly(E));
  return g;
}

std::vector<Point> lift_x(const Curve& E, const FieldElement& x0) {
  FieldElement h = E.a1 * x0 + E.a3;
  FieldElement f = ((x0 + E.a2) * x0 + E.a4) * x0 + E.a6;
  auto s = sqrt_in_F(h * h + FieldElement(4) * f);
  if (!s) return {};
  mpq_class half(1, 2);
  std::vector<Point> out;
  out.emplace_back(x0, half * (*s - h));
  if (!s->is_zero()) out.emplace_back(x0, half * (-*s - h));
  return out;
}

std::vector<Point> divide_point(const Curve& E, const Point& P, long n) {
  if (n < 1) fail(Err::Internal, "divide_point: n must be >= 1");
  if (n == 1) return {P};
  std::vector<Point> out;
  FPoly D;
  if (P.inf) {
    out.push_back(Point());
    D = division_polynomial(E, n);
  } else {
    // x-coordinate of [n]Q is phi_n / psi_n^2; clear the denominator
    FPoly gn = division_poly_g(E, (int)n);
    FPoly gp = division_poly_g(E, (int)n + 1);
    FPoly gq = division_poly_g(E, (int)n - 1);
    FPoly B = two_division_poly(E);
    FPoly psi2 = fp_mul(gn, gn); // psi_n^2 as a polynomial in x
    FPoly cross = fp_mul(gp, gq);
    if (n % 2 == 0) {
      psi2 = fp_mul(psi2, B);
    } else {
      cross = fp_mul(cross, B);
    }
    FPoly X = {FieldElement(0), FieldElement(1)};
    FPoly phi = fp_sub(fp_mul(X, psi2), cross);
    D = fp_sub(phi, fp_scale(psi2, P.x));
  }
  std::vector<FieldElement> xs = roots_in_F(D);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (const FieldElement& x0 : xs)
    for (const Point& Q : lift_x(E, x0))
      if (mul_point(E, n, Q) == P) out.push_back(Q);
  return out;
}

namespace {

bool point_in(const std::vector<Point>& v, const Point& P) {
  return std::find(v.begin(), v.end(), P) != v.end();
}

} // namespace

TorsionStructure torsion_subgroup(const Curve& E) {
  // wider sample than the default candidate sieve: primes carried only by
  // isogenous curves' torsion get filtered before any exact work
  mpz_class bound = torsion_multiple(E, 1000, 20);
  long g = bound.get_si();

  // 2-primary part: breadth-first halving closure starting at O collects
  // the whole 2-power torsion level by exact order
  int cap2 = 0;
  for (long t = g; t % 2 == 0; t /= 2) ++cap2;
  std::vector<Point> all2{Point()};
  std::vector<Point> frontier{Point()};
  int u = 0;
  for (int lev = 1; lev <= cap2; ++lev) {
    std::vector<Point> next;
    for (const Point& P : frontier)
      for (const Point& Q : divide_point(E, P, 2))
        if (!point_in(all2, Q) && !point_in(next, Q)) next.push_back(Q);
    if (next.empty()) break;
    u = lev;
    all2.insert(all2.end(), next.begin(), next.end());
    frontier = next;
  }
  long size2 = (long)all2.size();
  int T = 0;
  while ((1L << (T + 1)) <= size2) ++T;
  if ((1L << T) != size2 || T < u || T > 2 * u)
    fail(Err::Internal, "torsion_subgroup: 2-part closure is not a group");
  int v = T - u;

  long m2 = 1L << u, n2 = 1L << v;
  Point Q2; // order m2
  for (const Point& P : all2)
    if (point_order(E, P, m2) == m2) { Q2 = P; break; }
  Point R2; // order n2, independent from Q2
  if (v > 0) {
    std::vector<Point> cyc{Point()};
    Point M = Q2;
    while (!M.inf) { cyc.push_back(M); M = add_points(E, M, Q2); }
    for (const Point& P : all2) {
      if (point_order(E, P, n2) != n2) continue;
      bool indep = true;
      Point W = P;
      while (!W.inf) {
        if (point_in(cyc, W)) { indep = false; break; }
        W = add_points(E, W, P);
      }
      if (indep) { R2 = P; break; }
    }
    if (R2.inf) fail(Err::Internal, "torsion_subgroup: no independent 2-part generator");
  }

  // odd parts are cyclic over a cubic field (full l-torsion needs mu_l)
  long modd = 1;
  Point Podd;
  long rest = g >> cap2;
  std::vector<std::pair<long, int>> oddfac;
  for (long ell = 3; ell * ell <= rest; ell += 2)
    if (rest % ell == 0) {
      int cap = 0;
      while (rest % ell == 0) { rest /= ell; ++cap; }
      oddfac.emplace_back(ell, cap);
    }
  if (rest > 1) oddfac.emplace_back(rest, 1);
  for (auto [ell, cap] : oddfac) {
    Point P;
    for (const Point& Q : divide_point(E, Point(), ell))
      if (!Q.inf) { P = Q; break; }
    if (P.inf) continue;
    int s = 1;
    while (s < cap) {
      std::vector<Point> lifts = divide_point(E, P, ell);
      if (lifts.empty()) break;
      P = lifts[0];
      ++s;
    }
    long q = 1;
    for (int i = 0; i < s; ++i) q *= ell;
    modd *= q;
    Podd = add_points(E, Podd, P);
  }

  TorsionStructure TS;
  TS.m = m2 * modd;
  TS.n = n2;
  if (TS.m > 1) {
    Point G = add_points(E, Q2, Podd);
    if (point_order(E, G, TS.m) != TS.m)
      fail(Err::Internal, "torsion_subgroup: generator order mismatch");
    TS.gens.push_back(G);
  }
  if (TS.n > 1) TS.gens.push_back(R2);
  return TS;
}

} // namespace ec23
