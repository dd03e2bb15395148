#include "curve.hpp"

#include <cctype>
#include <vector>

namespace ec23 {

int Curve::cmp(const Curve& o) const {
  if (int c = a1.cmp(o.a1)) return c;
  if (int c = a2.cmp(o.a2)) return c;
  if (int c = a3.cmp(o.a3)) return c;
  if (int c = a4.cmp(o.a4)) return c;
  return a6.cmp(o.a6);
}

bool Curve::is_integral() const {
  return a1.is_integral() && a2.is_integral() && a3.is_integral() && a4.is_integral() &&
         a6.is_integral();
}

std::string Curve::str() const {
  return "[" + a1.str() + "," + a2.str() + "," + a3.str() + "," + a4.str() + "," + a6.str() + "]";
}

Curve Curve::parse(const std::string& s) {
  std::string body;
  for (char ch : s)
    if (!isspace((unsigned char)ch)) body += ch;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') fail(Err::Parse, "unbalanced brackets in curve: " + s);
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::string> parts(1);
  int depth = 0;
  for (char ch : body) {
    if (ch == '(') depth++;
    if (ch == ')') depth--;
    if ((ch == ',' || ch == ';') && depth == 0)
      parts.emplace_back();
    else
      parts.back() += ch;
  }
  if (parts.size() != 5) fail(Err::Parse, "expected five coefficients in curve: " + s);
  return {FieldElement::parse(parts[0]), FieldElement::parse(parts[1]),
          FieldElement::parse(parts[2]), FieldElement::parse(parts[3]),
          FieldElement::parse(parts[4])};
}

FieldElement Invariants::j() const {
  if (disc.is_zero()) fail(Err::SingularModel, "j-invariant of a singular model");
  return c4 * c4 * c4 / disc;
}

Invariants invariants(const Curve& E) {
  Invariants I;
  I.b2 = E.a1 * E.a1 + mpq_class(4) * E.a2;
  I.b4 = mpq_class(2) * E.a4 + E.a1 * E.a3;
  I.b6 = E.a3 * E.a3 + mpq_class(4) * E.a6;
  I.b8 = E.a1 * E.a1 * E.a6 + mpq_class(4) * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 +
         E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
  I.c4 = I.b2 * I.b2 - mpq_class(24) * I.b4;
  I.c6 = -(I.b2 * I.b2 * I.b2) + mpq_class(36) * I.b2 * I.b4 - mpq_class(216) * I.b6;
  I.disc = -(I.b2 * I.b2 * I.b8) - mpq_class(8) * I.b4 * I.b4 * I.b4 -
           mpq_class(27) * I.b6 * I.b6 + mpq_class(9) * I.b2 * I.b4 * I.b6;
  return I;
}

Curve apply_transformation(const Curve& E, const Transformation& T) {
  if (T.u.is_zero()) fail(Err::ZeroInversion, "transformation with u = 0");
  const FieldElement &r = T.r, &s = T.s, &t = T.t;
  FieldElement iu = T.u.inverse();
  FieldElement iu2 = iu * iu, iu3 = iu2 * iu, iu4 = iu2 * iu2, iu6 = iu3 * iu3;
  Curve R;
  R.a1 = (E.a1 + mpq_class(2) * s) * iu;
  R.a2 = (E.a2 - s * E.a1 + mpq_class(3) * r - s * s) * iu2;
  R.a3 = (E.a3 + r * E.a1 + mpq_class(2) * t) * iu3;
  R.a4 = (E.a4 - s * E.a3 + mpq_class(2) * r * E.a2 - (t + r * s) * E.a1 +
          mpq_class(3) * r * r - mpq_class(2) * s * t) *
         iu4;
  R.a6 = (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) * iu6;
  return R;
}

Transformation compose(const Transformation& A, const Transformation& B) {
  FieldElement u1sq = A.u * A.u;
  return {A.u * B.u, A.r + u1sq * B.r, A.s + A.u * B.s,
          A.t + u1sq * A.s * B.r + u1sq * A.u * B.t};
}

Transformation invert_transformation(const Transformation& T) {
  FieldElement iu = T.u.inverse();
  FieldElement iu2 = iu * iu, iu3 = iu2 * iu;
  return {iu, -(T.r * iu2), -(T.s * iu), (T.r * T.s - T.t) * iu3};
}

std::optional<Transformation> is_isomorphic(const Curve& E, const Curve& E2) {
  Invariants I = invariants(E), J = invariants(E2);
  if (I.disc.is_zero() || J.disc.is_zero())
    fail(Err::SingularModel, "isomorphism test on a singular model");
  // j-invariants must agree: c4^3 disc' = c4'^3 disc
  if (I.c4 * I.c4 * I.c4 * J.disc != J.c4 * J.c4 * J.c4 * I.disc) return std::nullopt;
  std::vector<FieldElement> us;
  if (I.c4.is_zero()) {
    // j = 0: u^6 = c6/c6'
    FPoly f(7, FieldElement(0));
    f[0] = -(I.c6 / J.c6);
    f[6] = FieldElement(1);
    us = roots_in_F(f);
  } else if (I.c6.is_zero()) {
    // j = 1728: u^4 = c4/c4'
    FPoly f(5, FieldElement(0));
    f[0] = -(I.c4 / J.c4);
    f[4] = FieldElement(1);
    us = roots_in_F(f);
  } else {
    auto u2 = sqrt_in_F(I.c6 * J.c4 / (I.c4 * J.c6));
    if (!u2) return std::nullopt;
    us = {*u2, -*u2};
  }
  for (const FieldElement& u : us) {
    if (u.is_zero()) continue;
    FieldElement s = (u * E2.a1 - E.a1) / mpq_class(2);
    FieldElement r = (u * u * E2.a2 - E.a2 + s * E.a1 + s * s) / mpq_class(3);
    FieldElement t = (u * u * u * E2.a3 - E.a3 - r * E.a1) / mpq_class(2);
    Transformation T{u, r, s, t};
    if (apply_transformation(E, T) == E2) return T;
  }
  return std::nullopt;
}

Curve quadratic_twist(const Curve& E, const FieldElement& d) {
  Invariants I = invariants(E);
  return {FieldElement(0), FieldElement(0), FieldElement(0),
          mpq_class(-27) * d * d * I.c4, mpq_class(-54) * d * d * d * I.c6};
}

bool on_curve(const Curve& E, const Point& P) {
  if (P.inf) return true;
  FieldElement lhs = P.y * P.y + E.a1 * P.x * P.y + E.a3 * P.y;
  FieldElement rhs = P.x * P.x * P.x + E.a2 * P.x * P.x + E.a4 * P.x + E.a6;
  return lhs == rhs;
}

Point negate_point(const Curve& E, const Point& P) {
  if (P.inf) return P;
  return {P.x, -P.y - E.a1 * P.x - E.a3};
}

Point add_points(const Curve& E, const Point& P, const Point& Q) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  FieldElement lambda, nu;
  if (P.x != Q.x) {
    lambda = (Q.y - P.y) / (Q.x - P.x);
    nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
  } else {
    if (Q.y == -P.y - E.a1 * P.x - E.a3) return {}; // Q = -P
    FieldElement den = mpq_class(2) * P.y + E.a1 * P.x + E.a3;
    lambda = (mpq_class(3) * P.x * P.x + mpq_class(2) * E.a2 * P.x + E.a4 - E.a1 * P.y) / den;
    nu = (-(P.x * P.x * P.x) + E.a4 * P.x + mpq_class(2) * E.a6 - E.a3 * P.y) / den;
  }
  FieldElement x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
  FieldElement y3 = -(lambda + E.a1) * x3 - nu - E.a3;
  return {x3, y3};
}

Point mul_point(const Curve& E, long n, const Point& P) {
  if (n < 0) return mul_point(E, -n, negate_point(E, P));
  Point R; // infinity
  Point B = P;
  while (n) {
    if (n & 1) R = add_points(E, R, B);
    n >>= 1;
    if (n) B = add_points(E, B, B);
  }
  return R;
}

long point_order(const Curve& E, const Point& P, long cap) {
  Point R = P;
  for (long k = 1; k <= cap; k++) {
    if (R.inf) return k;
    R = add_points(E, R, P);
  }
  return 0;
}

FPoly two_division_poly(const Curve& E) {
  Invariants I = invariants(E);
  return {I.b6, mpq_class(2) * I.b4, I.b2, FieldElement(4)};
}

FPoly division_poly_g(const Curve& E, int n) {
  if (n < 0) fail(Err::Internal, "division polynomial index must be nonnegative");
  Invariants I = invariants(E);
  FPoly B = two_division_poly(E);
  FPoly B2 = fp_mul(B, B);
  std::vector<FPoly> g(std::max(5, n + 1));
  g[0] = {};
  g[1] = {FieldElement(1)};
  g[2] = {FieldElement(1)};
  g[3] = {I.b8, mpq_class(3) * I.b6, mpq_class(3) * I.b4, I.b2, FieldElement(3)};
  g[4] = {I.b4 * I.b8 - I.b6 * I.b6,
          I.b2 * I.b8 - I.b4 * I.b6,
          mpq_class(10) * I.b8,
          mpq_class(10) * I.b6,
          mpq_class(5) * I.b4,
          I.b2,
          FieldElement(2)};
  for (int k = 5; k <= n; k++) {
    int m = k / 2;
    if (k & 1) {
      FPoly t1 = fp_mul(g[m + 2], fp_mul(g[m], fp_mul(g[m], g[m])));
      FPoly t2 = fp_mul(g[m - 1], fp_mul(g[m + 1], fp_mul(g[m + 1], g[m + 1])));
      g[k] = (m % 2 == 0) ? fp_sub(fp_mul(B2, t1), t2) : fp_sub(t1, fp_mul(B2, t2));
    } else {
      FPoly t1 = fp_mul(g[m + 2], fp_mul(g[m - 1], g[m - 1]));
      FPoly t2 = fp_mul(g[m - 2], fp_mul(g[m + 1], g[m + 1]));
      g[k] = fp_mul(g[m], fp_sub(t1, t2));
    }
  }
  return g[n];
}

} // namespace ec23
