#include "tate.hpp"

#include <climits>

#include "residue.hpp"

namespace ec23 {

Curve integral_model(const Curve& E) {
  if (E.is_integral()) return E;
  mpz_class m = 1;
  for (const FieldElement* c : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
    mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), c->denominator().get_mpz_t());
  return apply_transformation(E, {FieldElement(mpq_class(mpz_class(1), m)), FieldElement(0),
                                  FieldElement(0), FieldElement(0)});
}

LocalData tate_local(const Curve& E, const PrimeIdeal& P) {
  Curve C = integral_model(E);
  const ResidueField& K = residue_field(P);
  const FieldElement pi = P.pi;
  const bool char2 = (K.char_p() == 2), char3 = (K.char_p() == 3);

  auto val = [&](const FieldElement& x) {
    return x.is_zero() ? INT_MAX : element_valuation(x, P);
  };
  auto pdiv = [&](const FieldElement& x) { return K.is_zero(K.reduce(x)); };
  auto preduce = [&](const FieldElement& x) { return K.lift(K.reduce(x)); };
  auto pinv = [&](const FieldElement& x) { return K.lift(K.inv(K.reduce(x))); };
  // p-th root on the residue field: exactly the root the char-2/3 steps need
  auto proot = [&](const FieldElement& x) { return K.lift(K.pth_root(K.reduce(x))); };
  const FieldElement half = char2 ? FieldElement(0) : pinv(FieldElement(2));
  auto rst = [&](const FieldElement& r, const FieldElement& s, const FieldElement& t) {
    C = apply_transformation(C, {FieldElement(1), r, s, t});
  };
  const FieldElement zero(0);
  const mpq_class q2(2), q3(3), q4(4), q9(9), q12(12), q18(18), q27(27);

  LocalData L;
  L.prime = P;
  while (true) {
    Invariants I = invariants(C);
    if (I.disc.is_zero()) fail(Err::SingularModel, "local data of a singular curve");
    int n = val(I.disc);
    if (n == 0) {
      L.kodaira = "I0";
      L.fp = 0;
      L.vdisc = 0;
      L.kind = Reduction::Good;
      break;
    }

    // move the singular point of the reduction to the origin
    FieldElement r, t;
    if (char2) {
      if (pdiv(I.b2)) {
        r = proot(C.a4);
        t = proot(((r + C.a2) * r + C.a4) * r + C.a6);
      } else {
        FieldElement iv = pinv(C.a1);
        r = iv * C.a3;
        t = iv * (C.a4 + r * r);
      }
    } else if (char3) {
      if (pdiv(I.b2))
        r = proot(-I.b6);
      else
        r = -pinv(I.b2) * I.b4;
      t = C.a1 * r + C.a3;
    } else {
      if (pdiv(I.c4))
        r = -pinv(FieldElement(12)) * I.b2;
      else
        r = -pinv(q12 * I.c4) * (I.c6 + I.b2 * I.c4);
      t = -half * (C.a1 * r + C.a3);
    }
    rst(preduce(r), zero, preduce(t));
    I = invariants(C);

    if (!pdiv(I.c4)) {
      L.kodaira = "I" + std::to_string(n);
      L.fp = 1;
      L.vdisc = n;
      L.kind = Reduction::Multiplicative;
      break;
    }
    L.kind = Reduction::Additive;
    L.vdisc = n;
    if (val(C.a6) < 2) {
      L.kodaira = "II";
      L.fp = n;
      break;
    }
    if (val(I.b8) < 3) {
      L.kodaira = "III";
      L.fp = n - 1;
      break;
    }
    if (val(I.b6) < 3) {
      L.kodaira = "IV";
      L.fp = n - 2;
      break;
    }

    // now arrange pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
    FieldElement s;
    if (char2) {
      s = proot(C.a2);
      t = pi * proot(C.a6 / (pi * pi));
    } else if (char3) {
      s = C.a1;
      t = C.a3;
    } else {
      s = -C.a1 * half;
      t = -C.a3 * half;
    }
    rst(zero, s, t);

    // cubic T^3 + b T^2 + c T + d from the leading p-parts
    FieldElement b = C.a2 / pi, c = C.a4 / (pi * pi), d = C.a6 / (pi * pi * pi);
    FieldElement w = q27 * d * d - b * b * c * c + q4 * b * b * b * d - q18 * b * c * d +
                     q4 * c * c * c;
    FieldElement x = q3 * c - b * b;
    if (!pdiv(w)) {
      // distinct roots
      L.kodaira = "I0*";
      L.fp = n - 4;
      break;
    }
    if (!pdiv(x)) {
      // double root: translate it to zero, then walk the I_m* chain
      FieldElement rr;
      if (char2)
        rr = proot(c);
      else if (char3)
        rr = c * pinv(b);
      else
        rr = (b * c - q9 * d) * pinv(q2 * x);
      rst(pi * preduce(rr), zero, zero);
      int ix = 3, iy = 3;
      FieldElement mx = pi * pi, my = pi * pi;
      while (true) {
        FieldElement a3t = C.a3 / my;
        FieldElement a6t = C.a6 / (mx * my);
        if (pdiv(a3t * a3t + q4 * a6t)) {
          FieldElement tt = char2 ? my * proot(a6t) : my * preduce(-a3t * half);
          rst(zero, zero, tt);
          my = my * pi;
          iy++;
          FieldElement a2t = C.a2 / pi;
          FieldElement a4t = C.a4 / (pi * mx);
          a6t = C.a6 / (mx * my);
          if (pdiv(a4t * a4t - q4 * a6t * a2t)) {
            FieldElement rr2 =
                char2 ? mx * proot(a6t * pinv(a2t)) : mx * preduce(-a4t * pinv(q2 * a2t));
            rst(rr2, zero, zero);
            mx = mx * pi;
            ix++;
            continue;
          }
        }
        break;
      }
      L.kodaira = "I" + std::to_string(ix + iy - 5) + "*";
      L.fp = n - ix - iy + 1;
      break;
    }
    // triple root: translate it to zero
    FieldElement rr = char3 ? proot(-d) : -b * pinv(FieldElement(3));
    rst(pi * preduce(rr), zero, zero);
    FieldElement a3t = C.a3 / (pi * pi), a6t = C.a6 / (pi * pi * pi * pi);
    if (!pdiv(a3t * a3t + q4 * a6t)) {
      L.kodaira = "IV*";
      L.fp = n - 6;
      break;
    }
    FieldElement tt = char2 ? pi * pi * proot(a6t) : pi * pi * preduce(-a3t * half);
    rst(zero, zero, tt);
    if (val(C.a4) < 4) {
      L.kodaira = "III*";
      L.fp = n - 7;
      break;
    }
    if (val(C.a6) < 6) {
      L.kodaira = "II*";
      L.fp = n - 8;
      break;
    }
    // the model was not minimal at P: absorb pi and start over
    C = apply_transformation(C, {pi, FieldElement(0), FieldElement(0), FieldElement(0)});
  }
  L.minimal = C;
  return L;
}

namespace {

// coordinate-wise representative of x with entries in [0, m) or, when
// symmetric, in (-m/2, m/2]
FieldElement coord_window(const FieldElement& x, long m, bool symmetric) {
  std::array<mpq_class, 3> in{x.c0, x.c1, x.c2}, out;
  for (int i = 0; i < 3; i++) {
    mpz_class num = in[i].get_num(); // integral input expected
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), m);
    if (symmetric && r * 2 > m) r -= m;
    out[i] = r;
  }
  return {out[0], out[1], out[2]};
}

Curve rst_normalize(const Curve& E) {
  Curve C = E;
  FieldElement s = (coord_window(C.a1, 2, false) - C.a1) / mpq_class(2);
  C = apply_transformation(C, {FieldElement(1), FieldElement(0), s, FieldElement(0)});
  FieldElement r = (coord_window(C.a2, 3, true) - C.a2) / mpq_class(3);
  C = apply_transformation(C, {FieldElement(1), r, FieldElement(0), FieldElement(0)});
  FieldElement t = (coord_window(C.a3, 2, false) - C.a3) / mpq_class(2);
  C = apply_transformation(C, {FieldElement(1), FieldElement(0), FieldElement(0), t});
  return C;
}

mpq_class max_abs_coord(const FieldElement& x) {
  mpq_class m = abs(x.c0), m1 = abs(x.c1), m2 = abs(x.c2);
  if (m1 > m) m = m1;
  if (m2 > m) m = m2;
  return m;
}

// The unit sweep below must not depend on the frame of the input model, so we
// recenter it: scaling by u = a^k multiplies the discriminant by a^(-12k), and
// we pick the k whose scaled discriminant has the smallest coordinates. Both
// models of one curve see the same discriminant orbit, hence the same center.
long balance_exponent(const FieldElement& disc) {
  auto scaled = [&](long k) { return disc * FieldElement::gen().pow(-12 * k); };
  long k = 0;
  mpq_class cur = max_abs_coord(disc);
  for (int dir : {1, -1})
    for (;;) {
      mpq_class nxt = max_abs_coord(scaled(k + dir));
      if (nxt < cur) {
        k += dir;
        cur = nxt;
      } else {
        break;
      }
    }
  // ties between neighbors: prefer the lexicographically smaller element
  for (int dir : {1, -1})
    while (max_abs_coord(scaled(k + dir)) == cur &&
           scaled(k + dir).cmp(scaled(k)) < 0)
      k += dir;
  return k;
}

} // namespace

Curve canonical_normalize(const Curve& E) {
  FieldElement disc = invariants(E).disc;
  long k0 = disc.is_zero() ? 0 : balance_exponent(disc);
  Curve best;
  mpq_class best_h;
  bool first = true;
  for (int sign = 0; sign < 2; sign++)
    for (long k = k0 - 3; k <= k0 + 3; k++) {
      FieldElement u = FieldElement::gen().pow(k);
      if (sign) u = -u;
      Curve cand = rst_normalize(apply_transformation(
          E, {u, FieldElement(0), FieldElement(0), FieldElement(0)}));
      mpq_class h = max_abs_coord(cand.a4), h6 = max_abs_coord(cand.a6);
      if (h6 > h) h = h6;
      if (first || h < best_h || (h == best_h && cand.cmp(best) < 0)) {
        best = cand;
        best_h = h;
        first = false;
      }
    }
  return best;
}

GlobalModel conductor_and_minimal_model(const Curve& E) {
  Curve C = integral_model(E);
  Invariants I = invariants(C);
  if (I.disc.is_zero()) fail(Err::SingularModel, "conductor of a singular curve");
  // pass 1: minimalize locally at every prime of the discriminant
  for (const auto& pe : factor_ideal(IdealHNF::principal(I.disc)))
    C = tate_local(C, pe.first).minimal;
  C = canonical_normalize(C);
  // pass 2: local data of the canonical model; its discriminant is minimal
  GlobalModel G;
  G.minimal = C;
  G.conductor = IdealHNF::one();
  for (const auto& pe : factor_ideal(IdealHNF::principal(invariants(C).disc))) {
    LocalData L = tate_local(C, pe.first);
    G.conductor = ideal_mul(G.conductor, ideal_pow(pe.first.ideal, L.fp));
    G.locals.push_back(std::move(L));
  }
  return G;
}

} // namespace ec23
