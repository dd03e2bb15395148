// Strategy layer: coefficient boxes, Tate-normal torsion families, twist
// candidates, and the S-unit discriminant-class search which scans
// E_w : Y^2 = X^3 - 1728 w for integral points inside archimedean boxes.

#include "search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "fpoly.hpp"
#include "residue.hpp"
#include "selmer.hpp"
#include "torsion.hpp"

namespace ec23 {

namespace {

mpq_class max_abs_coord(const FieldElement& x) {
  mpq_class m = abs(x.c0), m1 = abs(x.c1), m2 = abs(x.c2);
  if (m1 > m) m = m1;
  if (m2 > m) m = m2;
  return m;
}

// x * a^(step*k), k chosen so the coordinates are smallest (ties: lex least)
FieldElement balance_by_units(const FieldElement& x, long step) {
  if (x.is_zero()) return x;
  auto scaled = [&](long k) { return x * FieldElement::gen().pow(step * k); };
  long k = 0;
  mpq_class cur = max_abs_coord(x);
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
  for (int dir : {1, -1})
    while (max_abs_coord(scaled(k + dir)) == cur && scaled(k + dir).cmp(scaled(k)) < 0)
      k += dir;
  return scaled(k);
}

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  mpz_class hi((unsigned long)(u >> 64)), lo((unsigned long)(u & ~0ULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? -r : r;
}

// ---- integer triples x0 + x1 a + x2 a^2 (a^3 = a^2 - 1) -------------------

struct T3 {
  int64_t c[3];
};

inline T3 t3_add(const T3& x, const T3& y) {
  return {{x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2]}};
}
inline T3 t3_sub(const T3& x, const T3& y) {
  return {{x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2]}};
}
inline T3 t3_scal(int64_t s, const T3& x) { return {{s * x.c[0], s * x.c[1], s * x.c[2]}}; }
inline T3 t3_mul(const T3& x, const T3& y) {
  int64_t z0 = x.c[0] * y.c[0];
  int64_t z1 = x.c[0] * y.c[1] + x.c[1] * y.c[0];
  int64_t z2 = x.c[0] * y.c[2] + x.c[1] * y.c[1] + x.c[2] * y.c[0];
  int64_t z3 = x.c[1] * y.c[2] + x.c[2] * y.c[1];
  int64_t z4 = x.c[2] * y.c[2];
  // a^3 = a^2 - 1, a^4 = a^2 - a - 1
  return {{z0 - z3 - z4, z1 - z4, z2 + z3 + z4}};
}

// det of multiplication-by-x on {1, a, a^2}
inline __int128 t3_norm(const T3& x) {
  __int128 m00 = x.c[0], m01 = -x.c[2], m02 = -(x.c[1] + x.c[2]);
  __int128 m10 = x.c[1], m11 = x.c[0], m12 = -x.c[2];
  __int128 m20 = x.c[2], m21 = x.c[1] + x.c[2], m22 = x.c[0] + x.c[1] + x.c[2];
  return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
         m02 * (m10 * m21 - m11 * m20);
}

inline T3 t3_disc(const T3& a1, const T3& a2, const T3& a3, const T3& a4, const T3& a6) {
  T3 b2 = t3_add(t3_mul(a1, a1), t3_scal(4, a2));
  T3 b4 = t3_add(t3_scal(2, a4), t3_mul(a1, a3));
  T3 b6 = t3_add(t3_mul(a3, a3), t3_scal(4, a6));
  T3 b8 = t3_sub(t3_add(t3_add(t3_mul(t3_mul(a1, a1), a6), t3_scal(4, t3_mul(a2, a6))),
                        t3_mul(a2, t3_mul(a3, a3))),
                 t3_add(t3_mul(t3_mul(a1, a3), a4), t3_mul(a4, a4)));
  T3 d = t3_sub(t3_scal(9, t3_mul(b2, t3_mul(b4, b6))),
                t3_add(t3_add(t3_mul(t3_mul(b2, b2), b8), t3_scal(8, t3_mul(b4, t3_mul(b4, b4)))),
                       t3_scal(27, t3_mul(b6, b6))));
  return d;
}

// |nd| with all factors p in ps removed must be a perfect 12th power: the
// discriminant of any integral model of a curve with conductor supported on
// ps is (bad-prime part) * Norm(u)^12
bool disc_norm_admissible(mpz_class nd, const std::vector<mpz_class>& ps) {
  if (nd == 0) return false;
  nd = abs(nd);
  for (const mpz_class& p : ps) {
    if (nd % p != 0) return false; // a conductor prime must divide the norm
    do nd /= p; while (nd % p == 0);
  }
  mpz_class root;
  return mpz_root(root.get_mpz_t(), nd.get_mpz_t(), 12) != 0;
}

// ---- torsion family charts ------------------------------------------------

struct FamilyDef {
  const char* name;
  long order; // order of the marked point (0,0)
  long m, n;  // generic torsion Z/m x Z/n
};

const FamilyDef kFamilies[] = {
    {"Z4", 4, 4, 1},    {"Z5", 5, 5, 1},    {"Z6", 6, 6, 1},    {"Z7", 7, 7, 1},
    {"Z8", 8, 8, 1},    {"Z9", 9, 9, 1},    {"Z10", 10, 10, 1}, {"Z12", 12, 12, 1},
    {"Z2x2", 2, 2, 2},  {"Z2x4", 4, 4, 2},  {"Z2x6", 6, 6, 2},  {"Z2x8", 8, 8, 2},
};

const FamilyDef* family_def(const std::string& name) {
  for (const FamilyDef& f : kFamilies)
    if (name == f.name) return &f;
  return nullptr;
}

// Tate-normal parameters (b, c) of the family member at d; nullopt when a
// chart denominator vanishes.  Each chart rationalizes the (r, s) relation
// cutting out the family inside b = r s (r - 1), c = s (r - 1).
std::optional<std::pair<FieldElement, FieldElement>> family_bc(const std::string& fam,
                                                               const FieldElement& d) {
  FieldElement one(1);
  if (fam == "Z4") return std::make_pair(d, FieldElement(0));
  if (fam == "Z5") return std::make_pair(d, d);
  if (fam == "Z6") return std::make_pair(d * d + d, d);
  if (fam == "Z7") return std::make_pair(d * d * d - d * d, d * d - d);
  if (fam == "Z8") {
    if (d.is_zero()) return std::nullopt;
    FieldElement b = (FieldElement(2) * d - one) * (d - one);
    return std::make_pair(b, b / d);
  }
  if (fam == "Z9") {
    FieldElement c = d * d * (d - one);
    return std::make_pair(c * (d * d - d + one), c);
  }
  if (fam == "Z10") {
    FieldElement den = d * d - FieldElement(3) * d + one;
    if (den.is_zero()) return std::nullopt;
    FieldElement r = -(d * d) / den;
    FieldElement c = d * (r - one);
    return std::make_pair(r * c, c);
  }
  if (fam == "Z12") {
    FieldElement den = FieldElement(2) * (d + FieldElement(3));
    if (den.is_zero()) return std::nullopt;
    FieldElement s = mpq_class(1, 4) * (d * d + FieldElement(3));
    FieldElement r = (d * d + FieldElement(2) * d + FieldElement(5)) / den;
    FieldElement c = s * (r - one);
    return std::make_pair(r * c, c);
  }
  if (fam == "Z2x4") return std::make_pair(d * d - FieldElement(mpq_class(1, 16)), FieldElement(0));
  if (fam == "Z2x6") {
    FieldElement den = FieldElement(9) - d * d;
    if (den.is_zero()) return std::nullopt;
    FieldElement c = (FieldElement(2) * d - FieldElement(10)) / den;
    return std::make_pair(c + c * c, c);
  }
  if (fam == "Z2x8") {
    FieldElement den = FieldElement(8) - d * d;
    if (den.is_zero()) return std::nullopt;
    FieldElement e = (FieldElement(2) * d + FieldElement(8)) / den;
    if (e.is_zero()) return std::nullopt;
    FieldElement b = (FieldElement(2) * e - one) * (e - one);
    return std::make_pair(b, b / e);
  }
  return std::nullopt;
}

// ---- split-prime sieves for the E_w point scan ----------------------------

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct SievePrime {
  uint32_t q = 0;
  uint32_t root = 0;            // a maps to root mod q
  std::vector<uint64_t> sqbits; // bit v set iff v is a square mod q
};

// split rational primes (x^3 - x^2 + 1 has a root), with square tables
const std::vector<SievePrime>& sieve_primes() {
  static const std::vector<SievePrime> primes = [] {
    std::vector<SievePrime> out;
    for (uint32_t q = 1009; out.size() < 24 && q < 100000; q += 2) {
      if (!is_prime_u32(q)) continue;
      uint32_t root = 0;
      for (uint32_t r = 1; r < q; ++r) {
        uint64_t rr = (uint64_t)r * r % q;
        if ((rr * r + q - rr + 1) % q == 0) {
          root = r;
          break;
        }
      }
      if (!root) continue;
      SievePrime sp;
      sp.q = q;
      sp.root = root;
      sp.sqbits.assign((q + 63) / 64, 0);
      for (uint64_t v = 0; v < q; ++v) {
        uint64_t s = v * v % q;
        sp.sqbits[s >> 6] |= 1ULL << (s & 63);
      }
      out.push_back(std::move(sp));
    }
    return out;
  }();
  return primes;
}

// Wheel over x0 mod 3: 27 | 1728, so whenever 1728 w is 0 mod 3 the value
// X^3 - 1728 w reduces to X^3 in O/3O = F_27, and its square-ness depends
// only on X mod 3.  Table indexed by x0 + 3 x1 + 9 x2 (coords mod 3).
const std::array<uint8_t, 27>& pass3_table() {
  static const std::array<uint8_t, 27> tab = [] {
    auto mul27 = [](std::array<int, 3> x, std::array<int, 3> y) {
      int z[5] = {0, 0, 0, 0, 0};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) z[i + j] += x[i] * y[j];
      // t^3 = t^2 - 1, t^4 = t^2 - t - 1 over F_3
      std::array<int, 3> r{z[0] - z[3] - z[4], z[1] - z[4], z[2] + z[3] + z[4]};
      for (int& c : r) c = (c % 3 + 3) % 3;
      return r;
    };
    auto enc = [](const std::array<int, 3>& x) { return x[0] + 3 * x[1] + 9 * x[2]; };
    bool sq[27] = {};
    for (int c = 0; c < 27; ++c) {
      std::array<int, 3> y{c % 3, c / 3 % 3, c / 9};
      sq[enc(mul27(y, y))] = true;
    }
    std::array<uint8_t, 27> t{};
    for (int c = 0; c < 27; ++c) {
      std::array<int, 3> x{c % 3, c / 3 % 3, c / 9};
      t[c] = sq[enc(mul27(x, mul27(x, x)))] ? 1 : 0;
    }
    return t;
  }();
  return tab;
}

// value of x mod q for rational x (denominator invertible mod q), else -1
long mod_q_of(const mpq_class& x, uint32_t q) {
  mpz_class den = x.get_den() % q;
  if (den == 0) return -1;
  mpz_class num = x.get_num() % q;
  mpz_class inv;
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(q).get_mpz_t())) return -1;
  mpz_class r = num * inv % q;
  if (r < 0) r += q;
  return r.get_si();
}

struct WPrime {
  uint32_t q, root, r2; // r2 = root^2 mod q
  uint32_t m;           // 1728 w mod q
  const SievePrime* sp;
};

} // namespace

// ---- naive box sweep ------------------------------------------------------

std::vector<Curve> naive_search(const IdealHNF& n, const SearchBox& box) {
  long B = box.bound;
  if (B < 0) fail(Err::LimitExceeded, "naive_search: negative bound");
  if (B > 8) fail(Err::LimitExceeded, "naive_search: box too large for exact sweep");
  std::vector<mpz_class> ps;
  for (const auto& [P, e] : factor_ideal(n))
    if (std::find(ps.begin(), ps.end(), P.p) == ps.end()) ps.push_back(P.p);

  std::vector<Curve> out;
  auto consider = [&](const Curve& E) {
    GlobalModel gm;
    try {
      gm = conductor_and_minimal_model(E);
    } catch (const Error&) {
      return;
    }
    if (gm.conductor != n) return;
    for (const Curve& c : out)
      if (c == gm.minimal) return;
    out.push_back(gm.minimal);
  };

  int w = 2 * (int)B + 1;
  std::array<int, 15> idx{};
  std::array<int64_t, 15> v;
  for (int i = 0; i < 15; ++i) v[i] = -B;
  for (;;) {
    T3 a1{{v[0], v[1], v[2]}}, a2{{v[3], v[4], v[5]}}, a3{{v[6], v[7], v[8]}},
        a4{{v[9], v[10], v[11]}}, a6{{v[12], v[13], v[14]}};
    T3 d = t3_disc(a1, a2, a3, a4, a6);
    if (d.c[0] | d.c[1] | d.c[2]) {
      mpz_class nd = mpz_from_i128(t3_norm(d));
      if (disc_norm_admissible(nd, ps))
        consider(Curve{FieldElement(v[0], v[1], v[2]), FieldElement(v[3], v[4], v[5]),
                       FieldElement(v[6], v[7], v[8]), FieldElement(v[9], v[10], v[11]),
                       FieldElement(v[12], v[13], v[14])});
    }
    int i = 0;
    while (i < 15 && ++idx[i] == w) {
      idx[i] = 0;
      v[i] = -B;
      ++i;
    }
    if (i == 15) break;
    v[i] = -B + idx[i];
  }
  std::sort(out.begin(), out.end(), [](const Curve& x, const Curve& y) { return x.cmp(y) < 0; });
  return out;
}

// ---- torsion families ------------------------------------------------------

std::vector<std::string> known_families() {
  std::vector<std::string> out;
  for (const FamilyDef& f : kFamilies) out.push_back(f.name);
  return out;
}

long family_point_order(const std::string& family) {
  const FamilyDef* f = family_def(family);
  if (!f) fail(Err::UnknownFamily, "unknown torsion family: " + family);
  return f->order;
}

std::pair<long, long> family_torsion(const std::string& family) {
  const FamilyDef* f = family_def(family);
  if (!f) fail(Err::UnknownFamily, "unknown torsion family: " + family);
  return {f->m, f->n};
}

Curve tate_normal_curve(const std::string& family, const FieldElement& d) {
  const FamilyDef* f = family_def(family);
  if (!f) fail(Err::UnknownFamily, "unknown torsion family: " + family);
  Curve E;
  if (family == "Z2x2") {
    // y^2 = x(x + 1)(x + d): full 2-torsion with (0,0) marked
    E = Curve{FieldElement(0), d + FieldElement(1), FieldElement(0), d, FieldElement(0)};
  } else {
    auto bc = family_bc(family, d);
    if (!bc) fail(Err::SingularParameters, "chart denominator vanishes");
    const auto& [b, c] = *bc;
    E = Curve{FieldElement(1) - c, -b, -b, FieldElement(0), FieldElement(0)};
  }
  if (invariants(E).disc.is_zero()) fail(Err::SingularParameters, "singular family member");
  return E;
}

namespace {

// residue-field mirror of family_bc + the Tate-normal discriminant; nullopt
// when some division cannot be performed mod P (then the prime cannot rule
// the parameter out)
std::optional<RFel> family_disc_residue(const ResidueField& K, const std::string& fam,
                                        const RFel& d) {
  RFel one = K.one();
  auto inv = [&](const RFel& x) -> std::optional<RFel> {
    if (K.is_zero(x)) return std::nullopt;
    return K.inv(x);
  };
  RFel b, c;
  if (fam == "Z2x2") {
    // disc of y^2 = x(x+1)(x+d) up to squares: d^2 (d-1)^2 (16 d^2 ...) —
    // evaluate via the generic formulas below on the quintuple instead
    RFel a2 = K.add(d, one), a4 = d;
    RFel b2 = K.scalar(4);
    b2 = K.mul(b2, a2);
    RFel b4 = K.add(a4, a4);
    RFel b6 = K.zero();
    RFel b8 = K.neg(K.mul(a4, a4));
    RFel t1 = K.mul(K.mul(b2, b2), b8);
    RFel t2 = K.mul(K.scalar(8), K.mul(b4, K.mul(b4, b4)));
    RFel t3 = K.mul(K.scalar(27), K.mul(b6, b6));
    RFel t4 = K.mul(K.scalar(9), K.mul(b2, K.mul(b4, b6)));
    return K.sub(t4, K.add(K.add(t1, t2), t3));
  } else if (fam == "Z4") {
    b = d;
    c = K.zero();
  } else if (fam == "Z5") {
    b = c = d;
  } else if (fam == "Z6") {
    c = d;
    b = K.add(K.mul(d, d), d);
  } else if (fam == "Z7") {
    c = K.sub(K.mul(d, d), d);
    b = K.mul(d, c);
  } else if (fam == "Z8") {
    auto di = inv(d);
    if (!di) return std::nullopt;
    b = K.mul(K.sub(K.add(d, d), one), K.sub(d, one));
    c = K.mul(b, *di);
  } else if (fam == "Z9") {
    c = K.mul(K.mul(d, d), K.sub(d, one));
    b = K.mul(c, K.add(K.sub(K.mul(d, d), d), one));
  } else if (fam == "Z10") {
    RFel den = K.add(K.sub(K.mul(d, d), K.mul(K.scalar(3), d)), one);
    auto deni = inv(den);
    if (!deni) return std::nullopt;
    RFel r = K.neg(K.mul(K.mul(d, d), *deni));
    c = K.mul(d, K.sub(r, one));
    b = K.mul(r, c);
  } else if (fam == "Z12") {
    RFel den = K.mul(K.scalar(2), K.add(d, K.scalar(3)));
    auto deni = inv(den);
    if (!deni) return std::nullopt;
    auto quarter = inv(K.scalar(4));
    if (!quarter) return std::nullopt;
    RFel s = K.mul(*quarter, K.add(K.mul(d, d), K.scalar(3)));
    RFel r = K.mul(K.add(K.add(K.mul(d, d), K.add(d, d)), K.scalar(5)), *deni);
    c = K.mul(s, K.sub(r, one));
    b = K.mul(r, c);
  } else if (fam == "Z2x4") {
    auto sixteenth = inv(K.scalar(16));
    if (!sixteenth) return std::nullopt;
    b = K.sub(K.mul(d, d), *sixteenth);
    c = K.zero();
  } else if (fam == "Z2x6") {
    RFel den = K.sub(K.scalar(9), K.mul(d, d));
    auto deni = inv(den);
    if (!deni) return std::nullopt;
    c = K.mul(K.sub(K.add(d, d), K.scalar(10)), *deni);
    b = K.add(c, K.mul(c, c));
  } else if (fam == "Z2x8") {
    RFel den = K.sub(K.scalar(8), K.mul(d, d));
    auto deni = inv(den);
    if (!deni) return std::nullopt;
    RFel e = K.mul(K.add(K.add(d, d), K.scalar(8)), *deni);
    auto ei = inv(e);
    if (!ei) return std::nullopt;
    b = K.mul(K.sub(K.add(e, e), one), K.sub(e, one));
    c = K.mul(b, *ei);
  } else {
    return std::nullopt;
  }
  // disc of [1-c, -b, -b, 0, 0] = b^3 (b2^2 + 8(1-c)^3 - 27 b - 9 b2 (1-c))
  RFel omc = K.sub(one, c);
  RFel b2 = K.sub(K.mul(omc, omc), K.mul(K.scalar(4), b));
  RFel t = K.add(K.mul(b2, b2), K.mul(K.scalar(8), K.mul(omc, K.mul(omc, omc))));
  t = K.sub(t, K.mul(K.scalar(27), b));
  t = K.sub(t, K.mul(K.scalar(9), K.mul(b2, omc)));
  return K.mul(K.mul(b, K.mul(b, b)), t);
}

} // namespace

std::vector<Curve> torsion_family_search(const IdealHNF& n, const std::string& family,
                                         const SearchBox& box) {
  const FamilyDef* fd = family_def(family);
  if (!fd) fail(Err::UnknownFamily, "unknown torsion family: " + family);
  long B = box.bound;
  if (B < 0 || B > 2000) fail(Err::LimitExceeded, "torsion_family_search: bad bound");

  std::vector<const ResidueField*> Ks;
  std::vector<mpz_class> ps;
  for (const auto& [P, e] : factor_ideal(n)) {
    Ks.push_back(&residue_field(P));
    if (std::find(ps.begin(), ps.end(), P.p) == ps.end()) ps.push_back(P.p);
  }

  std::vector<Curve> out;
  FieldElement d;
  for (long x2 = -B; x2 <= B; ++x2)
    for (long x1 = -B; x1 <= B; ++x1)
      for (long x0 = -B; x0 <= B; ++x0) {
        d = FieldElement(x0, x1, x2);
        // a conductor prime must divide the discriminant of the (integral
        // rescaling of the) family member
        bool possible = true;
        for (const ResidueField* K : Ks) {
          auto disc = family_disc_residue(*K, family, K->reduce(d));
          if (disc && !K->is_zero(*disc)) {
            possible = false;
            break;
          }
        }
        if (!possible) continue;
        Curve E;
        try {
          E = tate_normal_curve(family, d);
        } catch (const Error&) {
          continue;
        }
        Curve Ei = integral_model(E);
        mpq_class dn = invariants(Ei).disc.norm();
        if (!disc_norm_admissible(dn.get_num(), ps)) continue;
        GlobalModel gm;
        try {
          gm = conductor_and_minimal_model(E);
        } catch (const Error&) {
          continue;
        }
        if (gm.conductor != n) continue;
        TorsionStructure T = torsion_subgroup(gm.minimal);
        if (T.m % fd->m != 0 || T.n % fd->n != 0) continue;
        bool dup = false;
        for (const Curve& c : out)
          if (c == gm.minimal) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(gm.minimal);
      }
  std::sort(out.begin(), out.end(), [](const Curve& x, const Curve& y) { return x.cmp(y) < 0; });
  return out;
}

// ---- quadratic twist candidates -------------------------------------------

std::vector<FieldElement> twist_candidates(const Curve& E, const mpz_class& norm_bound) {
  GlobalModel gm = conductor_and_minimal_model(E);
  FieldElement j = invariants(gm.minimal).j();
  if (j.is_zero() || j == FieldElement(1728))
    fail(Err::DegenerateJ, "twist candidates need j away from 0 and 1728");

  // primes of the conductor and the wild primes over 2, 3 are uncharged:
  // twisting there can move the exponent either way.  Any other prime in d
  // forces a factor N(p)^2 into the twisted conductor.
  std::vector<PrimeIdeal> pool;
  auto add_pool = [&](const PrimeIdeal& P) {
    for (const PrimeIdeal& Q : pool)
      if (Q.ideal == P.ideal) return;
    pool.push_back(P);
  };
  for (const auto& [P, e] : factor_ideal(gm.conductor)) add_pool(P);
  for (long p : {2, 3})
    for (const PrimeIdeal& P : factor_rational_prime(p)) add_pool(P);

  std::vector<PrimeIdeal> extras;
  if (norm_bound >= 4) {
    mpz_class pm = sqrt(mpz_class(norm_bound));
    if (pm > 1000000) fail(Err::LimitExceeded, "twist_candidates: bound too large");
    long pmax = pm.get_si();
    for (long p = 2; p <= pmax; ++p) {
      if (!is_prime_u32((uint32_t)p)) continue;
      for (const PrimeIdeal& P : factor_rational_prime(p)) {
        if (P.norm() * P.norm() > norm_bound) continue;
        bool inpool = false;
        for (const PrimeIdeal& Q : pool)
          if (Q.ideal == P.ideal) inpool = true;
        if (!inpool) extras.push_back(P);
      }
    }
    std::sort(extras.begin(), extras.end(), [](const PrimeIdeal& x, const PrimeIdeal& y) {
      return x.norm() != y.norm() ? x.norm() < y.norm() : x.ideal < y.ideal;
    });
  }

  struct Cand {
    IdealHNF D;
    mpz_class nrm;
  };
  std::vector<Cand> cands;
  size_t np = pool.size();
  if (np > 12) fail(Err::LimitExceeded, "twist candidate pool too large");
  // extras subsets with product of squared norms within the bound
  std::function<void(size_t, const IdealHNF&, const mpz_class&)> rec =
      [&](size_t i, const IdealHNF& D, const mpz_class& used) {
        cands.push_back({D, D.norm()});
        for (size_t k = i; k < extras.size(); ++k) {
          mpz_class nx = used * extras[k].norm() * extras[k].norm();
          if (nx > norm_bound) continue;
          rec(k + 1, ideal_mul(D, extras[k].ideal), nx);
        }
      };
  for (size_t mask = 0; mask < (size_t(1) << np); ++mask) {
    IdealHNF D = IdealHNF::one();
    for (size_t i = 0; i < np; ++i)
      if (mask >> i & 1) D = ideal_mul(D, pool[i].ideal);
    rec(0, D, 1);
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    return x.nrm != y.nrm ? x.nrm < y.nrm : x.D < y.D;
  });
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const Cand& x, const Cand& y) { return x.D == y.D; }),
              cands.end());

  std::vector<FieldElement> out;
  FieldElement A = FieldElement::gen();
  for (const Cand& c : cands) {
    FieldElement g = principal_generator(c.D);
    out.push_back(g);
    out.push_back(-g);
    out.push_back(A * g);
    out.push_back(-(A * g));
  }
  return out;
}

// ---- E_w machinery ---------------------------------------------------------

EwCandidate ew_curve(const FieldElement& w) {
  if (w.is_zero()) fail(Err::SingularModel, "E_w needs w != 0");
  EwCandidate c;
  c.w = w;
  c.curve = Curve{FieldElement(0), FieldElement(0), FieldElement(0), FieldElement(0),
                  FieldElement(-1728) * w};
  return c;
}

std::vector<Point> weighted_point_search(const EwCandidate& cand,
                                         const FieldElement& disc_weight, long bound) {
  if (disc_weight.is_zero()) fail(Err::SingularParameters, "zero disc_weight");
  if (bound <= 0) return {};

  double s1 = std::pow(std::abs(disc_weight.embed_real()), 1.0 / 6);
  double s2 = std::pow(std::abs(disc_weight.embed_complex()), 1.0 / 6);
  double R1 = bound * s1 * (1 + 1e-12) + 1e-9;
  double R2 = bound * s2 * (1 + 1e-12) + 1e-9;
  if (R1 > 4e9 || R2 > 4e9) fail(Err::LimitExceeded, "weighted_point_search: box too large");

  FieldElement A = FieldElement::gen();
  double t1 = A.embed_real(), t2 = (A * A).embed_real();
  std::complex<double> z1 = A.embed_complex(), z2 = (A * A).embed_complex();
  if (z1.imag() < 0) {
    z1 = std::conj(z1);
    z2 = std::conj(z2);
  }

  // coordinate bounds: x = M^{-1} (sigma1, Re sigma2, Im sigma2) over the
  // box [-R1, R1] x disk(R2)
  double M[3][3] = {{1, t1, t2}, {1, z1.real(), z2.real()}, {0, z1.imag(), z2.imag()}};
  double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
               M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
               M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  double inv[3][3] = {
      {(M[1][1] * M[2][2] - M[1][2] * M[2][1]) / det, -(M[0][1] * M[2][2] - M[0][2] * M[2][1]) / det,
       (M[0][1] * M[1][2] - M[0][2] * M[1][1]) / det},
      {-(M[1][0] * M[2][2] - M[1][2] * M[2][0]) / det, (M[0][0] * M[2][2] - M[0][2] * M[2][0]) / det,
       -(M[0][0] * M[1][2] - M[0][2] * M[1][0]) / det},
      {(M[1][0] * M[2][1] - M[1][1] * M[2][0]) / det, -(M[0][0] * M[2][1] - M[0][1] * M[2][0]) / det,
       (M[0][0] * M[1][1] - M[0][1] * M[1][0]) / det}};
  double bx1 = std::abs(inv[1][0]) * R1 + std::hypot(inv[1][1], inv[1][2]) * R2 + 1;
  double bx2 = std::abs(inv[2][0]) * R1 + std::hypot(inv[2][1], inv[2][2]) * R2 + 1;
  if (bx1 > 2e9 || bx2 > 2e9) fail(Err::LimitExceeded, "weighted_point_search: box too large");

  FieldElement m1728 = FieldElement(1728) * cand.w;

  // the sieve keeps X with X^3 - 1728 w a square at several split primes
  std::vector<WPrime> wp;
  for (const SievePrime& sp : sieve_primes()) {
    long m0 = mod_q_of(mpq_class(m1728.c0), sp.q);
    long m1 = mod_q_of(mpq_class(m1728.c1), sp.q);
    long m2 = mod_q_of(mpq_class(m1728.c2), sp.q);
    if (m0 < 0 || m1 < 0 || m2 < 0) continue;
    WPrime p;
    p.q = sp.q;
    p.root = sp.root;
    p.r2 = (uint32_t)((uint64_t)sp.root * sp.root % sp.q);
    p.m = (uint32_t)((m0 + (uint64_t)m1 * sp.root + (uint64_t)m2 * p.r2) % sp.q);
    p.sp = &sp;
    wp.push_back(p);
    if (wp.size() >= 14) break;
  }
  if (wp.size() < 4) fail(Err::Internal, "weighted_point_search: sieve primes unavailable");

  // four leading primes run third-difference chains along x0 (cubic values
  // need only additions); survivors of all four square tests (~1/16) are
  // checked against the rest, then exactly
  struct Chain {
    uint32_t q, v, d1, d2;
    const uint64_t* bits;
  };
  std::array<Chain, 4> ch;
  struct RowPrime {
    uint32_t q, u0, m;
    const uint64_t* bits;
  };
  std::vector<RowPrime> rp(wp.size() - 4);

  // wheel masks over x0 mod 3 and mod 5 (split root 2); either half is
  // disabled when the reduction of 1728 w does not cooperate
  const std::array<uint8_t, 27>& p3 = pass3_table();
  bool wheel3 = mod_q_of(m1728.c0, 3) == 0 && mod_q_of(m1728.c1, 3) == 0 &&
                mod_q_of(m1728.c2, 3) == 0;
  uint8_t mask5[5] = {1, 1, 1, 1, 1};
  bool wheel5 = false;
  {
    long m0 = mod_q_of(m1728.c0, 5), m1 = mod_q_of(m1728.c1, 5), m2 = mod_q_of(m1728.c2, 5);
    if (m0 >= 0 && m1 >= 0 && m2 >= 0) {
      wheel5 = true;
      long m5 = (m0 + 2 * m1 + 4 * m2) % 5;
      for (long v = 0; v < 5; ++v) {
        long h = ((v * v * v - m5) % 5 + 5) % 5;
        mask5[v] = (h == 0 || h == 1 || h == 4) ? 1 : 0;
      }
    }
  }
  const bool wheel_on = wheel3 || wheel5;
  uint32_t s3c[4];
  for (int i = 0; i < 4; ++i) s3c[i] = 20250 % wp[i].q;
  auto mod3 = [](int64_t x) { return (uint32_t)((x % 3 + 3) % 3); };
  auto mod5 = [](int64_t x) { return (uint32_t)((x % 5 + 5) % 5); };

  std::vector<Point> out;
  auto exact_check = [&](int64_t x0, int64_t x1, int64_t x2) {
    FieldElement X(x0, x1, x2);
    FieldElement h = X * X * X - m1728;
    if (h.is_zero()) {
      out.emplace_back(X, FieldElement(0));
      return;
    }
    mpq_class nh = h.norm();
    if (nh < 0) return;
    mpz_class num = nh.get_num(), den = nh.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return;
    auto y = sqrt_in_F(h);
    if (!y) return;
    FieldElement ym = -*y;
    out.emplace_back(X, y->cmp(ym) <= 0 ? *y : ym);
  };

  int64_t X2 = (int64_t)bx2, X1 = (int64_t)bx1;
  double i1 = z1.imag(), i2 = z2.imag();
  for (int64_t x2 = -X2; x2 <= X2; ++x2) {
    double ilo = (-R2 - x2 * i2) / i1, ihi = (R2 - x2 * i2) / i1;
    int64_t x1lo = std::max((int64_t)std::ceil(ilo), -X1);
    int64_t x1hi = std::min((int64_t)std::floor(ihi), X1);
    for (int64_t x1 = x1lo; x1 <= x1hi; ++x1) {
      double imC = x1 * i1 + x2 * i2;
      double h2 = R2 * R2 - imC * imC;
      if (h2 < 0) continue;
      double h = std::sqrt(h2);
      double reC = x1 * z1.real() + x2 * z2.real();
      double s1p = x1 * t1 + x2 * t2;
      double lo = std::max(-R1 - s1p, -reC - h), hi = std::min(R1 - s1p, -reC + h);
      int64_t l = (int64_t)std::ceil(lo), u = (int64_t)std::floor(hi);
      if (l > u) continue;

      uint32_t chs[4]; // per-row offsets s = x1 root + x2 root^2 mod q
      for (int i = 0; i < 4; ++i) {
        const WPrime& p = wp[i];
        uint64_t q = p.q;
        chs[i] =
            (uint32_t)(((x1 % (int64_t)q + q) * (uint64_t)p.root + (x2 % (int64_t)q + q) * p.r2) % q);
        ch[i].q = p.q;
        ch[i].bits = p.sp->sqbits.data();
      }
      for (size_t k = 4; k < wp.size(); ++k) {
        const WPrime& p = wp[k];
        uint64_t q = p.q;
        uint64_t s = ((x1 % (int64_t)q + q) * (uint64_t)p.root + (x2 % (int64_t)q + q) * p.r2) % q;
        rp[k - 4] = {p.q, (uint32_t)(((l % (int64_t)q + q) + s) % q), p.m, p.sp->sqbits.data()};
      }

      auto slow_stage = [&](int64_t x0) {
        uint64_t delta = (uint64_t)(x0 - l);
        for (const RowPrime& p : rp) {
          uint64_t uu = (p.u0 + delta) % p.q;
          uint64_t vv = (uu * uu % p.q * uu + p.q - p.m) % p.q;
          if (!((p.bits[vv >> 6] >> (vv & 63)) & 1)) return;
        }
        exact_check(x0, x1, x2);
      };

      if (wheel_on && u - l >= 40) {
        uint32_t base3 = 3 * mod3(x1) + 9 * mod3(x2);
        uint32_t s5 = (mod5(x1) * 2 + mod5(x2) * 4) % 5;
        for (int off = 0; off < 15 && l + off <= u; ++off) {
          int64_t x0s = l + off;
          if (wheel3 && !p3[base3 + mod3(x0s)]) continue;
          if (!mask5[(mod5(x0s) + s5) % 5]) continue;
          for (int i = 0; i < 4; ++i) {
            Chain& c = ch[i];
            uint64_t q = c.q;
            uint64_t u0 = ((x0s % (int64_t)q + q) + chs[i]) % q;
            c.v = (uint32_t)((u0 * u0 % q * u0 + q - wp[i].m) % q);
            c.d1 = (uint32_t)((45 * u0 % q * u0 + 675 * u0 + 3375) % q);
            c.d2 = (uint32_t)((1350 * u0 + 20250) % q);
          }
          for (int64_t x0 = x0s; x0 <= u; x0 += 15) {
            uint32_t pass = 1;
            for (int i = 0; i < 4; ++i)
              pass &= (uint32_t)(ch[i].bits[ch[i].v >> 6] >> (ch[i].v & 63));
            if (pass & 1) [[unlikely]]
              slow_stage(x0);
            for (int i = 0; i < 4; ++i) {
              Chain& c = ch[i];
              c.v += c.d1;
              if (c.v >= c.q) c.v -= c.q;
              c.d1 += c.d2;
              if (c.d1 >= c.q) c.d1 -= c.q;
              c.d2 += s3c[i];
              if (c.d2 >= c.q) c.d2 -= c.q;
            }
          }
        }
      } else {
        for (int i = 0; i < 4; ++i) {
          Chain& c = ch[i];
          uint64_t q = c.q;
          uint64_t u0 = ((l % (int64_t)q + q) + chs[i]) % q;
          c.v = (uint32_t)((u0 * u0 % q * u0 + q - wp[i].m) % q);
          c.d1 = (uint32_t)((3 * u0 * u0 + 3 * u0 + 1) % q);
          c.d2 = (uint32_t)((6 * u0 + 6) % q);
        }
        for (int64_t x0 = l; x0 <= u; ++x0) {
          uint32_t pass = 1;
          for (int i = 0; i < 4; ++i)
            pass &= (uint32_t)(ch[i].bits[ch[i].v >> 6] >> (ch[i].v & 63));
          if (pass & 1) [[unlikely]]
            slow_stage(x0);
          for (int i = 0; i < 4; ++i) {
            Chain& c = ch[i];
            c.v += c.d1;
            if (c.v >= c.q) c.v -= c.q;
            c.d1 += c.d2;
            if (c.d1 >= c.q) c.d1 -= c.q;
            c.d2 += 6;
            if (c.d2 >= c.q) c.d2 -= c.q;
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Point& P, const Point& Q) {
    int c = P.x.cmp(Q.x);
    return c != 0 ? c < 0 : P.y.cmp(Q.y) < 0;
  });
  return out;
}

std::vector<Curve> curves_from_w(const FieldElement& w, const Point& pt,
                                 const std::vector<PrimeIdeal>& S) {
  EwCandidate ew = ew_curve(w);
  if (pt.inf || !on_curve(ew.curve, pt))
    fail(Err::NoRationalPoint, "curves_from_w: point not on E_w");
  const FieldElement& x = pt.x;
  const FieldElement& y = pt.y;
  if (x.is_zero()) fail(Err::DegenerateJ, "curves_from_w: j = 0");
  if (y.is_zero()) fail(Err::DegenerateJ, "curves_from_w: j = 1728");

  auto in_S = [&](const PrimeIdeal& P) {
    for (const PrimeIdeal& Q : S)
      if (Q.ideal == P.ideal) return true;
    return false;
  };

  // candidate primes where the base model could have off-S bad reduction:
  // those over 2, 3 and the support of w
  std::vector<PrimeIdeal> fixes;
  auto add_fix = [&](const PrimeIdeal& P) {
    if (in_S(P)) return;
    for (const PrimeIdeal& Q : fixes)
      if (Q.ideal == P.ideal) return;
    fixes.push_back(P);
  };
  for (long p : {2, 3})
    for (const PrimeIdeal& P : factor_rational_prime(p)) add_fix(P);
  mpq_class nw = w.norm();
  for (const mpz_class& part : {mpz_class(abs(nw.get_num())), mpz_class(nw.get_den())})
    if (part > 1)
      for (const auto& [p, e] : factor_integer(part))
        for (const PrimeIdeal& P : factor_rational_prime(p))
          if (element_valuation(w, P) != 0) add_fix(P);

  // rescale so the discriminant 12^6 u^6 w has valuation in 12Z outside S;
  // quadratic twists below cannot repair an odd v_P(disc)/6 there
  FieldElement ufix(1);
  for (const PrimeIdeal& P : fixes) {
    long vw = element_valuation(w, P);
    if (vw % 6)
      fail(Err::SingularParameters, "curves_from_w: w valuation not in 6Z outside S");
    long t = (element_valuation(FieldElement(12), P) + vw / 6) % 2;
    if (t) ufix *= P.pi;
  }

  FieldElement u2 = ufix * ufix, u3 = u2 * ufix;
  Curve base{FieldElement(0), FieldElement(0), FieldElement(0), FieldElement(-3) * x * u2,
             FieldElement(-2) * y * u3};

  SelmerBasis B2 = selmer_group(S, 2);
  std::vector<Curve> out;
  for (const auto& e : B2.classes) {
    Curve tw = quadratic_twist(base, B2.rep(e));
    GlobalModel gm = conductor_and_minimal_model(tw);
    bool ok = true;
    for (const LocalData& ld : gm.locals)
      if (!in_S(ld.prime)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    bool dup = false;
    for (const Curve& c : out)
      if (c == gm.minimal) dup = true;
    if (!dup) out.push_back(gm.minimal);
  }
  std::sort(out.begin(), out.end(), [](const Curve& a, const Curve& b) { return a.cmp(b) < 0; });
  return out;
}

// ---- the prescribed-reduction ladder ----------------------------------------

std::vector<Curve> prescribed_reduction_search(const IdealHNF& n, long effort,
                                               std::vector<SearchLogEntry>* log) {
  if (effort < 0) effort = 0;
  auto fac = factor_ideal(n);
  if (fac.empty()) fail(Err::ZeroIdeal, "prescribed_reduction_search: trivial conductor");
  std::vector<PrimeIdeal> S;
  std::vector<int> fexp;
  for (const auto& [P, e] : fac) {
    S.push_back(P);
    fexp.push_back(e);
  }

  SelmerBasis B6 = selmer_group(S, 6, 12);
  struct Cand {
    FieldElement w;
    mpz_class nrm;
    double t2 = 0, n16 = 0; // |N(1728 w)|^(1/6)
    EwCandidate ew;
    std::set<std::string> seen; // x-coordinates already expanded
    SearchLogEntry le;
  };
  std::vector<Cand> cands;
  for (const auto& e : B6.classes) {
    // a conductor-exponent-1 prime is multiplicative: j must have a pole
    // there, and v_P(j) = 3 v_P(X) - v_P(w) with X integral, so the class
    // exponent of pi_P cannot be 0
    bool viable = true;
    for (size_t i = 0; i < S.size(); ++i)
      if (fexp[i] == 1 && e[2 + i] == 0) viable = false;
    if (!viable) continue;
    Cand c;
    c.w = balance_by_units(B6.rep(e), 6);
    mpq_class nw = abs(c.w.norm());
    c.nrm = nw.get_num(); // class representatives are integral
    c.t2 = c.w.t2_norm();
    c.n16 = std::pow(1728.0, 0.5) * std::pow(c.nrm.get_d(), 1.0 / 6);
    c.ew = ew_curve(c.w);
    cands.push_back(std::move(c));
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.nrm != b.nrm) return a.nrm < b.nrm;
    if (a.t2 != b.t2) return a.t2 < b.t2;
    return a.w.cmp(b.w) < 0;
  });
  for (size_t i = 0; i < cands.size(); ++i) {
    cands[i].le.index = (long)i;
    cands[i].le.w = cands[i].w;
    cands[i].le.w_norm = cands[i].nrm;
  }

  // per-candidate point budget per round; the box bound B is solved from
  // volume = budget, so expensive (large-norm) classes get smaller boxes
  const double kBudget0 = 3.0e6;
  const double kCovol = std::sqrt(23.0) / 2; // lattice covolume of Z[a]
  FieldElement A = FieldElement::gen();

  std::vector<Curve> results;
  auto add_result = [&](const Curve& c) {
    for (const Curve& r : results)
      if (r == c) return false;
    results.push_back(c);
    return true;
  };

  for (long r = 0; r <= effort; ++r) {
    double budget = kBudget0 * std::pow(8.0, (double)r);
    long J = r + 3;
    size_t active = std::min(cands.size(), (size_t)12 << std::min(r, 40L));
    for (size_t i = 0; i < active; ++i) {
      Cand& C = cands[i];
      C.le.rounds = (int)(r + 1);
      long B = (long)std::cbrt(budget * kCovol / (2 * M_PI * (2 * J + 1) * C.n16));
      if (B < 1) B = 1;
      for (long j = -J; j <= J; ++j) {
        FieldElement dw = FieldElement(1728) * C.w * A.pow(12 * j);
        for (const Point& pt : weighted_point_search(C.ew, dw, B)) {
          if (!C.seen.insert(pt.x.str()).second) continue;
          C.ew.points.push_back(pt);
          std::vector<Curve> built;
          try {
            built = curves_from_w(C.w, pt, S);
          } catch (const Error&) {
            continue; // degenerate j or unusable class
          }
          for (const Curve& cv : built)
            if (conductor_and_minimal_model(cv).conductor == n && add_result(cv))
              C.le.curves++;
        }
      }
      C.le.points = (long)C.seen.size();
    }
  }

  if (log) {
    log->clear();
    for (const Cand& c : cands)
      if (c.le.rounds > 0) log->push_back(c.le);
  }
  std::sort(results.begin(), results.end(),
            [](const Curve& a, const Curve& b) { return a.cmp(b) < 0; });
  return results;
}

} // namespace ec23
