#include "zpoly.hpp"

#include <algorithm>

#include "common.hpp"
#include "modp.hpp"

namespace ec23 {

void z_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int z_deg(const ZPoly& f) { return (int)f.size() - 1; }

ZPoly z_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] += b[i];
  z_trim(r);
  return r;
}

ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] -= b[i];
  z_trim(r);
  return r;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
  }
  z_trim(r);
  return r;
}

ZPoly z_neg(ZPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

ZPoly z_derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); i++) r[i - 1] = f[i] * (long)i;
  z_trim(r);
  return r;
}

mpz_class z_eval(const ZPoly& f, const mpz_class& x) {
  mpz_class r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

mpz_class z_content(const ZPoly& f) {
  mpz_class g = 0;
  for (auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly z_primitive(const ZPoly& f) {
  if (f.empty()) return f;
  mpz_class g = z_content(f);
  if (f.back() < 0) g = -g;
  ZPoly r = f;
  for (auto& c : r) c /= g;
  return r;
}

void q_trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int q_deg(const QPoly& f) { return (int)f.size() - 1; }

QPoly q_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] += b[i];
  q_trim(r);
  return r;
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] -= b[i];
  q_trim(r);
  return r;
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); j++) r[i + j] += a[i] * b[j];
  }
  q_trim(r);
  return r;
}

std::pair<QPoly, QPoly> q_divrem(const QPoly& a, const QPoly& b) {
  if (b.empty()) fail(Err::Internal, "division by zero polynomial");
  QPoly q, r = a;
  if (q_deg(a) < q_deg(b)) return {q, r};
  q.assign(a.size() - b.size() + 1, 0);
  mpq_class inv = 1 / b.back();
  for (int i = q_deg(a); i >= q_deg(b); i--) {
    if ((int)r.size() <= i || r[i] == 0) continue;
    mpq_class c = r[i] * inv;
    q[i - q_deg(b)] = c;
    for (size_t j = 0; j < b.size(); j++) r[i - q_deg(b) + j] -= c * b[j];
  }
  q_trim(q);
  q_trim(r);
  return {q, r};
}

mpq_class q_eval(const QPoly& f, const mpq_class& x) {
  mpq_class r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

QPoly q_from_z(const ZPoly& f) {
  QPoly r(f.size());
  for (size_t i = 0; i < f.size(); i++) r[i] = f[i];
  return r;
}

ZPoly z_from_q(const QPoly& f) {
  mpz_class den = 1;
  for (auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); i++) {
    mpq_class v = f[i] * den;
    r[i] = v.get_num();
  }
  z_trim(r);
  return z_primitive(r);
}

bool z_divides(const ZPoly& d, const ZPoly& f, ZPoly* quot) {
  if (d.empty()) return f.empty();
  auto [q, r] = q_divrem(q_from_z(f), q_from_z(d));
  if (!r.empty()) return false;
  ZPoly zq(q.size());
  for (size_t i = 0; i < q.size(); i++) {
    if (q[i].get_den() != 1) return false;
    zq[i] = q[i].get_num();
  }
  if (quot) *quot = zq;
  return true;
}

// ---- modular images -----------------------------------------------------

static modp::Poly z_mod_p(const ZPoly& f, uint64_t p) {
  modp::Poly r;
  r.p = p;
  r.c.resize(f.size());
  for (size_t i = 0; i < f.size(); i++) {
    mpz_class m = f[i] % (long)p;
    if (m < 0) m += (long)p;
    r.c[i] = m.get_ui();
  }
  r.trim();
  return r;
}

static mpz_class symmetric(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  if (r * 2 > m) r -= m;
  return r;
}

ZPoly z_gcd(const ZPoly& a0, const ZPoly& b0) {
  if (a0.empty()) return z_primitive(b0);
  if (b0.empty()) return z_primitive(a0);
  ZPoly a = z_primitive(a0), b = z_primitive(b0);
  mpz_class gamma;
  mpz_gcd(gamma.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());

  mpz_class p = 1000003;
  int best_deg = std::min(z_deg(a), z_deg(b)) + 1;
  ZPoly acc;      // CRT-combined candidate, coefficients in [0, modulus)
  mpz_class modulus = 1;
  ZPoly prev;     // symmetric lift from the previous round
  for (int iter = 0; iter < 2000; iter++) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (a.back() % p == 0 || b.back() % p == 0) continue;
    uint64_t pp = p.get_ui();
    modp::Poly g = modp::gcd(z_mod_p(a, pp), z_mod_p(b, pp));
    if (g.deg() == 0) return {mpz_class(1)};
    if (g.deg() > best_deg) continue; // unlucky prime
    modp::Poly gl = modp::scale(g, mpz_class(gamma % p).get_ui());
    if (g.deg() < best_deg) {
      best_deg = g.deg();
      acc.assign(g.deg() + 1, 0);
      for (int i = 0; i <= g.deg(); i++) acc[i] = gl.c.size() > (size_t)i ? mpz_class(gl.c[i]) : 0;
      modulus = p;
      prev.clear();
    } else {
      // CRT combine coefficientwise
      mpz_class minv;
      mpz_class pm = modulus % p;
      mpz_invert(minv.get_mpz_t(), pm.get_mpz_t(), p.get_mpz_t());
      for (int i = 0; i <= best_deg; i++) {
        mpz_class cur = acc[i] % p;
        mpz_class want = gl.c.size() > (size_t)i ? mpz_class(gl.c[i]) : mpz_class(0);
        mpz_class diff = ((want - cur) % p + p) % p;
        if (diff != 0) acc[i] += modulus * ((diff * minv) % p);
      }
      modulus *= p;
    }
    ZPoly cand(best_deg + 1);
    for (int i = 0; i <= best_deg; i++) cand[i] = symmetric(acc[i], modulus);
    z_trim(cand);
    if (!cand.empty() && cand == prev) {
      // symmetric lift stable across a round: verify by exact division
      ZPoly prim = z_primitive(cand);
      if (z_divides(prim, a) && z_divides(prim, b)) return prim;
    }
    prev = cand;
  }
  fail(Err::Internal, "modular gcd did not stabilize");
}

ZPoly z_squarefree_part(const ZPoly& f) {
  if (z_deg(f) <= 0) return z_primitive(f);
  ZPoly g = z_gcd(f, z_derivative(f));
  ZPoly q;
  z_divides(g, z_primitive(f), &q);
  return z_primitive(q);
}

bool z_is_squarefree(const ZPoly& f) {
  if (z_deg(f) <= 0) return true;
  return z_deg(z_gcd(f, z_derivative(f))) == 0;
}

std::vector<std::pair<ZPoly, int>> z_squarefree_decompose(const ZPoly& f0) {
  std::vector<std::pair<ZPoly, int>> out;
  ZPoly f = z_primitive(f0);
  if (z_deg(f) <= 0) return out;
  // Yun
  ZPoly fp = z_derivative(f);
  ZPoly g = z_gcd(f, fp);
  ZPoly w, y;
  z_divides(g, f, &w);
  z_divides(g, fp, &y);
  int k = 1;
  while (z_deg(w) > 0) {
    ZPoly z = z_sub(y, z_derivative(w));
    if (z.empty()) {
      out.push_back({z_primitive(w), k});
      break;
    }
    ZPoly gk = z_gcd(w, z);
    if (z_deg(gk) > 0) out.push_back({z_primitive(gk), k});
    ZPoly w2, y2;
    z_divides(gk, w, &w2);
    z_divides(gk, z, &y2);
    w = w2;
    y = y2;
    k++;
  }
  return out;
}

QPoly q_interpolate(const std::vector<std::pair<mpq_class, mpq_class>>& pts) {
  // Newton form, exact
  size_t n = pts.size();
  std::vector<mpq_class> coef(n);
  std::vector<mpq_class> dd(n);
  for (size_t i = 0; i < n; i++) dd[i] = pts[i].second;
  coef[0] = dd[0];
  for (size_t j = 1; j < n; j++) {
    for (size_t i = n - 1; i >= j; i--)
      dd[i] = (dd[i] - dd[i - 1]) / (pts[i].first - pts[i - j].first);
    coef[j] = dd[j];
  }
  QPoly r{coef[n - 1]};
  for (size_t j = n - 1; j-- > 0;) {
    // r = r*(x - x_j) + coef[j]
    QPoly xr(r.size() + 1, 0);
    for (size_t i = 0; i < r.size(); i++) {
      xr[i + 1] += r[i];
      xr[i] -= pts[j].first * r[i];
    }
    xr[0] += coef[j];
    r = xr;
    q_trim(r);
  }
  return r;
}

// determinant by fraction-free-ish Gaussian elimination over Q
static mpq_class det_q(std::vector<std::vector<mpq_class>> m) {
  size_t n = m.size();
  mpq_class det = 1;
  for (size_t col = 0; col < n; col++) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) piv++;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    mpq_class inv = 1 / m[col][col];
    for (size_t i = col + 1; i < n; i++) {
      if (m[i][col] == 0) continue;
      mpq_class fac = m[i][col] * inv;
      for (size_t j = col; j < n; j++) m[i][j] -= fac * m[col][j];
    }
  }
  return det;
}

QPoly resultant_in_t(const QPoly& A, const std::vector<QPoly>& B) {
  int da = q_deg(A);
  int db = (int)B.size() - 1;
  if (da < 1 || db < 0) fail(Err::Internal, "resultant shape");
  int xdeg = 0;
  for (auto& b : B) xdeg = std::max(xdeg, q_deg(b));
  // A's coefficients are X-free, so deg_X Res <= da * xdeg
  int outdeg = da * xdeg;
  int npts = outdeg + 1;
  std::vector<std::pair<mpq_class, mpq_class>> pts;
  pts.reserve(npts);
  int n = da + db; // Sylvester size with fixed shape
  for (int k = 0; k < npts; k++) {
    mpq_class x(k);
    std::vector<mpq_class> bev(db + 1);
    for (int j = 0; j <= db; j++) bev[j] = q_eval(B[j], x);
    std::vector<std::vector<mpq_class>> syl(n, std::vector<mpq_class>(n, 0));
    // db rows of A coefficients, da rows of B(t) coefficients
    for (int i = 0; i < db; i++)
      for (int j = 0; j <= da; j++) syl[i][i + j] = A[da - j];
    for (int i = 0; i < da; i++)
      for (int j = 0; j <= db; j++) syl[db + i][i + j] = bev[db - j];
    pts.push_back({x, det_q(syl)});
  }
  return q_interpolate(pts);
}

// ---- Zassenhaus ----------------------------------------------------------

namespace {

struct ZModCtx {
  mpz_class m;
  mpz_class red(const mpz_class& a) const {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
  }
  ZPoly red(const ZPoly& f) const {
    ZPoly r(f.size());
    for (size_t i = 0; i < f.size(); i++) r[i] = red(f[i]);
    z_trim(r);
    return r;
  }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const { return red(z_mul(a, b)); }
  ZPoly add(const ZPoly& a, const ZPoly& b) const { return red(z_add(a, b)); }
  ZPoly sub(const ZPoly& a, const ZPoly& b) const { return red(z_sub(a, b)); }
  // division by monic d
  std::pair<ZPoly, ZPoly> divrem_monic(const ZPoly& a, const ZPoly& d) const {
    ZPoly q, r = a;
    int dd = z_deg(d);
    if (z_deg(a) < dd) return {q, r};
    q.assign(a.size() - d.size() + 1, 0);
    for (int i = z_deg(a); i >= dd; i--) {
      if ((int)r.size() <= i) continue;
      mpz_class c = red(r[i]);
      if (c == 0) { r[i] = 0; continue; }
      q[i - dd] = c;
      for (int j = 0; j <= dd; j++) r[i - dd + j] = red(r[i - dd + j] - c * d[j]);
    }
    z_trim(q);
    z_trim(r);
    return {q, r};
  }
  ZPoly monic(const ZPoly& f) const {
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), m.get_mpz_t()))
      fail(Err::Internal, "non-invertible lc in hensel");
    ZPoly r(f.size());
    for (size_t i = 0; i < f.size(); i++) r[i] = red(f[i] * inv);
    return r;
  }
};

struct HenselPair {
  ZPoly g, h, s, t; // f = g h, s g + t h = 1 (mod m)
};

// one quadratic step: modulus m -> m^2 (clamped by caller through ctx)
void hensel_step(const ZPoly& f, HenselPair& P, const mpz_class& m2) {
  ZModCtx c{m2};
  ZPoly e = c.sub(f, z_mul(P.g, P.h));
  auto [q, r] = c.divrem_monic(c.mul(P.s, e), P.h);
  ZPoly g2 = c.add(P.g, c.add(c.mul(P.t, e), c.mul(q, P.g)));
  ZPoly h2 = c.add(P.h, r);
  ZPoly b = c.sub(c.add(c.mul(P.s, g2), c.mul(P.t, h2)), ZPoly{1});
  auto [cq, d] = c.divrem_monic(c.mul(P.s, b), h2);
  ZPoly s2 = c.sub(P.s, d);
  ZPoly t2 = c.sub(P.t, c.add(c.mul(P.t, b), c.mul(cq, g2)));
  P = {g2, h2, s2, t2};
}

ZPoly from_modp(const modp::Poly& f) {
  ZPoly r(f.c.size());
  for (size_t i = 0; i < f.c.size(); i++) r[i] = mpz_class(f.c[i]);
  return r;
}

// lift factorization f = lc * prod(monic factors) from mod p to mod p^K
void hensel_tree(const ZPoly& f, std::vector<modp::Poly> facs, uint64_t p,
                 const mpz_class& pK, std::vector<ZPoly>& out) {
  if (facs.size() == 1) {
    ZModCtx c{pK};
    out.push_back(c.monic(c.red(f)));
    return;
  }
  size_t half = facs.size() / 2;
  modp::Poly G(p, {1}), H(p, {1});
  for (size_t i = 0; i < half; i++) G = modp::mul(G, facs[i]);
  for (size_t i = half; i < facs.size(); i++) H = modp::mul(H, facs[i]);
  // absorb lc(f) into G
  mpz_class lcm = f.back() % (long)p;
  if (lcm < 0) lcm += (long)p;
  G = modp::scale(G, lcm.get_ui());
  // bezout s G + t H = 1 mod p
  modp::Poly s, t;
  {
    modp::Poly a = G, b = H;
    modp::Poly sa(p, {1}), sb(p, {0});
    modp::Poly ta(p, {0}), tb(p, {1});
    while (!b.is_zero()) {
      auto [q, r] = modp::divrem(a, b);
      modp::Poly ns = modp::sub(sa, modp::mul(q, sb));
      modp::Poly nt = modp::sub(ta, modp::mul(q, tb));
      a = b; b = r;
      sa = sb; sb = ns;
      ta = tb; tb = nt;
    }
    // a = gcd (unit); normalize to 1
    uint64_t inv = modp::invmod(a.c[0], p);
    s = modp::scale(sa, inv);
    t = modp::scale(ta, inv);
  }
  HenselPair P{from_modp(G), from_modp(H), from_modp(s), from_modp(t)};
  mpz_class m = p;
  while (m < pK) {
    m = m * m;
    if (m > pK) m = pK; // fine: steps stay valid modulo any multiple chain
    hensel_step(f, P, m);
  }
  std::vector<modp::Poly> left(facs.begin(), facs.begin() + half);
  std::vector<modp::Poly> right(facs.begin() + half, facs.end());
  hensel_tree(P.g, std::move(left), p, pK, out);
  hensel_tree(P.h, std::move(right), p, pK, out);
}

// factor primitive squarefree f; factors of degree <= max_deg complete
void zassenhaus(ZPoly f, int max_deg, std::vector<ZPoly>& out, std::vector<ZPoly>& tail) {
  if (z_deg(f) == 1) {
    out.push_back(f);
    return;
  }
  // choose a prime keeping f squarefree, minimizing the modular factor count
  uint64_t best_p = 0;
  std::vector<modp::Poly> best_facs;
  uint64_t p = 2;
  int good = 0;
  mpz_class pz;
  for (int attempt = 0; attempt < 500 && good < 5; attempt++) {
    pz = (long)p;
    mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
    p = pz.get_ui();
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    modp::Poly fp = z_mod_p(f, p);
    if (modp::gcd(fp, modp::derivative(fp)).deg() != 0) continue;
    auto fac = modp::factor(fp);
    std::vector<modp::Poly> fl;
    for (auto& gm : fac) fl.push_back(gm.first);
    if (best_p == 0 || fl.size() < best_facs.size()) {
      best_p = p;
      best_facs = fl;
    }
    good++;
    if (best_facs.size() <= 2) break;
  }
  if (best_p == 0) fail(Err::Internal, "no usable prime for factorization");
  if (best_facs.size() == 1) {
    out.push_back(f);
    return;
  }
  // Mignotte-style bound on factor coefficients
  mpz_class h = 0;
  for (auto& c : f) {
    mpz_class a = abs(c);
    if (a > h) h = a;
  }
  mpz_class bound = abs(f.back()) * h * (z_deg(f) + 1);
  bound <<= z_deg(f) + 1;
  mpz_class pK = best_p;
  while (pK <= 2 * bound) pK *= best_p;

  std::vector<ZPoly> lifts;
  hensel_tree(f, best_facs, best_p, pK, lifts);

  ZModCtx ctx{pK};
  std::vector<int> active(lifts.size());
  for (size_t i = 0; i < lifts.size(); i++) active[i] = (int)i;

  auto sym_poly = [&](ZPoly g) {
    for (auto& c : g) c = symmetric(c, pK);
    z_trim(g);
    return g;
  };

  const bool unlimited = max_deg < 0;
  const int limit = unlimited ? z_deg(f) : max_deg;
  // smallest modular degrees first so the size/degree prune bites early
  std::sort(active.begin(), active.end(),
            [&](int x, int y) { return z_deg(lifts[x]) < z_deg(lifts[y]); });
  size_t s = 1;
  while (!active.empty() && s <= active.size()) {
    if (unlimited && s > active.size() / 2) break;
    if (!unlimited) {
      int mindeg = 0;
      for (size_t i = 0; i < s; i++) mindeg += z_deg(lifts[active[i]]);
      if (mindeg > limit) break; // no size-s subset can fit; larger s neither
    }
    // iterate over size-s subsets of active (lexicographic index combinations)
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; i++) idx[i] = i;
    bool found = false;
    for (;;) {
      int dsum = 0;
      for (size_t i = 0; i < s; i++) dsum += z_deg(lifts[active[idx[i]]]);
      if (dsum <= limit) {
        // trailing-coefficient quick test
        bool quick_ok = true;
        if (!f.empty() && f[0] != 0) {
          mpz_class t0 = f.back();
          for (size_t i = 0; i < s; i++) t0 = ctx.red(t0 * lifts[active[idx[i]]][0]);
          t0 = symmetric(t0, pK);
          mpz_class f0lc = f[0] * f.back();
          if (t0 == 0 || !mpz_divisible_p(f0lc.get_mpz_t(), t0.get_mpz_t()))
            quick_ok = false;
        }
        if (quick_ok) {
          ZPoly g{f.back()};
          for (size_t i = 0; i < s; i++) g = ctx.mul(g, lifts[active[idx[i]]]);
          g = z_primitive(sym_poly(g));
          ZPoly q;
          if (z_deg(g) >= 1 && z_divides(g, f, &q)) {
            out.push_back(g);
            f = q;
            std::vector<int> rest;
            size_t k = 0;
            for (size_t i = 0; i < active.size(); i++) {
              if (k < s && idx[k] == i) { k++; continue; }
              rest.push_back(active[i]);
            }
            active = rest;
            found = true;
            break;
          }
        }
      }
      // next combination
      size_t i = s;
      while (i-- > 0) {
        if (idx[i] != i + active.size() - s) {
          idx[i]++;
          for (size_t j = i + 1; j < s; j++) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) goto subsets_done;
      }
    }
  subsets_done:
    if (!found) s++;
  }
  if (z_deg(f) >= 1) {
    // unlimited: every proper split was tried, the remainder is irreducible.
    // bounded: all factors of degree <= max_deg were split off already, so
    // the remainder only has factors above the bound.
    if (unlimited)
      out.push_back(z_primitive(f));
    else
      tail.push_back(z_primitive(f));
  }
}

} // namespace

ZFactorization z_factor(const ZPoly& f0, int max_deg) {
  ZFactorization R;
  R.content = 0;
  if (f0.empty()) return R;
  ZPoly f = f0;
  mpz_class cont = z_content(f);
  if (f.back() < 0) cont = -cont;
  R.content = mpq_class(cont);
  for (auto& c : f) c /= cont;
  if (z_deg(f) == 0) return R;
  for (auto& [sq, mult] : z_squarefree_decompose(f)) {
    std::vector<ZPoly> outs, tails;
    zassenhaus(sq, max_deg, outs, tails);
    for (auto& g : outs) R.factors.push_back({g, mult});
    for (auto& g : tails) R.tail.push_back({g, mult});
  }
  std::sort(R.factors.begin(), R.factors.end(), [](const auto& a, const auto& b) {
    if (z_deg(a.first) != z_deg(b.first)) return z_deg(a.first) < z_deg(b.first);
    return std::lexicographical_compare(a.first.begin(), a.first.end(),
                                        b.first.begin(), b.first.end());
  });
  return R;
}

} // namespace ec23
