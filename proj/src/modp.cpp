#include "modp.hpp"

#include <algorithm>
#include <random>

namespace ec23::modp {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return (uint64_t)((unsigned __int128)a * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t p) {
  // extended euclid; p need not be prime as long as gcd(a,p)=1
  int64_t t = 0, newt = 1;
  uint64_t r = p, newr = a % p;
  while (newr != 0) {
    uint64_t q = r / newr;
    int64_t tt = t - (int64_t)q * newt;
    t = newt; newt = tt;
    uint64_t rr = r - q * newr;
    r = newr; newr = rr;
  }
  return t < 0 ? (uint64_t)(t + (int64_t)p) : (uint64_t)t;
}

void Poly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
  Poly r;
  r.p = a.p ? a.p : b.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); i++) r.c[i] = (r.c[i] + b.c[i]) % r.p;
  r.trim();
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r;
  r.p = a.p ? a.p : b.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); i++) r.c[i] = (r.c[i] + r.p - b.c[i]) % r.p;
  r.trim();
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  r.p = a.p ? a.p : b.p;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); i++) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); j++)
      r.c[i + j] = (r.c[i + j] + (unsigned __int128)a.c[i] * b.c[j]) % r.p;
  }
  r.trim();
  return r;
}

Poly scale(const Poly& a, uint64_t s) {
  Poly r = a;
  for (auto& x : r.c) x = mulmod(x, s, a.p);
  r.trim();
  return r;
}

Poly monic(const Poly& a) {
  if (a.is_zero() || a.lc() == 1) return a;
  return scale(a, invmod(a.lc(), a.p));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  Poly q, r = a;
  q.p = r.p = a.p ? a.p : b.p;
  if (b.is_zero() || a.deg() < b.deg()) return {q, r};
  q.c.assign(a.deg() - b.deg() + 1, 0);
  uint64_t inv = invmod(b.lc(), r.p);
  for (int i = a.deg(); i >= b.deg(); i--) {
    if ((int)r.c.size() <= i || r.c[i] == 0) continue;
    uint64_t coef = mulmod(r.c[i], inv, r.p);
    q.c[i - b.deg()] = coef;
    for (int j = 0; j <= b.deg(); j++) {
      size_t k = i - b.deg() + j;
      r.c[k] = (r.c[k] + r.p - mulmod(coef, b.c[j], r.p)) % r.p;
    }
  }
  q.trim();
  r.trim();
  return {q, r};
}

Poly rem(const Poly& a, const Poly& b) { return divrem(a, b).second; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly derivative(const Poly& a) {
  Poly r;
  r.p = a.p;
  if (a.deg() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); i++)
    r.c[i - 1] = (uint64_t)((unsigned __int128)a.c[i] * (i % a.p) % a.p);
  r.trim();
  return r;
}

Poly powmod_poly(const Poly& base, const mpz_class& e, const Poly& mod) {
  Poly r(mod.p, {1});
  Poly b = rem(base, mod);
  mpz_class n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = rem(mul(r, b), mod);
    b = rem(mul(b, b), mod);
    n >>= 1;
  }
  return r;
}

uint64_t eval(const Poly& a, uint64_t x) {
  uint64_t r = 0;
  for (size_t i = a.c.size(); i-- > 0;) r = (mulmod(r, x, a.p) + a.c[i]) % a.p;
  return r;
}

namespace {

Poly xpoly(uint64_t p) { return Poly(p, {0, 1}); }

// equal-degree splitting of a monic squarefree product of degree-d irreducibles
void edf(const Poly& f, int d, std::vector<Poly>& out, std::mt19937_64& rng) {
  if (f.deg() == d) {
    out.push_back(f);
    return;
  }
  uint64_t p = f.p;
  Poly g;
  for (;;) {
    Poly r;
    r.p = p;
    r.c.resize(f.deg());
    for (auto& x : r.c) x = rng() % p;
    r.trim();
    if (r.deg() < 1) continue;
    if (p == 2) {
      // trace map over F_{2^d}
      Poly t = r, acc = r;
      for (int i = 1; i < d; i++) {
        t = rem(mul(t, t), f);
        acc = add(acc, t);
      }
      g = gcd(f, acc);
    } else {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, d);
      e = (e - 1) / 2;
      Poly s = powmod_poly(r, e, f);
      s = sub(s, Poly(p, {1}));
      g = gcd(f, s);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) break;
  }
  edf(g, d, out, rng);
  edf(divrem(f, g).first, d, out, rng);
}

// distinct-degree then equal-degree factorization of monic squarefree f
std::vector<Poly> factor_squarefree(Poly f, std::mt19937_64& rng) {
  std::vector<Poly> out;
  uint64_t p = f.p;
  Poly w = powmod_poly(xpoly(p), mpz_class(p), f); // x^p mod f
  int d = 1;
  while (f.deg() >= 2 * d) {
    Poly g = gcd(f, sub(w, xpoly(p)));
    if (g.deg() > 0) {
      edf(g, d, out, rng);
      f = divrem(f, g).first;
      w = rem(w, f);
    }
    d++;
    if (f.deg() < 2 * d) break;
    w = powmod_poly(w, mpz_class(p), f);
  }
  if (f.deg() > 0) out.push_back(f);
  return out;
}

// squarefree decomposition in characteristic p
void squarefree_parts(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.deg() < 1) return;
  uint64_t p = f.p;
  Poly fp = derivative(f);
  if (fp.is_zero()) {
    // f = g(x^p); over F_p the coefficients are fixed by Frobenius
    Poly g;
    g.p = p;
    g.c.resize(f.deg() / p + 1, 0);
    for (size_t i = 0; i < g.c.size(); i++) g.c[i] = f.c[i * p];
    g.trim();
    squarefree_parts(g, mult * (int)p, out);
    return;
  }
  Poly w = gcd(f, fp);
  Poly sqfree = divrem(f, w).first; // product of distinct factors of f not killed by p
  int k = 1;
  while (sqfree.deg() > 0) {
    Poly y = gcd(sqfree, w);
    Poly piece = divrem(sqfree, y).first; // factors of exact multiplicity k
    if (piece.deg() > 0) out.push_back({monic(piece), mult * k});
    sqfree = y;
    w = divrem(w, y).first;
    k++;
  }
  if (w.deg() > 0) squarefree_parts(w, mult, out); // p-th power part remains
}

} // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
  std::vector<std::pair<Poly, int>> parts;
  squarefree_parts(monic(f), 1, parts);
  std::mt19937_64 rng(0x5eedec23);
  std::vector<std::pair<Poly, int>> out;
  for (auto& [g, m] : parts)
    for (auto& irr : factor_squarefree(g, rng)) out.push_back({irr, m});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.deg() != y.first.deg()) return x.first.deg() < y.first.deg();
    return std::lexicographical_compare(x.first.c.begin(), x.first.c.end(),
                                        y.first.c.begin(), y.first.c.end());
  });
  return out;
}

std::vector<std::pair<uint64_t, int>> roots(const Poly& f) {
  std::vector<std::pair<uint64_t, int>> out;
  for (auto& [g, m] : factor(f))
    if (g.deg() == 1) out.push_back({(f.p - g.c[0]) % f.p, m});
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace ec23::modp
