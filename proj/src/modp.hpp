#ifndef EC23_MODP_HPP
#define EC23_MODP_HPP

// Univariate polynomial arithmetic and factorization over F_p, p < 2^62.
// Deterministic: the equal-degree splitting uses a fixed-seed generator.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ec23::modp {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);

struct Poly {
  uint64_t p = 0;
  std::vector<uint64_t> c; // little-endian, trimmed

  Poly() = default;
  Poly(uint64_t mod, std::vector<uint64_t> coefs) : p(mod), c(std::move(coefs)) { trim(); }
  void trim();
  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  uint64_t lc() const { return c.back(); }
};

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, uint64_t s);
Poly monic(const Poly& a);
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly rem(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b); // monic
Poly derivative(const Poly& a);
Poly powmod_poly(const Poly& base, const mpz_class& e, const Poly& mod);
uint64_t eval(const Poly& a, uint64_t x);

// Irreducible factors with multiplicity, any input degree >= 1 (monic-ized).
std::vector<std::pair<Poly, int>> factor(const Poly& f);

// Roots in F_p with multiplicity.
std::vector<std::pair<uint64_t, int>> roots(const Poly& f);

} // namespace ec23::modp

#endif
