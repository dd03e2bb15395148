#include "ideal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "modp.hpp"

namespace ec23 {

Row3 coord_row(const FieldElement& x) {
  if (!x.is_integral()) fail(Err::NonIntegral, "element is not in Z[a]: " + x.str());
  return {x.c0.get_num(), x.c1.get_num(), x.c2.get_num()};
}

FieldElement elem_from_row(const Row3& v) {
  return FieldElement(mpq_class(v[0]), mpq_class(v[1]), mpq_class(v[2]));
}

// coordinates of v*a, using a^3 = a^2 - 1
static Row3 row_mul_a(const Row3& v) { return {-v[2], v[0], v[1] + v[2]}; }

IdealHNF IdealHNF::one() {
  IdealHNF I;
  for (int i = 0; i < 3; i++) I.m[i][i] = 1;
  return I;
}

IdealHNF IdealHNF::from_rows(const std::vector<Row3>& rows) {
  IdealHNF I;
  if (!hnf3(rows, I.m)) fail(Err::ZeroIdeal, "rows do not span a rank-3 lattice");
  return I;
}

IdealHNF IdealHNF::from_generators(const std::vector<FieldElement>& gens) {
  std::vector<Row3> rows;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    Row3 r = coord_row(g);
    rows.push_back(r);
    r = row_mul_a(r);
    rows.push_back(r);
    rows.push_back(row_mul_a(r));
  }
  if (rows.empty()) fail(Err::ZeroIdeal, "all generators are zero");
  return from_rows(rows);
}

IdealHNF IdealHNF::principal(const FieldElement& g) { return from_generators({g}); }

mpz_class IdealHNF::norm() const { return m[0][0] * m[1][1] * m[2][2]; }

bool IdealHNF::is_one() const { return norm() == 1; }

bool IdealHNF::contains(const FieldElement& x) const {
  if (!x.is_integral()) return false;
  return in_span(m, coord_row(x));
}

Row3 IdealHNF::reduce(const Row3& v) const { return reduce_mod(m, v); }

bool IdealHNF::operator<(const IdealHNF& o) const {
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      if (m[i][j] != o.m[i][j]) return m[i][j] < o.m[i][j];
  return false;
}

std::string IdealHNF::str() const { return "(" + principal_generator(*this).str() + ")"; }

std::string IdealHNF::str_hnf() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; i++) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < 3; j++) os << (j ? "," : "") << m[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

IdealHNF IdealHNF::parse(const std::string& s0) {
  std::string s;
  for (char c : s0)
    if (!isspace((unsigned char)c)) s += c;
  if (s.empty()) fail(Err::Parse, "empty ideal");
  if (s.front() == '[') {
    // [[d,x,y],[0,d,z],[0,0,d]]
    std::vector<mpz_class> nums;
    std::string cur;
    for (char c : s) {
      if (isdigit((unsigned char)c) || c == '-' || c == '+') cur += c;
      else if (!cur.empty()) {
        nums.push_back(mpz_class(cur));
        cur.clear();
      }
    }
    if (!cur.empty()) nums.push_back(mpz_class(cur));
    if (nums.size() != 9) fail(Err::Parse, "ideal HNF needs 9 integers: " + s0);
    std::vector<Row3> rows(3);
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++) rows[i][j] = nums[3 * i + j];
    return from_rows(rows);
  }
  std::string body = s;
  if (s.front() == '(') {
    if (s.back() != ')') fail(Err::Parse, "unbalanced parens: " + s0);
    body = s.substr(1, s.size() - 2);
  }
  // split on top-level commas
  std::vector<FieldElement> gens;
  std::string cur;
  int depth = 0;
  for (char c : body) {
    if (c == '(') depth++;
    if (c == ')') depth--;
    if (c == ',' && depth == 0) {
      gens.push_back(FieldElement::parse(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) gens.push_back(FieldElement::parse(cur));
  if (gens.empty()) fail(Err::Parse, "no generators in: " + s0);
  return from_generators(gens);
}

IdealHNF ideal_mul(const IdealHNF& I, const IdealHNF& J) {
  std::vector<Row3> rows;
  rows.reserve(9);
  for (int i = 0; i < 3; i++) {
    FieldElement x = elem_from_row(I.m[i]);
    for (int j = 0; j < 3; j++) rows.push_back(coord_row(x * elem_from_row(J.m[j])));
  }
  return IdealHNF::from_rows(rows);
}

IdealHNF ideal_add(const IdealHNF& I, const IdealHNF& J) {
  std::vector<Row3> rows(I.m.begin(), I.m.end());
  rows.insert(rows.end(), J.m.begin(), J.m.end());
  return IdealHNF::from_rows(rows);
}

IdealHNF ideal_pow(const IdealHNF& I, int k) {
  if (k < 0) fail(Err::Internal, "negative ideal power");
  IdealHNF r = IdealHNF::one(), base = I;
  while (k) {
    if (k & 1) r = ideal_mul(r, base);
    k >>= 1;
    if (k) base = ideal_mul(base, base);
  }
  return r;
}

bool ideal_divides(const IdealHNF& I, const IdealHNF& J) {
  for (int i = 0; i < 3; i++)
    if (!in_span(I.m, J.m[i])) return false;
  return true;
}

bool ideal_coprime(const IdealHNF& I, const IdealHNF& J) {
  return ideal_add(I, J).is_one();
}

IdealHNF ideal_quotient(const IdealHNF& I, const IdealHNF& J) {
  FieldElement g = principal_generator(J);
  std::vector<Row3> rows;
  for (int i = 0; i < 3; i++) {
    FieldElement q = elem_from_row(I.m[i]) / g;
    if (!q.is_integral()) fail(Err::NonIntegralQuotient, "quotient is not integral");
    rows.push_back(coord_row(q));
  }
  return IdealHNF::from_rows(rows);
}

// ---- integer factorization ----------------------------------------------

static mpz_class rho_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; c++) {
    mpz_class x = 2, y = 2, d = 1, q = 1, ys = 0;
    unsigned long r = 1;
    const unsigned long m = 128;
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; i++) y = (y * y + c) % n;
      for (unsigned long k = 0; k < r && d == 1; k += m) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; i++) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
      if (r > (1ul << 24)) break; // give this c up
    }
    if (d == n) {
      // backtrack one by one
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        mpz_class diff = abs(x - ys);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (d != 1 && d != n) return d;
  }
}

static void factor_rec(const mpz_class& n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 32)) {
    out[n]++;
    return;
  }
  mpz_class d = rho_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n0) {
  mpz_class n = abs(n0);
  if (n == 0) fail(Err::Internal, "factoring zero");
  std::map<mpz_class, int> acc;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      acc[mpz_class(p)]++;
      n /= p;
    }
  }
  mpz_class p = 17;
  while (n > 1 && p * p <= n && p < 100000) {
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      acc[p]++;
      n /= p;
    }
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  if (n > 1) factor_rec(n, acc);
  return {acc.begin(), acc.end()};
}

// ---- prime ideals ---------------------------------------------------------

mpz_class PrimeIdeal::norm() const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), f);
  return r;
}

const std::vector<PrimeIdeal>& factor_rational_prime(const mpz_class& p) {
  static std::map<mpz_class, std::vector<PrimeIdeal>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  if (!mpz_probab_prime_p(p.get_mpz_t(), 32)) fail(Err::Internal, "not a prime: " + p.get_str());
  if (!p.fits_ulong_p() || p >= mpz_class("4611686018427387904"))
    fail(Err::LimitExceeded, "rational prime too large to split: " + p.get_str());
  uint64_t pp = p.get_ui();
  // x^3 - x^2 + 1 mod p
  modp::Poly f(pp, {1, 0, pp > 1 ? pp - 1 : 0, 1});
  auto fac = modp::factor(f);
  std::vector<PrimeIdeal> primes;
  int efsum = 0;
  for (auto& [g, e] : fac) {
    PrimeIdeal P;
    P.p = p;
    P.e = e;
    P.f = g.deg();
    for (auto c : g.c) P.gpoly.push_back(mpz_class(c));
    // evaluate the factor at a over Z[a]
    FieldElement ga;
    for (size_t i = g.c.size(); i-- > 0;)
      ga = ga * FieldElement::gen() + FieldElement(mpq_class(P.gpoly[i]));
    P.ideal = IdealHNF::from_generators({FieldElement(mpq_class(p)), ga});
    P.pi = principal_generator(P.ideal);
    efsum += P.e * P.f;
    primes.push_back(std::move(P));
  }
  if (efsum != 3) fail(Err::Internal, "e*f mismatch above " + p.get_str());
  std::sort(primes.begin(), primes.end(), [](const PrimeIdeal& A, const PrimeIdeal& B) {
    if (A.f != B.f) return A.f < B.f;
    return A.gpoly < B.gpoly;
  });
  return cache.emplace(p, std::move(primes)).first->second;
}

int valuation(const IdealHNF& I, const PrimeIdeal& P) {
  int v = 0;
  IdealHNF Pk = P.ideal;
  while (ideal_divides(Pk, I)) {
    v++;
    Pk = ideal_mul(Pk, P.ideal);
  }
  return v;
}

int element_valuation(const FieldElement& x, const PrimeIdeal& P) {
  if (x.is_zero()) fail(Err::Internal, "valuation of zero");
  mpz_class den = x.denominator();
  FieldElement y = x * FieldElement(mpq_class(den));
  int v = valuation(IdealHNF::principal(y), P);
  if (den != 1) {
    int vd = 0;
    mpz_class d = den;
    while (mpz_divisible_p(d.get_mpz_t(), P.p.get_mpz_t())) {
      vd++;
      d /= P.p;
    }
    v -= P.e * vd;
  }
  return v;
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const IdealHNF& I) {
  std::vector<std::pair<PrimeIdeal, int>> out;
  mpz_class N = I.norm();
  if (N == 1) return out;
  for (auto& [p, k] : factor_integer(N)) {
    int seen = 0;
    for (const PrimeIdeal& P : factor_rational_prime(p)) {
      int v = valuation(I, P);
      if (v > 0) {
        out.push_back({P, v});
        seen += v * P.f;
      }
    }
    if (seen != k) fail(Err::Internal, "norm valuation mismatch at " + p.get_str());
  }
  std::sort(out.begin(), out.end(), [](const auto& A, const auto& B) {
    if (A.first.norm() != B.first.norm()) return A.first.norm() < B.first.norm();
    return A.first.ideal < B.first.ideal;
  });
  return out;
}

// ---- principal generators --------------------------------------------------

namespace {

double t2_inner(const FieldElement& x, const FieldElement& y) {
  double s = x.embed_real() * y.embed_real();
  auto cx = x.embed_complex(), cy = y.embed_complex();
  return s + 2.0 * (cx.real() * cy.real() + cx.imag() * cy.imag());
}

// LLL-reduce the rows (delta = 0.99); dimension 3, double-precision Gram
void lll3(Mat3& b) {
  auto gram = [&](int i, int j) {
    return t2_inner(elem_from_row(b[i]), elem_from_row(b[j]));
  };
  for (int iter = 0; iter < 200; iter++) {
    // Gram-Schmidt data
    double mu[3][3] = {{0}};
    double B[3] = {0};
    for (int i = 0; i < 3; i++) {
      B[i] = gram(i, i);
      for (int j = 0; j < i; j++) {
        double s = gram(i, j);
        for (int k = 0; k < j; k++) s -= mu[i][k] * mu[j][k] * B[k];
        mu[i][j] = B[j] != 0 ? s / B[j] : 0;
        B[i] -= mu[i][j] * mu[i][j] * B[j];
      }
    }
    bool changed = false;
    // size reduction
    for (int i = 1; i < 3 && !changed; i++) {
      for (int j = i - 1; j >= 0; j--) {
        double m = mu[i][j];
        if (std::abs(m) > 0.5 + 1e-12) {
          long q = std::lround(m);
          for (int k = 0; k < 3; k++) b[i][k] -= q * b[j][k];
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;
    // Lovasz condition
    for (int i = 1; i < 3; i++) {
      if (B[i] < (0.99 - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1] - 1e-9) {
        std::swap(b[i], b[i - 1]);
        changed = true;
        break;
      }
    }
    if (!changed) return;
  }
}

} // namespace

FieldElement unit_normalize(const FieldElement& g0) {
  if (g0.is_zero()) fail(Err::Internal, "normalizing zero");
  FieldElement g = g0;
  const FieldElement a = FieldElement::gen();
  const FieldElement ainv = a.inverse();
  // T2(g*a^k) is convex in k: slide downhill to the minimum
  while (g.t2_norm() > (g * a).t2_norm()) g = g * a;
  while (g.t2_norm() > (g * ainv).t2_norm()) g = g * ainv;
  double best = g.t2_norm();
  // collect near-ties in both directions
  std::vector<FieldElement> cands;
  for (FieldElement h = g; h.t2_norm() <= best * (1 + 1e-9); h = h * a) cands.push_back(h);
  for (FieldElement h = g * ainv; h.t2_norm() <= best * (1 + 1e-9); h = h * ainv)
    cands.push_back(h);
  // sign-normalize: first nonzero coordinate positive
  for (auto& h : cands) {
    mpq_class lead = h.c0 != 0 ? h.c0 : (h.c1 != 0 ? h.c1 : h.c2);
    if (lead < 0) h = -h;
  }
  FieldElement bestel = cands[0];
  for (auto& h : cands)
    if (h.cmp(bestel) < 0) bestel = h;
  return bestel;
}

FieldElement principal_generator(const IdealHNF& I) {
  mpz_class N = I.norm();
  Mat3 b = I.m;
  lll3(b);
  for (int C = 2; C <= 32; C *= 2) {
    for (long i = -C; i <= C; i++)
      for (long j = -C; j <= C; j++)
        for (long k = -C; k <= C; k++) {
          if (i == 0 && j == 0 && k == 0) continue;
          // skip the inner box already scanned at the previous radius
          if (C > 2 && std::max({std::abs(i), std::abs(j), std::abs(k)}) <= C / 2)
            continue;
          Row3 v{i * b[0][0] + j * b[1][0] + k * b[2][0],
                 i * b[0][1] + j * b[1][1] + k * b[2][1],
                 i * b[0][2] + j * b[1][2] + k * b[2][2]};
          FieldElement x = elem_from_row(v);
          mpq_class n = x.norm();
          if (abs(n.get_num()) == N) return unit_normalize(x);
        }
  }
  fail(Err::NotPrincipal, "no generator found (unexpected: class number is 1)");
}

// ---- unit-quotient totient --------------------------------------------------

mpz_class residue_unit_count(const IdealHNF& m) {
  mpz_class count = m.norm();
  if (count == 1) return 1;
  for (auto& [P, v] : factor_ideal(m)) {
    (void)v;
    count = count / P.norm() * (P.norm() - 1);
  }
  return count;
}

mpz_class unit_image_order(const IdealHNF& m) {
  if (m.norm() == 1) return 1;
  mpz_class tot = residue_unit_count(m);
  Row3 one = m.reduce({1, 0, 0});
  Row3 minus1 = m.reduce({-1, 0, 0});
  const FieldElement a = FieldElement::gen();
  FieldElement r(mpq_class(1));
  mpz_class ord = 0;
  bool minus1_in = false;
  mpz_class cap = tot + 1;
  if (cap > 100000000) fail(Err::LimitExceeded, "unit order search too large");
  do {
    r = r * a;
    r = elem_from_row(m.reduce(coord_row(r)));
    ord++;
    if (coord_row(r) == minus1) minus1_in = true;
  } while (coord_row(r) != one && ord < cap);
  if (coord_row(r) != one) fail(Err::Internal, "unit order not found");
  bool minus1_trivial = (minus1 == one);
  return (minus1_in || minus1_trivial) ? ord : 2 * ord;
}

mpz_class phi_u(const IdealHNF& m) {
  mpz_class tot = residue_unit_count(m);
  mpz_class img = unit_image_order(m);
  if (!mpz_divisible_p(tot.get_mpz_t(), img.get_mpz_t()))
    fail(Err::Internal, "unit image does not divide the totient");
  return tot / img;
}

// ---- CRT and enumeration -----------------------------------------------------

FieldElement ideal_crt(const std::vector<std::pair<FieldElement, IdealHNF>>& congruences) {
  if (congruences.empty()) return FieldElement();
  FieldElement x = congruences[0].first;
  IdealHNF M = congruences[0].second;
  for (size_t t = 1; t < congruences.size(); t++) {
    const auto& [r, I] = congruences[t];
    std::vector<Row3> rows(M.m.begin(), M.m.end());
    rows.insert(rows.end(), I.m.begin(), I.m.end());
    auto sol = solve_in_span(rows, {1, 0, 0});
    if (!sol) fail(Err::Internal, "CRT moduli are not coprime");
    FieldElement u; // the part of 1 lying in M
    for (int i = 0; i < 3; i++)
      u = u + FieldElement(mpq_class((*sol)[i])) * elem_from_row(M.m[i]);
    FieldElement v = FieldElement(1) - u; // lies in I, = 1 mod M
    x = x * v + r * u;
    M = ideal_mul(M, I);
    x = elem_from_row(M.reduce(coord_row(x)));
  }
  return x;
}

std::vector<IdealHNF> ideal_divisors(const IdealHNF& I) {
  auto fac = factor_ideal(I);
  std::vector<IdealHNF> out{IdealHNF::one()};
  for (auto& [P, v] : fac) {
    std::vector<IdealHNF> next;
    IdealHNF Pk = IdealHNF::one();
    for (int k = 0; k <= v; k++) {
      for (const auto& D : out) next.push_back(k ? ideal_mul(D, Pk) : D);
      if (k < v) Pk = ideal_mul(Pk, P.ideal);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const IdealHNF& A, const IdealHNF& B) {
    if (A.norm() != B.norm()) return A.norm() < B.norm();
    return A < B;
  });
  return out;
}

std::vector<IdealHNF> ideals_of_norm(const mpz_class& n) {
  if (n < 1) fail(Err::Internal, "norm must be positive");
  std::vector<IdealHNF> out{IdealHNF::one()};
  for (auto& [p, k] : factor_integer(n)) {
    const auto& primes = factor_rational_prime(p);
    // exponent vectors with sum e_i * f_i = k
    std::vector<std::vector<int>> combos;
    std::vector<int> cur(primes.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int rem) {
      if (i == primes.size()) {
        if (rem == 0) combos.push_back(cur);
        return;
      }
      for (int e = 0; e * primes[i].f <= rem; e++) {
        cur[i] = e;
        rec(i + 1, rem - e * primes[i].f);
      }
      cur[i] = 0;
    };
    rec(0, k);
    if (combos.empty()) return {}; // no ideal of this norm
    std::vector<IdealHNF> next;
    for (const auto& D : out)
      for (const auto& cb : combos) {
        IdealHNF J = D;
        for (size_t i = 0; i < primes.size(); i++)
          if (cb[i]) J = ideal_mul(J, ideal_pow(primes[i].ideal, cb[i]));
        next.push_back(J);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IdealHNF> ideals_of_norm_up_to(long bound) {
  std::vector<IdealHNF> out;
  for (long n = 1; n <= bound; n++)
    for (auto& I : ideals_of_norm(n)) out.push_back(I);
  return out;
}

std::vector<IdealHNF> squarefree_ideals_up_to(long bound) {
  std::vector<IdealHNF> out;
  for (auto& I : ideals_of_norm_up_to(bound)) {
    bool sf = true;
    for (auto& [P, v] : factor_ideal(I))
      if (v > 1) { sf = false; break; }
    if (sf) out.push_back(I);
  }
  return out;
}

} // namespace ec23
