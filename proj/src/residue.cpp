#include "residue.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "linalg.hpp"

namespace ec23 {

ResidueField::ResidueField(const PrimeIdeal& P) : P_(P) {
  if (P.p >= mpz_class("4611686018427387904"))
    fail(Err::LimitExceeded, "residue characteristic too large");
  p_ = mpz_get_ui(P.p.get_mpz_t());
  f_ = P.f;
  mpz_ui_pow_ui(q_.get_mpz_t(), p_, f_);
  q_fits_ = q_ < mpz_class("9223372036854775807");
  if (q_fits_) qu_ = mpz_get_ui(q_.get_mpz_t());
  for (int i = 0; i < f_; i++) g_[i] = mpz_get_ui(mpz_class(P.gpoly[i] % p_).get_mpz_t());
  if (f_ == 1)
    aimg_ = {g_[0] ? p_ - g_[0] : 0, 0, 0}; // root of t + g0
  else
    aimg_ = {0, 1, 0};
  halfq_ = (q_ - 1) / 2;
}

uint64_t ResidueField::order_u() const {
  if (!q_fits_) fail(Err::LimitExceeded, "residue field too large to enumerate");
  return qu_;
}

RFel ResidueField::scalar(const mpz_class& n) const {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), P_.p.get_mpz_t());
  return {mpz_get_ui(r.get_mpz_t()), 0, 0};
}

RFel ResidueField::add(RFel x, const RFel& y) const {
  for (int i = 0; i < f_; i++) {
    x[i] += y[i];
    if (x[i] >= p_) x[i] -= p_;
  }
  return x;
}

RFel ResidueField::sub(RFel x, const RFel& y) const {
  for (int i = 0; i < f_; i++) {
    x[i] += p_ - y[i];
    if (x[i] >= p_) x[i] -= p_;
  }
  return x;
}

RFel ResidueField::neg(RFel x) const {
  for (int i = 0; i < f_; i++)
    if (x[i]) x[i] = p_ - x[i];
  return x;
}

RFel ResidueField::mul(const RFel& x, const RFel& y) const {
  if (f_ == 1) return {mulmod(x[0], y[0]), 0, 0};
  unsigned __int128 conv[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < f_; i++)
    for (int j = 0; j < f_; j++) conv[i + j] += (unsigned __int128)x[i] * y[j];
  for (int k = 2 * f_ - 2; k >= f_; k--) {
    uint64_t c = (uint64_t)(conv[k] % p_);
    if (!c) continue;
    // fold t^k = t^{k-f} * (-(g_{f-1} t^{f-1} + ... + g_0))
    for (int i = 0; i < f_; i++)
      if (g_[i]) conv[k - f_ + i] += (unsigned __int128)c * (p_ - g_[i]);
  }
  RFel r{};
  for (int i = 0; i < f_; i++) r[i] = (uint64_t)(conv[i] % p_);
  return r;
}

RFel ResidueField::pow(const RFel& x, const mpz_class& e) const {
  RFel r = one();
  if (e == 0) return r;
  size_t nb = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = nb; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, x);
  }
  return r;
}

RFel ResidueField::inv(const RFel& x) const {
  if (is_zero(x)) fail(Err::ZeroInversion, "inverse of zero residue");
  return pow(x, q_ - 2);
}

int ResidueField::chi(const RFel& x) const {
  if (is_zero(x)) return 0;
  if (p_ == 2) return 1;
  RFel r = pow(x, halfq_);
  return (r == one()) ? 1 : -1;
}

RFel ResidueField::nonresidue() const {
  // small scalars first, then elements mixing t; half of F_q* qualifies
  for (uint64_t c = 2; c < p_ && c < 200; c++) {
    RFel z{c, 0, 0};
    if (chi(z) == -1) return z;
  }
  uint64_t s = 12345;
  for (int tries = 0; tries < 10000; tries++) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    RFel z{s % p_, (s >> 17) % p_, 0};
    if (f_ == 3) z[2] = (s >> 31) % p_;
    if (f_ == 1) z[1] = 0;
    if (!is_zero(z) && chi(z) == -1) return z;
  }
  fail(Err::Internal, "no quadratic nonresidue found");
}

std::optional<RFel> ResidueField::sqrt(const RFel& x) const {
  if (is_zero(x)) return zero();
  if (p_ == 2) return pow(x, q_ / 2); // Frobenius inverse squares to x
  if (chi(x) != 1) return std::nullopt;
  // Tonelli-Shanks on F_q*
  mpz_class m = q_ - 1;
  int s = 0;
  while (mpz_even_p(m.get_mpz_t())) {
    m /= 2;
    s++;
  }
  if (s == 1) return pow(x, (q_ + 1) / 4);
  RFel z = pow(nonresidue(), m);
  RFel c = z, t = pow(x, m), r = pow(x, (m + 1) / 2);
  int e = s;
  while (!(t == one())) {
    RFel t2 = t;
    int i = 0;
    while (!(t2 == one())) {
      t2 = sqr(t2);
      i++;
    }
    RFel b = c;
    for (int j = 0; j < e - i - 1; j++) b = sqr(b);
    r = mul(r, b);
    c = sqr(b);
    t = mul(t, c);
    e = i;
  }
  return r;
}

RFel ResidueField::pth_root(const RFel& x) const { return pow(x, q_ / p_); }

uint64_t ResidueField::code(const RFel& x) const {
  order_u();
  uint64_t c = x[0];
  if (f_ >= 2) c += x[1] * p_;
  if (f_ >= 3) c += x[2] * p_ * p_;
  return c;
}

RFel ResidueField::from_code(uint64_t c) const {
  order_u();
  RFel x{};
  x[0] = c % p_;
  if (f_ >= 2) x[1] = (c / p_) % p_;
  if (f_ >= 3) x[2] = c / (p_ * p_);
  return x;
}

RFel ResidueField::reduce(const FieldElement& x) const {
  mpz_class den = x.denominator();
  FieldElement u = mpq_class(den) * x;
  Row3 uc = coord_row(u);
  if (mpz_divisible_p(den.get_mpz_t(), P_.p.get_mpz_t())) {
    // denominator hits p: solve w * p^e = u modulo P^(e*e_P + 1); a solution
    // exists iff v_P(x) >= 0, and then w mod P is the image
    int e = 0;
    mpz_class d = den;
    while (mpz_divisible_p(d.get_mpz_t(), P_.p.get_mpz_t())) {
      d /= P_.p;
      e++;
    }
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), P_.p.get_mpz_t(), e);
    IdealHNF Pk = ideal_pow(P_.ideal, e * P_.e + 1);
    std::vector<Row3> rows;
    for (int i = 0; i < 3; i++) {
      Row3 r{0, 0, 0};
      r[i] = pe;
      rows.push_back(r);
    }
    for (int i = 0; i < 3; i++) rows.push_back(Pk.m[i]);
    auto sol = solve_in_span(rows, uc);
    if (!sol) fail(Err::NonIntegralAtP, "element has a pole at the prime");
    FieldElement w = elem_from_row({(*sol)[0], (*sol)[1], (*sol)[2]});
    // remaining prime-to-p denominator still divides out
    return mul(reduce(w), inv(scalar(d)));
  }
  RFel num{};
  RFel apow = one();
  for (int i = 0; i < 3; i++) {
    num = add(num, mul(scalar(uc[i]), apow));
    apow = mul(apow, aimg_);
  }
  if (den == 1) return num;
  return mul(num, inv(scalar(den)));
}

FieldElement ResidueField::lift(const RFel& x) const {
  return FieldElement(mpz_class(x[0]), f_ >= 2 ? mpz_class(x[1]) : mpz_class(0),
                      f_ >= 3 ? mpz_class(x[2]) : mpz_class(0));
}

const ResidueField& residue_field(const PrimeIdeal& P) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<ResidueField>> cache;
  std::lock_guard<std::mutex> lk(mu);
  std::string key = P.ideal.str_hnf();
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<ResidueField>(P)).first;
  return *it->second;
}

// ---- polynomials over a residue field ----

void rp_trim(const ResidueField& K, RPoly& f) {
  while (!f.empty() && K.is_zero(f.back())) f.pop_back();
}

int rp_deg(const RPoly& f) { return (int)f.size() - 1; }

RPoly rp_add(const ResidueField& K, const RPoly& f, const RPoly& g) {
  RPoly r(std::max(f.size(), g.size()), K.zero());
  for (size_t i = 0; i < f.size(); i++) r[i] = f[i];
  for (size_t i = 0; i < g.size(); i++) r[i] = K.add(r[i], g[i]);
  rp_trim(K, r);
  return r;
}

RPoly rp_sub(const ResidueField& K, const RPoly& f, const RPoly& g) {
  RPoly r(std::max(f.size(), g.size()), K.zero());
  for (size_t i = 0; i < f.size(); i++) r[i] = f[i];
  for (size_t i = 0; i < g.size(); i++) r[i] = K.sub(r[i], g[i]);
  rp_trim(K, r);
  return r;
}

RPoly rp_mul(const ResidueField& K, const RPoly& f, const RPoly& g) {
  if (f.empty() || g.empty()) return {};
  RPoly r(f.size() + g.size() - 1, K.zero());
  for (size_t i = 0; i < f.size(); i++)
    for (size_t j = 0; j < g.size(); j++) r[i + j] = K.add(r[i + j], K.mul(f[i], g[j]));
  rp_trim(K, r);
  return r;
}

RPoly rp_monic(const ResidueField& K, RPoly f) {
  rp_trim(K, f);
  if (f.empty()) return f;
  RFel s = K.inv(f.back());
  for (auto& c : f) c = K.mul(c, s);
  return f;
}

std::pair<RPoly, RPoly> rp_divrem(const ResidueField& K, RPoly f, const RPoly& g) {
  if (g.empty()) fail(Err::ZeroInversion, "polynomial division by zero");
  int dg = rp_deg(g);
  RFel gl = K.inv(g.back());
  RPoly q;
  while (rp_deg(f) >= dg) {
    int k = rp_deg(f) - dg;
    RFel c = K.mul(f.back(), gl);
    if ((int)q.size() < k + 1) q.resize(k + 1, K.zero());
    q[k] = c;
    for (int i = 0; i <= dg; i++) f[i + k] = K.sub(f[i + k], K.mul(c, g[i]));
    rp_trim(K, f);
  }
  return {q, f};
}

RPoly rp_gcd(const ResidueField& K, RPoly f, RPoly g) {
  rp_trim(K, f);
  rp_trim(K, g);
  while (!g.empty()) {
    RPoly r = rp_divrem(K, f, g).second;
    f = g;
    g = r;
  }
  return rp_monic(K, f);
}

RPoly rp_derivative(const ResidueField& K, const RPoly& f) {
  RPoly r;
  for (size_t i = 1; i < f.size(); i++) r.push_back(K.mul(f[i], K.scalar(mpz_class(i))));
  rp_trim(K, r);
  return r;
}

RFel rp_eval(const ResidueField& K, const RPoly& f, const RFel& x) {
  RFel r = K.zero();
  for (size_t i = f.size(); i-- > 0;) r = K.add(K.mul(r, x), f[i]);
  return r;
}

} // namespace ec23
