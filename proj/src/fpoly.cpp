#include "fpoly.hpp"

#include <algorithm>
#include <sstream>

#include "common.hpp"

namespace ec23 {

void fp_trim(FPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}
int fp_deg(const FPoly& f) { return (int)f.size() - 1; }

FPoly fp_add(const FPoly& a, const FPoly& b) {
  FPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] = r[i] + b[i];
  fp_trim(r);
  return r;
}

FPoly fp_sub(const FPoly& a, const FPoly& b) {
  FPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
  for (size_t i = 0; i < b.size(); i++) r[i] = r[i] - b[i];
  fp_trim(r);
  return r;
}

FPoly fp_mul(const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); j++) r[i + j] = r[i + j] + a[i] * b[j];
  }
  fp_trim(r);
  return r;
}

FPoly fp_neg(FPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

FPoly fp_scale(const FPoly& a, const FieldElement& c) {
  FPoly r = a;
  for (auto& x : r) x = x * c;
  fp_trim(r);
  return r;
}

FPoly fp_monic(const FPoly& a) {
  if (a.empty()) return a;
  return fp_scale(a, a.back().inverse());
}

FPoly fp_derivative(const FPoly& f) {
  if (f.size() <= 1) return {};
  FPoly r(f.size() - 1);
  for (size_t i = 1; i < f.size(); i++) r[i - 1] = f[i] * FieldElement((long)i);
  fp_trim(r);
  return r;
}

std::pair<FPoly, FPoly> fp_divrem(const FPoly& a, const FPoly& b) {
  if (b.empty()) fail(Err::Internal, "division by zero polynomial over F");
  FPoly q, r = a;
  int db = fp_deg(b);
  if (fp_deg(a) < db) return {q, r};
  q.assign(a.size() - b.size() + 1, FieldElement());
  FieldElement inv = b.back().inverse();
  for (int i = fp_deg(a); i >= db; i--) {
    if ((int)r.size() <= i || r[i].is_zero()) continue;
    FieldElement c = r[i] * inv;
    q[i - db] = c;
    for (int j = 0; j <= db; j++) r[i - db + j] = r[i - db + j] - c * b[j];
  }
  fp_trim(q);
  fp_trim(r);
  return {q, r};
}

FPoly fp_rem(const FPoly& a, const FPoly& b) { return fp_divrem(a, b).second; }

FPoly fp_gcd(FPoly a, FPoly b) {
  while (!b.empty()) {
    FPoly r = fp_rem(a, b);
    a = std::move(b);
    b = fp_monic(r); // keep coefficients tame
  }
  return fp_monic(a);
}

FieldElement fp_eval(const FPoly& f, const FieldElement& x) {
  FieldElement r;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

FPoly fp_shift(const FPoly& f, const FieldElement& c) {
  // Horner: f(x+c) built from the top
  FPoly r;
  for (size_t i = f.size(); i-- > 0;) {
    // r = r*(x+c) + f[i]
    FPoly nx(r.size() + 1);
    for (size_t k = 0; k < r.size(); k++) {
      nx[k + 1] = nx[k + 1] + r[k];
      nx[k] = nx[k] + r[k] * c;
    }
    if (nx.empty()) nx.emplace_back();
    nx[0] = nx[0] + f[i];
    r = std::move(nx);
    fp_trim(r);
  }
  return r;
}

std::string fp_str(const FPoly& f, const std::string& var) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = f.size(); i-- > 0;) {
    if (f[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << "(" << f[i].str() << ")";
    } else {
      if (!(f[i] == FieldElement(1))) os << "(" << f[i].str() << ")*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::vector<std::pair<FPoly, int>> fp_squarefree_decompose(const FPoly& f0) {
  std::vector<std::pair<FPoly, int>> out;
  FPoly f = fp_monic(f0);
  if (fp_deg(f) <= 0) return out;
  FPoly fp = fp_derivative(f);
  FPoly g = fp_gcd(f, fp);
  FPoly w = fp_divrem(f, g).first;
  FPoly y = fp_divrem(fp, g).first;
  int k = 1;
  while (fp_deg(w) > 0) {
    FPoly z = fp_sub(y, fp_derivative(w));
    if (z.empty()) {
      out.push_back({fp_monic(w), k});
      break;
    }
    FPoly gk = fp_gcd(w, z);
    if (fp_deg(gk) > 0) out.push_back({fp_monic(gk), k});
    w = fp_divrem(w, gk).first;
    y = fp_divrem(z, gk).first;
    k++;
  }
  return out;
}

QPoly fp_norm(const FPoly& f) {
  // rewrite f as B0(X) + B1(X) t + B2(X) t^2 and take Res_t(t^3 - t^2 + 1, .)
  std::vector<QPoly> B(3);
  for (int j = 0; j < 3; j++) B[j].assign(f.size(), 0);
  for (size_t i = 0; i < f.size(); i++) {
    B[0][i] = f[i].c0;
    B[1][i] = f[i].c1;
    B[2][i] = f[i].c2;
  }
  for (int j = 0; j < 3; j++) q_trim(B[j]);
  while (B.size() > 1 && B.back().empty()) B.pop_back();
  QPoly A{1, 0, -1, 1}; // t^3 - t^2 + 1
  return resultant_in_t(A, B);
}

namespace {

FPoly fpoly_from_q(const QPoly& g) {
  FPoly r(g.size());
  for (size_t i = 0; i < g.size(); i++) r[i] = FieldElement(g[i]);
  return r;
}

// factor a monic squarefree g; factors of degree <= max_deg complete
void trager(const FPoly& g, int max_deg, std::vector<FPoly>& out, std::vector<FPoly>& tail) {
  if (fp_deg(g) == 1) {
    out.push_back(g);
    return;
  }
  const FieldElement a = FieldElement::gen();
  for (int si = 0;; si++) {
    if (si > 40) fail(Err::Internal, "no squarefree norm shift found");
    long s = (si % 2) ? (si + 1) / 2 : -(si / 2); // 0, 1, -1, 2, -2, ...
    FieldElement sa = FieldElement((long)s) * a;
    FPoly gs = fp_shift(g, sa);
    QPoly N = fp_norm(gs);
    ZPoly NZ = z_from_q(N);
    if (!z_is_squarefree(NZ)) continue;
    auto fz = z_factor(NZ, max_deg < 0 ? -1 : 3 * max_deg);
    FPoly rest = gs;
    for (auto& [h, m] : fz.factors) {
      if (m != 1) fail(Err::Internal, "squarefree norm with repeated factor");
      FPoly hf = fp_gcd(rest, fpoly_from_q(q_from_z(h)));
      if (fp_deg(hf) < 1) continue;
      out.push_back(fp_shift(hf, -sa));
      rest = fp_divrem(rest, hf).first;
    }
    if (fp_deg(rest) > 0) {
      if (max_deg < 0) fail(Err::Internal, "norm factorization left a remainder");
      tail.push_back(fp_shift(rest, -sa));
    }
    return;
  }
}

} // namespace

FFactorization fp_factor(const FPoly& f0, int max_deg) {
  FFactorization R;
  R.lead = FieldElement(1);
  FPoly f = f0;
  fp_trim(f);
  if (f.empty()) fail(Err::Internal, "factoring the zero polynomial");
  R.lead = f.back();
  if (fp_deg(f) == 0) return R;
  for (auto& [sq, mult] : fp_squarefree_decompose(f)) {
    std::vector<FPoly> outs, tails;
    trager(sq, max_deg, outs, tails);
    for (auto& g : outs) R.factors.push_back({fp_monic(g), mult});
    for (auto& g : tails) R.tail.push_back({fp_monic(g), mult});
  }
  auto lexless = [](const FPoly& x, const FPoly& y) {
    if (fp_deg(x) != fp_deg(y)) return fp_deg(x) < fp_deg(y);
    for (size_t i = 0; i < x.size(); i++) {
      int c = x[i].cmp(y[i]);
      if (c) return c < 0;
    }
    return false;
  };
  std::sort(R.factors.begin(), R.factors.end(),
            [&](const auto& A, const auto& B) { return lexless(A.first, B.first); });
  return R;
}

std::vector<FieldElement> roots_in_F(const FPoly& f) {
  std::vector<FieldElement> roots;
  auto R = fp_factor(f, 1);
  for (auto& [g, m] : R.factors) {
    if (fp_deg(g) != 1) continue;
    FieldElement r = -g[0]; // monic X + g0
    for (int i = 0; i < m; i++) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(),
            [](const FieldElement& x, const FieldElement& y) { return x.cmp(y) < 0; });
  return roots;
}

std::optional<FieldElement> sqrt_in_F(const FieldElement& x) {
  if (x.is_zero()) return FieldElement();
  FPoly f{-x, FieldElement(), FieldElement(1)}; // X^2 - x
  auto roots = roots_in_F(f);
  if (roots.empty()) return std::nullopt;
  // prefer the sign-normalized root
  FieldElement r = roots.back();
  return r;
}

} // namespace ec23
