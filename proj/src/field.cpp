#include "field.hpp"

#include <cctype>
#include <cmath>

namespace ec23 {

// roots of t^3 - t^2 + 1: one real, one conjugate complex pair
static const double kRealRoot = -0.7548776662466927600495;
static const std::complex<double> kComplexRoot(0.8774388331233463800248, 0.7448617666197442365931);

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  // reduce with a^3 = a^2 - 1, a^4 = a^2 - a - 1
  mpq_class e3 = x.c1 * y.c2 + x.c2 * y.c1;
  mpq_class e4 = x.c2 * y.c2;
  return {x.c0 * y.c0 - e3 - e4,
          x.c0 * y.c1 + x.c1 * y.c0 - e4,
          x.c0 * y.c2 + x.c1 * y.c1 + x.c2 * y.c0 + e3 + e4};
}

bool FieldElement::is_integral() const {
  return c0.get_den() == 1 && c1.get_den() == 1 && c2.get_den() == 1;
}

mpz_class FieldElement::denominator() const {
  mpz_class d = c0.get_den();
  mpz_class t;
  mpz_lcm(t.get_mpz_t(), d.get_mpz_t(), c1.get_den().get_mpz_t());
  mpz_lcm(d.get_mpz_t(), t.get_mpz_t(), c2.get_den().get_mpz_t());
  return d;
}

std::array<std::array<mpq_class, 3>, 3> FieldElement::mul_matrix() const {
  FieldElement xa = *this * gen();
  FieldElement xa2 = xa * gen();
  return {{{c0, xa.c0, xa2.c0}, {c1, xa.c1, xa2.c1}, {c2, xa.c2, xa2.c2}}};
}

mpq_class FieldElement::norm() const {
  auto m = mul_matrix();
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
       - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
       + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

mpq_class FieldElement::trace() const {
  // tr(1) = 3, tr(a) = 1, tr(a^2) = e1^2 - 2 e2 = 1
  return 3 * c0 + c1 + c2;
}

std::array<mpq_class, 3> FieldElement::char_poly() const {
  auto m = mul_matrix();
  mpq_class tr = m[0][0] + m[1][1] + m[2][2];
  mpq_class minors = m[0][0] * m[1][1] - m[0][1] * m[1][0]
                   + m[0][0] * m[2][2] - m[0][2] * m[2][0]
                   + m[1][1] * m[2][2] - m[1][2] * m[2][1];
  mpq_class det = norm();
  return {-det, minors, -tr};
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(Err::ZeroInversion, "inverse of zero");
  // x * (x^2 + t2*x + t1) = -t0 with char poly X^3 + t2 X^2 + t1 X + t0
  auto cp = char_poly();
  FieldElement x2 = *this * *this;
  FieldElement num = x2 + cp[2] * *this + FieldElement(cp[1]);
  mpq_class scale = -1 / cp[0];
  return scale * num;
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
  return x * y.inverse();
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -(unsigned long)e : (unsigned long)e;
  FieldElement r(1);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

double FieldElement::embed_real() const {
  double t = kRealRoot;
  return c0.get_d() + c1.get_d() * t + c2.get_d() * t * t;
}

std::complex<double> FieldElement::embed_complex() const {
  std::complex<double> t = kComplexRoot;
  return std::complex<double>(c0.get_d()) + std::complex<double>(c1.get_d()) * t
       + std::complex<double>(c2.get_d()) * t * t;
}

double FieldElement::t2_norm() const {
  double r = embed_real();
  return r * r + 2.0 * std::norm(embed_complex());
}

int FieldElement::cmp(const FieldElement& y) const {
  int c = ::cmp(c0, y.c0);
  if (c) return c;
  c = ::cmp(c1, y.c1);
  if (c) return c;
  return ::cmp(c2, y.c2);
}

FieldElement nearest_integral(const FieldElement& x) {
  auto nr = [](const mpq_class& q) {
    mpz_class fl, num = q.get_num() * 2 + q.get_den(), den = q.get_den() * 2;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return fl;
  };
  return {mpq_class(nr(x.c0)), mpq_class(nr(x.c1)), mpq_class(nr(x.c2))};
}

// ---- printing / parsing ------------------------------------------------

static void append_coef_term(std::string& out, const mpq_class& c, int pw) {
  if (c == 0) return;
  mpq_class abs = c < 0 ? mpq_class(-c) : c;
  bool neg = c < 0;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? "-" : "+";
  }
  if (pw == 0) {
    out += abs.get_str();
  } else {
    if (abs != 1) {
      out += abs.get_str();
      out += "*";
    }
    out += pw == 1 ? "a" : "a^2";
  }
}

std::string FieldElement::str() const {
  std::string out;
  append_coef_term(out, c0, 0);
  append_coef_term(out, c1, 1);
  append_coef_term(out, c2, 2);
  if (out.empty()) out = "0";
  return out;
}

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;
  explicit Parser(const std::string& str) : s(str) {}

  void skip_ws() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
  bool eof() { skip_ws(); return i >= s.size(); }
  char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }

  mpz_class read_int() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i == start) fail(Err::Parse, "expected digits in '" + s + "'");
    return mpz_class(s.substr(start, i - start));
  }

  // term := [coef] ['*'] ['a' ['^' pow]]   with coef = int ['/' int]
  void read_term(int sign, FieldElement& acc) {
    mpq_class coef = 1;
    bool saw_coef = false;
    if (std::isdigit((unsigned char)peek())) {
      mpz_class num = read_int();
      mpz_class den = 1;
      if (peek() == '/') {
        ++i;
        den = read_int();
        if (den == 0) fail(Err::Parse, "zero denominator in '" + s + "'");
      }
      coef = mpq_class(num, den);
      coef.canonicalize();
      saw_coef = true;
    }
    int pw = 0;
    if (peek() == '*') {
      ++i;
      if (peek() != 'a') fail(Err::Parse, "expected 'a' after '*' in '" + s + "'");
    }
    if (peek() == 'a') {
      ++i;
      pw = 1;
      if (peek() == '^') {
        ++i;
        mpz_class e = read_int();
        if (e == 1) pw = 1;
        else if (e == 2) pw = 2;
        else fail(Err::Parse, "powers of a above 2 not in canonical form: '" + s + "'");
      }
    } else if (!saw_coef) {
      fail(Err::Parse, "empty term in '" + s + "'");
    }
    if (sign < 0) coef = -coef;
    if (pw == 0) acc.c0 += coef;
    else if (pw == 1) acc.c1 += coef;
    else acc.c2 += coef;
  }

  FieldElement run() {
    FieldElement acc;
    bool first = true;
    while (!eof()) {
      int sign = 1;
      char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++i;
      } else if (!first) {
        fail(Err::Parse, "expected '+' or '-' in '" + s + "'");
      }
      read_term(sign, acc);
      first = false;
    }
    if (first) fail(Err::Parse, "empty field element");
    return acc;
  }
};

} // namespace

FieldElement FieldElement::parse(const std::string& text) {
  Parser p(text);
  return p.run();
}

} // namespace ec23
