#ifndef EC23_FIELD_HPP
#define EC23_FIELD_HPP

// Exact arithmetic in the cubic field F = Q(a), a^3 = a^2 - 1 (disc -23).
// Elements are stored as rational coordinates on the power basis {1, a, a^2};
// the ring of integers is Z[a] and the units are generated by -1 and a.

#include <array>
#include <complex>
#include <string>

#include <gmpxx.h>

#include "common.hpp"

namespace ec23 {

struct FieldElement {
  mpq_class c0, c1, c2; // value = c0 + c1*a + c2*a^2

  FieldElement() : c0(0), c1(0), c2(0) {}
  FieldElement(long v) : c0(v), c1(0), c2(0) {}
  FieldElement(const mpq_class& q) : c0(q), c1(0), c2(0) {}
  FieldElement(mpq_class q0, mpq_class q1, mpq_class q2)
      : c0(std::move(q0)), c1(std::move(q1)), c2(std::move(q2)) {}

  static FieldElement gen() { return FieldElement(0, 1, 0); } // a

  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
  bool is_rational() const { return c1 == 0 && c2 == 0; }
  bool is_integral() const;

  // lcm of coordinate denominators
  mpz_class denominator() const;

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    return {x.c0 + y.c0, x.c1 + y.c1, x.c2 + y.c2};
  }
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    return {x.c0 - y.c0, x.c1 - y.c1, x.c2 - y.c2};
  }
  FieldElement operator-() const { return {-c0, -c1, -c2}; }
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const mpq_class& s, const FieldElement& x) {
    return {s * x.c0, s * x.c1, s * x.c2};
  }
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement& operator+=(const FieldElement& y) { *this = *this + y; return *this; }
  FieldElement& operator-=(const FieldElement& y) { *this = *this - y; return *this; }
  FieldElement& operator*=(const FieldElement& y) { *this = *this * y; return *this; }

  bool operator==(const FieldElement& y) const { return c0 == y.c0 && c1 == y.c1 && c2 == y.c2; }
  bool operator!=(const FieldElement& y) const { return !(*this == y); }

  FieldElement inverse() const; // Err::ZeroInversion on 0
  FieldElement pow(long e) const;

  // columns are the coordinates of x*1, x*a, x*a^2
  std::array<std::array<mpq_class, 3>, 3> mul_matrix() const;

  mpq_class norm() const;
  mpq_class trace() const;
  // monic char poly X^3 + t2 X^2 + t1 X + t0, returned as {t0, t1, t2}
  std::array<mpq_class, 3> char_poly() const;

  // archimedean data: one real embedding, one complex pair
  double embed_real() const;
  std::complex<double> embed_complex() const;
  double t2_norm() const; // sigma_1(x)^2 + 2|sigma_2(x)|^2

  // total order: lexicographic on (c0, c1, c2); used for canonical choices
  int cmp(const FieldElement& y) const;

  std::string str() const;
  static FieldElement parse(const std::string& text); // Err::Parse
};

// rounds each coordinate to the nearest integer (ties toward -inf)
FieldElement nearest_integral(const FieldElement& x);

} // namespace ec23

#endif
