#ifndef EC23_CURVE_HPP
#define EC23_CURVE_HPP

// Long Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over
// F: b/c invariants, coordinate changes (u,r,s,t), isomorphism testing,
// quadratic twists, the affine group law, and x-division polynomials.

#include <optional>
#include <string>

#include "field.hpp"
#include "fpoly.hpp"

namespace ec23 {

struct Curve {
  FieldElement a1, a2, a3, a4, a6;

  bool operator==(const Curve& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
  }
  bool operator!=(const Curve& o) const { return !(*this == o); }
  int cmp(const Curve& o) const; // lexicographic on (a1,..,a6) coordinates
  bool is_integral() const;

  std::string str() const; // "[a1,a2,a3,a4,a6]"
  static Curve parse(const std::string& s); // separators ',' or ';'
};

struct Invariants {
  FieldElement b2, b4, b6, b8, c4, c6, disc;
  FieldElement j() const; // Err::SingularModel when disc = 0
};

Invariants invariants(const Curve& E);

struct Transformation {
  FieldElement u{1}, r, s, t;
  static Transformation identity() { return {}; }
};

// substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
Curve apply_transformation(const Curve& E, const Transformation& T);
// apply(E, compose(A, B)) = apply(apply(E, A), B)
Transformation compose(const Transformation& A, const Transformation& B);
Transformation invert_transformation(const Transformation& T);

// witness T with apply_transformation(E, T) = E2, if one exists over F
std::optional<Transformation> is_isomorphic(const Curve& E, const Curve& E2);

// E^d : y^2 = x^3 - 27 d^2 c4 x - 54 d^3 c6
Curve quadratic_twist(const Curve& E, const FieldElement& d);

struct Point {
  bool inf = true;
  FieldElement x, y;

  Point() = default;
  Point(FieldElement px, FieldElement py) : inf(false), x(std::move(px)), y(std::move(py)) {}
  bool operator==(const Point& o) const {
    return inf == o.inf && (inf || (x == o.x && y == o.y));
  }
};

bool on_curve(const Curve& E, const Point& P);
Point negate_point(const Curve& E, const Point& P);
Point add_points(const Curve& E, const Point& P, const Point& Q);
Point mul_point(const Curve& E, long n, const Point& P);
// exact order if it divides cap!-style search limit, else 0
long point_order(const Curve& E, const Point& P, long cap);

// psi_n = g_n(x) * (2y + a1 x + a3)^(n mod 2 == 0); g_n depends on x only
FPoly division_poly_g(const Curve& E, int n);
// (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
FPoly two_division_poly(const Curve& E);

} // namespace ec23

#endif
