#ifndef EC23_FPOLY_HPP
#define EC23_FPOLY_HPP

// Dense univariate polynomials over F (little-endian FieldElement vectors).
// Factorization reduces to Q via the norm map: shift X -> X + s*a until the
// norm is squarefree, factor the norm, and pull factors back with gcds.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "zpoly.hpp"

namespace ec23 {

using FPoly = std::vector<FieldElement>;

void fp_trim(FPoly& f);
int fp_deg(const FPoly& f); // -1 for zero
FPoly fp_add(const FPoly& a, const FPoly& b);
FPoly fp_sub(const FPoly& a, const FPoly& b);
FPoly fp_mul(const FPoly& a, const FPoly& b);
FPoly fp_neg(FPoly a);
FPoly fp_scale(const FPoly& a, const FieldElement& c);
FPoly fp_monic(const FPoly& a);
FPoly fp_derivative(const FPoly& a);
std::pair<FPoly, FPoly> fp_divrem(const FPoly& a, const FPoly& b);
FPoly fp_rem(const FPoly& a, const FPoly& b);
FPoly fp_gcd(FPoly a, FPoly b); // monic
FieldElement fp_eval(const FPoly& f, const FieldElement& x);
// f(x + c)
FPoly fp_shift(const FPoly& f, const FieldElement& c);
std::string fp_str(const FPoly& f, const std::string& var = "X");

// Yun decomposition over F (characteristic 0)
std::vector<std::pair<FPoly, int>> fp_squarefree_decompose(const FPoly& f);

// Norm of f down to Q[X]: the resultant in t of t^3-t^2+1 against f with a
// replaced by t. Degree is 3*deg f.
QPoly fp_norm(const FPoly& f);

// Factorization into monic irreducibles times a leading unit. If max_deg >= 0
// only factors of degree <= max_deg are guaranteed split; the unsplit rest
// (all true factors of larger degree) lands in tail.
struct FFactorization {
  FieldElement lead;
  std::vector<std::pair<FPoly, int>> factors;
  std::vector<std::pair<FPoly, int>> tail;
};
FFactorization fp_factor(const FPoly& f, int max_deg = -1);

// roots in F with multiplicity, sorted
std::vector<FieldElement> roots_in_F(const FPoly& f);

std::optional<FieldElement> sqrt_in_F(const FieldElement& x);

} // namespace ec23

#endif
