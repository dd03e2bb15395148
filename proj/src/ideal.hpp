#ifndef EC23_IDEAL_HPP
#define EC23_IDEAL_HPP

// Integral ideals of Z[a] as canonical 3x3 row-HNF lattices on {1, a, a^2}:
// arithmetic, prime factorization (index 1, so factoring x^3-x^2+1 mod p is
// valid at every p), principal generators via lattice reduction, the
// unit-quotient totient phi_u, CRT, and norm-ordered enumeration.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "linalg.hpp"

namespace ec23 {

// coordinate row of an integral element (errors out on denominators)
Row3 coord_row(const FieldElement& x);
FieldElement elem_from_row(const Row3& v);

struct IdealHNF {
  Mat3 m{}; // rows generate the ideal as a Z-module; upper triangular HNF

  static IdealHNF one();
  static IdealHNF principal(const FieldElement& g);
  static IdealHNF from_generators(const std::vector<FieldElement>& gens);
  static IdealHNF from_rows(const std::vector<Row3>& rows);

  mpz_class norm() const; // = index [Z[a] : I] = product of the diagonal
  bool is_one() const;
  bool contains(const FieldElement& x) const;
  Row3 reduce(const Row3& v) const; // canonical coset representative

  bool operator==(const IdealHNF& o) const { return m == o.m; }
  bool operator!=(const IdealHNF& o) const { return !(*this == o); }
  bool operator<(const IdealHNF& o) const; // lex over the 9 entries

  std::string str() const;     // "(g)" with the canonical generator
  std::string str_hnf() const; // [[d0,x,y],[0,d1,z],[0,0,d2]]
  // accepts "(g1,...)", a bare element, or the [[...]] row form
  static IdealHNF parse(const std::string& s);
};

IdealHNF ideal_mul(const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_add(const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_pow(const IdealHNF& I, int k);
// exact quotient; errors with NonIntegralQuotient unless J | I
IdealHNF ideal_quotient(const IdealHNF& I, const IdealHNF& J);
bool ideal_divides(const IdealHNF& I, const IdealHNF& J); // I | J, i.e. J inside I
bool ideal_coprime(const IdealHNF& I, const IdealHNF& J);

struct PrimeIdeal {
  mpz_class p;      // rational prime below
  int e = 1;        // ramification index
  int f = 1;        // residue degree
  IdealHNF ideal;
  std::vector<mpz_class> gpoly; // monic factor of x^3-x^2+1 mod p (deg f)
  FieldElement pi;  // canonical generator; doubles as a uniformizer

  mpz_class norm() const;
  bool operator==(const PrimeIdeal& o) const { return ideal == o.ideal; }
};

// primes above p, ordered by (f, gpoly lex); cached and thread-safe
const std::vector<PrimeIdeal>& factor_rational_prime(const mpz_class& p);

// (prime, exponent) pairs ordered by (norm, ideal lex)
std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const IdealHNF& I);

// canonical generator: minimal T2 over associates g*(+-a^k), ties broken by
// sign-normalized lexicographic coordinates
FieldElement principal_generator(const IdealHNF& I);
FieldElement unit_normalize(const FieldElement& g);

mpz_class residue_unit_count(const IdealHNF& m); // #(O/m)^x
mpz_class unit_image_order(const IdealHNF& m);   // #image of <-1,a> in (O/m)^x
mpz_class phi_u(const IdealHNF& m);              // their quotient

int valuation(const IdealHNF& I, const PrimeIdeal& P);
// v_P of a nonzero (possibly fractional) element
int element_valuation(const FieldElement& x, const PrimeIdeal& P);

// x = r_i (mod I_i) for pairwise coprime moduli
FieldElement ideal_crt(const std::vector<std::pair<FieldElement, IdealHNF>>& congruences);

std::vector<IdealHNF> ideal_divisors(const IdealHNF& I);     // (norm, lex) order
std::vector<IdealHNF> ideals_of_norm(const mpz_class& n);    // lex order
std::vector<IdealHNF> ideals_of_norm_up_to(long bound);      // (norm, lex) order
std::vector<IdealHNF> squarefree_ideals_up_to(long bound);   // (norm, lex) order

// sorted (prime, exponent) factorization of |n|, n != 0
std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n);

} // namespace ec23

#endif
