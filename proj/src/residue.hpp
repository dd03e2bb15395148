#ifndef EC23_RESIDUE_HPP
#define EC23_RESIDUE_HPP

// Residue fields Z[a]/P realized as F_p[t]/(g) with g the degree-f factor of
// x^3-x^2+1 attached to P. Elements are digit triples base p (little-endian,
// digits in [0,p)); products use 128-bit intermediates, so any residue
// characteristic p < 2^62 works. Includes light polynomial helpers over the
// residue field (enough for discriminant/gcd work in reduction types).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "field.hpp"
#include "ideal.hpp"

namespace ec23 {

using RFel = std::array<uint64_t, 3>;

class ResidueField {
public:
  explicit ResidueField(const PrimeIdeal& P);

  const PrimeIdeal& prime() const { return P_; }
  uint64_t char_p() const { return p_; }
  int degree() const { return f_; }
  const mpz_class& order() const { return q_; }
  bool order_fits() const { return q_fits_; }
  uint64_t order_u() const; // Err::LimitExceeded unless order_fits()

  RFel zero() const { return {0, 0, 0}; }
  RFel one() const { return {1, 0, 0}; }
  RFel scalar(const mpz_class& n) const;
  RFel gen_image() const { return aimg_; } // image of a

  // image of x in O/P; Err::NonIntegralAtP when v_P(x) < 0 (denominators
  // prime to P are inverted)
  RFel reduce(const FieldElement& x) const;
  FieldElement lift(const RFel& x) const; // digits as integer coordinates

  bool is_zero(const RFel& x) const { return !x[0] && !x[1] && !x[2]; }
  RFel add(RFel x, const RFel& y) const;
  RFel sub(RFel x, const RFel& y) const;
  RFel neg(RFel x) const;
  RFel mul(const RFel& x, const RFel& y) const;
  RFel sqr(const RFel& x) const { return mul(x, x); }
  RFel inv(const RFel& x) const; // Err::ZeroInversion
  RFel pow(const RFel& x, const mpz_class& e) const; // e >= 0

  // quadratic character: 0 on 0; for p = 2 returns 1 on nonzero (squares all)
  int chi(const RFel& x) const;
  std::optional<RFel> sqrt(const RFel& x) const;
  RFel pth_root(const RFel& x) const; // inverse of Frobenius

  // dense enumeration codes d0 + d1 p + d2 p^2, bijective with [0, q)
  uint64_t code(const RFel& x) const;
  RFel from_code(uint64_t c) const;

private:
  PrimeIdeal P_;
  uint64_t p_ = 0;
  int f_ = 1;
  mpz_class q_;
  bool q_fits_ = false;
  uint64_t qu_ = 0;
  std::array<uint64_t, 3> g_{};    // t^f = -(g_[f-1] t^{f-1} + ... + g_[0])
  RFel aimg_{};                    // image of a
  mpz_class halfq_;                // (q-1)/2
  uint64_t mulmod(uint64_t x, uint64_t y) const {
    return (uint64_t)((unsigned __int128)x * y % p_);
  }
  RFel nonresidue() const; // some z with chi(z) = -1, odd p
};

// cached per prime, thread-safe; references stay valid for the process
const ResidueField& residue_field(const PrimeIdeal& P);

// polynomials over a residue field, little-endian coefficient vectors
using RPoly = std::vector<RFel>;

void rp_trim(const ResidueField& K, RPoly& f);
int rp_deg(const RPoly& f);
RPoly rp_add(const ResidueField& K, const RPoly& f, const RPoly& g);
RPoly rp_sub(const ResidueField& K, const RPoly& f, const RPoly& g);
RPoly rp_mul(const ResidueField& K, const RPoly& f, const RPoly& g);
RPoly rp_monic(const ResidueField& K, RPoly f);
std::pair<RPoly, RPoly> rp_divrem(const ResidueField& K, RPoly f, const RPoly& g);
RPoly rp_gcd(const ResidueField& K, RPoly f, RPoly g); // monic (or 0)
RPoly rp_derivative(const ResidueField& K, const RPoly& f);
RFel rp_eval(const ResidueField& K, const RPoly& f, const RFel& x);

} // namespace ec23

#endif
