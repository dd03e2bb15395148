#ifndef EC23_TATE_HPP
#define EC23_TATE_HPP

// Local reduction data at primes of Z[a]: Kodaira type, conductor exponent,
// and local minimal models via the full Tate loop (valid in residue
// characteristics 2 and 3; non-minimal models are rescaled by the uniformizer
// and reprocessed). Global minimal models exist since the class number is 1.

#include <string>
#include <vector>

#include "curve.hpp"
#include "ideal.hpp"

namespace ec23 {

enum class Reduction { Good, Multiplicative, Additive };

struct LocalData {
  PrimeIdeal prime;
  Curve minimal;       // locally minimal integral model (a global transform of the input)
  int vdisc = 0;       // valuation of the minimal discriminant
  int fp = 0;          // conductor exponent
  std::string kodaira; // "I0", "I3", "II", ..., "I2*", "II*"
  Reduction kind = Reduction::Good;
};

// clears denominators by scaling x, y (a curve isomorphic to E)
Curve integral_model(const Curve& E);

LocalData tate_local(const Curve& E, const PrimeIdeal& P);

// deterministic representative with a1, a3 coordinates in {0,1} and a2 in
// {-1,0,1}: the unit sweep +-a^k is centered where the discriminant orbit
// has smallest coordinates (so both presentations of one curve agree), and
// candidates are ranked by coefficient size, then lexicographically
Curve canonical_normalize(const Curve& E);

struct GlobalModel {
  IdealHNF conductor;
  Curve minimal;                 // canonical global minimal model
  std::vector<LocalData> locals; // at the bad primes, (norm, ideal) order
};

GlobalModel conductor_and_minimal_model(const Curve& E);

} // namespace ec23

#endif
