#ifndef EC23_COMMON_HPP
#define EC23_COMMON_HPP

#include <stdexcept>
#include <string>

namespace ec23 {

// Error conditions surfaced across the library. The C facade maps these
// one-to-one onto ec23_status codes.
enum class Err {
  Parse,
  ZeroInversion,
  NonIntegral,
  ZeroIdeal,
  NonIntegralQuotient,
  NotPrincipal,
  NonIntegralAtP,
  BadReduction,
  SingularModel,
  NotMinimalizable,
  InsufficientPrimes,
  SingularParameters,
  UnknownFamily,
  DegenerateJ,
  NoRationalPoint,
  BadReductionAtEll,
  NotAPolynomialInXr,
  NotInMonoid,
  InvalidKernel,
  ClassSizeLimit,
  MissingTotalDim,
  DuplicateLevel,
  MissingLevel,
  IoError,
  LimitExceeded,
  Internal,
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& what) { throw Error(c, what); }

} // namespace ec23

#endif
