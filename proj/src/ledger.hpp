#ifndef EC23_LEDGER_HPP
#define EC23_LEDGER_HPP

// Per-level bookkeeping that predicts where elliptic curves should exist:
// cusp counts from unit-quotient totients of divisor gcds, an Eisenstein
// rank of 2c-1, and a newspace dimension obtained by peeling one oldform
// copy per divisor of the level ratio from ingested total dimensions.

#include <map>
#include <optional>
#include <string>

#include "ideal.hpp"

namespace ec23 {

struct LevelRecord {
  IdealHNF level;
  std::optional<long> total_dim; // ingested cohomology dimension
  long c = 0;                    // cusp count
  long eis_rank = 0;             // 2c - 1
  std::optional<long> cusp_dim;  // total_dim - eis_rank
  std::optional<long> new_dim;   // after oldform removal; may flag negative
  long curve_classes_found = 0;  // external annotation
};

// number of cusps: sum over divisors d of phi_u(d + n d^{-1})
long cusp_count(const IdealHNF& n);

// fills c, eis_rank, and cusp_dim when total_dim is present
LevelRecord eisenstein_and_cuspidal(LevelRecord rec);

// new_dim(N) = cusp_dim(N) - sum over proper divisors n of
// new_dim(n) * sigma0(N/n), by norm order over the divisor lattice. Levels
// absent from the input count as zero. Negative results are kept (heuristic
// inconsistency alarms), not errors. Err::MissingTotalDim if a present level
// lacks total_dim.
std::map<IdealHNF, long> newspace_ledger(const std::map<IdealHNF, LevelRecord>& records);

// one record per line: "generator<TAB>norm<TAB>total_dim"; '#' comments and
// blank lines skipped. Err::Parse with line number; Err::DuplicateLevel.
std::map<IdealHNF, LevelRecord> ingest_dims(const std::string& path);

} // namespace ec23

#endif
