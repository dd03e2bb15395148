#ifndef EC23_DATASET_HPP
#define EC23_DATASET_HPP

// Curve dataset: canonical labels ordered by conductor norm, torsion and CM
// annotations, tab-separated persistence with exact round-trip, and the four
// summary tables (ranks, class sizes, isogeny degrees, torsion structures).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "ideal.hpp"
#include "isogeny.hpp"
#include "torsion.hpp"

namespace ec23 {

struct CurveRecord {
  std::string label;    // "<level index><class letter><curve number>"
  IdealHNF conductor;
  mpz_class norm;
  Curve ainvs;          // canonical minimal model
  TorsionStructure torsion;
  std::string class_id; // label minus the curve number
  std::optional<long> rank; // ingested annotation; never computed here
  bool cm_flag = false;
};

struct Dataset {
  std::vector<CurveRecord> records;       // label order
  std::vector<IsogenyClassGraph> classes; // one per class id, same order
  std::map<IdealHNF, long> level_index;   // conductor -> global enumeration index
};

// torsion, CM flags and labels for the curves of freshly computed classes
Dataset dataset_from_classes(const std::vector<IsogenyClassGraph>& classes);

// relabel: levels ordered by (norm, HNF), numeric part = the level's 1-based
// index among all integral ideals ordered the same way; classes lettered by
// first-curve order; curves numbered within class. Idempotent.
Dataset assign_labels(Dataset ds);

// fundamental discriminant and conductor of the CM order with this
// j-invariant, if any
std::optional<std::pair<long, long>> cm_check(const FieldElement& j);

struct TablesReport {
  struct RankRow {
    std::optional<long> rank; // nullopt = unannotated classes
    long n_isog = 0, n_isom = 0;
    mpz_class min_norm;
  };
  struct DegreeRow {
    std::string degree; // "None", "2", "3", ...
    long n_isog = 0;
    long n_isom = 0; // directed isogenies of this degree (curve incidences)
    std::string example;
    mpz_class norm;
  };
  struct TorsionRow {
    std::string torsion;
    long n_isom = 0;
    std::string example;
    mpz_class norm;
  };
  std::vector<RankRow> by_rank;
  std::map<long, long> class_sizes;
  std::vector<DegreeRow> by_degree;
  std::vector<TorsionRow> by_torsion;
  std::string str() const;
};

TablesReport emit_tables(const Dataset& ds);

// line format: label<TAB>generator<TAB>norm<TAB>[a1;a2;a3;a4;a6]<TAB>
// torsion<TAB>rank-or-empty<TAB>class_id. read(write(ds)) preserves every
// serialized field (torsion generators are not stored).
void dataset_write(const Dataset& ds, const std::string& path);
Dataset dataset_read(const std::string& path);

// DOT file; Err::IoError when the path cannot be written
void export_graph(const IsogenyClassGraph& G, const std::string& path);

} // namespace ec23

#endif
