// C facade: opaque handles over the C++ core, one status code per Err value,
// thread-local error text.  All entry points catch everything; exceptions
// never cross the ABI.

#include "ec23.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "billerey.hpp"
#include "common.hpp"
#include "counting.hpp"
#include "curve.hpp"
#include "dataset.hpp"
#include "field.hpp"
#include "ideal.hpp"
#include "isogeny.hpp"
#include "ledger.hpp"
#include "search.hpp"
#include "tate.hpp"
#include "torsion.hpp"

struct ec23_curve {
  ec23::Curve v;
};
struct ec23_ideal {
  ec23::IdealHNF v;
};
struct ec23_class {
  ec23::IsogenyClassGraph v;
};
struct ec23_curve_list {
  std::vector<ec23::Curve> v;
};
struct ec23_dataset {
  ec23::Dataset v;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

ec23_status map_code(ec23::Err c) {
  // Err enumerators are declared in the same order as the nonzero statuses
  return static_cast<ec23_status>(static_cast<int>(c) + 1);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class Fn>
ec23_status guarded(Fn&& fn) {
  try {
    fn();
    return EC23_OK;
  } catch (const ec23::Error& e) {
    set_error(e.what());
    return map_code(e.code);
  } catch (const std::exception& e) {
    set_error(e.what());
    return EC23_E_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return EC23_E_INTERNAL;
  }
}

ec23_status need(bool ok, const char* what) {
  if (ok) return EC23_OK;
  set_error(std::string("null argument: ") + what);
  return EC23_E_INTERNAL;
}

std::string point_str(const ec23::Point& P) {
  if (P.inf) return "O";
  return "(" + P.x.str() + " : " + P.y.str() + ")";
}

std::string zpoly_str(const ec23::ZPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) {
    if (p[i] == 0) continue;
    mpz_class ac = abs(p[i]);
    if (first) {
      if (p[i] < 0) os << "-";
      first = false;
    } else {
      os << (p[i] < 0 ? " - " : " + ");
    }
    if (i == 0) {
      os << ac.get_str();
    } else {
      if (ac != 1) os << ac.get_str() << "*";
      os << (i == 1 ? "X" : "X^" + std::to_string(i));
    }
  }
  if (first) os << "0";
  return os.str();
}

} // namespace

extern "C" {

const char* ec23_last_error(void) { return g_last_error.c_str(); }

void ec23_string_free(char* s) { std::free(s); }

/* ---- curves ---- */

ec23_status ec23_curve_parse(const char* ainvs, ec23_curve** out) {
  if (auto rc = need(ainvs && out, "ec23_curve_parse")) return rc;
  return guarded([&] { *out = new ec23_curve{ec23::Curve::parse(ainvs)}; });
}

ec23_status ec23_curve_to_string(const ec23_curve* E, char** out) {
  if (auto rc = need(E && out, "ec23_curve_to_string")) return rc;
  return guarded([&] { *out = dup_string(E->v.str()); });
}

void ec23_curve_free(ec23_curve* E) { delete E; }

/* ---- ideals ---- */

ec23_status ec23_ideal_parse(const char* text, ec23_ideal** out) {
  if (auto rc = need(text && out, "ec23_ideal_parse")) return rc;
  return guarded([&] { *out = new ec23_ideal{ec23::IdealHNF::parse(text)}; });
}

ec23_status ec23_ideal_to_string(const ec23_ideal* I, char** out) {
  if (auto rc = need(I && out, "ec23_ideal_to_string")) return rc;
  return guarded([&] { *out = dup_string(I->v.str()); });
}

ec23_status ec23_ideal_norm(const ec23_ideal* I, char** out) {
  if (auto rc = need(I && out, "ec23_ideal_norm")) return rc;
  return guarded([&] { *out = dup_string(I->v.norm().get_str()); });
}

void ec23_ideal_free(ec23_ideal* I) { delete I; }

/* ---- point counts ---- */

ec23_status ec23_ap_table(const ec23_curve* E, long bound, char** out) {
  if (auto rc = need(E && out, "ec23_ap_table")) return rc;
  return guarded([&] {
    std::ostringstream os;
    for (const auto& r : ec23::ap_list(E->v, bound))
      os << r.prime.norm().get_str() << "\t" << r.prime.ideal.str() << "\t"
         << r.ap << "\n";
    *out = dup_string(os.str());
  });
}

/* ---- conductors and reduction ---- */

ec23_status ec23_conductor(const ec23_curve* E, ec23_ideal** out) {
  if (auto rc = need(E && out, "ec23_conductor")) return rc;
  return guarded([&] {
    *out = new ec23_ideal{ec23::conductor_and_minimal_model(E->v).conductor};
  });
}

ec23_status ec23_minimal_model(const ec23_curve* E, ec23_curve** out) {
  if (auto rc = need(E && out, "ec23_minimal_model")) return rc;
  return guarded([&] {
    *out = new ec23_curve{ec23::conductor_and_minimal_model(E->v).minimal};
  });
}

ec23_status ec23_reduction_report(const ec23_curve* E, char** out) {
  if (auto rc = need(E && out, "ec23_reduction_report")) return rc;
  return guarded([&] {
    auto gm = ec23::conductor_and_minimal_model(E->v);
    std::ostringstream os;
    os << "conductor\t" << gm.conductor.str() << "\n";
    os << "norm\t" << gm.conductor.norm().get_str() << "\n";
    os << "minimal_model\t" << gm.minimal.str() << "\n";
    for (const auto& L : gm.locals)
      os << "bad_prime\t" << L.prime.ideal.str() << "\t"
         << L.prime.norm().get_str() << "\t" << L.kodaira << "\t" << L.fp
         << "\n";
    *out = dup_string(os.str());
  });
}

/* ---- torsion ---- */

ec23_status ec23_torsion_report(const ec23_curve* E, char** out) {
  if (auto rc = need(E && out, "ec23_torsion_report")) return rc;
  return guarded([&] {
    auto T = ec23::torsion_subgroup(E->v);
    std::ostringstream os;
    os << T.str() << "\n";
    for (const auto& P : T.gens) os << "generator\t" << point_str(P) << "\n";
    *out = dup_string(os.str());
  });
}

/* ---- searches ---- */

ec23_status ec23_search(const ec23_ideal* n, const char* strategy, long effort,
                        const ec23_curve* base, ec23_curve_list** out,
                        char** log_csv) {
  if (auto rc = need(n && strategy && out, "ec23_search")) return rc;
  return guarded([&] {
    std::string strat = strategy;
    std::vector<ec23::Curve> found;
    std::vector<ec23::SearchLogEntry> log;
    if (strat == "naive") {
      found = ec23::naive_search(n->v, ec23::SearchBox{effort});
    } else if (strat == "family") {
      for (const auto& fam : ec23::known_families())
        for (auto& E : ec23::torsion_family_search(n->v, fam,
                                                   ec23::SearchBox{effort}))
          found.push_back(std::move(E));
    } else if (strat == "twist") {
      if (!base)
        ec23::fail(ec23::Err::Parse,
                   "twist strategy needs a base curve to twist");
      for (const auto& d : ec23::twist_candidates(base->v, n->v.norm())) {
        auto gm =
            ec23::conductor_and_minimal_model(ec23::quadratic_twist(base->v, d));
        if (gm.conductor == n->v) found.push_back(gm.minimal);
      }
    } else if (strat == "prescribed") {
      found = ec23::prescribed_reduction_search(n->v, effort,
                                                log_csv ? &log : nullptr);
    } else {
      ec23::fail(ec23::Err::Parse, "unknown strategy: " + strat);
    }
    std::sort(found.begin(), found.end(),
              [](const ec23::Curve& A, const ec23::Curve& B) {
                return ec23::Curve::cmp(A, B) < 0;
              });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    if (log_csv) {
      std::ostringstream os;
      os << "index,w,w_norm,rounds,points,curves\n";
      for (const auto& e : log)
        os << e.index << "," << e.w.str() << "," << e.w_norm.get_str() << ","
           << e.rounds << "," << e.points << "," << e.curves << "\n";
      *log_csv = dup_string(os.str());
    }
    *out = new ec23_curve_list{std::move(found)};
  });
}

// handles wrap a single value, so stored values double as borrowed handles
static_assert(std::is_standard_layout_v<ec23_curve>);

size_t ec23_curve_list_size(const ec23_curve_list* L) {
  return L ? L->v.size() : 0;
}

const ec23_curve* ec23_curve_list_get(const ec23_curve_list* L, size_t i) {
  if (!L || i >= L->v.size()) return nullptr;
  return reinterpret_cast<const ec23_curve*>(&L->v[i]);
}

void ec23_curve_list_free(ec23_curve_list* L) { delete L; }

/* ---- isogeny classes ---- */

ec23_status ec23_isogeny_class(const ec23_curve* E, ec23_class** out) {
  if (auto rc = need(E && out, "ec23_isogeny_class")) return rc;
  return guarded([&] { *out = new ec23_class{ec23::isogeny_class(E->v)}; });
}

void ec23_class_free(ec23_class* G) { delete G; }

size_t ec23_class_vertex_count(const ec23_class* G) {
  return G ? G->v.vertices.size() : 0;
}

size_t ec23_class_edge_count(const ec23_class* G) {
  return G ? G->v.edges.size() : 0;
}

const ec23_curve* ec23_class_vertex(const ec23_class* G, size_t i) {
  if (!G || i >= G->v.vertices.size()) return nullptr;
  return reinterpret_cast<const ec23_curve*>(&G->v.vertices[i]);
}

ec23_status ec23_class_edge(const ec23_class* G, size_t i, size_t* from,
                            size_t* to, long* degree) {
  if (auto rc = need(G && from && to && degree, "ec23_class_edge")) return rc;
  if (i >= G->v.edges.size()) {
    set_error("edge index out of range");
    return EC23_E_INTERNAL;
  }
  *from = static_cast<size_t>(G->v.edges[i].from);
  *to = static_cast<size_t>(G->v.edges[i].to);
  *degree = G->v.edges[i].degree;
  return EC23_OK;
}

ec23_status ec23_class_summary(const ec23_class* G, char** out) {
  if (auto rc = need(G && out, "ec23_class_summary")) return rc;
  return guarded([&] {
    std::ostringstream os;
    os << "conductor\t" << G->v.conductor.str() << "\n";
    os << "norm\t" << G->v.conductor.norm().get_str() << "\n";
    if (!G->v.label.empty()) os << "label\t" << G->v.label << "\n";
    os << "isogeny_primes";
    for (const auto& p : G->v.isogeny_primes) os << "\t" << p.get_str();
    os << "\n";
    os << "curves\t" << G->v.vertices.size() << "\n";
    for (size_t i = 0; i < G->v.vertices.size(); ++i)
      os << "curve\t" << i << "\t" << G->v.vertices[i].str() << "\n";
    os << "edges\t" << G->v.edges.size() << "\n";
    for (const auto& e : G->v.edges)
      os << "edge\t" << e.from << "\t" << e.to << "\t" << e.degree << "\n";
    *out = dup_string(os.str());
  });
}

ec23_status ec23_class_dot(const ec23_class* G, char** out) {
  if (auto rc = need(G && out, "ec23_class_dot")) return rc;
  return guarded([&] { *out = dup_string(ec23::graph_dot(G->v)); });
}

/* ---- reducible isogeny primes ---- */

ec23_status ec23_reducible_primes_report(const ec23_curve* E, char** out) {
  if (auto rc = need(E && out, "ec23_reducible_primes_report")) return rc;
  return guarded([&] {
    auto rep = ec23::reducible_primes(E->v);
    std::ostringstream os;
    os << "S1";
    for (const auto& p : rep.S1) os << "\t" << p.get_str();
    os << "\n";
    for (const auto& [ell, B] : rep.B_values)
      os << "B_" << ell << "\t" << B.get_str() << "\n";
    os << "S2";
    for (const auto& p : rep.S2) os << "\t" << p.get_str();
    os << "\n";
    os << "S";
    for (const auto& p : rep.S) os << "\t" << p.get_str();
    os << "\n";
    for (const auto& w : rep.witnesses)
      os << "eliminated\t" << w.p.get_str() << "\tby\t" << w.q.ideal.str()
         << "\t" << zpoly_str(w.Pq) << "\n";
    os << "S_prime";
    for (const auto& p : rep.S_prime) os << "\t" << p.get_str();
    os << "\n";
    *out = dup_string(os.str());
  });
}

/* ---- dimension ledger ---- */

ec23_status ec23_ledger_report(const char* dims_path, char** out) {
  if (auto rc = need(dims_path && out, "ec23_ledger_report")) return rc;
  return guarded([&] {
    auto levels = ec23::ingest_dims(dims_path);
    auto newdims = ec23::newspace_ledger(levels);
    std::ostringstream os;
    os << "level\tnorm\ttotal_dim\tc\teis_rank\tcusp_dim\tnew_dim\n";
    std::vector<const ec23::IdealHNF*> order;
    for (const auto& [lvl, rec] : levels) order.push_back(&lvl);
    std::sort(order.begin(), order.end(),
              [](const ec23::IdealHNF* A, const ec23::IdealHNF* B) {
                if (A->norm() != B->norm()) return A->norm() < B->norm();
                return *A < *B;
              });
    long unexplained = 0;
    std::ostringstream summary;
    for (const auto* lvl : order) {
      auto rec = ec23::eisenstein_and_cuspidal(levels.at(*lvl));
      long nd = newdims.at(*lvl);
      os << lvl->str() << "\t" << lvl->norm().get_str() << "\t"
         << *rec.total_dim << "\t" << rec.c << "\t" << rec.eis_rank << "\t"
         << *rec.cusp_dim << "\t" << nd << "\n";
      if (nd > 0) {
        ++unexplained;
        summary << "new\t" << lvl->str() << "\t" << lvl->norm().get_str()
                << "\t" << nd << "\n";
      }
    }
    os << "levels_with_new_dim\t" << unexplained << "\n" << summary.str();
    *out = dup_string(os.str());
  });
}

/* ---- datasets ---- */

ec23_status ec23_dataset_read(const char* path, ec23_dataset** out) {
  if (auto rc = need(path && out, "ec23_dataset_read")) return rc;
  return guarded([&] { *out = new ec23_dataset{ec23::dataset_read(path)}; });
}

ec23_status ec23_dataset_write(const ec23_dataset* D, const char* path) {
  if (auto rc = need(D && path, "ec23_dataset_write")) return rc;
  return guarded([&] { ec23::dataset_write(D->v, path); });
}

void ec23_dataset_free(ec23_dataset* D) { delete D; }

size_t ec23_dataset_size(const ec23_dataset* D) {
  return D ? D->v.records.size() : 0;
}

ec23_status ec23_dataset_tables(const ec23_dataset* D, char** out) {
  if (auto rc = need(D && out, "ec23_dataset_tables")) return rc;
  return guarded([&] { *out = dup_string(ec23::emit_tables(D->v).str()); });
}

ec23_status ec23_dataset_class_dot(const ec23_dataset* D, const char* label,
                                   char** out) {
  if (auto rc = need(D && label && out, "ec23_dataset_class_dot")) return rc;
  return guarded([&] {
    for (const auto& G : D->v.classes) {
      if (G.label != label) continue;
      if (G.edges.empty() && G.vertices.size() > 1) {
        // read back from disk without edges: rebuild the graph
        auto full = ec23::isogeny_class(G.vertices.front());
        full.label = G.label;
        *out = dup_string(ec23::graph_dot(full));
      } else {
        *out = dup_string(ec23::graph_dot(G));
      }
      return;
    }
    ec23::fail(ec23::Err::MissingLevel, std::string("no class labeled ") + label);
  });
}

} // extern "C"
