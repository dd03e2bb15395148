#ifndef EC23_H
#define EC23_H

/* C interface to the ec23 toolkit: elliptic curves over the cubic field
 * F = Q[a]/(a^3 - a^2 + 1) of discriminant -23.
 *
 * Conventions:
 *   - objects live behind opaque handles; free them with the matching
 *     *_free function (all free functions accept NULL)
 *   - every fallible call returns EC23_OK or an error code; the message for
 *     the most recent failure on the calling thread is available from
 *     ec23_last_error()
 *   - strings returned through char** are heap-allocated by the library;
 *     release them with ec23_string_free
 *
 * Text encodings:
 *   - field elements: "c0+c1*a+c2*a^2" with integer or "p/q" coordinates,
 *     e.g. "-1+2*a", "1/2*a^2"
 *   - ideals: "(generator)" or an explicit upper-triangular basis
 *     "[[d0,x,y],[0,d1,z],[0,0,d2]]"
 *   - curves: bracketed 5-tuple of field elements "[a1,a2,a3,a4,a6]"
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ec23_status {
  EC23_OK = 0,
  EC23_E_PARSE,
  EC23_E_ZERO_INVERSION,
  EC23_E_NON_INTEGRAL,
  EC23_E_ZERO_IDEAL,
  EC23_E_NON_INTEGRAL_QUOTIENT,
  EC23_E_NOT_PRINCIPAL,
  EC23_E_NON_INTEGRAL_AT_P,
  EC23_E_BAD_REDUCTION,
  EC23_E_SINGULAR_MODEL,
  EC23_E_NOT_MINIMALIZABLE,
  EC23_E_INSUFFICIENT_PRIMES,
  EC23_E_SINGULAR_PARAMETERS,
  EC23_E_UNKNOWN_FAMILY,
  EC23_E_DEGENERATE_J,
  EC23_E_NO_RATIONAL_POINT,
  EC23_E_BAD_REDUCTION_AT_ELL,
  EC23_E_NOT_A_POLYNOMIAL_IN_XR,
  EC23_E_NOT_IN_MONOID,
  EC23_E_INVALID_KERNEL,
  EC23_E_CLASS_SIZE_LIMIT,
  EC23_E_MISSING_TOTAL_DIM,
  EC23_E_DUPLICATE_LEVEL,
  EC23_E_MISSING_LEVEL,
  EC23_E_IO,
  EC23_E_LIMIT_EXCEEDED,
  EC23_E_INTERNAL
} ec23_status;

/* message for the most recent failure on this thread; never NULL */
const char* ec23_last_error(void);

/* release a string returned through a char** out-parameter */
void ec23_string_free(char* s);

typedef struct ec23_curve ec23_curve;           /* Weierstrass model over F */
typedef struct ec23_ideal ec23_ideal;           /* nonzero integral ideal of Z[a] */
typedef struct ec23_class ec23_class;           /* isogeny class graph */
typedef struct ec23_curve_list ec23_curve_list; /* immutable curve sequence */
typedef struct ec23_dataset ec23_dataset;       /* labeled curve tabulation */

/* ---- curves ---- */

ec23_status ec23_curve_parse(const char* ainvs, ec23_curve** out);
ec23_status ec23_curve_to_string(const ec23_curve* E, char** out);
void ec23_curve_free(ec23_curve* E);

/* ---- ideals ---- */

ec23_status ec23_ideal_parse(const char* text, ec23_ideal** out);
/* "(g)" with g a generator, normalized to the canonical unit multiple */
ec23_status ec23_ideal_to_string(const ec23_ideal* I, char** out);
/* absolute norm as a decimal string */
ec23_status ec23_ideal_norm(const ec23_ideal* I, char** out);
void ec23_ideal_free(ec23_ideal* I);

/* ---- point counts ---- */

/* tab-separated lines "Norm(p)\t(generator)\ta_p" over the good primes of
 * norm <= bound, in (norm, ideal) order */
ec23_status ec23_ap_table(const ec23_curve* E, long bound, char** out);

/* ---- conductors and reduction ---- */

ec23_status ec23_conductor(const ec23_curve* E, ec23_ideal** out);
ec23_status ec23_minimal_model(const ec23_curve* E, ec23_curve** out);
/* conductor, norm, canonical minimal model, and one line per bad prime:
 * "(generator)\tNorm\tkodaira\tf" with f the conductor exponent */
ec23_status ec23_reduction_report(const ec23_curve* E, char** out);

/* ---- torsion ---- */

/* first line "0", "Zm", or "Zm x Zn"; then one "(x : y)" line per generator */
ec23_status ec23_torsion_report(const ec23_curve* E, char** out);

/* ---- searches ---- */

/* strategy is one of "naive", "family", "twist", "prescribed".
 *   naive       sweep coefficient boxes [-effort, effort]^15
 *   family      sweep the torsion families in Tate normal form over
 *               parameter boxes [-effort, effort]^3
 *   twist       quadratic twists of `base` (required for this strategy,
 *               ignored otherwise) by the candidate twist classes
 *   prescribed  discriminant-class search with `effort` deepening rounds
 * Curves found with conductor exactly `n`, deduplicated canonical minimal
 * models.  If log_csv is non-NULL it receives per-candidate effort records
 * "index,w,w_norm,rounds,points,curves" (data rows only for "prescribed"). */
ec23_status ec23_search(const ec23_ideal* n, const char* strategy, long effort,
                        const ec23_curve* base, ec23_curve_list** out,
                        char** log_csv);

size_t ec23_curve_list_size(const ec23_curve_list* L);
/* borrowed reference, valid while L lives; NULL when i is out of range */
const ec23_curve* ec23_curve_list_get(const ec23_curve_list* L, size_t i);
void ec23_curve_list_free(ec23_curve_list* L);

/* ---- isogeny classes ---- */

ec23_status ec23_isogeny_class(const ec23_curve* E, ec23_class** out);
void ec23_class_free(ec23_class* G);

size_t ec23_class_vertex_count(const ec23_class* G);
size_t ec23_class_edge_count(const ec23_class* G);
/* borrowed reference; NULL when i is out of range */
const ec23_curve* ec23_class_vertex(const ec23_class* G, size_t i);
ec23_status ec23_class_edge(const ec23_class* G, size_t i, size_t* from,
                            size_t* to, long* degree);
/* conductor, norm, prime-degree support, vertex and edge listing */
ec23_status ec23_class_summary(const ec23_class* G, char** out);
/* DOT graph: degree 2 solid, degree 3 dashed, other degrees labeled */
ec23_status ec23_class_dot(const ec23_class* G, char** out);

/* ---- reducible isogeny primes ---- */

/* the finite set S = S1 union S2 bounding the primes ell with reducible
 * mod-ell representation, the nonzero B_ell values behind S2, and the
 * sieved subset S' with the eliminating witness primes */
ec23_status ec23_reducible_primes_report(const ec23_curve* E, char** out);

/* ---- dimension ledger ---- */

/* ingest a TSV of levels "generator\tnorm\ttotal_dim" and print per level:
 * "(generator)\tnorm\tc\teis_rank\tcusp_dim\tnew_dim", followed by a
 * summary of the levels with new_dim > 0 */
ec23_status ec23_ledger_report(const char* dims_path, char** out);

/* ---- datasets ---- */

ec23_status ec23_dataset_read(const char* path, ec23_dataset** out);
ec23_status ec23_dataset_write(const ec23_dataset* D, const char* path);
void ec23_dataset_free(ec23_dataset* D);

size_t ec23_dataset_size(const ec23_dataset* D);
/* rank / class-size / prime-degree / torsion tables as aligned text */
ec23_status ec23_dataset_tables(const ec23_dataset* D, char** out);
/* DOT graph for the isogeny class labeled e.g. "140a"; multi-curve classes
 * read from disk are recomputed from their first curve */
ec23_status ec23_dataset_class_dot(const ec23_dataset* D, const char* label,
                                   char** out);

#ifdef __cplusplus
}
#endif

#endif
