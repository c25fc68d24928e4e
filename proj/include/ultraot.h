/* Copyright 2026 The UltraOT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the ultrametric optimal transport library.
 *
 * Every object lives behind an opaque handle with a matching _free
 * function. Functions that can fail return uot_status; on anything but
 * UOT_OK the out parameters are untouched and uot_last_error() holds a
 * message for the calling thread. Strings returned through char** are
 * heap copies to release with uot_string_free; const char* returns point
 * into the handle and stay valid until it is freed.
 */

#ifndef ULTRAOT_H
#define ULTRAOT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uot_status {
  UOT_OK = 0,
  UOT_ERR_INVALID = 1,     /* bad parameter value */
  UOT_ERR_STRUCTURE = 2,   /* malformed matrix, tree, measure or plan */
  UOT_ERR_ULTRAMETRIC = 3, /* ultrametric inequality violated */
  UOT_ERR_SUPPORT = 4,     /* measure does not match the space */
  UOT_ERR_FROSTMAN = 5,    /* measure scaling precondition violated */
  UOT_ERR_CAP = 6,         /* instance exceeds a configured size cap */
  UOT_ERR_IO = 7,          /* parse or serialization failure */
  UOT_ERR_INTERNAL = 8,    /* invariant breach inside an algorithm */
} uot_status;

typedef struct uot_matrix uot_matrix;
typedef struct uot_tree uot_tree;
typedef struct uot_measure uot_measure;
typedef struct uot_plan uot_plan;
typedef struct uot_embedding uot_embedding;
typedef struct uot_curve uot_curve;
typedef struct uot_seq uot_seq;
typedef struct uot_report uot_report;

/* Message of the last failure on this thread; empty string when none. */
const char* uot_last_error(void);

void uot_string_free(char* text);

/* Distance matrices. Text format: a comma-separated label row, then one
 * row of entries per point; # starts a comment. name tags parse errors.
 */
uot_status uot_matrix_parse(const char* text, const char* name,
                            uot_matrix** out);
uot_status uot_matrix_format(const uot_matrix* m, char** out);
void uot_matrix_free(uot_matrix* m);
int uot_matrix_size(const uot_matrix* m);

/* On return *witness is NULL when the strong triangle inequality holds
 * everywhere within slack tau * diameter, else an allocated description
 * of one violating triple.
 */
uot_status uot_matrix_check_ultrametric(const uot_matrix* m, double tau,
                                        char** witness);
uot_status uot_matrix_to_tree(const uot_matrix* m, uot_tree** out);

/* Trees. Text format: one `id parent height [label]` line per vertex
 * with `-` as the root's parent. Parsing validates structure, heights
 * and labels.
 */
uot_status uot_tree_parse(const char* text, const char* name,
                          uot_tree** out);
uot_status uot_tree_format(const uot_tree* s, char** out);
void uot_tree_free(uot_tree* s);
int uot_tree_vertices(const uot_tree* s);
int uot_tree_leaves(const uot_tree* s);
double uot_tree_diameter(const uot_tree* s);

/* Label of a leaf by ordinal, NULL when out of range. */
const char* uot_tree_leaf_label(const uot_tree* s, int leaf);
uot_status uot_tree_to_matrix(const uot_tree* s, uot_matrix** out);

/* Snaps every internal height up to the grid q^-n / 2. Leaf distances
 * satisfy d <= d' < q d.
 */
uot_status uot_tree_quantize(const uot_tree* s, double q, uot_tree** out);
uot_status uot_leaf_distance(const uot_tree* s, int a, int b, double* out);

/* Probability measures on the leaves of a fixed tree, indexed by leaf
 * ordinal. Text format: label,weight lines. Weights must sum to one
 * within 1e-9 unless renormalize is nonzero.
 */
uot_status uot_measure_parse(const char* text, const char* name,
                             const uot_tree* s, int renormalize,
                             uot_measure** out);
uot_status uot_measure_format(const uot_tree* s, const uot_measure* mu,
                              char** out);
void uot_measure_free(uot_measure* mu);
int uot_measure_size(const uot_measure* mu);
uot_status uot_measure_weight(const uot_measure* mu, int leaf, double* out);
uot_status uot_measure_uniform(const uot_tree* s, uot_measure** out);
uot_status uot_measure_dirac(const uot_tree* s, const char* label,
                             uot_measure** out);

/* Random weights on the 2^-30 grid summing to one exactly. */
uot_status uot_measure_random(const uot_tree* s, uint64_t seed,
                              uot_measure** out);

/* Closed-form transport cost W_p^p and its p-th root. */
uot_status uot_wasserstein_pp(const uot_tree* s, const uot_measure* mu,
                              const uot_measure* nu, double p, double* out);
uot_status uot_wasserstein(const uot_tree* s, const uot_measure* mu,
                           const uot_measure* nu, double p, double* out);

/* Exact transport cost on an arbitrary finite metric by the
 * transportation simplex. Weights are read in matrix row order, so pair
 * measures with uot_tree_to_matrix of the tree they were built on.
 * cap bounds the support size per side; cap <= 0 means the default 64.
 */
uot_status uot_oracle_cost(const uot_matrix* m, const uot_measure* mu,
                           const uot_measure* nu, double p, int cap,
                           double* out);

/* Optimal coupling on the tree; entries are leaf ordinal pairs sorted by
 * source then target with ties resolved toward smaller labels.
 */
uot_status uot_plan_compute(const uot_tree* s, const uot_measure* mu,
                            const uot_measure* nu, double p, uot_plan** out);
uot_status uot_plan_format(const uot_tree* s, const uot_plan* plan,
                           char** out);
void uot_plan_free(uot_plan* plan);
int uot_plan_entries(const uot_plan* plan);
uot_status uot_plan_entry(const uot_plan* plan, int i, int* src, int* dst,
                          double* mass);
uot_status uot_plan_cost_pp(const uot_plan* plan, double* out);

/* Affine embedding with one coordinate per non-root vertex; the l1
 * distance between two embeddings equals W_p^p.
 */
uot_status uot_embed(const uot_tree* s, const uot_measure* mu, double p,
                     uot_embedding** out);
void uot_embedding_free(uot_embedding* e);
int uot_embedding_size(const uot_embedding* e);
uot_status uot_embedding_coord(const uot_embedding* e, int i, int* vertex,
                               double* coord);
uot_status uot_embedding_l1_distance(const uot_embedding* a,
                                     const uot_embedding* b, double* out);

/* Example spaces. regular: complete k-ary word tree of the given depth
 * with distance q^-(first disagreement). smallparts: fast-branching tree
 * with 2^n blocks at scale 2^-n; max_vertices <= 0 means the default
 * 70000. countable: comb space on n points with d(wi, wj) =
 * (1 + ln min(i,j))^-1; tree_out and matrix_out may each be NULL.
 * random: seeded tree with dyadic heights and 4..12-style leaf counts
 * chosen by the caller.
 */
uot_status uot_generate_regular(int k, double q, int depth, uot_tree** out);
uot_status uot_generate_smallparts(int max_vertices, uot_tree** out);
uot_status uot_generate_countable(int n, uot_tree** tree_out,
                                  uot_matrix** matrix_out);
uot_status uot_generate_random_ultrametric(uint64_t seed, int leaves,
                                           uot_tree** out);

/* Level-by-level branch regrouping of a Frostman measure on the grid
 * q^-n / 2 down to the given depth. Each non-NULL out receives its part:
 * the regrouped tree, the same weights on it, and a report with the
 * per-level mass windows, child counts and the distance expansion of the
 * identity map (at most zero means 1-Lipschitz).
 */
uot_status uot_regroup(const uot_tree* s, const uot_measure* mu, double q,
                       double c, double sp, int depth, uot_tree** tree_out,
                       uot_measure** mu_out, uot_report** report_out);

/* Covering numbers N(eps) over a descending scale list; exact block
 * counts on trees and ultrametric matrices. Curve text format:
 * epsilon,count,log_count rows with count `-` where it overflows.
 */
uot_status uot_cover_tree(const uot_tree* s, const double* eps, int count,
                          uot_curve** out);
uot_status uot_cover_matrix(const uot_matrix* m, const double* eps,
                            int count, uot_curve** out);
uot_status uot_curve_parse(const char* text, const char* name,
                           uot_curve** out);
uot_status uot_curve_format(const uot_curve* c, char** out);
void uot_curve_free(uot_curve* c);
int uot_curve_size(const uot_curve* c);
uot_status uot_curve_point(const uot_curve* c, int i, double* eps,
                           long long* count, double* log_count);

/* Slope of log N over log(1/eps) on the inclusive window [lo, hi]; the
 * finite-scale box dimension. r2 may be NULL.
 */
uot_status uot_minkowski_slope(const uot_curve* c, int lo, int hi,
                               double* slope, double* r2);

/* Slope of log log N over log(1/eps); *degenerate is set when log N is
 * already essentially linear there. degenerate and r2 may be NULL.
 */
uot_status uot_crit_slope(const uot_curve* c, int lo, int hi, double* slope,
                          int* degenerate, double* r2);

/* Box-cover curve of the product of intervals [0, n^-alpha] and the
 * Monte-Carlo mass of a ball in it. x may be NULL for the corner at
 * zero, else it holds x_count leading coordinates.
 */
uot_status uot_banach_cube_curve(double alpha, double chat,
                                 const double* eps, int count,
                                 uot_curve** out);
uot_status uot_banach_cube_ball_mass(double alpha, int l, const double* x,
                                     int x_count, double r,
                                     long long samples, uint64_t seed,
                                     uot_report** out);

/* Greedy separated sequence under a Frostman bound; mu NULL means the
 * uniform measure. target_len of zero runs until no leaf remains.
 */
uot_status uot_frostman_seq(const uot_tree* s, const uot_measure* mu,
                            double c1, double d2, double eps,
                            int target_len, uot_seq** out);
void uot_seq_free(uot_seq* q);
int uot_seq_size(const uot_seq* q);
uot_status uot_seq_point(const uot_seq* q, int i, int* leaf, double* radius);

/* Self-contained verification suites; each returns a report whose failed
 * flag summarizes its gates.
 */
uot_status uot_experiment_lemma_eq2(int instances, uint64_t seed,
                                    uot_report** out);
uot_status uot_experiment_embedding_isometry(int instances, uint64_t seed,
                                             uot_report** out);
uot_status uot_experiment_sec51(int pairs, uint64_t seed, uot_report** out);
uot_status uot_experiment_sec5alt(int pairs, uint64_t seed,
                                  uot_report** out);
uot_status uot_experiment_sec61(uot_report** out);
uot_status uot_experiment_sec62(int pairs, uint64_t seed, uot_report** out);

/* Ordered key=value report with a trailing failed=0|1 line. */
uot_status uot_report_parse(const char* text, const char* name,
                            uot_report** out);
uot_status uot_report_format(const uot_report* r, char** out);
void uot_report_free(uot_report* r);
int uot_report_failed(const uot_report* r);
int uot_report_size(const uot_report* r);
uot_status uot_report_item(const uot_report* r, int i, const char** key,
                           const char** value);

/* Value for a key, NULL when absent. */
const char* uot_report_find(const uot_report* r, const char* key);

#ifdef __cplusplus
}
#endif

#endif /* ULTRAOT_H */
