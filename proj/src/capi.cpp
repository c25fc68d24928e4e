// Copyright 2026 The UltraOT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ultraot.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dimension.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "transport.hpp"
#include "ultra_core.hpp"

struct uot_matrix {
  uot::DistanceMatrix v;
};
struct uot_tree {
  uot::Srt v;
};
struct uot_measure {
  uot::Measure v;
};
struct uot_plan {
  uot::TransportPlan v;
};
struct uot_embedding {
  uot::L1Embedding v;
};
struct uot_curve {
  uot::CoveringCurve v;
};
struct uot_seq {
  uot::FrostmanSeq v;
};
struct uot_report {
  uot::Report v;
};

namespace {

thread_local std::string g_error;

uot_status map_code(uot::ErrorCode code) {
  switch (code) {
    case uot::ErrorCode::kInvalidArgument: return UOT_ERR_INVALID;
    case uot::ErrorCode::kStructure: return UOT_ERR_STRUCTURE;
    case uot::ErrorCode::kUltrametric: return UOT_ERR_ULTRAMETRIC;
    case uot::ErrorCode::kSupportMismatch: return UOT_ERR_SUPPORT;
    case uot::ErrorCode::kFrostman: return UOT_ERR_FROSTMAN;
    case uot::ErrorCode::kCapExceeded: return UOT_ERR_CAP;
    case uot::ErrorCode::kIo: return UOT_ERR_IO;
    case uot::ErrorCode::kInternal: return UOT_ERR_INTERNAL;
  }
  return UOT_ERR_INTERNAL;
}

template <typename F>
uot_status guarded(F&& f) {
  try {
    f();
    g_error.clear();
    return UOT_OK;
  } catch (const uot::Error& e) {
    g_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return UOT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return UOT_ERR_INTERNAL;
  }
}

uot_status missing(const char* what) {
  g_error = std::string("missing ") + what;
  return UOT_ERR_INVALID;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string tag(const char* name) { return name ? name : "input"; }

std::vector<std::string> leaf_labels(const uot::Srt& s) {
  std::vector<std::string> out;
  out.reserve(s.leaf_vertex.size());
  for (int v : s.leaf_vertex)
    out.push_back(s.labels[static_cast<std::size_t>(v)]);
  return out;
}

uot::Report regroup_report(const uot::Srt& in, const uot::RegroupResult& res,
                           double q, double c, double sp, int depth) {
  uot::Report rep;
  rep.put("q", q);
  rep.put("c", c);
  rep.put("sp", sp);
  rep.put("depth", depth);
  rep.put("vertices", static_cast<long long>(res.tree.num_vertices()));
  rep.put("leaves", static_cast<long long>(res.tree.num_leaves()));
  rep.put("precondition_ok", res.precondition_ok);
  rep.put("child_bound", res.child_bound);
  rep.put("min_children", res.min_children);
  rep.put("child_bound_ok", res.child_bound_ok);
  rep.put("first_failure_level", res.first_failure_level);
  for (const uot::RegroupLevel& lv : res.levels) {
    std::string pre = "level" + std::to_string(lv.n) + "_";
    rep.put(pre + "lo", lv.lo);
    rep.put(pre + "hi", lv.hi);
    rep.put(pre + "groups", lv.groups);
    rep.put(pre + "min_mass", lv.min_mass);
    rep.put(pre + "max_mass", lv.max_mass);
    rep.put(pre + "window_ok", lv.window_ok);
    if (lv.min_children >= 0) rep.put(pre + "min_children", lv.min_children);
  }
  double expansion = uot::regroup_expansion(in, res.tree);
  rep.put("expansion", expansion);
  rep.failed = res.first_failure_level != 0 || !res.child_bound_ok ||
               expansion > 0.0;
  return rep;
}

}  // namespace

extern "C" {

const char* uot_last_error(void) { return g_error.c_str(); }

void uot_string_free(char* text) { delete[] text; }

uot_status uot_matrix_parse(const char* text, const char* name,
                            uot_matrix** out) {
  if (!text) return missing("text");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::istringstream in(text);
    *out = new uot_matrix{uot::read_matrix(in, tag(name))};
  });
}

uot_status uot_matrix_format(const uot_matrix* m, char** out) {
  if (!m) return missing("matrix");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::ostringstream os;
    uot::write_matrix(os, m->v);
    *out = dup_string(os.str());
  });
}

void uot_matrix_free(uot_matrix* m) { delete m; }

int uot_matrix_size(const uot_matrix* m) { return m ? m->v.size() : 0; }

uot_status uot_matrix_check_ultrametric(const uot_matrix* m, double tau,
                                        char** witness) {
  if (!m) return missing("matrix");
  if (!witness) return missing("witness pointer");
  return guarded([&] {
    auto hit = uot::check_ultrametric(m->v, tau);
    if (!hit) {
      *witness = nullptr;
      return;
    }
    const uot::UltrametricViolation& w = *hit;
    std::string msg =
        "d(" + m->v.labels[static_cast<std::size_t>(w.i)] + ", " +
        m->v.labels[static_cast<std::size_t>(w.j)] + ") = " +
        uot::fmt_double(w.dij) + " exceeds max(d(.., " +
        m->v.labels[static_cast<std::size_t>(w.k)] + ")) = max(" +
        uot::fmt_double(w.dik) + ", " + uot::fmt_double(w.djk) + ") by " +
        uot::fmt_double(w.excess);
    *witness = dup_string(msg);
  });
}

uot_status uot_matrix_to_tree(const uot_matrix* m, uot_tree** out) {
  if (!m) return missing("matrix");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = new uot_tree{uot::srt_from_matrix(m->v)}; });
}

uot_status uot_tree_parse(const char* text, const char* name,
                          uot_tree** out) {
  if (!text) return missing("text");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::istringstream in(text);
    *out = new uot_tree{uot::read_tree(in, tag(name))};
  });
}

uot_status uot_tree_format(const uot_tree* s, char** out) {
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::ostringstream os;
    uot::write_tree(os, s->v);
    *out = dup_string(os.str());
  });
}

void uot_tree_free(uot_tree* s) { delete s; }

int uot_tree_vertices(const uot_tree* s) { return s ? s->v.num_vertices() : 0; }

int uot_tree_leaves(const uot_tree* s) { return s ? s->v.num_leaves() : 0; }

double uot_tree_diameter(const uot_tree* s) { return s ? s->v.diameter() : 0; }

const char* uot_tree_leaf_label(const uot_tree* s, int leaf) {
  if (!s || leaf < 0 || leaf >= s->v.num_leaves()) return nullptr;
  return s->v.labels[static_cast<std::size_t>(
                         s->v.leaf_vertex[static_cast<std::size_t>(leaf)])]
      .c_str();
}

uot_status uot_tree_to_matrix(const uot_tree* s, uot_matrix** out) {
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = new uot_matrix{uot::matrix_from_srt(s->v)}; });
}

uot_status uot_tree_quantize(const uot_tree* s, double q, uot_tree** out) {
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = new uot_tree{uot::quantize_heights(s->v, q)}; });
}

uot_status uot_leaf_distance(const uot_tree* s, int a, int b, double* out) {
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = uot::leaf_distance(s->v, a, b); });
}

uot_status uot_measure_parse(const char* text, const char* name,
                             const uot_tree* s, int renormalize,
                             uot_measure** out) {
  if (!text) return missing("text");
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::istringstream in(text);
    *out = new uot_measure{
        uot::read_measure(in, tag(name), s->v, renormalize != 0)};
  });
}

uot_status uot_measure_format(const uot_tree* s, const uot_measure* mu,
                              char** out) {
  if (!s) return missing("tree");
  if (!mu) return missing("measure");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::ostringstream os;
    uot::write_measure(os, s->v, mu->v);
    *out = dup_string(os.str());
  });
}

void uot_measure_free(uot_measure* mu) { delete mu; }

int uot_measure_size(const uot_measure* mu) { return mu ? mu->v.size() : 0; }

uot_status uot_measure_weight(const uot_measure* mu, int leaf, double* out) {
  if (!mu) return missing("measure");
  if (!out) return missing("out pointer");
  if (leaf < 0 || leaf >= mu->v.size()) {
    g_error = "leaf ordinal out of range";
    return UOT_ERR_INVALID;
  }
  *out = mu->v.w[static_cast<std::size_t>(leaf)];
  return UOT_OK;
}

uot_status uot_measure_uniform(const uot_tree* s, uot_measure** out) {
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = new uot_measure{uot::uniform_measure(s->v)}; });
}

uot_status uot_measure_dirac(const uot_tree* s, const char* label,
                             uot_measure** out) {
  if (!s) return missing("tree");
  if (!label) return missing("label");
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_measure{uot::dirac_measure(s->v, label)}; });
}

uot_status uot_measure_random(const uot_tree* s, uint64_t seed,
                              uot_measure** out) {
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_measure{uot::random_measure(s->v, seed)}; });
}

uot_status uot_wasserstein_pp(const uot_tree* s, const uot_measure* mu,
                              const uot_measure* nu, double p, double* out) {
  if (!s) return missing("tree");
  if (!mu || !nu) return missing("measure");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = uot::wasserstein_pp(s->v, mu->v, nu->v, p); });
}

uot_status uot_wasserstein(const uot_tree* s, const uot_measure* mu,
                           const uot_measure* nu, double p, double* out) {
  if (!s) return missing("tree");
  if (!mu || !nu) return missing("measure");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = uot::wasserstein(s->v, mu->v, nu->v, p); });
}

uot_status uot_oracle_cost(const uot_matrix* m, const uot_measure* mu,
                           const uot_measure* nu, double p, int cap,
                           double* out) {
  if (!m) return missing("matrix");
  if (!mu || !nu) return missing("measure");
  if (!out) return missing("out pointer");
  return guarded([&] {
    int use_cap = cap > 0 ? cap : 64;
    *out = uot::oracle_cost(m->v, mu->v.w, nu->v.w, p, use_cap).cost_pp;
  });
}

uot_status uot_plan_compute(const uot_tree* s, const uot_measure* mu,
                            const uot_measure* nu, double p, uot_plan** out) {
  if (!s) return missing("tree");
  if (!mu || !nu) return missing("measure");
  if (!out) return missing("out pointer");
  return guarded([&] {
    *out = new uot_plan{uot::tree_optimal_plan(s->v, mu->v, nu->v, p)};
  });
}

uot_status uot_plan_format(const uot_tree* s, const uot_plan* plan,
                           char** out) {
  if (!s) return missing("tree");
  if (!plan) return missing("plan");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::ostringstream os;
    uot::write_plan(os, leaf_labels(s->v), plan->v);
    *out = dup_string(os.str());
  });
}

void uot_plan_free(uot_plan* plan) { delete plan; }

int uot_plan_entries(const uot_plan* plan) {
  return plan ? static_cast<int>(plan->v.entries.size()) : 0;
}

uot_status uot_plan_entry(const uot_plan* plan, int i, int* src, int* dst,
                          double* mass) {
  if (!plan) return missing("plan");
  if (i < 0 || i >= static_cast<int>(plan->v.entries.size())) {
    g_error = "plan entry index out of range";
    return UOT_ERR_INVALID;
  }
  const uot::PlanEntry& e = plan->v.entries[static_cast<std::size_t>(i)];
  if (src) *src = e.src;
  if (dst) *dst = e.dst;
  if (mass) *mass = e.mass;
  return UOT_OK;
}

uot_status uot_plan_cost_pp(const uot_plan* plan, double* out) {
  if (!plan) return missing("plan");
  if (!out) return missing("out pointer");
  *out = plan->v.cost_pp;
  return UOT_OK;
}

uot_status uot_embed(const uot_tree* s, const uot_measure* mu, double p,
                     uot_embedding** out) {
  if (!s) return missing("tree");
  if (!mu) return missing("measure");
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_embedding{uot::embed_l1(s->v, mu->v, p)}; });
}

void uot_embedding_free(uot_embedding* e) { delete e; }

int uot_embedding_size(const uot_embedding* e) {
  return e ? e->v.size() : 0;
}

uot_status uot_embedding_coord(const uot_embedding* e, int i, int* vertex,
                               double* coord) {
  if (!e) return missing("embedding");
  if (i < 0 || i >= e->v.size()) {
    g_error = "coordinate index out of range";
    return UOT_ERR_INVALID;
  }
  if (vertex) *vertex = e->v.vertex[static_cast<std::size_t>(i)];
  if (coord) *coord = e->v.coord[static_cast<std::size_t>(i)];
  return UOT_OK;
}

uot_status uot_embedding_l1_distance(const uot_embedding* a,
                                     const uot_embedding* b, double* out) {
  if (!a || !b) return missing("embedding");
  if (!out) return missing("out pointer");
  return guarded([&] { *out = uot::l1_distance(a->v, b->v); });
}

uot_status uot_generate_regular(int k, double q, int depth, uot_tree** out) {
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_tree{uot::regular_space(k, q, depth)}; });
}

uot_status uot_generate_smallparts(int max_vertices, uot_tree** out) {
  if (!out) return missing("out pointer");
  return guarded([&] {
    *out = new uot_tree{max_vertices > 0 ? uot::smallparts_space(max_vertices)
                                         : uot::smallparts_space()};
  });
}

uot_status uot_generate_countable(int n, uot_tree** tree_out,
                                  uot_matrix** matrix_out) {
  if (!tree_out && !matrix_out) return missing("out pointer");
  return guarded([&] {
    uot::CountableExample ce = uot::countable_example(n);
    if (tree_out) *tree_out = new uot_tree{std::move(ce.tree)};
    if (matrix_out) *matrix_out = new uot_matrix{std::move(ce.matrix)};
  });
}

uot_status uot_generate_random_ultrametric(uint64_t seed, int leaves,
                                           uot_tree** out) {
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_tree{uot::random_ultrametric(seed, leaves)}; });
}

uot_status uot_regroup(const uot_tree* s, const uot_measure* mu, double q,
                       double c, double sp, int depth, uot_tree** tree_out,
                       uot_measure** mu_out, uot_report** report_out) {
  if (!s) return missing("tree");
  if (!mu) return missing("measure");
  if (!tree_out && !mu_out && !report_out) return missing("out pointer");
  return guarded([&] {
    uot::RegroupResult res = uot::regroup(s->v, mu->v, q, c, sp, depth);
    if (report_out)
      *report_out = new uot_report{regroup_report(s->v, res, q, c, sp, depth)};
    if (mu_out) *mu_out = new uot_measure{std::move(res.mu)};
    if (tree_out) *tree_out = new uot_tree{std::move(res.tree)};
  });
}

uot_status uot_cover_tree(const uot_tree* s, const double* eps, int count,
                          uot_curve** out) {
  if (!s) return missing("tree");
  if (!eps) return missing("scales");
  if (!out) return missing("out pointer");
  if (count < 1) {
    g_error = "need at least one scale";
    return UOT_ERR_INVALID;
  }
  return guarded([&] {
    std::vector<double> scales(eps, eps + count);
    *out = new uot_curve{uot::covering_curve(s->v, scales)};
  });
}

uot_status uot_cover_matrix(const uot_matrix* m, const double* eps,
                            int count, uot_curve** out) {
  if (!m) return missing("matrix");
  if (!eps) return missing("scales");
  if (!out) return missing("out pointer");
  if (count < 1) {
    g_error = "need at least one scale";
    return UOT_ERR_INVALID;
  }
  return guarded([&] {
    std::vector<double> scales(eps, eps + count);
    *out = new uot_curve{uot::covering_curve_matrix(m->v, scales)};
  });
}

uot_status uot_curve_parse(const char* text, const char* name,
                           uot_curve** out) {
  if (!text) return missing("text");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::istringstream in(text);
    *out = new uot_curve{uot::read_curve(in, tag(name))};
  });
}

uot_status uot_curve_format(const uot_curve* c, char** out) {
  if (!c) return missing("curve");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::ostringstream os;
    uot::write_curve(os, c->v);
    *out = dup_string(os.str());
  });
}

void uot_curve_free(uot_curve* c) { delete c; }

int uot_curve_size(const uot_curve* c) { return c ? c->v.size() : 0; }

uot_status uot_curve_point(const uot_curve* c, int i, double* eps,
                           long long* count, double* log_count) {
  if (!c) return missing("curve");
  if (i < 0 || i >= c->v.size()) {
    g_error = "curve index out of range";
    return UOT_ERR_INVALID;
  }
  if (eps) *eps = c->v.eps[static_cast<std::size_t>(i)];
  if (count) *count = c->v.count[static_cast<std::size_t>(i)];
  if (log_count) *log_count = c->v.log_count[static_cast<std::size_t>(i)];
  return UOT_OK;
}

uot_status uot_minkowski_slope(const uot_curve* c, int lo, int hi,
                               double* slope, double* r2) {
  if (!c) return missing("curve");
  if (!slope) return missing("out pointer");
  return guarded([&] { *slope = uot::minkowski_slope(c->v, lo, hi, r2); });
}

uot_status uot_crit_slope(const uot_curve* c, int lo, int hi, double* slope,
                          int* degenerate, double* r2) {
  if (!c) return missing("curve");
  if (!slope) return missing("out pointer");
  return guarded([&] {
    bool degen = false;
    *slope = uot::crit_slope(c->v, lo, hi, &degen, r2);
    if (degenerate) *degenerate = degen ? 1 : 0;
  });
}

uot_status uot_banach_cube_curve(double alpha, double chat,
                                 const double* eps, int count,
                                 uot_curve** out) {
  if (!eps) return missing("scales");
  if (!out) return missing("out pointer");
  if (count < 1) {
    g_error = "need at least one scale";
    return UOT_ERR_INVALID;
  }
  return guarded([&] {
    std::vector<double> scales(eps, eps + count);
    *out = new uot_curve{uot::banach_cube_curve(alpha, chat, scales)};
  });
}

uot_status uot_banach_cube_ball_mass(double alpha, int l, const double* x,
                                     int x_count, double r,
                                     long long samples, uint64_t seed,
                                     uot_report** out) {
  if (!out) return missing("out pointer");
  if (x_count < 0 || (x_count > 0 && !x)) return missing("center");
  return guarded([&] {
    std::vector<double> center;
    if (x_count > 0) center.assign(x, x + x_count);
    uot::MassEstimate est =
        uot::banach_cube_ball_mass(alpha, l, center, r, samples, seed);
    uot::Report rep;
    rep.put("alpha", alpha);
    rep.put("l", l);
    rep.put("r", r);
    rep.put("samples", est.samples);
    rep.put("hits", est.hits);
    rep.put("mass", est.p);
    rep.put("log_mass", est.log_mass);
    rep.put("ci_log", est.ci_log);
    *out = new uot_report{std::move(rep)};
  });
}

uot_status uot_frostman_seq(const uot_tree* s, const uot_measure* mu,
                            double c1, double d2, double eps,
                            int target_len, uot_seq** out) {
  if (!s) return missing("tree");
  if (!out) return missing("out pointer");
  return guarded([&] {
    if (mu) {
      *out = new uot_seq{
          uot::greedy_frostman_sequence(s->v, mu->v, c1, d2, eps, target_len)};
    } else {
      uot::Measure uni = uot::uniform_measure(s->v);
      *out = new uot_seq{
          uot::greedy_frostman_sequence(s->v, uni, c1, d2, eps, target_len)};
    }
  });
}

void uot_seq_free(uot_seq* q) { delete q; }

int uot_seq_size(const uot_seq* q) {
  return q ? static_cast<int>(q->v.points.size()) : 0;
}

uot_status uot_seq_point(const uot_seq* q, int i, int* leaf, double* radius) {
  if (!q) return missing("sequence");
  if (i < 0 || i >= static_cast<int>(q->v.points.size())) {
    g_error = "sequence index out of range";
    return UOT_ERR_INVALID;
  }
  if (leaf) *leaf = q->v.points[static_cast<std::size_t>(i)];
  if (radius) *radius = q->v.radii[static_cast<std::size_t>(i)];
  return UOT_OK;
}

uot_status uot_experiment_lemma_eq2(int instances, uint64_t seed,
                                    uot_report** out) {
  if (!out) return missing("out pointer");
  return guarded([&] {
    *out = new uot_report{uot::experiment_lemma_eq2(instances, seed)};
  });
}

uot_status uot_experiment_embedding_isometry(int instances, uint64_t seed,
                                             uot_report** out) {
  if (!out) return missing("out pointer");
  return guarded([&] {
    *out = new uot_report{uot::experiment_embedding_isometry(instances, seed)};
  });
}

uot_status uot_experiment_sec51(int pairs, uint64_t seed, uot_report** out) {
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_report{uot::experiment_sec51(pairs, seed)}; });
}

uot_status uot_experiment_sec5alt(int pairs, uint64_t seed,
                                  uot_report** out) {
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_report{uot::experiment_sec5alt(pairs, seed)}; });
}

uot_status uot_experiment_sec61(uot_report** out) {
  if (!out) return missing("out pointer");
  return guarded([&] { *out = new uot_report{uot::experiment_sec61()}; });
}

uot_status uot_experiment_sec62(int pairs, uint64_t seed, uot_report** out) {
  if (!out) return missing("out pointer");
  return guarded(
      [&] { *out = new uot_report{uot::experiment_sec62(pairs, seed)}; });
}

uot_status uot_report_parse(const char* text, const char* name,
                            uot_report** out) {
  if (!text) return missing("text");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::istringstream in(text);
    *out = new uot_report{uot::read_report(in, tag(name))};
  });
}

uot_status uot_report_format(const uot_report* r, char** out) {
  if (!r) return missing("report");
  if (!out) return missing("out pointer");
  return guarded([&] {
    std::ostringstream os;
    uot::write_report(os, r->v);
    *out = dup_string(os.str());
  });
}

void uot_report_free(uot_report* r) { delete r; }

int uot_report_failed(const uot_report* r) {
  return r && r->v.failed ? 1 : 0;
}

int uot_report_size(const uot_report* r) {
  return r ? static_cast<int>(r->v.items.size()) : 0;
}

uot_status uot_report_item(const uot_report* r, int i, const char** key,
                           const char** value) {
  if (!r) return missing("report");
  if (i < 0 || i >= static_cast<int>(r->v.items.size())) {
    g_error = "report index out of range";
    return UOT_ERR_INVALID;
  }
  const auto& item = r->v.items[static_cast<std::size_t>(i)];
  if (key) *key = item.first.c_str();
  if (value) *value = item.second.c_str();
  return UOT_OK;
}

const char* uot_report_find(const uot_report* r, const char* key) {
  if (!r || !key) return nullptr;
  const std::string* v = r->v.find(key);
  return v ? v->c_str() : nullptr;
}

}  // extern "C"
