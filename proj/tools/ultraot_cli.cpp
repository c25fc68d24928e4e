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

// Batch front-end over the shared library: generators, conversions,
// transport computations, dimension estimators and experiment suites.
// Exit codes: 0 success, 1 usage, 2 validation failure, 3 tolerance
// breach. `-` names stdin or stdout.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ultraot.h"

namespace {

struct Exit {
  int code;
};

template <class T, void (*F)(T*)>
struct Deleter {
  void operator()(T* p) const { F(p); }
};
using MatrixPtr = std::unique_ptr<uot_matrix, Deleter<uot_matrix, uot_matrix_free>>;
using TreePtr = std::unique_ptr<uot_tree, Deleter<uot_tree, uot_tree_free>>;
using MeasurePtr =
    std::unique_ptr<uot_measure, Deleter<uot_measure, uot_measure_free>>;
using PlanPtr = std::unique_ptr<uot_plan, Deleter<uot_plan, uot_plan_free>>;
using EmbeddingPtr =
    std::unique_ptr<uot_embedding, Deleter<uot_embedding, uot_embedding_free>>;
using CurvePtr = std::unique_ptr<uot_curve, Deleter<uot_curve, uot_curve_free>>;
using SeqPtr = std::unique_ptr<uot_seq, Deleter<uot_seq, uot_seq_free>>;
using ReportPtr =
    std::unique_ptr<uot_report, Deleter<uot_report, uot_report_free>>;
using TextPtr = std::unique_ptr<char, Deleter<char, uot_string_free>>;

// Library failures map onto the exit codes: bad parameters are usage
// errors, everything else is a validation failure of the input.
void check(uot_status st) {
  if (st == UOT_OK) return;
  std::cerr << "error: " << uot_last_error() << "\n";
  throw Exit{st == UOT_ERR_INVALID ? 1 : 2};
}

std::string fmt(double x) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << path << "\n";
      throw Exit{2};
    }
    ss << f.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Exit{2};
  }
  f << text;
}

TreePtr load_tree(const std::string& path) {
  std::string text = read_input(path);
  uot_tree* s = nullptr;
  check(uot_tree_parse(text.c_str(), path.c_str(), &s));
  return TreePtr(s);
}

MatrixPtr load_matrix(const std::string& path) {
  std::string text = read_input(path);
  uot_matrix* m = nullptr;
  check(uot_matrix_parse(text.c_str(), path.c_str(), &m));
  return MatrixPtr(m);
}

// Space input: a tree file, or a matrix file converted through its tree.
TreePtr load_space(const std::string& tree_path,
                   const std::string& matrix_path) {
  if (!tree_path.empty()) return load_tree(tree_path);
  MatrixPtr m = load_matrix(matrix_path);
  uot_tree* s = nullptr;
  check(uot_matrix_to_tree(m.get(), &s));
  return TreePtr(s);
}

MeasurePtr load_measure(const uot_tree* s, const std::string& path,
                        const std::string& dirac, bool renormalize) {
  uot_measure* mu = nullptr;
  if (!dirac.empty()) {
    check(uot_measure_dirac(s, dirac.c_str(), &mu));
  } else {
    std::string text = read_input(path);
    check(uot_measure_parse(text.c_str(), path.c_str(), s,
                            renormalize ? 1 : 0, &mu));
  }
  return MeasurePtr(mu);
}

std::string format_tree(const uot_tree* s) {
  char* text = nullptr;
  check(uot_tree_format(s, &text));
  return std::string(TextPtr(text).get());
}

std::string format_report(const uot_report* r) {
  char* text = nullptr;
  check(uot_report_format(r, &text));
  return std::string(TextPtr(text).get());
}

int oracle_cap_from_env() {
  const char* env = std::getenv("ULTRA_OT_CAP");
  if (!env) return 0;
  return std::atoi(env);
}

struct SpaceOpts {
  std::string tree;
  std::string matrix;
};

void add_space_options(CLI::App* sub, SpaceOpts& opts) {
  auto* t = sub->add_option("--tree", opts.tree, "tree file, - for stdin");
  auto* m = sub->add_option("--matrix", opts.matrix, "distance matrix CSV");
  t->excludes(m);
  m->excludes(t);
}

void need_space(const SpaceOpts& opts) {
  if (opts.tree.empty() && opts.matrix.empty()) {
    std::cerr << "error: need --tree or --matrix\n";
    throw Exit{1};
  }
}

struct MeasureOpts {
  std::string file;
  std::string dirac;
};

void add_measure_options(CLI::App* sub, const std::string& flag,
                         const std::string& dirac_flag, MeasureOpts& opts) {
  auto* f = sub->add_option(flag, opts.file, "measure CSV (label,weight)");
  auto* d = sub->add_option(dirac_flag, opts.dirac,
                            "unit mass at one labeled point");
  f->excludes(d);
  d->excludes(f);
}

void need_measure(const MeasureOpts& opts, const std::string& flag) {
  if (opts.file.empty() && opts.dirac.empty()) {
    std::cerr << "error: need " << flag << "\n";
    throw Exit{1};
  }
}

int run_validate(const SpaceOpts& space, double tau) {
  need_space(space);
  std::ostringstream out;
  if (!space.matrix.empty()) {
    MatrixPtr m = load_matrix(space.matrix);
    out << "points=" << uot_matrix_size(m.get()) << "\n";
    char* witness = nullptr;
    check(uot_matrix_check_ultrametric(m.get(), tau, &witness));
    if (witness) {
      TextPtr guard(witness);
      out << "ultrametric=0\nwitness=" << guard.get() << "\n";
      std::cout << out.str();
      return 2;
    }
    out << "ultrametric=1\n";
  } else {
    TreePtr s = load_tree(space.tree);
    out << "vertices=" << uot_tree_vertices(s.get()) << "\n"
        << "leaves=" << uot_tree_leaves(s.get()) << "\n"
        << "diameter=" << fmt(uot_tree_diameter(s.get())) << "\n";
  }
  std::cout << out.str();
  return 0;
}

int run_tree(const SpaceOpts& space, const std::string& out_path) {
  need_space(space);
  if (!space.matrix.empty()) {
    MatrixPtr m = load_matrix(space.matrix);
    uot_tree* s = nullptr;
    check(uot_matrix_to_tree(m.get(), &s));
    TreePtr guard(s);
    write_output(out_path, format_tree(s));
  } else {
    TreePtr s = load_tree(space.tree);
    uot_matrix* m = nullptr;
    check(uot_tree_to_matrix(s.get(), &m));
    MatrixPtr guard(m);
    char* text = nullptr;
    check(uot_matrix_format(m, &text));
    write_output(out_path, TextPtr(text).get());
  }
  return 0;
}

int run_wp(const SpaceOpts& space, const MeasureOpts& mu_opts,
           const MeasureOpts& nu_opts, double p, bool oracle, int cap,
           bool renormalize) {
  need_space(space);
  need_measure(mu_opts, "--mu or --dirac-mu");
  need_measure(nu_opts, "--nu or --dirac-nu");
  TreePtr s = load_space(space.tree, space.matrix);
  MeasurePtr mu = load_measure(s.get(), mu_opts.file, mu_opts.dirac, renormalize);
  MeasurePtr nu = load_measure(s.get(), nu_opts.file, nu_opts.dirac, renormalize);
  double wpp = 0, w = 0;
  check(uot_wasserstein_pp(s.get(), mu.get(), nu.get(), p, &wpp));
  check(uot_wasserstein(s.get(), mu.get(), nu.get(), p, &w));
  std::cout << "wp_pp=" << fmt(wpp) << "\nwp=" << fmt(w) << "\n";
  if (!oracle) return 0;
  uot_matrix* mm = nullptr;
  check(uot_tree_to_matrix(s.get(), &mm));
  MatrixPtr guard(mm);
  if (cap <= 0) cap = oracle_cap_from_env();
  double oc = 0;
  check(uot_oracle_cost(mm, mu.get(), nu.get(), p, cap, &oc));
  double diff = std::abs(wpp - oc);
  bool ok = diff <= 1e-8 * std::max(1.0, oc);
  std::cout << "oracle_pp=" << fmt(oc) << "\nabs_diff=" << fmt(diff)
            << "\noracle_ok=" << (ok ? 1 : 0) << "\n";
  return ok ? 0 : 3;
}

int run_embed(const SpaceOpts& space, const MeasureOpts& mu_opts, double p,
              bool renormalize, const std::string& out_path) {
  need_space(space);
  need_measure(mu_opts, "--mu or --dirac-mu");
  TreePtr s = load_space(space.tree, space.matrix);
  MeasurePtr mu = load_measure(s.get(), mu_opts.file, mu_opts.dirac, renormalize);
  uot_embedding* e = nullptr;
  check(uot_embed(s.get(), mu.get(), p, &e));
  EmbeddingPtr guard(e);
  std::ostringstream out;
  out << "vertex,coord\n";
  for (int i = 0; i < uot_embedding_size(e); ++i) {
    int vertex = 0;
    double coord = 0;
    check(uot_embedding_coord(e, i, &vertex, &coord));
    out << vertex << "," << fmt(coord) << "\n";
  }
  write_output(out_path, out.str());
  return 0;
}

int run_plan(const SpaceOpts& space, const MeasureOpts& mu_opts,
             const MeasureOpts& nu_opts, double p, bool renormalize,
             const std::string& out_path) {
  need_space(space);
  need_measure(mu_opts, "--mu or --dirac-mu");
  need_measure(nu_opts, "--nu or --dirac-nu");
  TreePtr s = load_space(space.tree, space.matrix);
  MeasurePtr mu = load_measure(s.get(), mu_opts.file, mu_opts.dirac, renormalize);
  MeasurePtr nu = load_measure(s.get(), nu_opts.file, nu_opts.dirac, renormalize);
  uot_plan* plan = nullptr;
  check(uot_plan_compute(s.get(), mu.get(), nu.get(), p, &plan));
  PlanPtr guard(plan);
  char* text = nullptr;
  check(uot_plan_format(s.get(), plan, &text));
  write_output(out_path, TextPtr(text).get());
  return 0;
}

int run_quantize(const std::string& tree_path, double q,
                 const std::string& out_path) {
  TreePtr s = load_tree(tree_path);
  uot_tree* snapped = nullptr;
  check(uot_tree_quantize(s.get(), q, &snapped));
  TreePtr guard(snapped);
  write_output(out_path, format_tree(snapped));
  return 0;
}

int run_regroup(const std::string& tree_path, const std::string& mu_path,
                double q, double c, double sp, int depth,
                const std::string& out_tree, const std::string& out_measure) {
  TreePtr s = load_tree(tree_path);
  MeasurePtr mu = load_measure(s.get(), mu_path, "", false);
  uot_tree* rtree = nullptr;
  uot_measure* rmu = nullptr;
  uot_report* rep = nullptr;
  check(uot_regroup(s.get(), mu.get(), q, c, sp, depth, &rtree, &rmu, &rep));
  TreePtr tguard(rtree);
  MeasurePtr mguard(rmu);
  ReportPtr rguard(rep);
  if (!out_tree.empty()) write_output(out_tree, format_tree(rtree));
  if (!out_measure.empty()) {
    char* text = nullptr;
    check(uot_measure_format(rtree, rmu, &text));
    write_output(out_measure, TextPtr(text).get());
  }
  std::cout << format_report(rep);
  return 0;
}

std::vector<double> pow2_scales(int lo, int hi) {
  if (lo < 1 || hi < lo) {
    std::cerr << "error: bad power-of-two scale range\n";
    throw Exit{1};
  }
  std::vector<double> out;
  for (int n = lo; n <= hi; ++n) out.push_back(std::ldexp(1.0, -n));
  return out;
}

int run_cover(const SpaceOpts& space, std::vector<double> scales, int pow2,
              const std::string& out_path) {
  need_space(space);
  if (scales.empty() && pow2 <= 0) {
    std::cerr << "error: need --scales or --pow2\n";
    throw Exit{1};
  }
  if (scales.empty()) scales = pow2_scales(1, pow2);
  uot_curve* curve = nullptr;
  if (!space.tree.empty()) {
    TreePtr s = load_tree(space.tree);
    check(uot_cover_tree(s.get(), scales.data(),
                         static_cast<int>(scales.size()), &curve));
  } else {
    MatrixPtr m = load_matrix(space.matrix);
    check(uot_cover_matrix(m.get(), scales.data(),
                           static_cast<int>(scales.size()), &curve));
  }
  CurvePtr guard(curve);
  char* text = nullptr;
  check(uot_curve_format(curve, &text));
  write_output(out_path, TextPtr(text).get());
  return 0;
}

CurvePtr load_curve(const std::string& path) {
  std::string text = read_input(path);
  uot_curve* c = nullptr;
  check(uot_curve_parse(text.c_str(), path.c_str(), &c));
  return CurvePtr(c);
}

int run_dim(const std::string& curve_path, int lo, int hi) {
  CurvePtr c = load_curve(curve_path);
  if (hi < 0) hi = uot_curve_size(c.get()) - 1;
  double slope = 0, r2 = 0;
  check(uot_minkowski_slope(c.get(), lo, hi, &slope, &r2));
  std::cout << "slope=" << fmt(slope) << "\nr2=" << fmt(r2) << "\n";
  return 0;
}

int run_crit(const std::string& curve_path, int lo, int hi) {
  CurvePtr c = load_curve(curve_path);
  if (hi < 0) hi = uot_curve_size(c.get()) - 1;
  double slope = 0, r2 = 0;
  int degenerate = 0;
  check(uot_crit_slope(c.get(), lo, hi, &slope, &degenerate, &r2));
  std::cout << "slope=" << fmt(slope) << "\ndegenerate=" << degenerate
            << "\nr2=" << fmt(r2) << "\n";
  return 0;
}

int run_cube_cover(double alpha, double chat, int lo, int hi,
                   const std::string& out_path) {
  std::vector<double> scales = pow2_scales(lo, hi);
  uot_curve* curve = nullptr;
  check(uot_banach_cube_curve(alpha, chat, scales.data(),
                              static_cast<int>(scales.size()), &curve));
  CurvePtr guard(curve);
  char* text = nullptr;
  check(uot_curve_format(curve, &text));
  write_output(out_path, TextPtr(text).get());
  return 0;
}

int run_cube_mass(double alpha, int l, double r, long long samples,
                  unsigned long long seed, const std::vector<double>& x) {
  uot_report* rep = nullptr;
  check(uot_banach_cube_ball_mass(alpha, l, x.empty() ? nullptr : x.data(),
                                  static_cast<int>(x.size()), r, samples,
                                  seed, &rep));
  ReportPtr guard(rep);
  std::cout << format_report(rep);
  return 0;
}

int run_frostman_seq(const std::string& tree_path, const std::string& mu_path,
                     double c1, double d2, double eps, int target,
                     const std::string& out_path) {
  TreePtr s = load_tree(tree_path);
  MeasurePtr mu;
  if (!mu_path.empty()) mu = load_measure(s.get(), mu_path, "", false);
  uot_seq* seq = nullptr;
  check(uot_frostman_seq(s.get(), mu.get(), c1, d2, eps, target, &seq));
  SeqPtr guard(seq);
  std::ostringstream out;
  out << "index,label,radius\n";
  for (int i = 0; i < uot_seq_size(seq); ++i) {
    int leaf = 0;
    double radius = 0;
    check(uot_seq_point(seq, i, &leaf, &radius));
    out << i + 1 << "," << uot_tree_leaf_label(s.get(), leaf) << ","
        << fmt(radius) << "\n";
  }
  write_output(out_path, out.str());
  return 0;
}

int finish_experiment(uot_report* rep, const std::string& out_path) {
  ReportPtr guard(rep);
  write_output(out_path, format_report(rep));
  return uot_report_failed(rep) ? 3 : 0;
}

int run_report(const std::vector<std::string>& paths) {
  int failed = 0;
  for (const std::string& path : paths) {
    std::string text = read_input(path);
    uot_report* rep = nullptr;
    check(uot_report_parse(text.c_str(), path.c_str(), &rep));
    ReportPtr guard(rep);
    const char* suite = uot_report_find(rep, "suite");
    int bad = uot_report_failed(rep);
    failed += bad;
    std::cout << path << ": suite=" << (suite ? suite : "-")
              << " failed=" << bad << "\n";
  }
  std::cout << "reports=" << paths.size() << " failed=" << failed << "\n";
  return failed > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact optimal transport on finite ultrametric spaces"};
  app.require_subcommand(1);
  int rc = 0;

  // validate
  auto* validate = app.add_subcommand("validate", "Check a matrix or tree file");
  SpaceOpts validate_space;
  double validate_tau = 0.0;
  add_space_options(validate, validate_space);
  validate->add_option("--tau", validate_tau,
                       "matrix slack as a fraction of the diameter");
  validate->callback([&] { rc = run_validate(validate_space, validate_tau); });

  // tree
  auto* tree = app.add_subcommand("tree", "Convert between matrix and tree");
  SpaceOpts tree_space;
  std::string tree_out = "-";
  add_space_options(tree, tree_space);
  tree->add_option("--out", tree_out, "output file, - for stdout");
  tree->callback([&] { rc = run_tree(tree_space, tree_out); });

  // wp
  auto* wp = app.add_subcommand("wp", "Transport cost between two measures");
  SpaceOpts wp_space;
  MeasureOpts wp_mu, wp_nu;
  double wp_p = 1.0;
  bool wp_oracle = false, wp_renorm = false;
  int wp_cap = 0;
  add_space_options(wp, wp_space);
  add_measure_options(wp, "--mu", "--dirac-mu", wp_mu);
  add_measure_options(wp, "--nu", "--dirac-nu", wp_nu);
  wp->add_option("--p", wp_p, "cost order, at least 1")->required();
  wp->add_flag("--oracle", wp_oracle, "cross-check with the simplex solver");
  wp->add_option("--cap", wp_cap, "oracle support cap, 0 for default");
  wp->add_flag("--renormalize", wp_renorm, "rescale measures to total one");
  wp->callback([&] {
    rc = run_wp(wp_space, wp_mu, wp_nu, wp_p, wp_oracle, wp_cap, wp_renorm);
  });

  // embed
  auto* embed = app.add_subcommand("embed", "l1 coordinates of a measure");
  SpaceOpts embed_space;
  MeasureOpts embed_mu;
  double embed_p = 1.0;
  bool embed_renorm = false;
  std::string embed_out = "-";
  add_space_options(embed, embed_space);
  add_measure_options(embed, "--mu", "--dirac-mu", embed_mu);
  embed->add_option("--p", embed_p, "cost order, at least 1")->required();
  embed->add_flag("--renormalize", embed_renorm, "rescale to total one");
  embed->add_option("--out", embed_out, "output file, - for stdout");
  embed->callback([&] {
    rc = run_embed(embed_space, embed_mu, embed_p, embed_renorm, embed_out);
  });

  // plan
  auto* plan = app.add_subcommand("plan", "Optimal coupling on the tree");
  SpaceOpts plan_space;
  MeasureOpts plan_mu, plan_nu;
  double plan_p = 1.0;
  bool plan_renorm = false;
  std::string plan_out = "-";
  add_space_options(plan, plan_space);
  add_measure_options(plan, "--mu", "--dirac-mu", plan_mu);
  add_measure_options(plan, "--nu", "--dirac-nu", plan_nu);
  plan->add_option("--p", plan_p, "cost order, at least 1")->required();
  plan->add_flag("--renormalize", plan_renorm, "rescale to total one");
  plan->add_option("--out", plan_out, "output file, - for stdout");
  plan->callback([&] {
    rc = run_plan(plan_space, plan_mu, plan_nu, plan_p, plan_renorm, plan_out);
  });

  // generate
  auto* generate = app.add_subcommand("generate", "Example space generators");
  generate->require_subcommand(1);

  auto* gen_regular =
      generate->add_subcommand("regular", "Complete k-ary word tree");
  int reg_k = 2, reg_depth = 3;
  double reg_q = 2.0;
  std::string reg_out = "-";
  gen_regular->add_option("--k", reg_k, "alphabet size")->required();
  gen_regular->add_option("--q", reg_q, "scale ratio, above 1")->required();
  gen_regular->add_option("--depth", reg_depth, "word length")->required();
  gen_regular->add_option("--out", reg_out, "output file, - for stdout");
  gen_regular->callback([&] {
    uot_tree* s = nullptr;
    check(uot_generate_regular(reg_k, reg_q, reg_depth, &s));
    TreePtr guard(s);
    write_output(reg_out, format_tree(s));
    rc = 0;
  });

  auto* gen_small =
      generate->add_subcommand("smallparts", "Fast-branching dyadic tree");
  int small_max = 0;
  std::string small_out = "-";
  gen_small->add_option("--max-vertices", small_max,
                        "size budget, 0 for the default");
  gen_small->add_option("--out", small_out, "output file, - for stdout");
  gen_small->callback([&] {
    uot_tree* s = nullptr;
    check(uot_generate_smallparts(small_max, &s));
    TreePtr guard(s);
    write_output(small_out, format_tree(s));
    rc = 0;
  });

  auto* gen_countable =
      generate->add_subcommand("countable", "Logarithmic comb space");
  int countable_n = 100;
  std::string countable_out = "-", countable_matrix_out;
  gen_countable->add_option("--n", countable_n, "number of points")->required();
  gen_countable->add_option("--out", countable_out, "tree output, - for stdout");
  gen_countable->add_option("--matrix-out", countable_matrix_out,
                            "also write the distance matrix CSV");
  gen_countable->callback([&] {
    uot_tree* s = nullptr;
    uot_matrix* m = nullptr;
    bool want_matrix = !countable_matrix_out.empty();
    check(uot_generate_countable(countable_n, &s, want_matrix ? &m : nullptr));
    TreePtr tguard(s);
    MatrixPtr mguard(m);
    write_output(countable_out, format_tree(s));
    if (want_matrix) {
      char* text = nullptr;
      check(uot_matrix_format(m, &text));
      write_output(countable_matrix_out, TextPtr(text).get());
    }
    rc = 0;
  });

  auto* gen_random =
      generate->add_subcommand("random-ultra", "Seeded random ultrametric tree");
  unsigned long long random_seed = 1;
  int random_leaves = 8;
  std::string random_out = "-";
  gen_random->add_option("--seed", random_seed, "generator seed")->required();
  gen_random->add_option("--leaves", random_leaves, "leaf count")->required();
  gen_random->add_option("--out", random_out, "output file, - for stdout");
  gen_random->callback([&] {
    uot_tree* s = nullptr;
    check(uot_generate_random_ultrametric(random_seed, random_leaves, &s));
    TreePtr guard(s);
    write_output(random_out, format_tree(s));
    rc = 0;
  });

  // quantize
  auto* quantize =
      app.add_subcommand("quantize", "Snap heights to the grid q^-n / 2");
  std::string quant_tree, quant_out = "-";
  double quant_q = 2.0;
  quantize->add_option("--tree", quant_tree, "tree file, - for stdin")
      ->required();
  quantize->add_option("--q", quant_q, "scale ratio, above 1")->required();
  quantize->add_option("--out", quant_out, "output file, - for stdout");
  quantize->callback([&] { rc = run_quantize(quant_tree, quant_q, quant_out); });

  // regroup
  auto* regroup =
      app.add_subcommand("regroup", "Level-by-level branch regrouping");
  std::string regroup_tree, regroup_mu, regroup_out_tree, regroup_out_measure;
  double regroup_q = 2.0, regroup_c = 1.0, regroup_sp = 1.0;
  int regroup_depth = 1;
  regroup->add_option("--tree", regroup_tree, "tree file, - for stdin")
      ->required();
  regroup->add_option("--mu", regroup_mu, "measure CSV")->required();
  regroup->add_option("--q", regroup_q, "scale ratio, above 1")->required();
  regroup->add_option("--c", regroup_c, "Frostman constant")->required();
  regroup->add_option("--sp", regroup_sp, "Frostman exponent")->required();
  regroup->add_option("--depth", regroup_depth, "levels to regroup")
      ->required();
  regroup->add_option("--out-tree", regroup_out_tree, "regrouped tree file");
  regroup->add_option("--out-measure", regroup_out_measure,
                      "regrouped measure CSV");
  regroup->callback([&] {
    rc = run_regroup(regroup_tree, regroup_mu, regroup_q, regroup_c,
                     regroup_sp, regroup_depth, regroup_out_tree,
                     regroup_out_measure);
  });

  // cover
  auto* cover = app.add_subcommand("cover", "Covering numbers over scales");
  SpaceOpts cover_space;
  std::vector<double> cover_scales;
  int cover_pow2 = 0;
  std::string cover_out = "-";
  add_space_options(cover, cover_space);
  cover->add_option("--scales", cover_scales, "descending scale list")
      ->delimiter(',');
  cover->add_option("--pow2", cover_pow2, "use scales 2^-1 .. 2^-N");
  cover->add_option("--out", cover_out, "output file, - for stdout");
  cover->callback(
      [&] { rc = run_cover(cover_space, cover_scales, cover_pow2, cover_out); });

  // dim
  auto* dim = app.add_subcommand("dim", "Box dimension slope of a curve");
  std::string dim_curve;
  int dim_lo = 0, dim_hi = -1;
  dim->add_option("--curve", dim_curve, "curve CSV, - for stdin")->required();
  dim->add_option("--lo", dim_lo, "first sample index");
  dim->add_option("--hi", dim_hi, "last sample index, -1 for the end");
  dim->callback([&] { rc = run_dim(dim_curve, dim_lo, dim_hi); });

  // crit
  auto* crit =
      app.add_subcommand("crit", "Power-exponential slope of a curve");
  std::string crit_curve;
  int crit_lo = 0, crit_hi = -1;
  crit->add_option("--curve", crit_curve, "curve CSV, - for stdin")->required();
  crit->add_option("--lo", crit_lo, "first sample index");
  crit->add_option("--hi", crit_hi, "last sample index, -1 for the end");
  crit->callback([&] { rc = run_crit(crit_curve, crit_lo, crit_hi); });

  // cube
  auto* cube = app.add_subcommand("cube", "Banach cube estimators");
  cube->require_subcommand(1);

  auto* cube_cover = cube->add_subcommand("cover", "Box-cover curve");
  double cc_alpha = 2.0, cc_chat = 4.3;
  int cc_lo = 4, cc_hi = 14;
  std::string cc_out = "-";
  cube_cover->add_option("--alpha", cc_alpha, "axis decay exponent, above 1")
      ->required();
  cube_cover->add_option("--chat", cc_chat, "per-axis accuracy constant");
  cube_cover->add_option("--pow2-lo", cc_lo, "first scale 2^-lo");
  cube_cover->add_option("--pow2-hi", cc_hi, "last scale 2^-hi");
  cube_cover->add_option("--out", cc_out, "output file, - for stdout");
  cube_cover->callback(
      [&] { rc = run_cube_cover(cc_alpha, cc_chat, cc_lo, cc_hi, cc_out); });

  auto* cube_mass = cube->add_subcommand("mass", "Monte-Carlo ball mass");
  double cm_alpha = 2.0, cm_r = 0.125;
  int cm_l = 16;
  long long cm_samples = 200000;
  unsigned long long cm_seed = 1;
  std::vector<double> cm_x;
  cube_mass->add_option("--alpha", cm_alpha, "axis decay exponent, above 1")
      ->required();
  cube_mass->add_option("--l", cm_l, "number of axes")->required();
  cube_mass->add_option("--r", cm_r, "ball radius")->required();
  cube_mass->add_option("--samples", cm_samples, "sample count");
  cube_mass->add_option("--seed", cm_seed, "generator seed");
  cube_mass->add_option("--x", cm_x, "ball center, default the corner")
      ->delimiter(',');
  cube_mass->callback([&] {
    rc = run_cube_mass(cm_alpha, cm_l, cm_r, cm_samples, cm_seed, cm_x);
  });

  // frostman-seq
  auto* fseq =
      app.add_subcommand("frostman-seq", "Greedy separated point sequence");
  std::string fseq_tree, fseq_mu, fseq_out = "-";
  double fseq_c1 = 1.0, fseq_d2 = 1.0, fseq_eps = 0.1;
  int fseq_target = 0;
  fseq->add_option("--tree", fseq_tree, "tree file, - for stdin")->required();
  fseq->add_option("--mu", fseq_mu, "measure CSV, default uniform");
  fseq->add_option("--c1", fseq_c1, "Frostman constant");
  fseq->add_option("--d2", fseq_d2, "dimension parameter")->required();
  fseq->add_option("--eps", fseq_eps, "weight decay excess")->required();
  fseq->add_option("--target", fseq_target, "stop after this many points");
  fseq->add_option("--out", fseq_out, "output file, - for stdout");
  fseq->callback([&] {
    rc = run_frostman_seq(fseq_tree, fseq_mu, fseq_c1, fseq_d2, fseq_eps,
                          fseq_target, fseq_out);
  });

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "Self-contained verification suites");
  experiment->require_subcommand(1);
  int exp_instances = 200, exp_pairs = 100;
  unsigned long long exp_seed = 7;
  std::string exp_out = "-";
  auto add_common = [&](CLI::App* sub, bool seeded) {
    if (seeded) sub->add_option("--seed", exp_seed, "schedule seed");
    sub->add_option("--out", exp_out, "report file, - for stdout");
  };

  auto* exp_lemma = experiment->add_subcommand(
      "lemma-eq2", "Closed form against the simplex oracle");
  exp_lemma->add_option("--instances", exp_instances, "random spaces to draw");
  add_common(exp_lemma, true);
  exp_lemma->callback([&] {
    uot_report* rep = nullptr;
    check(uot_experiment_lemma_eq2(exp_instances, exp_seed, &rep));
    rc = finish_experiment(rep, exp_out);
  });

  auto* exp_iso = experiment->add_subcommand(
      "embedding-isometry", "l1 isometry, affinity and metric axioms");
  exp_iso->add_option("--instances", exp_instances, "random spaces to draw");
  add_common(exp_iso, true);
  exp_iso->callback([&] {
    uot_report* rep = nullptr;
    check(uot_experiment_embedding_isometry(exp_instances, exp_seed, &rep));
    rc = finish_experiment(rep, exp_out);
  });

  auto* exp_51 = experiment->add_subcommand(
      "sec51", "Spread-measure lower bound with a fitted constant");
  exp_51->add_option("--pairs", exp_pairs, "validation pairs");
  add_common(exp_51, true);
  exp_51->callback([&] {
    uot_report* rep = nullptr;
    check(uot_experiment_sec51(exp_pairs, exp_seed, &rep));
    rc = finish_experiment(rep, exp_out);
  });

  auto* exp_5alt = experiment->add_subcommand(
      "sec5alt", "Weighted-comb lower bound on the greedy sequence");
  exp_5alt->add_option("--pairs", exp_pairs, "validation pairs");
  add_common(exp_5alt, true);
  exp_5alt->callback([&] {
    uot_report* rep = nullptr;
    check(uot_experiment_sec5alt(exp_pairs, exp_seed, &rep));
    rc = finish_experiment(rep, exp_out);
  });

  auto* exp_61 = experiment->add_subcommand(
      "sec61", "Covering slopes of the fast-branching tree");
  add_common(exp_61, false);
  exp_61->callback([&] {
    uot_report* rep = nullptr;
    check(uot_experiment_sec61(&rep));
    rc = finish_experiment(rep, exp_out);
  });

  auto* exp_62 = experiment->add_subcommand(
      "sec62", "Comb space validation and per-tooth bounds");
  exp_62->add_option("--pairs", exp_pairs, "random pairs per order");
  add_common(exp_62, true);
  exp_62->callback([&] {
    uot_report* rep = nullptr;
    check(uot_experiment_sec62(exp_pairs, exp_seed, &rep));
    rc = finish_experiment(rep, exp_out);
  });

  // report
  auto* report =
      app.add_subcommand("report", "Aggregate pass/fail over report files");
  std::vector<std::string> report_paths;
  report->add_option("files", report_paths, "report files")->required();
  report->callback([&] { rc = run_report(report_paths); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const Exit& e) {
    return e.code;
  }
  return rc;
}
