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

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dimension.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "numeric.hpp"
#include "transport.hpp"
#include "ultra_core.hpp"

using namespace uot;

namespace {

template <typename F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

template <typename T, typename W>
std::string to_text(const T& value, W&& writer) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

}  // namespace

TEST_CASE("doubles print in shortest round-trip form") {
  CHECK(fmt_double(0.1) == "0.1");
  CHECK(fmt_double(0.75) == "0.75");
  CHECK(fmt_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(fmt_double(0.0) == "0");
  CHECK(fmt_double(-2.5) == "-2.5");
}

TEST_CASE("matrix files round trip byte for byte") {
  DistanceMatrix m = matrix_from_srt(random_ultrametric(3, 12));
  std::string text = to_text(m, [](std::ostream& o, const DistanceMatrix& x) {
    write_matrix(o, x);
  });
  std::istringstream in(text);
  DistanceMatrix back = read_matrix(in, "t");
  CHECK(back.labels == m.labels);
  CHECK(back.dist == m.dist);
  CHECK(to_text(back, [](std::ostream& o, const DistanceMatrix& x) {
          write_matrix(o, x);
        }) == text);
}

TEST_CASE("matrix parser copes with comments and CRLF, rejects junk") {
  std::istringstream ok("# two points\r\n\r\na,b\r\n0,1\r\n1,0\r\n");
  DistanceMatrix m = read_matrix(ok, "t");
  CHECK(m.labels == std::vector<std::string>{"a", "b"});
  CHECK(m.at(0, 1) == 1.0);

  std::istringstream bad_tok("a,b\n0,x\n1,0\n");
  CHECK(code_of([&] { read_matrix(bad_tok, "t"); }) == ErrorCode::kIo);
  std::istringstream missing_row("a,b\n0,1\n");
  CHECK(code_of([&] { read_matrix(missing_row, "t"); }) == ErrorCode::kIo);
  std::istringstream extra_row("a,b\n0,1\n1,0\n0,0\n");
  CHECK(code_of([&] { read_matrix(extra_row, "t"); }) == ErrorCode::kIo);
  std::istringstream ragged("a,b\n0,1,2\n1,0\n");
  CHECK(code_of([&] { read_matrix(ragged, "t"); }) == ErrorCode::kIo);
  std::istringstream empty("# nothing\n");
  CHECK(code_of([&] { read_matrix(empty, "t"); }) == ErrorCode::kIo);
  // Shape errors surface from validation, not the parser.
  std::istringstream asym("a,b\n0,1\n2,0\n");
  CHECK(code_of([&] { read_matrix(asym, "t"); }) == ErrorCode::kStructure);
}

TEST_CASE("tree files round trip byte for byte") {
  Srt s = random_ultrametric(4, 15);
  std::string text =
      to_text(s, [](std::ostream& o, const Srt& x) { write_tree(o, x); });
  CHECK(text.rfind("# vertices: ", 0) == 0);
  std::istringstream in(text);
  Srt back = read_tree(in, "t");
  CHECK(back.parent == s.parent);
  CHECK(back.height == s.height);
  CHECK(back.labels == s.labels);
  CHECK(to_text(back, [](std::ostream& o, const Srt& x) {
          write_tree(o, x);
        }) == text);
}

TEST_CASE("tree parser accepts arbitrary id tokens and rejects junk") {
  std::istringstream ok("# comment\nr - 0.5\nx r 0 p\ny r 0 q\n");
  Srt s = read_tree(ok, "t");
  CHECK(s.num_leaves() == 2);
  CHECK(s.diameter() == 1.0);
  CHECK(s.labels[s.leaf_vertex[0]] == "p");

  std::istringstream dup("r - 0.5\nx r 0 p\nx r 0 q\n");
  CHECK(code_of([&] { read_tree(dup, "t"); }) == ErrorCode::kIo);
  std::istringstream orphan("r - 0.5\nx z 0 p\ny r 0 q\n");
  CHECK(code_of([&] { read_tree(orphan, "t"); }) == ErrorCode::kIo);
  std::istringstream trailing("r - 0.5\nx r 0 p q\ny r 0 q\n");
  CHECK(code_of([&] { read_tree(trailing, "t"); }) == ErrorCode::kIo);
  std::istringstream short_line("r -\n");
  CHECK(code_of([&] { read_tree(short_line, "t"); }) == ErrorCode::kIo);
  std::istringstream empty("\n# only comments\n");
  CHECK(code_of([&] { read_tree(empty, "t"); }) == ErrorCode::kIo);
  std::istringstream two_roots("r - 0.5\ns - 0.5\nx r 0 p\ny s 0 q\n");
  CHECK(code_of([&] { read_tree(two_roots, "t"); }) == ErrorCode::kStructure);
}

TEST_CASE("measure files round trip byte for byte") {
  Srt s = random_ultrametric(6, 9);
  Measure mu = random_measure(s, 70);
  std::string text = to_text(mu, [&](std::ostream& o, const Measure& x) {
    write_measure(o, s, x);
  });
  std::istringstream in(text);
  Measure back = read_measure(in, "t", s);
  CHECK(back.w == mu.w);
  CHECK(to_text(back, [&](std::ostream& o, const Measure& x) {
          write_measure(o, s, x);
        }) == text);
}

TEST_CASE("measure parser validates labels and totals") {
  Srt s = make_srt({-1, 0, 0}, {0.5, 0.0, 0.0}, {"", "a", "b"});
  std::istringstream sparse("a,1\n");
  Measure m = read_measure(sparse, "t", s);
  CHECK(m.w == std::vector<double>{1.0, 0.0});

  std::istringstream dup("a,0.5\na,0.5\n");
  CHECK(code_of([&] { read_measure(dup, "t", s); }) == ErrorCode::kIo);
  std::istringstream no_comma("a 1\n");
  CHECK(code_of([&] { read_measure(no_comma, "t", s); }) == ErrorCode::kIo);
  std::istringstream unknown("z,1\n");
  CHECK(code_of([&] { read_measure(unknown, "t", s); }) ==
        ErrorCode::kSupportMismatch);
  std::istringstream off("a,0.5\nb,0.4\n");
  CHECK(code_of([&] { read_measure(off, "t", s); }) == ErrorCode::kStructure);
  std::istringstream renorm("a,0.5\nb,0.5\n");
  Measure r = read_measure(renorm, "t", s, true);
  CHECK(r.w == std::vector<double>{0.5, 0.5});
}

TEST_CASE("plan files list labeled entries and the cost") {
  Srt s = make_srt({-1, 0, 1, 1, 0}, {0.5, 0.25, 0.0, 0.0, 0.0},
                   {"", "", "a", "b", "c"});
  Measure mu = dirac_measure(s, "a");
  Measure nu = make_measure(s, {{"b", 0.5}, {"c", 0.5}});
  TransportPlan plan = tree_optimal_plan(s, mu, nu, 1.0);
  std::vector<std::string> labels = {"a", "b", "c"};
  std::ostringstream out;
  write_plan(out, labels, plan);
  CHECK(out.str() == "source,target,mass\na,b,0.5\na,c,0.5\n# p_cost=0.75\n");
}

TEST_CASE("curve files round trip byte for byte") {
  CoveringCurve curve = covering_curve(regular_space(2, 2.0, 6),
                                       {0.5, 0.25, 0.125, 0.0625});
  std::string text = to_text(curve, [](std::ostream& o, const CoveringCurve& x) {
    write_curve(o, x);
  });
  std::istringstream in(text);
  CoveringCurve back = read_curve(in, "t");
  CHECK(back.eps == curve.eps);
  CHECK(back.count == curve.count);
  CHECK(back.log_count == curve.log_count);
  CHECK(back.exact == curve.exact);
  CHECK(to_text(back, [](std::ostream& o, const CoveringCurve& x) {
          write_curve(o, x);
        }) == text);

  CoveringCurve huge;
  huge.eps = {0.5};
  huge.count = {-1};
  huge.log_count = {123.25};
  huge.exact = false;
  std::string big = to_text(huge, [](std::ostream& o, const CoveringCurve& x) {
    write_curve(o, x);
  });
  CHECK(big.find("0.5,-,123.25") != std::string::npos);
  std::istringstream bin(big);
  CoveringCurve hback = read_curve(bin, "t");
  CHECK(hback.count == huge.count);
  CHECK(!hback.exact);
}

TEST_CASE("curve parser wants the exact header") {
  std::istringstream no_header("0.5,1,0\n# exact=1\n");
  CHECK(code_of([&] { read_curve(no_header, "t"); }) == ErrorCode::kIo);
  std::istringstream bad_count("epsilon,count,log_count\n0.5,x,0\n");
  CHECK(code_of([&] { read_curve(bad_count, "t"); }) == ErrorCode::kIo);
  std::istringstream two_cols("epsilon,count,log_count\n0.5,1\n");
  CHECK(code_of([&] { read_curve(two_cols, "t"); }) == ErrorCode::kIo);
  std::istringstream empty("epsilon,count,log_count\n# exact=1\n");
  CHECK(code_of([&] { read_curve(empty, "t"); }) == ErrorCode::kIo);
}

TEST_CASE("report files carry ordered keys and the failed flag") {
  Report rep;
  rep.put("suite", "demo");
  rep.put("max_err", 0.1);
  rep.put("checks", 600LL);
  rep.put("ok", true);
  rep.failed = false;
  std::string text = to_text(rep, [](std::ostream& o, const Report& x) {
    write_report(o, x);
  });
  CHECK(text == "suite=demo\nmax_err=0.1\nchecks=600\nok=1\nfailed=0\n");

  std::istringstream in(text);
  Report back = read_report(in, "t");
  CHECK(back.items == rep.items);
  CHECK(!back.failed);
  CHECK(back.number("max_err") == 0.1);
  CHECK(*back.find("suite") == "demo");
  CHECK(back.find("absent") == nullptr);
  CHECK(code_of([&] { back.number("absent"); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(to_text(back, [](std::ostream& o, const Report& x) {
          write_report(o, x);
        }) == text);

  std::istringstream failed("suite=x\nfailed=1\n");
  CHECK(read_report(failed, "t").failed);
  std::istringstream missing("suite=x\n");
  CHECK(code_of([&] { read_report(missing, "t"); }) == ErrorCode::kIo);
  std::istringstream noeq("suite\nfailed=0\n");
  CHECK(code_of([&] { read_report(noeq, "t"); }) == ErrorCode::kIo);

  Report bad;
  CHECK(code_of([&] { bad.put("a=b", 1); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { bad.put("", 1); }) == ErrorCode::kInvalidArgument);
}
