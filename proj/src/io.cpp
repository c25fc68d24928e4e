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

#include "io.hpp"

#include <charconv>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace uot {

namespace {

[[noreturn]] void bad_line(const std::string& name, int line,
                           const std::string& what) {
  fail(ErrorCode::kIo, name + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& tok, const std::string& name, int line) {
  double v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    bad_line(name, line, "bad number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// strips a trailing carriage return so files from either line convention parse
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  return false;
}

bool skippable(const std::string& line) {
  return line.empty() || line[0] == '#';
}

}  // namespace

void Report::put(const std::string& key, std::string value) {
  if (key.empty() || key.find('=') != std::string::npos ||
      key.find('\n') != std::string::npos)
    fail(ErrorCode::kInvalidArgument, "bad report key '" + key + "'");
  items.emplace_back(key, std::move(value));
}

void Report::put(const std::string& key, const char* value) {
  put(key, std::string(value));
}

void Report::put(const std::string& key, double value) {
  put(key, fmt_double(value));
}

void Report::put(const std::string& key, long long value) {
  put(key, std::to_string(value));
}

void Report::put(const std::string& key, int value) {
  put(key, static_cast<long long>(value));
}

void Report::put(const std::string& key, bool value) {
  put(key, std::string(value ? "1" : "0"));
}

const std::string* Report::find(const std::string& key) const {
  for (const auto& [k, v] : items)
    if (k == key) return &v;
  return nullptr;
}

double Report::number(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) fail(ErrorCode::kInvalidArgument, "report has no key '" + key + "'");
  return parse_double(*v, "report", 0);
}

void write_matrix(std::ostream& out, const DistanceMatrix& m) {
  for (int j = 0; j < m.size(); ++j)
    out << (j ? "," : "") << m.labels[static_cast<std::size_t>(j)];
  out << '\n';
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j)
      out << (j ? "," : "") << fmt_double(m.at(i, j));
    out << '\n';
  }
}

DistanceMatrix read_matrix(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  std::vector<std::string> labels;
  while (next_line(in, line, lineno))
    if (!skippable(line)) {
      labels = split(line, ',');
      break;
    }
  if (labels.empty()) fail(ErrorCode::kIo, name + ": no label row");
  std::size_t n = labels.size();
  std::vector<double> dist;
  dist.reserve(n * n);
  std::size_t rows = 0;
  while (rows < n) {
    if (!next_line(in, line, lineno))
      fail(ErrorCode::kIo, name + ": expected " + std::to_string(n) +
                               " matrix rows, found " + std::to_string(rows));
    if (skippable(line)) continue;
    std::vector<std::string> toks = split(line, ',');
    if (toks.size() != n)
      bad_line(name, lineno, "expected " + std::to_string(n) + " entries, found " +
                                 std::to_string(toks.size()));
    for (const std::string& t : toks) dist.push_back(parse_double(t, name, lineno));
    ++rows;
  }
  while (next_line(in, line, lineno))
    if (!skippable(line)) bad_line(name, lineno, "unexpected extra row");
  return make_matrix(std::move(labels), std::move(dist));
}

void write_tree(std::ostream& out, const Srt& s) {
  out << "# vertices: " << s.num_vertices() << ", leaves: " << s.num_leaves()
      << '\n';
  for (int v = 0; v < s.num_vertices(); ++v) {
    out << v << ' ';
    if (s.parent[static_cast<std::size_t>(v)] == -1)
      out << '-';
    else
      out << s.parent[static_cast<std::size_t>(v)];
    out << ' ' << fmt_double(s.height[static_cast<std::size_t>(v)]);
    if (s.is_leaf(v)) out << ' ' << s.labels[static_cast<std::size_t>(v)];
    out << '\n';
  }
}

Srt read_tree(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  struct Row {
    std::string parent;
    double height;
    std::string label;
    int line;
  };
  std::vector<Row> rows;
  std::unordered_map<std::string, int> index;
  while (next_line(in, line, lineno)) {
    if (skippable(line)) continue;
    std::istringstream ss(line);
    std::string id, parent, height, label;
    ss >> id >> parent >> height;
    if (height.empty()) bad_line(name, lineno, "expected 'id parent height [label]'");
    ss >> label;
    std::string extra;
    if (ss >> extra) bad_line(name, lineno, "trailing token '" + extra + "'");
    if (!index.emplace(id, static_cast<int>(rows.size())).second)
      bad_line(name, lineno, "duplicate vertex id '" + id + "'");
    rows.push_back({parent, parse_double(height, name, lineno), label, lineno});
  }
  if (rows.empty()) fail(ErrorCode::kIo, name + ": empty tree file");
  std::vector<int> parent(rows.size());
  std::vector<double> height(rows.size());
  std::vector<std::string> labels(rows.size());
  for (std::size_t v = 0; v < rows.size(); ++v) {
    if (rows[v].parent == "-") {
      parent[v] = -1;
    } else {
      auto it = index.find(rows[v].parent);
      if (it == index.end())
        bad_line(name, rows[v].line, "unknown parent id '" + rows[v].parent + "'");
      parent[v] = it->second;
    }
    height[v] = rows[v].height;
    labels[v] = rows[v].label;
  }
  return make_srt(std::move(parent), std::move(height), std::move(labels));
}

void write_measure(std::ostream& out, const Srt& s, const Measure& mu) {
  if (mu.size() != s.num_leaves())
    fail(ErrorCode::kSupportMismatch, "measure does not match the tree");
  for (int i = 0; i < s.num_leaves(); ++i)
    out << s.labels[static_cast<std::size_t>(s.leaf_vertex[static_cast<std::size_t>(i)])]
        << ',' << fmt_double(mu.w[static_cast<std::size_t>(i)]) << '\n';
}

Measure read_measure(std::istream& in, const std::string& name, const Srt& s,
                     bool renormalize) {
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::string, double>> entries;
  std::unordered_map<std::string, int> seen;
  while (next_line(in, line, lineno)) {
    if (skippable(line)) continue;
    std::vector<std::string> toks = split(line, ',');
    if (toks.size() != 2) bad_line(name, lineno, "expected 'label,weight'");
    if (!seen.emplace(toks[0], lineno).second)
      bad_line(name, lineno, "duplicate label '" + toks[0] + "'");
    entries.emplace_back(toks[0], parse_double(toks[1], name, lineno));
  }
  return make_measure(s, entries, 1e-9, renormalize);
}

void write_plan(std::ostream& out, const std::vector<std::string>& labels,
                const TransportPlan& plan) {
  out << "source,target,mass\n";
  for (const PlanEntry& e : plan.entries)
    out << labels[static_cast<std::size_t>(e.src)] << ','
        << labels[static_cast<std::size_t>(e.dst)] << ',' << fmt_double(e.mass)
        << '\n';
  out << "# p_cost=" << fmt_double(plan.cost_pp) << '\n';
}

void write_curve(std::ostream& out, const CoveringCurve& curve) {
  out << "epsilon,count,log_count\n";
  for (int i = 0; i < curve.size(); ++i) {
    out << fmt_double(curve.eps[static_cast<std::size_t>(i)]) << ',';
    if (curve.count[static_cast<std::size_t>(i)] < 0)
      out << '-';
    else
      out << curve.count[static_cast<std::size_t>(i)];
    out << ',' << fmt_double(curve.log_count[static_cast<std::size_t>(i)]) << '\n';
  }
  out << "# exact=" << (curve.exact ? 1 : 0) << '\n';
}

CoveringCurve read_curve(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  CoveringCurve curve;
  bool header = false;
  while (next_line(in, line, lineno)) {
    if (line.rfind("# exact=", 0) == 0) {
      curve.exact = line.substr(8) != "0";
      continue;
    }
    if (skippable(line)) continue;
    if (!header) {
      if (line != "epsilon,count,log_count")
        bad_line(name, lineno, "expected the epsilon,count,log_count header");
      header = true;
      continue;
    }
    std::vector<std::string> toks = split(line, ',');
    if (toks.size() != 3) bad_line(name, lineno, "expected three columns");
    curve.eps.push_back(parse_double(toks[0], name, lineno));
    if (toks[1] == "-") {
      curve.count.push_back(-1);
    } else {
      long long c = 0;
      auto res = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), c);
      if (res.ec != std::errc() || res.ptr != toks[1].data() + toks[1].size())
        bad_line(name, lineno, "bad count '" + toks[1] + "'");
      curve.count.push_back(c);
    }
    curve.log_count.push_back(parse_double(toks[2], name, lineno));
  }
  if (curve.eps.empty()) fail(ErrorCode::kIo, name + ": empty curve");
  return curve;
}

void write_report(std::ostream& out, const Report& rep) {
  for (const auto& [k, v] : rep.items) out << k << '=' << v << '\n';
  out << "failed=" << (rep.failed ? 1 : 0) << '\n';
}

Report read_report(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  Report rep;
  bool saw_failed = false;
  while (next_line(in, line, lineno)) {
    if (skippable(line)) continue;
    std::size_t pos = line.find('=');
    if (pos == std::string::npos) bad_line(name, lineno, "expected key=value");
    std::string key = line.substr(0, pos);
    std::string value = line.substr(pos + 1);
    if (key == "failed") {
      rep.failed = value != "0";
      saw_failed = true;
    } else {
      rep.items.emplace_back(std::move(key), std::move(value));
    }
  }
  if (!saw_failed) fail(ErrorCode::kIo, name + ": missing failed= line");
  return rep;
}

}  // namespace uot
