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

#ifndef ULTRAOT_IO_HPP
#define ULTRAOT_IO_HPP

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "dimension.hpp"
#include "transport.hpp"
#include "ultra_core.hpp"

namespace uot {

// Ordered key=value result bundle. failed is carried as a trailing
// failed=0|1 line so downstream tooling can aggregate pass/fail without
// knowing any keys.
struct Report {
  std::vector<std::pair<std::string, std::string>> items;
  bool failed = false;

  void put(const std::string& key, std::string value);
  void put(const std::string& key, const char* value);
  void put(const std::string& key, double value);
  void put(const std::string& key, long long value);
  void put(const std::string& key, int value);
  void put(const std::string& key, bool value);
  const std::string* find(const std::string& key) const;
  double number(const std::string& key) const;  // fails when absent
};

// Distance matrix CSV: a label row, then one row of entries per point.
void write_matrix(std::ostream& out, const DistanceMatrix& m);
DistanceMatrix read_matrix(std::istream& in, const std::string& name);

// Tree file: one `id parent height [label]` line per vertex, `-` as the
// root's parent, `#` starting a comment. Ids may be arbitrary tokens on
// read; writes use the in-memory vertex numbers.
void write_tree(std::ostream& out, const Srt& s);
Srt read_tree(std::istream& in, const std::string& name);

// Measure CSV: label,weight lines, no header. Absent leaves get zero.
// The total must reach one within 1e-9 unless renormalize is set.
void write_measure(std::ostream& out, const Srt& s, const Measure& mu);
Measure read_measure(std::istream& in, const std::string& name, const Srt& s,
                     bool renormalize = false);

// Plan CSV: a source,target,mass header, entries with point labels, and
// a trailing `# p_cost=` line with the plan's p-power cost.
void write_plan(std::ostream& out, const std::vector<std::string>& labels,
                const TransportPlan& plan);

// Curve CSV: an epsilon,count,log_count header, `-` for counts past
// long long, and a trailing `# exact=0|1` marker.
void write_curve(std::ostream& out, const CoveringCurve& curve);
CoveringCurve read_curve(std::istream& in, const std::string& name);

void write_report(std::ostream& out, const Report& rep);
Report read_report(std::istream& in, const std::string& name);

}  // namespace uot

#endif  // ULTRAOT_IO_HPP
