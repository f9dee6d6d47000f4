// Copyright 2026 The ProbNetKAT authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROBNETKAT_ANALYSIS_H_
#define PROBNETKAT_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "probnetkat/dist.h"
#include "probnetkat/interpreter.h"
#include "probnetkat/json_io.h"
#include "probnetkat/netgen.h"
#include "probnetkat/packet.h"
#include "probnetkat/program.h"
#include "probnetkat/rational.h"

namespace probnetkat {

// A random variable over history sets.
struct QueryFn {
  std::string name;
  std::function<ExtendedRational(const HistSet&)> fn;
  // Declared property; spot-checked by CheckMonotone.
  bool scott_continuous = false;
};

// Number of traversals of `link` recorded in the dup traces of `a`: adjacent
// logged pairs whose earlier entry sits at link.from and whose later entry
// sits at link.to.
Rational LinkCongestion(const DirectedLink& link, const HistSet& a, const FieldSchema& schema);

// Average over a of (|h| / 2 + 1) with integer division; 0 on the empty set.
Rational MeanLatency(const HistSet& a);

// Applies a predicate to history sets. Throws Error(kKind) if `pred` is not a
// predicate.
class PredicateFilter {
 public:
  PredicateFilter(Program pred, FieldSchema schema);

  HistSet Filter(const HistSet& a) const;

 private:
  Program pred_;
  std::shared_ptr<Interpreter> interp_;
};

// |filter(out, a)|
Rational Throughput(const HistSet& a, const PredicateFilter& out);

// True iff some history of `a` visits the same (sw, pt) twice. Consecutive
// identical locations are one visit (dup logs the location before and after
// each hop).
bool LoopCheck(const HistSet& a, const FieldSchema& schema);

QueryFn CardinalityQuery();
QueryFn LinkCongestionQuery(const DirectedLink& link, const FieldSchema& schema);
QueryFn LatencyQuery();
QueryFn ThroughputQuery(const PredicateFilter& out);
QueryFn LoopQuery(const FieldSchema& schema);
// f(a) = 2^-k where k is the length of the canonically smallest member of
// `universe` missing from a; 0 when a covers the universe. Not monotone.
QueryFn SmallestMissingQuery(HistSet universe);

struct MonotoneReport {
  bool monotone = true;
  // A pair a ⊆ b with q(a) > q(b).
  std::optional<std::pair<HistSet, HistSet>> witness;
};

// Exhaustively checks q(a) <= q(a ∪ {h}) over all subsets a of `universe`
// and all h. Throws Error(kCapacity) for universes larger than `bound`.
MonotoneReport CheckMonotone(const QueryFn& q, const HistSet& universe, std::size_t bound = 12);

enum class QueryKind { kMaxCongestion, kThroughput, kLatency, kLoops };

// "maxcong", "throughput", "latency", "loops"
std::optional<QueryKind> ParseQueryKind(std::string_view name);
std::string QueryKindName(QueryKind kind);
bool IsScottContinuous(QueryKind kind);

struct LinkLoad {
  DirectedLink link;
  Rational load;
};

// Evaluates ν_n = traffic >>= ⟦in;(p;t)^n;p[;out]⟧ and the case-study
// queries on it. Outputs and sub-results are cached across n.
class NetworkAnalyzer {
 public:
  // Without dup only throughput can be answered; the other queries throw
  // Error(kInvalidArgument).
  NetworkAnalyzer(Topology topo, RoutingScheme scheme, TrafficMatrix tm, bool with_dup = true);

  const Topology& topology() const { return topo_; }
  const TrafficMatrix& traffic() const { return tm_; }
  const NetworkModel& model() const { return *model_; }
  const Dist& input() const { return input_; }

  const Dist& Output(std::uint32_t n, bool keep_out = true);

  // aggregate · E[congestion of l](ν_n) for every directed link, in link order.
  std::vector<LinkLoad> Congestions(std::uint32_t n);
  // The largest entry of Congestions; ties go to the earliest link.
  LinkLoad MaxCongestion(std::uint32_t n);
  // aggregate · E[|out-filtered|](ν_n)
  Rational DeliveredDemand(std::uint32_t n);
  // DeliveredDemand / aggregate
  Rational DeliveredFraction(std::uint32_t n);
  Rational ExpectedLatency(std::uint32_t n);
  // Probability that the prefix model (no out) produces a looping history.
  Rational LoopProbability(std::uint32_t n);

  Rational Query(QueryKind kind, std::uint32_t n);
  // E[q](ν_n) on the model with out.
  ExtendedRational Expect(const QueryFn& q, std::uint32_t n);

 private:
  void RequireDup(const char* query) const;

  Topology topo_;
  RoutingScheme scheme_;
  TrafficMatrix tm_;
  std::unique_ptr<NetworkModel> model_;
  Interpreter interp_;
  Dist input_;
  PredicateFilter out_;
  std::map<std::pair<std::uint32_t, bool>, Dist> outputs_;
};

struct ConvergenceRow {
  std::uint32_t n = 0;
  Rational value;
  // Whether the last `window` values up to and including this row agree.
  bool stabilized = false;
};

struct ConvergenceSeries {
  std::string query;
  bool scott_continuous = false;
  std::vector<ConvergenceRow> rows;
  bool stabilized = false;
  // First n of the final run of agreeing values, when stabilized.
  std::optional<std::uint32_t> stabilization_index;
  // 0 in exact mode.
  double tolerance = 0;
};

struct ConvergeOptions {
  std::uint32_t n_max = 10;
  std::size_t window = 2;
  // Stabilize on |Δ| <= 1e-9 instead of exact equality. Values stay exact.
  bool float_mode = false;
};

inline constexpr double kFloatTolerance = 1e-9;

// Evaluates value(n) for n = 0..n_max, stopping early once the last `window`
// values agree. Throws Error(kInvalidArgument) if n_max < 1 or window < 2.
ConvergenceSeries Converge(const std::string& name, bool scott_continuous,
                           const std::function<Rational(std::uint32_t)>& value,
                           const ConvergeOptions& options);
ConvergenceSeries Converge(NetworkAnalyzer& analyzer, QueryKind kind,
                           const ConvergeOptions& options);
// Throws Error(kInvalidArgument) if q is infinite on some ν_n.
ConvergenceSeries Converge(NetworkAnalyzer& analyzer, const QueryFn& q,
                           const ConvergeOptions& options);

// True iff values never decrease by more than `slack`.
bool IsNondecreasing(const ConvergenceSeries& s, double slack = 0);

// Header n,query,value_num,value_den,value_float,stabilized
void WriteConvergenceCsv(const ConvergenceSeries& s, std::ostream& out);
std::string FormatDouble(double v);

OrderedJson SeriesSummaryJson(const ConvergenceSeries& s);

}  // namespace probnetkat

#endif  // PROBNETKAT_ANALYSIS_H_
