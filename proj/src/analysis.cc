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

#include "probnetkat/analysis.h"

#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "probnetkat/error.h"
#include "probnetkat/syntax.h"

namespace probnetkat {
namespace {

struct Loc {
  FieldValue sw;
  FieldValue pt;
  auto operator<=>(const Loc&) const = default;
};

Rational PowerOfHalf(std::size_t k) {
  Rational r = 1;
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

}  // namespace

Rational LinkCongestion(const DirectedLink& link, const HistSet& a, const FieldSchema& schema) {
  const std::size_t sw = schema.IndexOf(kSwitchField);
  const std::size_t pt = schema.IndexOf(kPortField);
  auto at = [&](const Packet& p, Location l) { return p[sw] == l.sw && p[pt] == l.pt; };
  std::size_t count = 0;
  for (const History& h : a) {
    const auto& e = h.entries();
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      if (at(e[i + 1], link.from) && at(e[i], link.to)) ++count;
    }
  }
  return Rational(static_cast<unsigned long>(count));
}

Rational MeanLatency(const HistSet& a) {
  if (a.empty()) return 0;
  std::size_t total = 0;
  for (const History& h : a) total += h.length() / 2 + 1;
  Rational r(static_cast<unsigned long>(total), static_cast<unsigned long>(a.size()));
  r.canonicalize();
  return r;
}

PredicateFilter::PredicateFilter(Program pred, FieldSchema schema)
    : pred_(std::move(pred)), interp_(std::make_shared<Interpreter>(std::move(schema))) {
  if (Typecheck(pred_) != Kind::kPredicate) {
    throw Error(ErrorKind::kKind, "throughput needs a predicate, got '" + Print(pred_) + "'");
  }
}

HistSet PredicateFilter::Filter(const HistSet& a) const {
  return interp_->EvalDeterministic(pred_, a);
}

Rational Throughput(const HistSet& a, const PredicateFilter& out) {
  return Rational(static_cast<unsigned long>(out.Filter(a).size()));
}

bool LoopCheck(const HistSet& a, const FieldSchema& schema) {
  const std::size_t sw = schema.IndexOf(kSwitchField);
  const std::size_t pt = schema.IndexOf(kPortField);
  for (const History& h : a) {
    std::set<Loc> seen;
    std::optional<Loc> previous;
    const auto& e = h.entries();
    for (auto it = e.rbegin(); it != e.rend(); ++it) {
      Loc here{(*it)[sw], (*it)[pt]};
      if (previous == here) continue;
      if (!seen.insert(here).second) return true;
      previous = here;
    }
  }
  return false;
}

QueryFn CardinalityQuery() {
  return {"cardinality",
          [](const HistSet& a) {
            return ExtendedRational::Finite(Rational(static_cast<unsigned long>(a.size())));
          },
          true};
}

QueryFn LinkCongestionQuery(const DirectedLink& link, const FieldSchema& schema) {
  return {"congestion",
          [link, schema](const HistSet& a) {
            return ExtendedRational::Finite(LinkCongestion(link, a, schema));
          },
          true};
}

QueryFn LatencyQuery() {
  return {"latency", [](const HistSet& a) { return ExtendedRational::Finite(MeanLatency(a)); },
          false};
}

QueryFn ThroughputQuery(const PredicateFilter& out) {
  return {"throughput",
          [out](const HistSet& a) { return ExtendedRational::Finite(Throughput(a, out)); }, true};
}

QueryFn LoopQuery(const FieldSchema& schema) {
  return {"loops",
          [schema](const HistSet& a) {
            return ExtendedRational::Finite(LoopCheck(a, schema) ? 1 : 0);
          },
          true};
}

QueryFn SmallestMissingQuery(HistSet universe) {
  return {"smallest-missing",
          [universe = std::move(universe)](const HistSet& a) {
            for (const History& h : universe) {
              if (!a.Contains(h)) return ExtendedRational::Finite(PowerOfHalf(h.length()));
            }
            return ExtendedRational::Finite(0);
          },
          false};
}

MonotoneReport CheckMonotone(const QueryFn& q, const HistSet& universe, std::size_t bound) {
  const std::size_t m = universe.size();
  if (m > bound) {
    throw Error(ErrorKind::kCapacity, "monotonicity check over " + std::to_string(m) +
                                          " histories exceeds the bound " +
                                          std::to_string(bound));
  }
  const auto& members = universe.members();
  auto subset = [&](std::size_t mask) {
    std::vector<History> hs;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) hs.push_back(members[i]);
    }
    return HistSet(std::move(hs));
  };
  std::vector<ExtendedRational> values;
  values.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) values.push_back(q.fn(subset(mask)));
  MonotoneReport report;
  for (std::size_t mask = 0; mask < values.size(); ++mask) {
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t bigger = mask | (std::size_t{1} << i);
      if (bigger != mask && !(values[mask] <= values[bigger])) {
        report.monotone = false;
        report.witness = std::make_pair(subset(mask), subset(bigger));
        return report;
      }
    }
  }
  return report;
}

std::optional<QueryKind> ParseQueryKind(std::string_view name) {
  if (name == "maxcong") return QueryKind::kMaxCongestion;
  if (name == "throughput") return QueryKind::kThroughput;
  if (name == "latency") return QueryKind::kLatency;
  if (name == "loops") return QueryKind::kLoops;
  return std::nullopt;
}

std::string QueryKindName(QueryKind kind) {
  switch (kind) {
    case QueryKind::kMaxCongestion: return "maxcong";
    case QueryKind::kThroughput: return "throughput";
    case QueryKind::kLatency: return "latency";
    case QueryKind::kLoops: return "loops";
  }
  return "unknown";
}

bool IsScottContinuous(QueryKind kind) { return kind != QueryKind::kLatency; }

NetworkAnalyzer::NetworkAnalyzer(Topology topo, RoutingScheme scheme, TrafficMatrix tm,
                                 bool with_dup)
    : topo_(std::move(topo)),
      scheme_(std::move(scheme)),
      tm_(std::move(tm)),
      model_(std::make_unique<NetworkModel>(topo_, scheme_, with_dup, &tm_)),
      interp_(model_->schema()),
      input_(TrafficInput(tm_, topo_, model_->schema())),
      out_(model_->egress(), model_->schema()) {}

const Dist& NetworkAnalyzer::Output(std::uint32_t n, bool keep_out) {
  auto key = std::make_pair(n, keep_out);
  if (auto it = outputs_.find(key); it != outputs_.end()) return it->second;
  Dist out = interp_.EvalDist(model_->Network(n, keep_out), input_);
  return outputs_.emplace(key, std::move(out)).first->second;
}

void NetworkAnalyzer::RequireDup(const char* query) const {
  if (!model_->with_dup()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(query) + " needs a model that logs hops with dup");
  }
}

std::vector<LinkLoad> NetworkAnalyzer::Congestions(std::uint32_t n) {
  RequireDup("congestion");
  const Dist& nu = Output(n, true);
  const FieldSchema& schema = model_->schema();
  Rational aggregate = tm_.Aggregate();
  std::vector<LinkLoad> loads;
  for (const DirectedLink& l : topo_.DirectedLinks()) {
    Rational expected = 0;
    for (const auto& [a, w] : nu) expected += w * LinkCongestion(l, a, schema);
    loads.push_back({l, aggregate * expected});
  }
  return loads;
}

LinkLoad NetworkAnalyzer::MaxCongestion(std::uint32_t n) {
  std::vector<LinkLoad> loads = Congestions(n);
  if (loads.empty()) throw Error(ErrorKind::kTopology, "topology has no links");
  std::size_t best = 0;
  for (std::size_t i = 1; i < loads.size(); ++i) {
    if (loads[i].load > loads[best].load) best = i;
  }
  return loads[best];
}

Rational NetworkAnalyzer::DeliveredDemand(std::uint32_t n) {
  return tm_.Aggregate() * DeliveredFraction(n);
}

Rational NetworkAnalyzer::DeliveredFraction(std::uint32_t n) {
  return Expectation([this](const HistSet& a) {
           return ExtendedRational::Finite(Throughput(a, out_));
         },
                     Output(n, true))
      .value;
}

Rational NetworkAnalyzer::ExpectedLatency(std::uint32_t n) {
  RequireDup("latency");
  return Expectation(LatencyQuery().fn, Output(n, true)).value;
}

Rational NetworkAnalyzer::LoopProbability(std::uint32_t n) {
  RequireDup("loop detection");
  const FieldSchema& schema = model_->schema();
  return MassWhere(Output(n, false), [&](const HistSet& a) { return LoopCheck(a, schema); });
}

Rational NetworkAnalyzer::Query(QueryKind kind, std::uint32_t n) {
  switch (kind) {
    case QueryKind::kMaxCongestion: return MaxCongestion(n).load;
    case QueryKind::kThroughput: return DeliveredFraction(n);
    case QueryKind::kLatency: return ExpectedLatency(n);
    case QueryKind::kLoops: return LoopProbability(n);
  }
  throw Error(ErrorKind::kInternal, "unknown query kind");
}

ExtendedRational NetworkAnalyzer::Expect(const QueryFn& q, std::uint32_t n) {
  return Expectation(q.fn, Output(n, true));
}

ConvergenceSeries Converge(const std::string& name, bool scott_continuous,
                           const std::function<Rational(std::uint32_t)>& value,
                           const ConvergeOptions& options) {
  if (options.n_max < 1) throw Error(ErrorKind::kInvalidArgument, "n-max must be at least 1");
  if (options.window < 2) {
    throw Error(ErrorKind::kInvalidArgument, "stabilization window must be at least 2");
  }
  ConvergenceSeries s;
  s.query = name;
  s.scott_continuous = scott_continuous;
  s.tolerance = options.float_mode ? kFloatTolerance : 0;
  auto agree = [&](const Rational& x, const Rational& y) {
    if (!options.float_mode) return x == y;
    return std::fabs(ToDouble(x) - ToDouble(y)) <= kFloatTolerance;
  };
  for (std::uint32_t n = 0; n <= options.n_max; ++n) {
    ConvergenceRow row{n, value(n), false};
    s.rows.push_back(std::move(row));
    if (s.rows.size() >= options.window) {
      bool all = true;
      for (std::size_t i = s.rows.size() - options.window + 1; i < s.rows.size(); ++i) {
        all = all && agree(s.rows[i - 1].value, s.rows[i].value);
      }
      s.rows.back().stabilized = all;
    }
    if (s.rows.back().stabilized) {
      s.stabilized = true;
      std::size_t first = s.rows.size() - 1;
      while (first > 0 && agree(s.rows[first - 1].value, s.rows[first].value)) --first;
      s.stabilization_index = s.rows[first].n;
      break;
    }
  }
  return s;
}

ConvergenceSeries Converge(NetworkAnalyzer& analyzer, QueryKind kind,
                           const ConvergeOptions& options) {
  return Converge(QueryKindName(kind), IsScottContinuous(kind),
                  [&](std::uint32_t n) { return analyzer.Query(kind, n); }, options);
}

ConvergenceSeries Converge(NetworkAnalyzer& analyzer, const QueryFn& q,
                           const ConvergeOptions& options) {
  return Converge(q.name, q.scott_continuous,
                  [&](std::uint32_t n) {
                    ExtendedRational v = analyzer.Expect(q, n);
                    if (v.infinite) {
                      throw Error(ErrorKind::kInvalidArgument,
                                  "query '" + q.name + "' has infinite expectation");
                    }
                    return v.value;
                  },
                  options);
}

bool IsNondecreasing(const ConvergenceSeries& s, double slack) {
  for (std::size_t i = 1; i < s.rows.size(); ++i) {
    if (slack == 0) {
      if (s.rows[i].value < s.rows[i - 1].value) return false;
    } else if (ToDouble(s.rows[i].value) < ToDouble(s.rows[i - 1].value) - slack) {
      return false;
    }
  }
  return true;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

void WriteConvergenceCsv(const ConvergenceSeries& s, std::ostream& out) {
  out << "n,query,value_num,value_den,value_float,stabilized\n";
  for (const ConvergenceRow& r : s.rows) {
    out << r.n << ',' << s.query << ',' << r.value.get_num().get_str() << ','
        << r.value.get_den().get_str() << ',' << FormatDouble(ToDouble(r.value)) << ','
        << (r.stabilized ? "true" : "false") << '\n';
  }
}

OrderedJson SeriesSummaryJson(const ConvergenceSeries& s) {
  OrderedJson j;
  j["query"] = s.query;
  j["scott_continuous"] = s.scott_continuous;
  j["rows"] = s.rows.size();
  j["stabilized"] = s.stabilized;
  j["stabilization_index"] =
      s.stabilization_index ? OrderedJson(*s.stabilization_index) : OrderedJson(nullptr);
  j["tolerance"] = s.tolerance;
  if (!s.rows.empty()) {
    const ConvergenceRow& last = s.rows.back();
    j["final"] = {{"n", last.n},
                  {"value", FormatFraction(last.value)},
                  {"value_float", ToDouble(last.value)}};
  }
  j["monotone"] = IsNondecreasing(s);
  return j;
}

}  // namespace probnetkat
