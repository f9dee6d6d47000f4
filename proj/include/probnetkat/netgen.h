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

// Compilation of topologies, routing schemes and traffic matrices into
// ProbNetKAT programs and input distributions.
//
// Switches and hosts are numbered from 1 in the order they are declared; a
// packet's location is its (sw, pt) pair, and hosts are identified with the
// (sw, pt) port they attach to. Generated programs use the header fields
// sw, pt, src, dst and path (the latter pins a packet to one precomputed path
// under k-shortest-path and oblivious routing).

#ifndef PROBNETKAT_NETGEN_H_
#define PROBNETKAT_NETGEN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probnetkat/dist.h"
#include "probnetkat/packet.h"
#include "probnetkat/program.h"
#include "probnetkat/rational.h"

namespace probnetkat {

inline constexpr std::string_view kSwitchField = "sw";
inline constexpr std::string_view kPortField = "pt";
inline constexpr std::string_view kSrcField = "src";
inline constexpr std::string_view kDstField = "dst";
inline constexpr std::string_view kPathField = "path";

struct Location {
  FieldValue sw = 0;
  FieldValue pt = 0;
  auto operator<=>(const Location&) const = default;
};

struct Host {
  std::string id;
  FieldValue index = 0;
  Location attach;
};

// An undirected link; each direction fails (drops the packet) independently
// on every traversal with its own probability.
struct Link {
  Location a;
  Location b;
  Rational fail_ab = 0;
  Rational fail_ba = 0;
};

struct DirectedLink {
  Location from;
  Location to;
  Rational fail = 0;
};

class Topology {
 public:
  FieldValue AddSwitch(std::string name);
  FieldValue AddHost(std::string id, std::string_view switch_name, FieldValue port);
  void AddLink(std::string_view switch_a, FieldValue port_a, std::string_view switch_b,
               FieldValue port_b, Rational fail_ab = 0, Rational fail_ba = 0);

  std::size_t switch_count() const { return switches_.size(); }
  const std::vector<std::string>& switches() const { return switches_; }
  const std::vector<Host>& hosts() const { return hosts_; }
  const std::vector<Link>& links() const { return links_; }

  FieldValue SwitchIndex(std::string_view name) const;
  const std::string& SwitchName(FieldValue index) const;
  const Host& HostById(std::string_view id) const;
  const Host& HostByIndex(FieldValue index) const;
  // Hosts attached to switch `sw`, in declaration order.
  std::vector<const Host*> HostsAt(FieldValue sw) const;

  // Both directions of every link: link order, a→b before b→a.
  std::vector<DirectedLink> DirectedLinks() const;
  // (neighbor switch, local port) pairs sorted by neighbor then port.
  std::vector<std::pair<FieldValue, FieldValue>> Neighbors(FieldValue sw) const;
  // Local port of the lowest-numbered link from `from` to `to`.
  FieldValue PortTowards(FieldValue from, FieldValue to) const;

  // sw, pt, src, dst and path with ranges wide enough for this topology.
  FieldSchema Schema(FieldValue path_count = 0) const;

  std::string DirectedLinkName(const DirectedLink& l) const;

 private:
  void CheckFreeEndpoint(Location loc) const;

  std::vector<std::string> switches_;
  std::vector<Host> hosts_;
  std::vector<Link> links_;
};

// {"switches":[...],"hosts":[{"id","sw","pt"}],"links":[{"a":[sw,pt],
// "b":[sw,pt],"fail":"1/10","fail_ab":...,"fail_ba":...}]}. Throws
// Error(kIo) for unreadable files and Error(kTopology) for invalid content.
Topology LoadTopology(const std::string& path);
Topology TopologyFromJsonText(std::string_view text);

struct Demand {
  FieldValue src = 0;  // host index
  FieldValue dst = 0;
  Rational amount = 0;
};

class TrafficMatrix {
 public:
  // Rejects negative demands and nonzero diagonal entries
  // (Error(kInvalidArgument)); repeated pairs accumulate.
  void Add(FieldValue src, FieldValue dst, Rational amount);

  const std::vector<Demand>& demands() const { return demands_; }
  Rational Aggregate() const;

 private:
  std::vector<Demand> demands_;
};

// CSV `src,dst,demand` with host ids and rational or decimal demands; an
// optional header line is skipped.
TrafficMatrix LoadTrafficMatrix(const std::string& path, const Topology& topo);
TrafficMatrix TrafficMatrixFromCsvText(std::string_view text, const Topology& topo);
// Equal demand between every ordered pair of distinct hosts.
TrafficMatrix UniformTrafficMatrix(const Topology& topo, const Rational& per_pair = 1);

struct ObliviousPath {
  FieldValue src = 0;  // host index
  FieldValue dst = 0;
  std::vector<FieldValue> switches;
  Rational prob = 0;
};

// JSON list of {"src","dst","path":[switch...],"prob"}.
std::vector<ObliviousPath> LoadObliviousPaths(const std::string& path, const Topology& topo);
std::vector<ObliviousPath> ObliviousPathsFromJsonText(std::string_view text,
                                                      const Topology& topo);

struct RoutingScheme {
  enum class Kind { kSpf, kEcmp, kKsp, kMulti, kOblivious, kRandomWalk };

  Kind kind = Kind::kSpf;
  std::size_t k = 1;
  std::vector<ObliviousPath> oblivious;

  static RoutingScheme Spf() { return WithKind(Kind::kSpf); }
  static RoutingScheme Ecmp() { return WithKind(Kind::kEcmp); }
  static RoutingScheme Ksp(std::size_t k);
  static RoutingScheme Multi(std::size_t k);
  static RoutingScheme Oblivious(std::vector<ObliviousPath> paths);
  static RoutingScheme RandomWalk() { return WithKind(Kind::kRandomWalk); }

  std::string Name() const;

 private:
  static RoutingScheme WithKind(Kind kind) {
    RoutingScheme s;
    s.kind = kind;
    return s;
  }
};

// "spf", "ecmp", "ksp:K", "multi:K", "oblivious:FILE", "randomwalk".
RoutingScheme ParseRoutingScheme(std::string_view text, const Topology& topo);

// Undirected switch graph used for path computations.
class SwitchGraph {
 public:
  explicit SwitchGraph(const Topology& topo);
  SwitchGraph(std::size_t nodes, const std::vector<std::pair<FieldValue, FieldValue>>& edges);

  std::size_t size() const { return adjacency_.size() - 1; }
  // Sorted, deduplicated neighbors of node `v` (nodes are 1-based).
  const std::vector<FieldValue>& Neighbors(FieldValue v) const { return adjacency_[v]; }
  // Hop distances to `target`; unreachable nodes map to std::nullopt.
  std::vector<std::optional<std::size_t>> DistancesTo(FieldValue target) const;

 private:
  std::vector<std::vector<FieldValue>> adjacency_;
};

using SwitchPath = std::vector<FieldValue>;

// The k shortest loopless paths from `from` to `to` by hop count, ties broken
// lexicographically on the switch sequence (Yen's algorithm). Returns fewer
// than k paths when fewer exist.
std::vector<SwitchPath> KShortestPaths(const SwitchGraph& g, FieldValue from, FieldValue to,
                                       std::size_t k);

// One direction of a link: sw=A;pt=A[;dup] ; (sw:=B;pt:=B[;dup]) +[1-fail] drop.
Program DirectedLinkProgram(const DirectedLink& link, bool with_dup);
// Parallel composition of both directions.
Program LinkProgram(const Link& link, bool with_dup);
Program TopologyProgram(const Topology& topo, bool with_dup);
// Matches exactly the host attachment points.
Program EdgePredicate(const Topology& topo);

struct RoutingProgram {
  Program program = Program::Drop();
  // Number of distinct pinned paths (values 1..path_count of `path`).
  FieldValue path_count = 0;
  std::vector<std::string> warnings;
};

// &_s (sw=s ; p_s). With `demanded`, only those pairs must be connected;
// otherwise every pair of distinct hosts must be. Throws Error(kTopology) for
// disconnected required pairs.
RoutingProgram BuildRoutingProgram(const Topology& topo, const RoutingScheme& scheme,
                                   const TrafficMatrix* demanded = nullptr);

// The compiled pieces of `in;(p;t)^n;p;out`. The loop body is built once so
// that evaluations at different n share sub-results.
class NetworkModel {
 public:
  NetworkModel(const Topology& topo, const RoutingScheme& scheme, bool with_dup,
               const TrafficMatrix* demanded = nullptr);

  const FieldSchema& schema() const { return schema_; }
  const Program& routing() const { return routing_.program; }
  const Program& topology() const { return topology_; }
  const Program& ingress() const { return ingress_; }
  const Program& egress() const { return egress_; }
  const Program& body() const { return body_; }
  const std::vector<std::string>& warnings() const { return routing_.warnings; }
  bool with_dup() const { return with_dup_; }

  // in;(p;t)^n;p;out, or in;(p;t)^n;p when keep_out is false.
  Program Network(std::uint32_t n, bool keep_out = true) const;

 private:
  RoutingProgram routing_;
  FieldSchema schema_;
  Program topology_;
  Program ingress_;
  Program egress_;
  Program body_;
  bool with_dup_;
};

Program NetworkProgram(const Topology& topo, const RoutingScheme& scheme, std::uint32_t n,
                       bool keep_out, bool with_dup = true);

// Single-packet history sets: for every pair with positive demand, the packet
// at u's attachment with src=u and dst=v, weighted demand/aggregate. Other
// fields take their schema minimum. Throws Error(kInvalidArgument) if the
// aggregate is zero.
Dist TrafficInput(const TrafficMatrix& tm, const Topology& topo, const FieldSchema& schema);

// ⊕_{d(u,v)} (src:=u; dst:=v; sw:=sw(u); pt:=pt(u)); on a single default
// packet it generates TrafficInput.
Program TrafficProgram(const TrafficMatrix& tm, const Topology& topo);

}  // namespace probnetkat

#endif  // PROBNETKAT_NETGEN_H_
