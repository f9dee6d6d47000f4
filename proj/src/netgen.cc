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

#include "probnetkat/netgen.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "probnetkat/error.h"

namespace probnetkat {
namespace {

using nlohmann::json;

std::string Str(std::string_view s) { return std::string(s); }

Program Test(std::string_view field, FieldValue v) { return Program::Test(Str(field), v); }
Program Mod(std::string_view field, FieldValue v) { return Program::Mod(Str(field), v); }

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void BadTopology(const std::string& message) {
  throw Error(ErrorKind::kTopology, message);
}

json ParseJson(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kTopology, std::string("malformed ") + what + ": " + e.what());
  }
}

std::string NameOf(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  BadTopology("expected a switch or host name, got " + j.dump());
}

FieldValue NaturalOf(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    BadTopology(std::string("expected a natural number for ") + what + ", got " + j.dump());
  }
  return static_cast<FieldValue>(j.get<unsigned long long>());
}

Rational RationalOf(const json& j) {
  try {
    if (j.is_string()) return ParseRational(j.get<std::string>());
    if (j.is_number()) return ParseRational(j.dump());
  } catch (const Error& e) {
    BadTopology(e.what());
  }
  BadTopology("expected a probability, got " + j.dump());
}

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

FieldValue Topology::AddSwitch(std::string name) {
  if (std::find(switches_.begin(), switches_.end(), name) != switches_.end()) {
    BadTopology("duplicate switch '" + name + "'");
  }
  switches_.push_back(std::move(name));
  return static_cast<FieldValue>(switches_.size());
}

void Topology::CheckFreeEndpoint(Location loc) const {
  for (const Host& h : hosts_) {
    if (h.attach == loc) {
      BadTopology("port " + std::to_string(loc.pt) + " of switch '" + SwitchName(loc.sw) +
                  "' is already used by host '" + h.id + "'");
    }
  }
  for (const Link& l : links_) {
    if (l.a == loc || l.b == loc) {
      BadTopology("port " + std::to_string(loc.pt) + " of switch '" + SwitchName(loc.sw) +
                  "' is already used by a link");
    }
  }
}

FieldValue Topology::AddHost(std::string id, std::string_view switch_name, FieldValue port) {
  for (const Host& h : hosts_) {
    if (h.id == id) BadTopology("duplicate host '" + id + "'");
  }
  Location loc{SwitchIndex(switch_name), port};
  CheckFreeEndpoint(loc);
  Host h;
  h.id = std::move(id);
  h.index = static_cast<FieldValue>(hosts_.size() + 1);
  h.attach = loc;
  hosts_.push_back(std::move(h));
  return hosts_.back().index;
}

void Topology::AddLink(std::string_view switch_a, FieldValue port_a, std::string_view switch_b,
                       FieldValue port_b, Rational fail_ab, Rational fail_ba) {
  Location a{SwitchIndex(switch_a), port_a};
  Location b{SwitchIndex(switch_b), port_b};
  if (a.sw == b.sw) BadTopology("self-loop link on switch '" + Str(switch_a) + "'");
  CheckFreeEndpoint(a);
  CheckFreeEndpoint(b);
  for (const Rational* f : {&fail_ab, &fail_ba}) {
    if (!InUnitInterval(*f)) BadTopology("failure probability " + FormatFraction(*f) + " outside [0,1]");
  }
  links_.push_back({a, b, std::move(fail_ab), std::move(fail_ba)});
}

FieldValue Topology::SwitchIndex(std::string_view name) const {
  for (std::size_t i = 0; i < switches_.size(); ++i) {
    if (switches_[i] == name) return static_cast<FieldValue>(i + 1);
  }
  BadTopology("unknown switch '" + Str(name) + "'");
}

const std::string& Topology::SwitchName(FieldValue index) const {
  if (index == 0 || index > switches_.size()) {
    BadTopology("switch index " + std::to_string(index) + " out of range");
  }
  return switches_[index - 1];
}

const Host& Topology::HostById(std::string_view id) const {
  for (const Host& h : hosts_) {
    if (h.id == id) return h;
  }
  BadTopology("unknown host '" + Str(id) + "'");
}

const Host& Topology::HostByIndex(FieldValue index) const {
  if (index == 0 || index > hosts_.size()) {
    BadTopology("host index " + std::to_string(index) + " out of range");
  }
  return hosts_[index - 1];
}

std::vector<const Host*> Topology::HostsAt(FieldValue sw) const {
  std::vector<const Host*> out;
  for (const Host& h : hosts_) {
    if (h.attach.sw == sw) out.push_back(&h);
  }
  return out;
}

std::vector<DirectedLink> Topology::DirectedLinks() const {
  std::vector<DirectedLink> out;
  for (const Link& l : links_) {
    out.push_back({l.a, l.b, l.fail_ab});
    out.push_back({l.b, l.a, l.fail_ba});
  }
  return out;
}

std::vector<std::pair<FieldValue, FieldValue>> Topology::Neighbors(FieldValue sw) const {
  std::vector<std::pair<FieldValue, FieldValue>> out;
  for (const Link& l : links_) {
    if (l.a.sw == sw) out.emplace_back(l.b.sw, l.a.pt);
    if (l.b.sw == sw) out.emplace_back(l.a.sw, l.b.pt);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FieldValue Topology::PortTowards(FieldValue from, FieldValue to) const {
  for (const auto& [nb, port] : Neighbors(from)) {
    if (nb == to) return port;
  }
  BadTopology("no link from '" + SwitchName(from) + "' to '" + SwitchName(to) + "'");
}

FieldSchema Topology::Schema(FieldValue path_count) const {
  FieldValue max_port = 0;
  for (const Host& h : hosts_) max_port = std::max(max_port, h.attach.pt);
  for (const Link& l : links_) max_port = std::max({max_port, l.a.pt, l.b.pt});
  const auto n_switches = static_cast<FieldValue>(switches_.size());
  const auto n_hosts = static_cast<FieldValue>(hosts_.size());
  return FieldSchema({{Str(kSwitchField), 0, n_switches},
                      {Str(kPortField), 0, max_port},
                      {Str(kSrcField), 0, n_hosts},
                      {Str(kDstField), 0, n_hosts},
                      {Str(kPathField), 0, path_count}});
}

std::string Topology::DirectedLinkName(const DirectedLink& l) const {
  return SwitchName(l.from.sw) + ":" + std::to_string(l.from.pt) + "->" + SwitchName(l.to.sw) +
         ":" + std::to_string(l.to.pt);
}

Topology TopologyFromJsonText(std::string_view text) {
  json j = ParseJson(text, "topology");
  if (!j.is_object()) BadTopology("topology must be a JSON object");
  Topology topo;
  for (const json& s : j.value("switches", json::array())) topo.AddSwitch(NameOf(s));
  for (const json& h : j.value("hosts", json::array())) {
    if (!h.is_object() || !h.contains("id") || !h.contains("sw") || !h.contains("pt")) {
      BadTopology("host entries need id, sw and pt: " + h.dump());
    }
    topo.AddHost(NameOf(h["id"]), NameOf(h["sw"]), NaturalOf(h["pt"], "pt"));
  }
  for (const json& l : j.value("links", json::array())) {
    if (!l.is_object() || !l.contains("a") || !l.contains("b") || !l["a"].is_array() ||
        l["a"].size() != 2 || !l["b"].is_array() || l["b"].size() != 2) {
      BadTopology("link entries need a:[sw,pt] and b:[sw,pt]: " + l.dump());
    }
    Rational fail = l.contains("fail") ? RationalOf(l["fail"]) : Rational(0);
    Rational fail_ab = l.contains("fail_ab") ? RationalOf(l["fail_ab"]) : fail;
    Rational fail_ba = l.contains("fail_ba") ? RationalOf(l["fail_ba"]) : fail;
    topo.AddLink(NameOf(l["a"][0]), NaturalOf(l["a"][1], "port"), NameOf(l["b"][0]),
                 NaturalOf(l["b"][1], "port"), fail_ab, fail_ba);
  }
  return topo;
}

Topology LoadTopology(const std::string& path) { return TopologyFromJsonText(ReadFile(path)); }

void TrafficMatrix::Add(FieldValue src, FieldValue dst, Rational amount) {
  if (amount < 0) throw Error(ErrorKind::kInvalidArgument, "negative traffic demand");
  if (src == dst && amount != 0) {
    throw Error(ErrorKind::kInvalidArgument, "nonzero diagonal traffic demand");
  }
  if (amount == 0) return;
  for (Demand& d : demands_) {
    if (d.src == src && d.dst == dst) {
      d.amount += amount;
      return;
    }
  }
  demands_.push_back({src, dst, std::move(amount)});
}

Rational TrafficMatrix::Aggregate() const {
  Rational total = 0;
  for (const Demand& d : demands_) total += d.amount;
  return total;
}

TrafficMatrix TrafficMatrixFromCsvText(std::string_view text, const Topology& topo) {
  TrafficMatrix tm;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(trimmed);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(Trim(col));
    if (cols.size() != 3) {
      throw Error(ErrorKind::kInvalidArgument,
                  "traffic matrix line " + std::to_string(line_no) + ": expected src,dst,demand");
    }
    Rational amount;
    try {
      amount = ParseRational(cols[2]);
    } catch (const Error&) {
      if (line_no == 1 || tm.demands().empty()) continue;  // header
      throw Error(ErrorKind::kInvalidArgument, "traffic matrix line " +
                                                   std::to_string(line_no) +
                                                   ": bad demand '" + cols[2] + "'");
    }
    tm.Add(topo.HostById(cols[0]).index, topo.HostById(cols[1]).index, amount);
  }
  return tm;
}

TrafficMatrix LoadTrafficMatrix(const std::string& path, const Topology& topo) {
  return TrafficMatrixFromCsvText(ReadFile(path), topo);
}

TrafficMatrix UniformTrafficMatrix(const Topology& topo, const Rational& per_pair) {
  TrafficMatrix tm;
  for (const Host& u : topo.hosts()) {
    for (const Host& v : topo.hosts()) {
      if (u.index != v.index) tm.Add(u.index, v.index, per_pair);
    }
  }
  return tm;
}

std::vector<ObliviousPath> ObliviousPathsFromJsonText(std::string_view text,
                                                      const Topology& topo) {
  json j = ParseJson(text, "oblivious path file");
  if (!j.is_array()) BadTopology("oblivious path file must be a JSON list");
  std::vector<ObliviousPath> out;
  for (const json& e : j) {
    if (!e.is_object() || !e.contains("src") || !e.contains("dst") || !e.contains("path") ||
        !e.contains("prob") || !e["path"].is_array()) {
      BadTopology("oblivious entries need src, dst, path and prob: " + e.dump());
    }
    ObliviousPath p;
    p.src = topo.HostById(NameOf(e["src"])).index;
    p.dst = topo.HostById(NameOf(e["dst"])).index;
    for (const json& s : e["path"]) p.switches.push_back(topo.SwitchIndex(NameOf(s)));
    p.prob = RationalOf(e["prob"]);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ObliviousPath> LoadObliviousPaths(const std::string& path, const Topology& topo) {
  return ObliviousPathsFromJsonText(ReadFile(path), topo);
}

RoutingScheme RoutingScheme::Ksp(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "ksp needs k >= 1");
  RoutingScheme s;
  s.kind = Kind::kKsp;
  s.k = k;
  return s;
}

RoutingScheme RoutingScheme::Multi(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "multi needs k >= 1");
  RoutingScheme s;
  s.kind = Kind::kMulti;
  s.k = k;
  return s;
}

RoutingScheme RoutingScheme::Oblivious(std::vector<ObliviousPath> paths) {
  RoutingScheme s;
  s.kind = Kind::kOblivious;
  s.oblivious = std::move(paths);
  return s;
}

std::string RoutingScheme::Name() const {
  switch (kind) {
    case Kind::kSpf: return "spf";
    case Kind::kEcmp: return "ecmp";
    case Kind::kKsp: return "ksp:" + std::to_string(k);
    case Kind::kMulti: return "multi:" + std::to_string(k);
    case Kind::kOblivious: return "oblivious";
    case Kind::kRandomWalk: return "randomwalk";
  }
  return "unknown";
}

RoutingScheme ParseRoutingScheme(std::string_view text, const Topology& topo) {
  auto colon = text.find(':');
  std::string head = Str(text.substr(0, colon));
  std::string arg = colon == std::string_view::npos ? "" : Str(text.substr(colon + 1));
  auto parse_k = [&]() -> std::size_t {
    if (arg.empty() || !std::all_of(arg.begin(), arg.end(), ::isdigit)) {
      throw Error(ErrorKind::kInvalidArgument, "scheme '" + head + "' needs a count, e.g. " + head + ":3");
    }
    return std::stoul(arg);
  };
  if (head == "spf" && arg.empty()) return RoutingScheme::Spf();
  if (head == "ecmp" && arg.empty()) return RoutingScheme::Ecmp();
  if ((head == "randomwalk" || head == "random-walk") && arg.empty()) return RoutingScheme::RandomWalk();
  if (head == "ksp") return RoutingScheme::Ksp(parse_k());
  if (head == "multi") return RoutingScheme::Multi(parse_k());
  if (head == "oblivious" && !arg.empty()) {
    return RoutingScheme::Oblivious(LoadObliviousPaths(arg, topo));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown routing scheme '" + Str(text) + "'");
}

SwitchGraph::SwitchGraph(const Topology& topo) : adjacency_(topo.switch_count() + 1) {
  for (const Link& l : topo.links()) {
    adjacency_[l.a.sw].push_back(l.b.sw);
    adjacency_[l.b.sw].push_back(l.a.sw);
  }
  for (auto& nbs : adjacency_) {
    std::sort(nbs.begin(), nbs.end());
    nbs.erase(std::unique(nbs.begin(), nbs.end()), nbs.end());
  }
}

SwitchGraph::SwitchGraph(std::size_t nodes,
                         const std::vector<std::pair<FieldValue, FieldValue>>& edges)
    : adjacency_(nodes + 1) {
  for (const auto& [u, v] : edges) {
    if (u == 0 || v == 0 || u > nodes || v > nodes || u == v) {
      throw Error(ErrorKind::kInvalidArgument, "bad edge in switch graph");
    }
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbs : adjacency_) {
    std::sort(nbs.begin(), nbs.end());
    nbs.erase(std::unique(nbs.begin(), nbs.end()), nbs.end());
  }
}

namespace {

// BFS distances to `target` avoiding blocked nodes and directed edges.
std::vector<std::optional<std::size_t>> Distances(
    const SwitchGraph& g, FieldValue target, const std::vector<bool>& blocked,
    const std::set<std::pair<FieldValue, FieldValue>>& removed) {
  std::vector<std::optional<std::size_t>> dist(g.size() + 1);
  if (blocked[target]) return dist;
  std::deque<FieldValue> queue{target};
  dist[target] = 0;
  while (!queue.empty()) {
    FieldValue v = queue.front();
    queue.pop_front();
    for (FieldValue u : g.Neighbors(v)) {
      // Edge u→v is traversed when walking from u towards the target.
      if (blocked[u] || dist[u] || removed.contains({u, v})) continue;
      dist[u] = *dist[v] + 1;
      queue.push_back(u);
    }
  }
  return dist;
}

// Lexicographically smallest shortest path, or empty when unreachable.
SwitchPath LexMinShortest(const SwitchGraph& g, FieldValue from, FieldValue to,
                          const std::vector<bool>& blocked,
                          const std::set<std::pair<FieldValue, FieldValue>>& removed) {
  auto dist = Distances(g, to, blocked, removed);
  if (blocked[from] || !dist[from]) return {};
  SwitchPath path{from};
  FieldValue v = from;
  while (v != to) {
    for (FieldValue u : g.Neighbors(v)) {
      if (dist[u] && *dist[u] + 1 == *dist[v] && !removed.contains({v, u})) {
        v = u;
        break;
      }
    }
    path.push_back(v);
  }
  return path;
}

bool PathLess(const SwitchPath& a, const SwitchPath& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<std::optional<std::size_t>> SwitchGraph::DistancesTo(FieldValue target) const {
  return Distances(*this, target, std::vector<bool>(size() + 1, false), {});
}

std::vector<SwitchPath> KShortestPaths(const SwitchGraph& g, FieldValue from, FieldValue to,
                                       std::size_t k) {
  std::vector<SwitchPath> found;
  if (k == 0) return found;
  const std::vector<bool> open(g.size() + 1, false);
  SwitchPath first = LexMinShortest(g, from, to, open, {});
  if (first.empty()) return found;
  found.push_back(std::move(first));
  std::set<SwitchPath, decltype(&PathLess)> candidates(&PathLess);
  while (found.size() < k) {
    const SwitchPath& last = found.back();
    for (std::size_t i = 0; i + 1 < last.size(); ++i) {
      FieldValue spur = last[i];
      SwitchPath root(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      std::set<std::pair<FieldValue, FieldValue>> removed;
      for (const SwitchPath& p : found) {
        if (p.size() > i + 1 && std::equal(root.begin(), root.end(), p.begin())) {
          removed.insert({p[i], p[i + 1]});
        }
      }
      std::vector<bool> blocked(g.size() + 1, false);
      for (std::size_t j = 0; j < i; ++j) blocked[root[j]] = true;
      SwitchPath spur_path = LexMinShortest(g, spur, to, blocked, removed);
      if (spur_path.empty()) continue;
      SwitchPath total = root;
      total.insert(total.end(), spur_path.begin() + 1, spur_path.end());
      if (std::find(found.begin(), found.end(), total) == found.end()) {
        candidates.insert(std::move(total));
      }
    }
    if (candidates.empty()) break;
    found.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return found;
}

Program DirectedLinkProgram(const DirectedLink& link, bool with_dup) {
  std::vector<Program> match = {Test(kSwitchField, link.from.sw), Test(kPortField, link.from.pt)};
  std::vector<Program> rewrite = {Mod(kSwitchField, link.to.sw), Mod(kPortField, link.to.pt)};
  if (with_dup) {
    match.push_back(Program::Dup());
    rewrite.push_back(Program::Dup());
  }
  Program forward = Program::SeqAll(rewrite);
  if (link.fail > 0) forward = Program::Choice(1 - link.fail, forward, Program::Drop());
  return Program::Seq(Program::SeqAll(match), forward);
}

Program LinkProgram(const Link& link, bool with_dup) {
  return Program::Par(DirectedLinkProgram({link.a, link.b, link.fail_ab}, with_dup),
                      DirectedLinkProgram({link.b, link.a, link.fail_ba}, with_dup));
}

Program TopologyProgram(const Topology& topo, bool with_dup) {
  std::vector<Program> links;
  for (const Link& l : topo.links()) links.push_back(LinkProgram(l, with_dup));
  return Program::ParAll(links);
}

Program EdgePredicate(const Topology& topo) {
  std::set<Location> seen;
  std::vector<Program> ports;
  for (const Host& h : topo.hosts()) {
    if (!seen.insert(h.attach).second) continue;
    ports.push_back(Program::Seq(Test(kSwitchField, h.attach.sw), Test(kPortField, h.attach.pt)));
  }
  return Program::ParAll(ports);
}

namespace {

class RoutingBuilder {
 public:
  RoutingBuilder(const Topology& topo, const RoutingScheme& scheme,
                 const TrafficMatrix* demanded)
      : topo_(topo), scheme_(scheme), graph_(topo) {
    if (demanded != nullptr) {
      for (const Demand& d : demanded->demands()) required_.insert({d.src, d.dst});
    } else {
      for (const Host& u : topo.hosts()) {
        for (const Host& v : topo.hosts()) {
          if (u.index != v.index) required_.insert({u.index, v.index});
        }
      }
    }
    for (FieldValue s = 1; s <= topo.switch_count(); ++s) dist_to_.push_back(graph_.DistancesTo(s));
  }

  RoutingProgram Build() {
    for (const auto& [u, v] : required_) {
      FieldValue su = topo_.HostByIndex(u).attach.sw;
      FieldValue sv = topo_.HostByIndex(v).attach.sw;
      if (!Dist(su, sv)) {
        throw Error(ErrorKind::kTopology, "hosts '" + topo_.HostByIndex(u).id + "' and '" +
                                              topo_.HostByIndex(v).id + "' are disconnected");
      }
    }
    bool pinned = scheme_.kind == RoutingScheme::Kind::kKsp ||
                  scheme_.kind == RoutingScheme::Kind::kOblivious;
    if (scheme_.kind == RoutingScheme::Kind::kKsp) AssignKspPaths();
    if (scheme_.kind == RoutingScheme::Kind::kOblivious) AssignObliviousPaths();

    std::vector<Program> per_switch;
    for (FieldValue s = 1; s <= topo_.switch_count(); ++s) {
      Program rules = pinned ? PinnedRules(s) : HopRules(s);
      per_switch.push_back(Program::Seq(Test(kSwitchField, s), rules));
    }
    RoutingProgram out;
    out.program = Program::ParAll(per_switch);
    out.path_count = static_cast<FieldValue>(path_ids_.size());
    out.warnings = std::move(warnings_);
    return out;
  }

 private:
  std::optional<std::size_t> Dist(FieldValue from, FieldValue to) const {
    return dist_to_[to - 1][from];
  }

  Program Deliver(const Host& h) const {
    return Program::Seq(Test(kDstField, h.index), Mod(kPortField, h.attach.pt));
  }

  Program ToNeighbors(FieldValue s, const std::vector<FieldValue>& next) const {
    std::vector<Program> moves;
    for (FieldValue nb : next) moves.push_back(Mod(kPortField, topo_.PortTowards(s, nb)));
    return Program::UniformChoice(moves);
  }

  // Per-hop schemes: the forwarding decision depends only on (sw, dst).
  Program HopRules(FieldValue s) {
    std::vector<Program> rules;
    for (const Host& v : topo_.hosts()) {
      FieldValue d = v.attach.sw;
      if (d == s) {
        rules.push_back(Deliver(v));
        continue;
      }
      std::vector<FieldValue> next = NextHops(s, d);
      if (next.empty()) continue;
      rules.push_back(Program::Seq(Test(kDstField, v.index), ToNeighbors(s, next)));
    }
    return Program::ParAll(rules);
  }

  std::vector<FieldValue> NextHops(FieldValue s, FieldValue d) {
    std::vector<FieldValue> next;
    if (scheme_.kind == RoutingScheme::Kind::kRandomWalk) return graph_.Neighbors(s);
    auto here = Dist(s, d);
    if (!here) return next;
    switch (scheme_.kind) {
      case RoutingScheme::Kind::kSpf:
      case RoutingScheme::Kind::kEcmp:
        for (FieldValue nb : graph_.Neighbors(s)) {
          if (auto there = Dist(nb, d); there && *there + 1 == *here) next.push_back(nb);
        }
        if (scheme_.kind == RoutingScheme::Kind::kSpf && !next.empty()) next.resize(1);
        break;
      case RoutingScheme::Kind::kMulti: {
        auto paths = KShortestPaths(graph_, s, d, scheme_.k);
        if (paths.size() < scheme_.k) WarnFewPaths(s, d, paths.size());
        for (const SwitchPath& p : paths) next.push_back(p[1]);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        break;
      }
      default:
        break;
    }
    return next;
  }

  void WarnFewPaths(FieldValue s, FieldValue d, std::size_t found) {
    warnings_.push_back("only " + std::to_string(found) + " of " + std::to_string(scheme_.k) +
                        " paths exist from '" + topo_.SwitchName(s) + "' to '" +
                        topo_.SwitchName(d) + "'; using all of them");
  }

  FieldValue PathId(const SwitchPath& p) {
    auto [it, inserted] = path_ids_.try_emplace(p, static_cast<FieldValue>(path_ids_.size() + 1));
    if (inserted) path_order_.push_back(p);
    return it->second;
  }

  void AssignKspPaths() {
    for (FieldValue s = 1; s <= topo_.switch_count(); ++s) {
      for (FieldValue d = 1; d <= topo_.switch_count(); ++d) {
        if (s == d || topo_.HostsAt(d).empty() || !Dist(s, d)) continue;
        auto paths = KShortestPaths(graph_, s, d, scheme_.k);
        if (paths.size() < scheme_.k) WarnFewPaths(s, d, paths.size());
        std::vector<Program> choices;
        for (const SwitchPath& p : paths) choices.push_back(Mod(kPathField, PathId(p)));
        for (const Host* v : topo_.HostsAt(d)) {
          ingress_choice_[s].push_back(
              Program::Seq(Test(kDstField, v->index), Program::UniformChoice(choices)));
        }
      }
    }
  }

  void AssignObliviousPaths() {
    std::map<std::pair<FieldValue, FieldValue>, std::vector<const ObliviousPath*>> by_pair;
    for (const ObliviousPath& p : scheme_.oblivious) by_pair[{p.src, p.dst}].push_back(&p);
    for (const auto& [pair, entries] : by_pair) {
      const Host& u = topo_.HostByIndex(pair.first);
      const Host& v = topo_.HostByIndex(pair.second);
      std::vector<Program> choices;
      std::vector<Rational> weights;
      for (const ObliviousPath* p : entries) {
        const SwitchPath& path = p->switches;
        if (path.empty() || path.front() != u.attach.sw || path.back() != v.attach.sw) {
          throw Error(ErrorKind::kTopology, "oblivious path for '" + u.id + "'->'" + v.id +
                                                "' must run from its source to its destination switch");
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) topo_.PortTowards(path[i], path[i + 1]);
        choices.push_back(Mod(kPathField, PathId(path)));
        weights.push_back(p->prob);
      }
      if (u.attach.sw == v.attach.sw) continue;
      try {
        ingress_choice_[u.attach.sw].push_back(Program::SeqAll(
            {Test(kSrcField, u.index), Test(kDstField, v.index), Program::ChoiceAll(choices, weights)}));
      } catch (const Error& e) {
        throw Error(ErrorKind::kTopology,
                    "oblivious paths for '" + u.id + "'->'" + v.id + "': " + e.what());
      }
    }
  }

  // Path-pinning schemes: pick a path id at ingress (path=0), then forward by
  // (path, dst).
  Program PinnedRules(FieldValue s) {
    std::vector<Program> assign = ingress_choice_[s];
    std::vector<Program> deliver;
    for (const Host* v : topo_.HostsAt(s)) {
      assign.push_back(Test(kDstField, v->index));
      deliver.push_back(Deliver(*v));
    }
    Program choose = Program::Par(Program::Seq(Test(kPathField, 0), Program::ParAll(assign)),
                                  Program::Neg(Test(kPathField, 0)));
    std::vector<Program> forward = deliver;
    for (const SwitchPath& p : path_order_) {
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p[i] != s) continue;
        forward.push_back(Program::Seq(Test(kPathField, path_ids_.at(p)),
                                       Mod(kPortField, topo_.PortTowards(s, p[i + 1]))));
      }
    }
    return Program::Seq(choose, Program::ParAll(forward));
  }

  const Topology& topo_;
  const RoutingScheme& scheme_;
  SwitchGraph graph_;
  std::set<std::pair<FieldValue, FieldValue>> required_;
  std::vector<std::vector<std::optional<std::size_t>>> dist_to_;
  std::map<SwitchPath, FieldValue> path_ids_;
  std::vector<SwitchPath> path_order_;
  std::map<FieldValue, std::vector<Program>> ingress_choice_;
  std::vector<std::string> warnings_;
};

}  // namespace

RoutingProgram BuildRoutingProgram(const Topology& topo, const RoutingScheme& scheme,
                                   const TrafficMatrix* demanded) {
  return RoutingBuilder(topo, scheme, demanded).Build();
}

NetworkModel::NetworkModel(const Topology& topo, const RoutingScheme& scheme, bool with_dup,
                           const TrafficMatrix* demanded)
    : routing_(BuildRoutingProgram(topo, scheme, demanded)),
      schema_(topo.Schema(routing_.path_count)),
      topology_(TopologyProgram(topo, with_dup)),
      ingress_(EdgePredicate(topo)),
      egress_(ingress_),
      body_(Program::Seq(routing_.program, topology_)),
      with_dup_(with_dup) {}

Program NetworkModel::Network(std::uint32_t n, bool keep_out) const {
  std::vector<Program> parts = {ingress_, Program::BoundedStar(n, body_), routing_.program};
  if (keep_out) parts.push_back(egress_);
  return Program::SeqAll(parts);
}

Program NetworkProgram(const Topology& topo, const RoutingScheme& scheme, std::uint32_t n,
                       bool keep_out, bool with_dup) {
  return NetworkModel(topo, scheme, with_dup).Network(n, keep_out);
}

Dist TrafficInput(const TrafficMatrix& tm, const Topology& topo, const FieldSchema& schema) {
  Rational aggregate = tm.Aggregate();
  if (aggregate <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "traffic matrix has zero aggregate demand");
  }
  const std::size_t sw = schema.IndexOf(kSwitchField);
  const std::size_t pt = schema.IndexOf(kPortField);
  const std::size_t src = schema.IndexOf(kSrcField);
  const std::size_t dst = schema.IndexOf(kDstField);
  Dist::Weights weights;
  for (const Demand& d : tm.demands()) {
    const Host& u = topo.HostByIndex(d.src);
    Packet p = Packet::Default(schema)
                   .With(sw, u.attach.sw)
                   .With(pt, u.attach.pt)
                   .With(src, d.src)
                   .With(dst, d.dst);
    weights[HistSet::Singleton(History(std::move(p)))] += d.amount / aggregate;
  }
  return Dist::FromWeights(std::move(weights));
}

Program TrafficProgram(const TrafficMatrix& tm, const Topology& topo) {
  Rational aggregate = tm.Aggregate();
  if (aggregate <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "traffic matrix has zero aggregate demand");
  }
  std::vector<Program> gens;
  std::vector<Rational> weights;
  for (const Demand& d : tm.demands()) {
    const Host& u = topo.HostByIndex(d.src);
    gens.push_back(Program::SeqAll({Mod(kSrcField, d.src), Mod(kDstField, d.dst),
                                    Mod(kSwitchField, u.attach.sw), Mod(kPortField, u.attach.pt)}));
    weights.push_back(d.amount / aggregate);
  }
  return Program::ChoiceAll(gens, weights);
}

}  // namespace probnetkat
