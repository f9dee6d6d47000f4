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

#include "probnetkat/cli.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "probnetkat/analysis.h"
#include "probnetkat/error.h"
#include "probnetkat/interpreter.h"
#include "probnetkat/json_io.h"
#include "probnetkat/measure.h"
#include "probnetkat/netgen.h"
#include "probnetkat/syntax.h"

namespace probnetkat {
namespace {

constexpr int kVerificationFailed = 4;

constexpr const char* kFormats = R"(File formats:
  Program (.nkat)   drop | skip | dup | f=n | f:=n | ~a | p & q | p ; q
                    | p +[r] q (r defaults to 1/2) | p* | p^n
                    | if a then p else q | while a do p | ( p ); '#' comments.
                    Precedence from loosest: &, +[r], ;, prefix ~, postfix.
  Schema JSON       {"fields":[{"name":"sw","min":0,"max":4}, ...]}; must
                    declare sw and pt.
  Distribution JSON [{"set":[history, ...], "prob":"num/den"}, ...]; a history
                    is a list of packets, head first; a packet is an object
                    of field values (missing fields take their minimum).
  Topology JSON     {"switches":["S1",...],
                     "hosts":[{"id":"h1","sw":"S1","pt":1}, ...],
                     "links":[{"a":["S1",2],"b":["S2",1],"fail":"1/10"}, ...]};
                    "fail_ab"/"fail_ba" override one direction.
  Traffic CSV       src,dst,demand per line (host ids, rational demand); an
                    optional header line and '#' comments are skipped.
  Oblivious JSON    [{"src":"h1","dst":"h3","path":["S1","S2","S3"],
                      "prob":"1/2"}, ...]
  Output CSV        n,query,value_num,value_den,value_float,stabilized
Exit codes: 0 ok, 1 IO error, 2 language error, 3 capacity exceeded,
  4 verification failed.)";

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program ParseProgramFile(const std::string& path) {
  std::string text = ReadText(path);
  try {
    return Parse(text);
  } catch (const ParseError& e) {
    throw Error(ErrorKind::kSyntax, path + ":" + e.what());
  }
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
}

struct CheckArgs {
  std::string program;
};

int DoCheck(const CheckArgs& a, std::ostream& out) {
  Program p = ParseProgramFile(a.program);
  Kind kind = Typecheck(p);
  out << a.program << ": ok (" << (kind == Kind::kPredicate ? "predicate" : "command")
      << (ContainsStar(p) ? ", iterates" : "") << ")\n";
  return 0;
}

struct RunArgs {
  std::string program;
  std::string input;
  std::string schema;
  std::optional<std::uint32_t> n;
};

int DoRun(const RunArgs& a, std::ostream& out) {
  FieldSchema schema = SchemaFromJson(ReadJsonFile(a.schema));
  Program p = ParseProgramFile(a.program);
  Dist input = DistFromJson(ReadJsonFile(a.input), schema);
  if (ContainsStar(p)) {
    if (!a.n) {
      throw Error(ErrorKind::kApproximationRequired,
                  "program iterates; pass --n to evaluate its n-th approximant");
    }
    p = Approximant(p, *a.n);
  }
  Interpreter interp(schema);
  out << DistToJson(interp.EvalDist(p, input), schema).dump(2) << "\n";
  return 0;
}

struct CaseStudyArgs {
  std::string topology;
  std::string traffic;
  std::string scheme = "ecmp";
  std::vector<std::string> queries;
  std::uint32_t n_max = 10;
  std::size_t window = 2;
  bool float_mode = false;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "casestudy_out";
};

int DoCaseStudy(const CaseStudyArgs& a, std::ostream& out, std::ostream& err) {
  Topology topo = LoadTopology(a.topology);
  TrafficMatrix tm = LoadTrafficMatrix(a.traffic, topo);
  RoutingScheme scheme = ParseRoutingScheme(a.scheme, topo);
  std::vector<QueryKind> kinds;
  for (const std::string& q : a.queries.empty() ? std::vector<std::string>{"maxcong"} : a.queries) {
    auto kind = ParseQueryKind(q);
    if (!kind) throw Error(ErrorKind::kInvalidArgument, "unknown query '" + q + "'");
    if (std::find(kinds.begin(), kinds.end(), *kind) == kinds.end()) kinds.push_back(*kind);
  }
  bool with_dup = !(kinds.size() == 1 && kinds.front() == QueryKind::kThroughput);
  NetworkAnalyzer analyzer(topo, scheme, tm, with_dup);
  for (const std::string& w : analyzer.model().warnings()) err << "warning: " << w << "\n";

  std::error_code ec;
  std::filesystem::create_directories(a.out_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create '" + a.out_dir + "': " + ec.message());

  ConvergeOptions options;
  options.n_max = a.n_max;
  options.window = a.window;
  options.float_mode = a.float_mode;

  OrderedJson summary;
  summary["topology"] = a.topology;
  summary["traffic"] = a.traffic;
  summary["scheme"] = scheme.Name();
  summary["mode"] = a.float_mode ? "float" : "exact";
  summary["n_max"] = a.n_max;
  summary["window"] = a.window;
  summary["aggregate_demand"] = FormatFraction(tm.Aggregate());
  summary["with_dup"] = with_dup;
  if (a.seed) summary["seed"] = *a.seed;
  summary["warnings"] = analyzer.model().warnings();
  summary["queries"] = OrderedJson::array();
  for (QueryKind kind : kinds) {
    ConvergenceSeries s = Converge(analyzer, kind, options);
    std::string file = QueryKindName(kind) + ".csv";
    std::ostringstream csv;
    WriteConvergenceCsv(s, csv);
    WriteText(std::filesystem::path(a.out_dir) / file, csv.str());
    OrderedJson q = SeriesSummaryJson(s);
    q["csv"] = file;
    if (kind == QueryKind::kMaxCongestion && !s.rows.empty()) {
      q["link"] = topo.DirectedLinkName(analyzer.MaxCongestion(s.rows.back().n).link);
    }
    if (kind == QueryKind::kThroughput && !s.rows.empty()) {
      q["delivered_demand"] = FormatFraction(analyzer.DeliveredDemand(s.rows.back().n));
    }
    summary["queries"].push_back(std::move(q));
  }
  std::string text = summary.dump(2) + "\n";
  WriteText(std::filesystem::path(a.out_dir) / "summary.json", text);
  out << text;
  return 0;
}

struct VerifyArgs {
  std::string input;
  std::string schema;
};

int DoVerifyMeasure(const VerifyArgs& a, std::ostream& out) {
  FieldSchema schema = SchemaFromJson(ReadJsonFile(a.schema));
  Dist mu = DistFromJson(ReadJsonFile(a.input), schema);
  HistSet basis_set;
  for (const auto& [set, w] : mu) basis_set = basis_set.Union(set);
  FiniteBasis basis(basis_set);
  CorrespondenceReport report = CorrespondenceCheck(mu, basis);
  OrderedJson j;
  j["basis_size"] = basis.size();
  j["pass"] = report.pass;
  if (!report.pass) j["first_discrepancy"] = report.first_discrepancy;
  OrderedJson rows = OrderedJson::array();
  for (std::uint32_t mask = 0; mask < basis.subset_count(); ++mask) {
    rows.push_back({{"subset", HistSetToJson(basis.Subset(mask), schema)},
                    {"basic_open", FormatFraction(report.basic_open_masses[mask])},
                    {"atom", FormatFraction(report.atom_masses[mask])}});
  }
  j["subsets"] = std::move(rows);
  out << j.dump(2) << "\n";
  return report.pass ? 0 : kVerificationFailed;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpreter and analysis toolkit for probabilistic NetKAT", "pnk"};
  app.footer(kFormats);
  app.require_subcommand(1);

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand("check", "Parse and typecheck a program");
  check_cmd->add_option("program", check.program, "Program file")->required();

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Evaluate a program on an input distribution");
  run_cmd->add_option("program", run.program, "Program file")->required();
  run_cmd->add_option("--input", run.input, "Distribution JSON")->required();
  run_cmd->add_option("--schema", run.schema, "Schema JSON")->required();
  run_cmd->add_option("--n", run.n, "Approximant index for iterating programs");

  CaseStudyArgs cs;
  CLI::App* cs_cmd = app.add_subcommand("casestudy", "Convergence series for network queries");
  cs_cmd->add_option("--topology", cs.topology, "Topology JSON")->required();
  cs_cmd->add_option("--traffic", cs.traffic, "Traffic matrix CSV")->required();
  cs_cmd->add_option("--scheme", cs.scheme,
                     "spf | ecmp | ksp:K | multi:K | oblivious:FILE | randomwalk")
      ->capture_default_str();
  cs_cmd->add_option("--query", cs.queries, "maxcong | throughput | latency | loops (repeatable)");
  cs_cmd->add_option("--n-max", cs.n_max, "Largest approximant index")->capture_default_str();
  cs_cmd->add_option("--window", cs.window, "Stabilization window")->capture_default_str();
  cs_cmd->add_flag("--float", cs.float_mode, "Stabilize on |delta| <= 1e-9 (values stay exact)");
  cs_cmd->add_option("--seed", cs.seed, "Reserved; exact evaluation uses no randomness");
  cs_cmd->add_option("--out", cs.out_dir, "Output directory")->capture_default_str();

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify-measure", "Check the basic-open/atom correspondence for a distribution");
  verify_cmd->add_option("--input", verify.input, "Distribution JSON")->required();
  verify_cmd->add_option("--schema", verify.schema, "Schema JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*check_cmd) return DoCheck(check, out);
    if (*run_cmd) return DoRun(run, out);
    if (*cs_cmd) return DoCaseStudy(cs, out, err);
    if (*verify_cmd) return DoVerifyMeasure(verify, out);
  } catch (const Error& e) {
    err << "error: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace probnetkat
