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

#include "probnetkat/json_io.h"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "probnetkat/error.h"
#include "probnetkat/rational.h"

namespace probnetkat {
namespace {

[[noreturn]] void Bad(const std::string& message) {
  throw Error(ErrorKind::kInvalidArgument, message);
}

FieldValue NaturalOf(const OrderedJson& j, std::string_view what) {
  if (!j.is_number_integer() || j.get<long long>() < 0 ||
      j.get<unsigned long long>() > 0xffffffffULL) {
    Bad("expected a natural number for " + std::string(what) + ", got " + j.dump());
  }
  return static_cast<FieldValue>(j.get<unsigned long long>());
}

}  // namespace

FieldSchema SchemaFromJson(const OrderedJson& j) {
  if (!j.is_object() || !j.contains("fields") || !j["fields"].is_array()) {
    throw Error(ErrorKind::kSchema, "schema must be an object with a \"fields\" list");
  }
  std::vector<Field> fields;
  for (const OrderedJson& f : j["fields"]) {
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string() || !f.contains("min") ||
        !f.contains("max")) {
      throw Error(ErrorKind::kSchema, "schema fields need name, min and max: " + f.dump());
    }
    Field field;
    field.name = f["name"].get<std::string>();
    try {
      field.min = NaturalOf(f["min"], "min");
      field.max = NaturalOf(f["max"], "max");
    } catch (const Error& e) {
      throw Error(ErrorKind::kSchema, e.what());
    }
    fields.push_back(std::move(field));
  }
  return FieldSchema(std::move(fields));
}

OrderedJson SchemaToJson(const FieldSchema& schema) {
  OrderedJson fields = OrderedJson::array();
  for (const Field& f : schema.fields()) {
    fields.push_back({{"name", f.name}, {"min", f.min}, {"max", f.max}});
  }
  return {{"fields", fields}};
}

Packet PacketFromJson(const OrderedJson& j, const FieldSchema& schema) {
  if (!j.is_object()) Bad("a packet must be a JSON object, got " + j.dump());
  Packet p = Packet::Default(schema);
  for (const auto& [name, value] : j.items()) {
    std::size_t index = schema.IndexOf(name);
    FieldValue v = NaturalOf(value, name);
    schema.CheckValue(index, v);
    p = p.With(index, v);
  }
  return p;
}

OrderedJson PacketToJson(const Packet& p, const FieldSchema& schema) {
  OrderedJson j = OrderedJson::object();
  for (std::size_t i = 0; i < schema.size(); ++i) j[schema.fields()[i].name] = p[i];
  return j;
}

History HistoryFromJson(const OrderedJson& j, const FieldSchema& schema) {
  if (!j.is_array() || j.empty()) Bad("a history must be a non-empty list of packets");
  std::vector<Packet> entries;
  for (const OrderedJson& p : j) entries.push_back(PacketFromJson(p, schema));
  return History(std::move(entries));
}

OrderedJson HistoryToJson(const History& h, const FieldSchema& schema) {
  OrderedJson j = OrderedJson::array();
  for (const Packet& p : h.entries()) j.push_back(PacketToJson(p, schema));
  return j;
}

HistSet HistSetFromJson(const OrderedJson& j, const FieldSchema& schema) {
  if (!j.is_array()) Bad("a history set must be a list of histories");
  std::vector<History> members;
  for (const OrderedJson& h : j) members.push_back(HistoryFromJson(h, schema));
  return HistSet(std::move(members));
}

OrderedJson HistSetToJson(const HistSet& s, const FieldSchema& schema) {
  OrderedJson j = OrderedJson::array();
  for (const History& h : s) j.push_back(HistoryToJson(h, schema));
  return j;
}

Dist DistFromJson(const OrderedJson& j, const FieldSchema& schema) {
  if (!j.is_array()) Bad("a distribution must be a list of {set, prob} entries");
  Dist::Weights weights;
  for (const OrderedJson& e : j) {
    if (!e.is_object() || !e.contains("set") || !e.contains("prob")) {
      Bad("distribution entries need set and prob: " + e.dump());
    }
    const OrderedJson& prob = e["prob"];
    Rational r;
    if (prob.is_string()) {
      r = ParseRational(prob.get<std::string>());
    } else if (prob.is_number()) {
      r = ParseRational(prob.dump());
    } else {
      Bad("probability must be a string or number, got " + prob.dump());
    }
    weights[HistSetFromJson(e["set"], schema)] += r;
  }
  return Dist::FromWeights(std::move(weights));
}

OrderedJson DistToJson(const Dist& d, const FieldSchema& schema) {
  OrderedJson j = OrderedJson::array();
  for (const auto& [set, prob] : d) {
    j.push_back({{"set", HistSetToJson(set, schema)}, {"prob", FormatFraction(prob)}});
  }
  return j;
}

OrderedJson ParseJsonText(std::string_view text, std::string_view what) {
  try {
    return OrderedJson::parse(text);
  } catch (const OrderedJson::parse_error& e) {
    Bad("malformed " + std::string(what) + ": " + e.what());
  }
}

OrderedJson ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseJsonText(ss.str(), path);
}

}  // namespace probnetkat
