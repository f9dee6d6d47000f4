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

#ifndef PROBNETKAT_JSON_IO_H_
#define PROBNETKAT_JSON_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "probnetkat/dist.h"
#include "probnetkat/packet.h"

namespace probnetkat {

using OrderedJson = nlohmann::ordered_json;

// {"fields":[{"name":"sw","min":0,"max":4}, ...]}
FieldSchema SchemaFromJson(const OrderedJson& j);
OrderedJson SchemaToJson(const FieldSchema& schema);

// A packet is an object keyed by field name, written in schema order. Missing
// fields read as the field minimum; unknown fields are rejected.
Packet PacketFromJson(const OrderedJson& j, const FieldSchema& schema);
OrderedJson PacketToJson(const Packet& p, const FieldSchema& schema);

// A history is a non-empty list of packets, head first.
History HistoryFromJson(const OrderedJson& j, const FieldSchema& schema);
OrderedJson HistoryToJson(const History& h, const FieldSchema& schema);

HistSet HistSetFromJson(const OrderedJson& j, const FieldSchema& schema);
OrderedJson HistSetToJson(const HistSet& s, const FieldSchema& schema);

// [{"set":[history...], "prob":"num/den"}, ...]; entries appear in canonical
// set order.
Dist DistFromJson(const OrderedJson& j, const FieldSchema& schema);
OrderedJson DistToJson(const Dist& d, const FieldSchema& schema);

// Parses JSON text, reporting malformed input as Error(kInvalidArgument).
OrderedJson ParseJsonText(std::string_view text, std::string_view what);
// Reads and parses a JSON file; unreadable files raise Error(kIo).
OrderedJson ReadJsonFile(const std::string& path);

}  // namespace probnetkat

#endif  // PROBNETKAT_JSON_IO_H_
