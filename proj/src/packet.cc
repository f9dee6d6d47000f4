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

#include "probnetkat/packet.h"

#include <algorithm>
#include <cstring>
#include <functional>
#include <iterator>
#include <set>
#include <string>
#include <utility>

#include "probnetkat/error.h"

namespace probnetkat {

FieldSchema::FieldSchema(std::vector<Field> fields) : fields_(std::move(fields)) {
  std::set<std::string> seen;
  for (const Field& f : fields_) {
    if (f.name.empty()) throw Error(ErrorKind::kSchema, "empty field name");
    if (!seen.insert(f.name).second) {
      throw Error(ErrorKind::kSchema, "duplicate field '" + f.name + "'");
    }
    if (f.min > f.max) {
      throw Error(ErrorKind::kSchema, "empty range for field '" + f.name + "'");
    }
  }
  for (const char* required : {"sw", "pt"}) {
    if (!seen.contains(required)) {
      throw Error(ErrorKind::kSchema,
                  std::string("schema lacks required field '") + required + "'");
    }
  }
}

std::optional<std::size_t> FieldSchema::Find(std::string_view name) const {
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t FieldSchema::IndexOf(std::string_view name) const {
  if (auto i = Find(name)) return *i;
  throw Error(ErrorKind::kSchema, "unknown field '" + std::string(name) + "'");
}

void FieldSchema::CheckValue(std::size_t index, FieldValue value) const {
  const Field& f = fields_.at(index);
  if (value < f.min || value > f.max) {
    throw Error(ErrorKind::kSchema,
                "value " + std::to_string(value) + " outside range [" +
                    std::to_string(f.min) + "," + std::to_string(f.max) +
                    "] of field '" + f.name + "'");
  }
}

bool operator==(const FieldSchema& a, const FieldSchema& b) {
  if (a.fields_.size() != b.fields_.size()) return false;
  for (std::size_t i = 0; i < a.fields_.size(); ++i) {
    const Field& x = a.fields_[i];
    const Field& y = b.fields_[i];
    if (x.name != y.name || x.min != y.min || x.max != y.max) return false;
  }
  return true;
}

Packet Packet::Default(const FieldSchema& schema) {
  std::vector<FieldValue> values;
  values.reserve(schema.size());
  for (const Field& f : schema.fields()) values.push_back(f.min);
  return Packet(std::move(values));
}

FieldValue Packet::Get(const FieldSchema& schema, std::string_view field) const {
  return values_.at(schema.IndexOf(field));
}

Packet Packet::Update(const FieldSchema& schema, std::string_view field,
                      FieldValue value) const {
  std::size_t index = schema.IndexOf(field);
  schema.CheckValue(index, value);
  if (values_.size() != schema.size()) {
    throw Error(ErrorKind::kSchema, "packet width does not match schema");
  }
  return With(index, value);
}

Packet Packet::With(std::size_t index, FieldValue value) const {
  Packet result = *this;
  result.values_[index] = value;
  return result;
}

History::History(std::vector<Packet> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "history must be nonempty");
  }
}

History History::Dup() const {
  std::vector<Packet> entries;
  entries.reserve(entries_.size() + 1);
  entries.push_back(entries_.front());
  entries.insert(entries.end(), entries_.begin(), entries_.end());
  return History(std::move(entries));
}

History History::WithHead(Packet head) const {
  History result = *this;
  result.entries_.front() = std::move(head);
  return result;
}

std::strong_ordering History::operator<=>(const History& other) const {
  if (auto c = entries_.size() <=> other.entries_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      entries_.begin(), entries_.end(), other.entries_.begin(),
      other.entries_.end());
}

HistSet::HistSet(std::initializer_list<History> members)
    : HistSet(std::vector<History>(members)) {}

HistSet::HistSet(std::vector<History> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

HistSet HistSet::Singleton(History h) {
  std::vector<History> members;
  members.push_back(std::move(h));
  return HistSet(SortedTag{}, std::move(members));
}

bool HistSet::Contains(const History& h) const {
  return std::binary_search(members_.begin(), members_.end(), h);
}

bool HistSet::IsSubsetOf(const HistSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

HistSet HistSet::Union(const HistSet& other) const {
  if (other.empty()) return *this;
  if (empty()) return other;
  std::vector<History> out;
  out.reserve(members_.size() + other.members_.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  return HistSet(SortedTag{}, std::move(out));
}

HistSet HistSet::Intersection(const HistSet& other) const {
  std::vector<History> out;
  std::set_intersection(members_.begin(), members_.end(),
                        other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return HistSet(SortedTag{}, std::move(out));
}

HistSet HistSet::Difference(const HistSet& other) const {
  std::vector<History> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  return HistSet(SortedTag{}, std::move(out));
}

std::size_t HistSet::Hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ members_.size();
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const History& hist : members_) {
    mix(hist.length());
    for (const Packet& p : hist.entries()) {
      for (FieldValue v : p.values()) mix(v);
    }
  }
  return h;
}

std::strong_ordering HistSet::operator<=>(const HistSet& other) const {
  if (auto c = members_.size() <=> other.members_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(
      members_.begin(), members_.end(), other.members_.begin(),
      other.members_.end());
}

std::string DebugString(const Packet& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.width(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ">";
}

std::string DebugString(const History& h) {
  std::string out = "[";
  for (std::size_t i = 0; i < h.length(); ++i) {
    if (i > 0) out += ",";
    out += DebugString(h.entries()[i]);
  }
  return out + "]";
}

std::string DebugString(const HistSet& s) {
  std::string out = "{";
  bool first = true;
  for (const History& h : s) {
    if (!first) out += ",";
    first = false;
    out += DebugString(h);
  }
  return out + "}";
}

namespace {

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t U32() {
    if (bytes_.size() - pos_ < 4) {
      throw Error(ErrorKind::kInvalidArgument, "truncated history-set encoding");
    }
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string CanonicalBytes(const HistSet& set) {
  std::string out;
  PutU32(out, static_cast<std::uint32_t>(set.size()));
  for (const History& h : set) {
    PutU32(out, static_cast<std::uint32_t>(h.length()));
    PutU32(out, static_cast<std::uint32_t>(h.head().width()));
    for (const Packet& p : h.entries()) {
      for (FieldValue v : p.values()) PutU32(out, v);
    }
  }
  return out;
}

HistSet FromCanonicalBytes(std::string_view bytes) {
  ByteReader in(bytes);
  std::uint32_t count = in.U32();
  std::vector<History> members;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t length = in.U32();
    std::uint32_t width = in.U32();
    if (length == 0) {
      throw Error(ErrorKind::kInvalidArgument, "zero-length history in encoding");
    }
    std::vector<Packet> entries;
    for (std::uint32_t j = 0; j < length; ++j) {
      std::vector<FieldValue> values;
      for (std::uint32_t k = 0; k < width; ++k) values.push_back(in.U32());
      entries.emplace_back(std::move(values));
    }
    members.emplace_back(std::move(entries));
  }
  if (!in.done()) {
    throw Error(ErrorKind::kInvalidArgument, "trailing bytes in history-set encoding");
  }
  HistSet result(members);
  if (result.size() != members.size() ||
      !std::equal(result.begin(), result.end(), members.begin())) {
    throw Error(ErrorKind::kInvalidArgument, "history-set encoding is not canonical");
  }
  return result;
}

}  // namespace probnetkat
