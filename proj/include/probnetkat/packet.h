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

// Packets, packet histories and finite sets of histories.
//
// A packet is a total assignment of bounded naturals to the fields declared in
// a FieldSchema. A history is a nonempty sequence of packets whose first entry
// (the head) is the packet's current state; the remaining entries are the
// states logged by `dup`. A HistSet is a finite set of histories kept sorted
// in canonical order, so two sets are equal iff their member vectors are.

#ifndef PROBNETKAT_PACKET_H_
#define PROBNETKAT_PACKET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace probnetkat {

using FieldValue = std::uint32_t;

struct Field {
  std::string name;
  FieldValue min = 0;
  FieldValue max = 0;
};

class FieldSchema {
 public:
  // Throws Error(kSchema) if names repeat, a range is empty, or "sw"/"pt" is
  // missing.
  explicit FieldSchema(std::vector<Field> fields);

  const std::vector<Field>& fields() const { return fields_; }
  std::size_t size() const { return fields_.size(); }

  std::optional<std::size_t> Find(std::string_view name) const;
  // Like Find, but throws Error(kSchema) for unknown names.
  std::size_t IndexOf(std::string_view name) const;
  // Throws Error(kSchema) when `value` is outside the field's range.
  void CheckValue(std::size_t index, FieldValue value) const;

  friend bool operator==(const FieldSchema& a, const FieldSchema& b);

 private:
  std::vector<Field> fields_;
};

class Packet {
 public:
  Packet() = default;
  explicit Packet(std::vector<FieldValue> values) : values_(std::move(values)) {}
  Packet(std::initializer_list<FieldValue> values) : values_(values) {}

  // Every field at its minimum.
  static Packet Default(const FieldSchema& schema);

  FieldValue operator[](std::size_t index) const { return values_[index]; }
  FieldValue Get(const FieldSchema& schema, std::string_view field) const;
  const std::vector<FieldValue>& values() const { return values_; }
  std::size_t width() const { return values_.size(); }

  // π[f:=n], checked against the schema.
  Packet Update(const FieldSchema& schema, std::string_view field,
                FieldValue value) const;
  // Unchecked positional variant for the interpreter's hot path.
  Packet With(std::size_t index, FieldValue value) const;

  auto operator<=>(const Packet&) const = default;
  bool operator==(const Packet&) const = default;

 private:
  std::vector<FieldValue> values_;
};

class History {
 public:
  // Single-packet history π::⟨⟩.
  explicit History(Packet head) : entries_{std::move(head)} {}
  // entries[0] is the head. Throws Error(kInvalidArgument) when empty.
  explicit History(std::vector<Packet> entries);

  const Packet& head() const { return entries_.front(); }
  const std::vector<Packet>& entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }

  // head::h
  History Dup() const;
  History WithHead(Packet head) const;

  // Canonical order: shorter histories first, then entrywise lexicographic.
  std::strong_ordering operator<=>(const History& other) const;
  bool operator==(const History&) const = default;

 private:
  std::vector<Packet> entries_;
};

class HistSet {
 public:
  HistSet() = default;
  HistSet(std::initializer_list<History> members);
  explicit HistSet(std::vector<History> members);

  static HistSet Singleton(History h);

  const std::vector<History>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool Contains(const History& h) const;
  bool IsSubsetOf(const HistSet& other) const;

  HistSet Union(const HistSet& other) const;
  HistSet Intersection(const HistSet& other) const;
  HistSet Difference(const HistSet& other) const;

  std::size_t Hash() const;

  // Smaller sets first, then lexicographic over canonical members.
  std::strong_ordering operator<=>(const HistSet& other) const;
  bool operator==(const HistSet&) const = default;

 private:
  struct SortedTag {};
  HistSet(SortedTag, std::vector<History> members)
      : members_(std::move(members)) {}

  std::vector<History> members_;
};

struct HistSetHash {
  std::size_t operator()(const HistSet& s) const { return s.Hash(); }
};

// Schema-free renderings for diagnostics, e.g. "{[<1,2>,<1,1>]}".
std::string DebugString(const Packet& p);
std::string DebugString(const History& h);
std::string DebugString(const HistSet& s);

// Injective byte encoding: member count, then per history its length, width
// and values, all as little-endian u32, members in canonical order.
std::string CanonicalBytes(const HistSet& set);
// Inverse of CanonicalBytes. Throws Error(kInvalidArgument) on malformed
// input.
HistSet FromCanonicalBytes(std::string_view bytes);

}  // namespace probnetkat

#endif  // PROBNETKAT_PACKET_H_
