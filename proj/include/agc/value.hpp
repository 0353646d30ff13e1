#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "agc/sem_type.hpp"

namespace agc {

using Nat = std::uint64_t;

struct Coord {
  Nat x = 0;
  Nat y = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Runtime value: nat, coord, bool or a finite set.
///
/// Sets are stored as sorted, duplicate-free vectors behind a shared pointer,
/// so copies are cheap and equality/ordering are structural. Elements of one
/// set are expected to share a type; the set itself does not record it.
class Value {
 public:
  enum class Kind { Nat, Coord, Bool, Set };
  using Elements = std::vector<Value>;

  Value() : rep_(Nat{0}) {}
  static Value nat(Nat n) { return Value(Rep(n)); }
  static Value coord(Nat x, Nat y) { return Value(Rep(Coord{x, y})); }
  static Value coord(Coord c) { return Value(Rep(c)); }
  static Value boolean(bool b) { return Value(Rep(b)); }
  // Sorts and removes duplicates.
  static Value set(Elements elements);
  // Caller guarantees `elements` is already sorted and unique.
  static Value sorted_set(Elements elements);
  static Value empty_set() { return sorted_set({}); }

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is_set() const { return kind() == Kind::Set; }

  Nat as_nat() const { return std::get<Nat>(rep_); }
  Coord as_coord() const { return std::get<Coord>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }
  const Elements& elements() const { return *std::get<SetRep>(rep_); }

  bool contains(const Value& v) const;
  bool subset_of(const Value& other) const;
  std::size_t size() const { return elements().size(); }

  std::string str() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  using SetRep = std::shared_ptr<const Elements>;
  using Rep = std::variant<Nat, Coord, bool, SetRep>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

Value set_difference(const Value& a, const Value& b);

/// True when `v` is a well-formed inhabitant of `type`.
bool value_has_type(const Value& v, const SemType& type);

/// Named values, ordered by name for stable printing.
using Bindings = std::map<std::string, Value>;

std::string format_bindings(const Bindings& b);

}  // namespace agc
