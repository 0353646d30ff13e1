#pragma once

#include <memory>
#include <string>

namespace agc {

/// Semantic type of a port, variable or term: nat, coord, bool or set<T>.
/// Equality is structural. Set nesting is limited to two levels.
class SemType {
 public:
  enum class Kind { Nat, Coord, Bool, Set };

  static constexpr int kMaxSetDepth = 2;

  static SemType nat() { return SemType(Kind::Nat, nullptr); }
  static SemType coord() { return SemType(Kind::Coord, nullptr); }
  static SemType boolean() { return SemType(Kind::Bool, nullptr); }
  // Throws TypeError(NestingTooDeep) past kMaxSetDepth.
  static SemType set_of(const SemType& element);

  Kind kind() const { return kind_; }
  bool is_set() const { return kind_ == Kind::Set; }
  // Only valid for set types.
  const SemType& element() const;
  int set_depth() const;

  std::string str() const;

  friend bool operator==(const SemType& a, const SemType& b);
  friend bool operator!=(const SemType& a, const SemType& b) { return !(a == b); }

 private:
  SemType(Kind kind, std::shared_ptr<const SemType> element)
      : kind_(kind), element_(std::move(element)) {}

  Kind kind_;
  std::shared_ptr<const SemType> element_;
};

}  // namespace agc
