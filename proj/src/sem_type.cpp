#include "agc/sem_type.hpp"

#include <cassert>

#include "agc/errors.hpp"

namespace agc {

SemType SemType::set_of(const SemType& element) {
  if (element.set_depth() + 1 > kMaxSetDepth) {
    throw TypeError(TypeErrorKind::NestingTooDeep,
                    "set nesting deeper than " + std::to_string(kMaxSetDepth) +
                        " in set<" + element.str() + ">");
  }
  return SemType(Kind::Set, std::make_shared<const SemType>(element));
}

const SemType& SemType::element() const {
  assert(kind_ == Kind::Set);
  return *element_;
}

int SemType::set_depth() const {
  return kind_ == Kind::Set ? 1 + element_->set_depth() : 0;
}

std::string SemType::str() const {
  switch (kind_) {
    case Kind::Nat: return "nat";
    case Kind::Coord: return "coord";
    case Kind::Bool: return "bool";
    case Kind::Set: return "set<" + element_->str() + ">";
  }
  return "?";
}

bool operator==(const SemType& a, const SemType& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != SemType::Kind::Set) return true;
  return *a.element_ == *b.element_;
}

}  // namespace agc
