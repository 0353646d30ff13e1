#include "agc/value.hpp"

#include <algorithm>

namespace agc {

Value Value::set(Elements elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return sorted_set(std::move(elements));
}

Value Value::sorted_set(Elements elements) {
  return Value(Rep(std::make_shared<const Elements>(std::move(elements))));
}

bool Value::contains(const Value& v) const {
  const auto& e = elements();
  return std::binary_search(e.begin(), e.end(), v);
}

bool Value::subset_of(const Value& other) const {
  const auto& a = elements();
  const auto& b = other.elements();
  if (a.size() > b.size()) return false;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string Value::str() const {
  switch (kind()) {
    case Kind::Nat: return std::to_string(as_nat());
    case Kind::Coord: {
      auto c = as_coord();
      return "(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
    }
    case Kind::Bool: return as_bool() ? "true" : "false";
    case Kind::Set: {
      std::string out = "{";
      bool first = true;
      for (const auto& e : elements()) {
        if (!first) out += ", ";
        first = false;
        out += e.str();
      }
      return out + "}";
    }
  }
  return "?";
}

bool operator==(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (a.is_set()) {
    const auto& pa = std::get<Value::SetRep>(a.rep_);
    const auto& pb = std::get<Value::SetRep>(b.rep_);
    return pa == pb || *pa == *pb;
  }
  return a.rep_ == b.rep_;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.rep_.index() <=> b.rep_.index(); c != 0) return c;
  switch (a.kind()) {
    case Value::Kind::Nat: return a.as_nat() <=> b.as_nat();
    case Value::Kind::Coord: return a.as_coord() <=> b.as_coord();
    case Value::Kind::Bool: return a.as_bool() <=> b.as_bool();
    case Value::Kind::Set: {
      const auto& ea = a.elements();
      const auto& eb = b.elements();
      if (&ea == &eb) return std::strong_ordering::equal;
      return std::lexicographical_compare_three_way(ea.begin(), ea.end(),
                                                    eb.begin(), eb.end());
    }
  }
  return std::strong_ordering::equal;
}

Value set_difference(const Value& a, const Value& b) {
  Value::Elements out;
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(),
                      std::back_inserter(out));
  return Value::sorted_set(std::move(out));
}

bool value_has_type(const Value& v, const SemType& type) {
  switch (type.kind()) {
    case SemType::Kind::Nat: return v.kind() == Value::Kind::Nat;
    case SemType::Kind::Coord: return v.kind() == Value::Kind::Coord;
    case SemType::Kind::Bool: return v.kind() == Value::Kind::Bool;
    case SemType::Kind::Set:
      if (!v.is_set()) return false;
      return std::all_of(v.elements().begin(), v.elements().end(),
                         [&](const Value& e) { return value_has_type(e, type.element()); });
  }
  return false;
}

std::string format_bindings(const Bindings& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : b) {
    if (!first) out += "; ";
    first = false;
    out += name + "=" + value.str();
  }
  return out + "}";
}

}  // namespace agc
