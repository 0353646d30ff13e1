#include "reference.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace agc::ref {

namespace {

bool member(const Value& set, const Value& v) {
  for (const auto& e : set.elements()) {
    if (e == v) return true;
  }
  return false;
}

}  // namespace

Value term(const Term& t, const Bindings& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) throw std::runtime_error("unbound " + t.name());
      return it->second;
    }
    case Term::Kind::Lit: return t.value();
    case Term::Kind::Diff: {
      Value a = term(t.lhs(), env), b = term(t.rhs(), env);
      Value::Elements out;
      for (const auto& e : a.elements()) {
        if (!member(b, e)) out.push_back(e);
      }
      return Value::set(out);
    }
    case Term::Kind::Pair:
      return Value::coord(term(t.lhs(), env).as_nat(), term(t.rhs(), env).as_nat());
  }
  throw std::logic_error("term kind");
}

bool eval(const Formula& f, const Bindings& env, const Interp& interp) {
  using K = Formula::Kind;
  auto arg = [&](int i) { return term(f.terms()[i], env); };
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Not: return !eval(f.operands()[0], env, interp);
    case K::And: {
      bool r = true;
      for (const auto& g : f.operands()) r = eval(g, env, interp) && r;
      return r;
    }
    case K::Or: {
      bool r = false;
      for (const auto& g : f.operands()) r = eval(g, env, interp) || r;
      return r;
    }
    case K::Implies: return !eval(f.operands()[0], env, interp) || eval(f.operands()[1], env, interp);
    case K::Forall:
    case K::Exists: {
      const Value domain = term(f.domain(), env);
      const bool all = f.kind() == K::Forall;
      for (const auto& e : domain.elements()) {
        Bindings inner = env;
        if (f.binder().is_pair()) {
          inner[f.binder().first] = Value::nat(e.as_coord().x);
          inner[*f.binder().second] = Value::nat(e.as_coord().y);
        } else {
          inner[f.binder().first] = e;
        }
        if (eval(f.body(), inner, interp) != all) return !all;
      }
      return all;
    }
    case K::In: return member(arg(1), arg(0));
    case K::SubsetEq: {
      Value a = arg(0), b = arg(1);
      for (const auto& e : a.elements()) {
        if (!member(b, e)) return false;
      }
      return true;
    }
    case K::Eq: return arg(0) == arg(1);
    case K::Neq: return !(arg(0) == arg(1));
    case K::Lt: return arg(0).as_nat() < arg(1).as_nat();
    case K::Leq: return arg(0).as_nat() <= arg(1).as_nat();
    case K::Adjacent: {
      Coord a = arg(0).as_coord(), b = arg(1).as_coord();
      long long dx = std::llabs(static_cast<long long>(a.x) - static_cast<long long>(b.x));
      long long dy = std::llabs(static_cast<long long>(a.y) - static_cast<long long>(b.y));
      if (interp.adjacency == Adjacency::Four) return dx + dy == 1;
      return std::max(dx, dy) == 1;
    }
    case K::Obstacle: return interp.obstacle ? interp.obstacle(arg(0).as_coord()) : false;
    case K::CardLeq: return arg(0).elements().size() <= arg(1).elements().size();
  }
  throw std::logic_error("formula kind");
}

std::vector<Value> values(const SemType& type, const DomainBounds& b) {
  std::vector<Value> out;
  switch (type.kind()) {
    case SemType::Kind::Nat:
      for (Nat i = 0; i < b.max_n; ++i) out.push_back(Value::nat(i));
      return out;
    case SemType::Kind::Bool: return {Value::boolean(false), Value::boolean(true)};
    case SemType::Kind::Coord:
      for (Nat x = 0; x < b.max_n; ++x) {
        for (Nat y = 0; y < b.max_n; ++y) out.push_back(Value::coord(x, y));
      }
      return out;
    case SemType::Kind::Set: break;
  }
  const auto inner = values(type.element(), b);
  if (type.element().kind() != SemType::Kind::Set) {
    if (inner.size() > 20) throw std::runtime_error("base domain too large for bitmasks");
    for (std::uint32_t mask = 0; mask < (1u << inner.size()); ++mask) {
      if (static_cast<std::uint64_t>(__builtin_popcount(mask)) > b.max_card) continue;
      Value::Elements e;
      for (std::size_t i = 0; i < inner.size(); ++i) {
        if (mask & (1u << i)) e.push_back(inner[i]);
      }
      out.push_back(Value::set(e));
    }
    return out;
  }
  Value::Elements chosen;
  std::function<void(std::size_t)> pick = [&](std::size_t from) {
    out.push_back(Value::set(chosen));
    if (chosen.size() == b.max_plans) return;
    for (std::size_t i = from; i < inner.size(); ++i) {
      chosen.push_back(inner[i]);
      pick(i + 1);
      chosen.pop_back();
    }
  };
  pick(0);
  return out;
}

std::vector<Bindings> models(const std::vector<Port>& vars, const Formula& premise,
                             const DomainBounds& bounds, const Interp& interp) {
  std::vector<std::vector<Value>> domains;
  for (const auto& p : vars) domains.push_back(values(p.type, bounds));
  std::vector<Bindings> out;
  Bindings env;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == vars.size()) {
      if (eval(premise, env, interp)) out.push_back(env);
      return;
    }
    for (const auto& v : domains[i]) {
      env[vars[i].name] = v;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

std::optional<Bindings> falsify(const std::vector<Bindings>& models, const Formula& consequent,
                                const Interp& interp) {
  for (const auto& m : models) {
    if (!eval(consequent, m, interp)) return m;
  }
  return std::nullopt;
}

}  // namespace agc::ref
