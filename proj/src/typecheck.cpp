#include "agc/typecheck.hpp"

#include "agc/errors.hpp"

namespace agc {

namespace {

[[noreturn]] void mismatch(const void* node, const std::string& where,
                           const std::string& expected, const SemType& actual) {
  throw TypeError(TypeErrorKind::TypeMismatch,
                  "type mismatch in `" + where + "`: expected " + expected + ", got " + actual.str(),
                  node);
}

void expect(const SemType& actual, const SemType& expected, const void* node,
            const std::string& where) {
  if (actual != expected) mismatch(node, where, expected.str(), actual);
}

SemType expect_set(const SemType& actual, const void* node, const std::string& where) {
  if (!actual.is_set()) mismatch(node, where, "a set type", actual);
  return actual;
}

}  // namespace

SemType typecheck_term(const Term& t, const TypeEnv& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) {
        throw TypeError(TypeErrorKind::UnboundVariable, "unbound variable `" + t.name() + "`",
                        t.id());
      }
      return it->second;
    }
    case Term::Kind::Lit:
      if (!value_has_type(t.value(), t.lit_type())) {
        throw TypeError(TypeErrorKind::TypeMismatch,
                        "literal " + t.value().str() + " is not a " + t.lit_type().str(), t.id());
      }
      return t.lit_type();
    case Term::Kind::Diff: {
      const std::string where = to_string(t);
      SemType a = expect_set(typecheck_term(t.lhs(), env), t.lhs().id(), where);
      expect(typecheck_term(t.rhs(), env), a, t.rhs().id(), where);
      return a;
    }
    case Term::Kind::Pair: {
      const std::string where = to_string(t);
      expect(typecheck_term(t.lhs(), env), SemType::nat(), t.lhs().id(), where);
      expect(typecheck_term(t.rhs(), env), SemType::nat(), t.rhs().id(), where);
      return SemType::coord();
    }
  }
  return SemType::nat();
}

SemType typecheck_formula(const Formula& f, const TypeEnv& env) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False: break;
    case K::Not:
    case K::And:
    case K::Or:
    case K::Implies:
      for (const auto& s : f.operands()) typecheck_formula(s, env);
      break;
    case K::Forall:
    case K::Exists: {
      const std::string where = to_string(f.domain());
      SemType dom = expect_set(typecheck_term(f.domain(), env), f.domain().id(), where);
      TypeEnv inner = env;
      const Binder& b = f.binder();
      if (b.is_pair()) {
        if (dom.element() != SemType::coord()) {
          mismatch(f.id(), "(" + b.first + ", " + *b.second + ") in " + where, "set<coord>", dom);
        }
        inner.insert_or_assign(b.first, SemType::nat());
        inner.insert_or_assign(*b.second, SemType::nat());
      } else {
        inner.insert_or_assign(b.first, dom.element());
      }
      typecheck_formula(f.body(), inner);
      break;
    }
    case K::In: {
      const std::string where = to_string(f);
      SemType s = expect_set(typecheck_term(f.terms()[1], env), f.terms()[1].id(), where);
      expect(typecheck_term(f.terms()[0], env), s.element(), f.terms()[0].id(), where);
      break;
    }
    case K::SubsetEq:
    case K::CardLeq: {
      const std::string where = to_string(f);
      SemType a = expect_set(typecheck_term(f.terms()[0], env), f.terms()[0].id(), where);
      expect(typecheck_term(f.terms()[1], env), a, f.terms()[1].id(), where);
      break;
    }
    case K::Eq:
    case K::Neq: {
      SemType a = typecheck_term(f.terms()[0], env);
      expect(typecheck_term(f.terms()[1], env), a, f.terms()[1].id(), to_string(f));
      break;
    }
    case K::Lt:
    case K::Leq:
      for (const auto& t : f.terms()) {
        expect(typecheck_term(t, env), SemType::nat(), t.id(), to_string(f));
      }
      break;
    case K::Adjacent:
    case K::Obstacle:
      for (const auto& t : f.terms()) {
        expect(typecheck_term(t, env), SemType::coord(), t.id(), to_string(f));
      }
      break;
  }
  return SemType::boolean();
}

}  // namespace agc
