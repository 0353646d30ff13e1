#include "agc/formula.hpp"

#include <cassert>
#include <functional>

namespace agc {

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  std::string name;
  Value value;
  SemType type = SemType::nat();
  std::vector<Term> children;
};

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, SemType::nat(), {}}));
}

Term Term::lit(Value value, SemType type) {
  return Term(std::make_shared<const Node>(Node{Kind::Lit, {}, std::move(value), std::move(type), {}}));
}

Term Term::diff(Term a, Term b) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Diff, {}, {}, SemType::nat(), {std::move(a), std::move(b)}}));
}

Term Term::pair(Term x, Term y) {
  if (x.kind() == Kind::Lit && y.kind() == Kind::Lit &&
      x.value().kind() == Value::Kind::Nat && y.value().kind() == Value::Kind::Nat) {
    return lit(Value::coord(x.value().as_nat(), y.value().as_nat()), SemType::coord());
  }
  return Term(std::make_shared<const Node>(
      Node{Kind::Pair, {}, {}, SemType::nat(), {std::move(x), std::move(y)}}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Value& Term::value() const { return node_->value; }
const SemType& Term::lit_type() const { return node_->type; }
const Term& Term::lhs() const { return node_->children.at(0); }
const Term& Term::rhs() const { return node_->children.at(1); }

std::vector<std::string> Binder::names() const {
  if (second) return {first, *second};
  return {first};
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  std::vector<Formula> subs;
  std::vector<Term> terms;
  Binder binder;
};

namespace {

Formula::Kind quantifier_or_die(Formula::Kind k) {
  assert(k == Formula::Kind::Forall || k == Formula::Kind::Exists);
  return k;
}

}  // namespace

Formula Formula::truth() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::True, {}, {}, {}}));
  return t;
}

Formula Formula::falsity() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::False, {}, {}, {}}));
  return f;
}

Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {std::move(f)}, {}, {}}));
}

Formula Formula::conj(std::vector<Formula> operands) {
  if (operands.empty()) return truth();
  if (operands.size() == 1) return operands.front();
  return Formula(std::make_shared<const Node>(Node{Kind::And, std::move(operands), {}, {}}));
}

Formula Formula::disj(std::vector<Formula> operands) {
  if (operands.empty()) return falsity();
  if (operands.size() == 1) return operands.front();
  return Formula(std::make_shared<const Node>(Node{Kind::Or, std::move(operands), {}, {}}));
}

Formula Formula::implies(Formula premise, Formula conclusion) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Implies, {std::move(premise), std::move(conclusion)}, {}, {}}));
}

Formula Formula::forall(Binder binder, Term domain, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{quantifier_or_die(Kind::Forall), {std::move(body)}, {std::move(domain)}, std::move(binder)}));
}

Formula Formula::exists(Binder binder, Term domain, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{quantifier_or_die(Kind::Exists), {std::move(body)}, {std::move(domain)}, std::move(binder)}));
}

Formula Formula::atom(Kind kind, Term a, Term b) {
  assert(kind != Kind::Obstacle);
  return Formula(std::make_shared<const Node>(Node{kind, {}, {std::move(a), std::move(b)}, {}}));
}

Formula Formula::obstacle(Term cell) {
  return Formula(std::make_shared<const Node>(Node{Kind::Obstacle, {}, {std::move(cell)}, {}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_quantifier() const {
  return kind() == Kind::Forall || kind() == Kind::Exists;
}

bool Formula::is_connective() const {
  auto k = kind();
  return k == Kind::Not || k == Kind::And || k == Kind::Or || k == Kind::Implies;
}

bool Formula::is_atom() const {
  return !is_quantifier() && !is_connective() && kind() != Kind::True && kind() != Kind::False;
}

const std::vector<Formula>& Formula::operands() const { return node_->subs; }
const Binder& Formula::binder() const { return node_->binder; }
const Term& Formula::domain() const { return node_->terms.at(0); }
const Formula& Formula::body() const { return node_->subs.at(0); }
const std::vector<Term>& Formula::terms() const { return node_->terms; }

const char* kind_name(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Implies: return "=>";
    case Formula::Kind::Forall: return "forall";
    case Formula::Kind::Exists: return "exists";
    case Formula::Kind::In: return "in";
    case Formula::Kind::SubsetEq: return "subset";
    case Formula::Kind::Eq: return "=";
    case Formula::Kind::Neq: return "!=";
    case Formula::Kind::Lt: return "<";
    case Formula::Kind::Leq: return "<=";
    case Formula::Kind::Adjacent: return "adjacent";
    case Formula::Kind::Obstacle: return "obstacle";
    case Formula::Kind::CardLeq: return "card_leq";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_free(const Term& t, const std::multiset<std::string>& bound,
                  std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case Term::Kind::Lit: return;
    case Term::Kind::Diff:
    case Term::Kind::Pair:
      collect_free(t.lhs(), bound, out);
      collect_free(t.rhs(), bound, out);
      return;
  }
}

void collect_free(const Formula& f, std::multiset<std::string>& bound,
                  std::set<std::string>& out) {
  if (f.is_quantifier()) {
    collect_free(f.domain(), bound, out);
    auto names = f.binder().names();
    for (const auto& n : names) bound.insert(n);
    collect_free(f.body(), bound, out);
    for (const auto& n : names) bound.erase(bound.find(n));
    return;
  }
  for (const auto& t : f.terms()) collect_free(t, bound, out);
  for (const auto& s : f.operands()) collect_free(s, bound, out);
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free(t, {}, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::multiset<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Equality

bool operator==(const Term& a, const Term& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: return a.name() == b.name();
    case Term::Kind::Lit: return a.lit_type() == b.lit_type() && a.value() == b.value();
    case Term::Kind::Diff:
    case Term::Kind::Pair: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_quantifier()) {
    return a.binder() == b.binder() && a.domain() == b.domain() && a.body() == b.body();
  }
  return a.terms() == b.terms() && a.operands() == b.operands();
}

namespace {

using Scope = std::vector<std::pair<std::string, std::string>>;

// Position of `name` in the scope, searching innermost first; -1 if free.
long lookup(const Scope& scope, const std::string& name, bool left) {
  for (long i = static_cast<long>(scope.size()) - 1; i >= 0; --i) {
    const auto& entry = scope[static_cast<std::size_t>(i)];
    if ((left ? entry.first : entry.second) == name) return i;
  }
  return -1;
}

bool alpha_term(const Term& a, const Term& b, const Scope& scope) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      long ia = lookup(scope, a.name(), true);
      long ib = lookup(scope, b.name(), false);
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Term::Kind::Lit: return a.lit_type() == b.lit_type() && a.value() == b.value();
    case Term::Kind::Diff:
    case Term::Kind::Pair:
      return alpha_term(a.lhs(), b.lhs(), scope) && alpha_term(a.rhs(), b.rhs(), scope);
  }
  return false;
}

bool alpha_formula(const Formula& a, const Formula& b, Scope& scope) {
  if (a.kind() != b.kind()) return false;
  if (a.is_quantifier()) {
    if (a.binder().is_pair() != b.binder().is_pair()) return false;
    if (!alpha_term(a.domain(), b.domain(), scope)) return false;
    auto na = a.binder().names();
    auto nb = b.binder().names();
    for (std::size_t i = 0; i < na.size(); ++i) scope.emplace_back(na[i], nb[i]);
    bool ok = alpha_formula(a.body(), b.body(), scope);
    scope.resize(scope.size() - na.size());
    return ok;
  }
  if (a.terms().size() != b.terms().size() || a.operands().size() != b.operands().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    if (!alpha_term(a.terms()[i], b.terms()[i], scope)) return false;
  }
  for (std::size_t i = 0; i < a.operands().size(); ++i) {
    if (!alpha_formula(a.operands()[i], b.operands()[i], scope)) return false;
  }
  return true;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  Scope scope;
  return alpha_formula(a, b, scope);
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

class Renamer {
 public:
  Renamer(std::set<std::string> used, std::map<std::string, std::string> free_map)
      : used_(std::move(used)), free_map_(std::move(free_map)) {}

  Term term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first == t.name()) return Term::var(it->second);
        }
        auto f = free_map_.find(t.name());
        return f == free_map_.end() ? t : Term::var(f->second);
      }
      case Term::Kind::Lit: return t;
      case Term::Kind::Diff: return Term::diff(term(t.lhs()), term(t.rhs()));
      case Term::Kind::Pair: return Term::pair(term(t.lhs()), term(t.rhs()));
    }
    return t;
  }

  Formula formula(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True:
      case K::False: return f;
      case K::Not: return Formula::negate(formula(f.operands()[0]));
      case K::And: return Formula::conj(map_operands(f));
      case K::Or: return Formula::disj(map_operands(f));
      case K::Implies:
        return Formula::implies(formula(f.operands()[0]), formula(f.operands()[1]));
      case K::Forall:
      case K::Exists: {
        Term domain = term(f.domain());
        Binder fresh_binder;
        std::size_t pushed = 0;
        for (const auto& old : f.binder().names()) {
          std::string fresh = fresh_name(old);
          scope_.emplace_back(old, fresh);
          ++pushed;
          if (fresh_binder.first.empty()) fresh_binder.first = fresh;
          else fresh_binder.second = fresh;
        }
        Formula body = formula(f.body());
        scope_.resize(scope_.size() - pushed);
        return f.kind() == K::Forall ? Formula::forall(fresh_binder, domain, body)
                                     : Formula::exists(fresh_binder, domain, body);
      }
      case K::Obstacle: return Formula::obstacle(term(f.terms()[0]));
      default: return Formula::atom(f.kind(), term(f.terms()[0]), term(f.terms()[1]));
    }
  }

 private:
  std::vector<Formula> map_operands(const Formula& f) {
    std::vector<Formula> out;
    out.reserve(f.operands().size());
    for (const auto& s : f.operands()) out.push_back(formula(s));
    return out;
  }

  std::string fresh_name(const std::string& base) {
    std::string candidate = base;
    for (int i = 1; used_.count(candidate); ++i) candidate = base + "_" + std::to_string(i);
    used_.insert(candidate);
    return candidate;
  }

  std::set<std::string> used_;
  std::map<std::string, std::string> free_map_;
  Scope scope_;
};

}  // namespace

Formula normalize(const Formula& f, const std::set<std::string>& reserved) {
  std::set<std::string> used = reserved;
  for (const auto& v : free_vars(f)) used.insert(v);
  return Renamer(std::move(used), {}).formula(f);
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming) {
  std::set<std::string> used;
  for (const auto& v : free_vars(f)) used.insert(v);
  for (const auto& [from, to] : renaming) {
    used.insert(from);
    used.insert(to);
  }
  return Renamer(std::move(used), renaming).formula(f);
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() != Formula::Kind::And) return {f};
  std::vector<Formula> out;
  for (const auto& s : f.operands()) {
    auto inner = conjuncts(s);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

namespace {

std::size_t term_size(const Term& t) {
  if (t.kind() == Term::Kind::Diff || t.kind() == Term::Kind::Pair) {
    return 1 + term_size(t.lhs()) + term_size(t.rhs());
  }
  return 1;
}

}  // namespace

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& t : f.terms()) n += term_size(t);
  for (const auto& s : f.operands()) n += formula_size(s);
  return n;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name();
    case Term::Kind::Lit: return t.value().str();
    case Term::Kind::Diff: return "diff(" + to_string(t.lhs()) + ", " + to_string(t.rhs()) + ")";
    case Term::Kind::Pair: return "(" + to_string(t.lhs()) + ", " + to_string(t.rhs()) + ")";
  }
  return "?";
}

namespace {

// Binding strength; quantifiers extend as far right as possible.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

std::string paren_if(bool wrap, const std::string& s) { return wrap ? "(" + s + ")" : s; }

std::string print(const Formula& f) {
  using K = Formula::Kind;
  const int p = precedence(f);
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Not: {
      const auto& x = f.operands()[0];
      return "not " + paren_if(precedence(x) < 4, print(x));
    }
    case K::And:
    case K::Or: {
      std::string sep = f.kind() == K::And ? " and " : " or ";
      std::string out;
      for (std::size_t i = 0; i < f.operands().size(); ++i) {
        const auto& x = f.operands()[i];
        if (i) out += sep;
        out += paren_if(precedence(x) <= p, print(x));
      }
      return out;
    }
    case K::Implies: {
      const auto& lhs = f.operands()[0];
      const auto& rhs = f.operands()[1];
      return paren_if(precedence(lhs) <= 1, print(lhs)) + " => " +
             paren_if(precedence(rhs) < 1, print(rhs));
    }
    case K::Forall:
    case K::Exists: {
      const auto& b = f.binder();
      std::string binder = b.is_pair() ? "(" + b.first + ", " + *b.second + ")" : b.first;
      return std::string(f.kind() == K::Forall ? "forall " : "exists ") + binder + " in " +
             to_string(f.domain()) + " . " + print(f.body());
    }
    case K::Adjacent:
    case K::CardLeq:
      return std::string(kind_name(f.kind())) + "(" + to_string(f.terms()[0]) + ", " +
             to_string(f.terms()[1]) + ")";
    case K::Obstacle: {
      const auto& c = f.terms()[0];
      if (c.kind() == Term::Kind::Pair) {
        return "obstacle(" + to_string(c.lhs()) + ", " + to_string(c.rhs()) + ")";
      }
      return "obstacle(" + to_string(c) + ")";
    }
    default:
      return to_string(f.terms()[0]) + " " + kind_name(f.kind()) + " " + to_string(f.terms()[1]);
  }
}

}  // namespace

std::string to_string(const Formula& f) { return print(f); }

}  // namespace agc
