#include "agc/eval.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "agc/errors.hpp"

namespace agc {

bool Interp::adjacent(Coord a, Coord b) const {
  const Nat dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const Nat dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  if (adjacency == Adjacency::Four) return dx + dy == 1;
  return std::max(dx, dy) == 1;
}

Interp Interp::with_obstacles(Value cells, Adjacency adjacency) {
  Interp i;
  i.adjacency = adjacency;
  i.obstacle = [cells = std::move(cells)](Coord c) { return cells.contains(Value::coord(c)); };
  return i;
}

Interp Interp::obstacles_everywhere(Adjacency adjacency) {
  Interp i;
  i.adjacency = adjacency;
  i.obstacle = [](Coord) { return true; };
  return i;
}

// ---------------------------------------------------------------------------
// Hoisting

namespace {

bool mentions_any(const Formula& f, const std::vector<std::string>& names) {
  auto fv = free_vars(f);
  return std::any_of(names.begin(), names.end(), [&](const auto& n) { return fv.count(n) > 0; });
}

}  // namespace

Formula hoist_invariants(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Not: return Formula::negate(hoist_invariants(f.operands()[0]));
    case K::And:
    case K::Or: {
      std::vector<Formula> ops;
      for (const auto& s : f.operands()) ops.push_back(hoist_invariants(s));
      return f.kind() == K::And ? Formula::conj(std::move(ops)) : Formula::disj(std::move(ops));
    }
    case K::Implies:
      return Formula::implies(hoist_invariants(f.operands()[0]),
                              hoist_invariants(f.operands()[1]));
    case K::Forall:
    case K::Exists: break;
    default: return f;
  }
  const auto names = f.binder().names();
  Formula body = hoist_invariants(f.body());
  auto rebuild = [&](Formula b) {
    return f.kind() == K::Forall ? Formula::forall(f.binder(), f.domain(), std::move(b))
                                 : Formula::exists(f.binder(), f.domain(), std::move(b));
  };
  // exists x in D . (A and B(x))  ==  A and exists x in D . B(x)
  // forall x in D . (A or B(x))   ==  A or forall x in D . B(x)
  const K split = f.kind() == K::Exists ? K::And : K::Or;
  if (body.kind() == split) {
    std::vector<Formula> outside, inside;
    for (const auto& op : body.operands()) {
      (mentions_any(op, names) ? inside : outside).push_back(op);
    }
    if (!outside.empty()) {
      Formula inner = split == K::And ? Formula::conj(std::move(inside))
                                      : Formula::disj(std::move(inside));
      outside.push_back(rebuild(std::move(inner)));
      return split == K::And ? Formula::conj(std::move(outside))
                             : Formula::disj(std::move(outside));
    }
  }
  // forall x in D . (A => B(x))  ==  A => forall x in D . B(x)
  if (f.kind() == K::Forall && body.kind() == K::Implies &&
      !mentions_any(body.operands()[0], names)) {
    return Formula::implies(body.operands()[0], rebuild(body.operands()[1]));
  }
  return rebuild(std::move(body));
}

// ---------------------------------------------------------------------------
// Compiled program

struct detail::EvalProgram {
  struct TermNode {
    Term::Kind kind = Term::Kind::Var;
    int slot = -1;
    Value literal;
    int a = -1;
    int b = -1;
    int cache = -1;  // index into the per-call cache, or -1
  };
  struct FormulaNode {
    Formula::Kind kind;
    std::vector<int> kids;
    int t0 = -1;
    int t1 = -1;
    int slot0 = -1;
    int slot1 = -1;
  };

  std::vector<TermNode> terms;
  std::vector<FormulaNode> nodes;
  int root = -1;
  int slot_count = 0;
  int cache_count = 0;
};

namespace {

class Compiler {
 public:
  Compiler(detail::EvalProgram& p, const std::vector<std::string>& free_slots) : p_(p) {
    for (std::size_t i = 0; i < free_slots.size(); ++i) {
      free_[free_slots[i]] = static_cast<int>(i);
    }
    p_.slot_count = static_cast<int>(free_slots.size());
  }

  int formula(const Formula& f) {
    detail::EvalProgram::FormulaNode n{f.kind(), {}, -1, -1, -1, -1};
    if (f.is_quantifier()) {
      n.t0 = term(f.domain());
      const auto names = f.binder().names();
      n.slot0 = bind(names[0]);
      if (names.size() > 1) n.slot1 = bind(names[1]);
      n.kids.push_back(formula(f.body()));
      scope_.resize(scope_.size() - names.size());
    } else {
      for (const auto& s : f.operands()) n.kids.push_back(formula(s));
      if (!f.terms().empty()) n.t0 = term(f.terms()[0]);
      if (f.terms().size() > 1) n.t1 = term(f.terms()[1]);
    }
    p_.nodes.push_back(std::move(n));
    return static_cast<int>(p_.nodes.size()) - 1;
  }

 private:
  int bind(const std::string& name) {
    int slot = p_.slot_count++;
    scope_.emplace_back(name, slot);
    return slot;
  }

  // Returns the term index; sets `bound_ref` when the term reads a binder slot.
  int term(const Term& t) {
    bool bound_ref = false;
    return term(t, bound_ref);
  }

  int term(const Term& t, bool& bound_ref) {
    detail::EvalProgram::TermNode n;
    n.kind = t.kind();
    switch (t.kind()) {
      case Term::Kind::Var: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first == t.name()) {
            n.slot = it->second;
            bound_ref = true;
            break;
          }
        }
        if (n.slot < 0) {
          auto f = free_.find(t.name());
          if (f == free_.end()) {
            throw EvalError(EvalErrorKind::UnboundVariable, "unbound variable `" + t.name() + "`");
          }
          n.slot = f->second;
        }
        break;
      }
      case Term::Kind::Lit: n.literal = t.value(); break;
      case Term::Kind::Diff:
      case Term::Kind::Pair: {
        bool inner_bound = false;
        n.a = term(t.lhs(), inner_bound);
        n.b = term(t.rhs(), inner_bound);
        if (!inner_bound) n.cache = p_.cache_count++;
        bound_ref = bound_ref || inner_bound;
        break;
      }
    }
    p_.terms.push_back(std::move(n));
    return static_cast<int>(p_.terms.size()) - 1;
  }

  detail::EvalProgram& p_;
  std::map<std::string, int> free_;
  std::vector<std::pair<std::string, int>> scope_;
};

class Machine {
 public:
  Machine(const detail::EvalProgram& p, std::span<const Value> values, const Interp& interp,
          EvalStats* stats, const EvalOptions& options)
      : p_(p), interp_(interp), stats_(stats), options_(options),
        slots_(static_cast<std::size_t>(p.slot_count)),
        cache_(static_cast<std::size_t>(p.cache_count)) {
    std::copy(values.begin(), values.end(), slots_.begin());
  }

  bool run() { return formula(p_.root); }

 private:
  using K = Formula::Kind;

  [[noreturn]] static void ill_typed(const char* what) {
    throw EvalError(EvalErrorKind::IllTyped, std::string("ill-typed operand for ") + what);
  }

  static const Value& need(const Value& v, Value::Kind kind, const char* what) {
    if (v.kind() != kind) ill_typed(what);
    return v;
  }

  Value term(int index) {
    const auto& n = p_.terms[static_cast<std::size_t>(index)];
    switch (n.kind) {
      case Term::Kind::Var: return slots_[static_cast<std::size_t>(n.slot)];
      case Term::Kind::Lit: return n.literal;
      case Term::Kind::Diff:
      case Term::Kind::Pair: break;
    }
    if (n.cache >= 0) {
      auto& slot = cache_[static_cast<std::size_t>(n.cache)];
      if (slot) return *slot;
    }
    Value a = term(n.a);
    Value b = term(n.b);
    Value out;
    if (n.kind == Term::Kind::Diff) {
      out = set_difference(need(a, Value::Kind::Set, "diff"), need(b, Value::Kind::Set, "diff"));
    } else {
      out = Value::coord(need(a, Value::Kind::Nat, "pair").as_nat(),
                         need(b, Value::Kind::Nat, "pair").as_nat());
    }
    if (n.cache >= 0) cache_[static_cast<std::size_t>(n.cache)] = out;
    return out;
  }

  void count_atom() {
    if (!stats_ && options_.max_atoms == 0) return;
    ++atoms_;
    if (stats_) ++stats_->atoms;
    if (options_.max_atoms && atoms_ > options_.max_atoms) {
      throw EvalError(EvalErrorKind::BudgetExceeded,
                      "evaluation exceeded " + std::to_string(options_.max_atoms) + " atoms");
    }
  }

  bool formula(int index) {
    const auto& n = p_.nodes[static_cast<std::size_t>(index)];
    switch (n.kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Not: return !formula(n.kids[0]);
      case K::And:
        for (int k : n.kids) {
          if (!formula(k)) return false;
        }
        return true;
      case K::Or:
        for (int k : n.kids) {
          if (formula(k)) return true;
        }
        return false;
      case K::Implies: return !formula(n.kids[0]) || formula(n.kids[1]);
      case K::Forall:
      case K::Exists: return quantifier(n);
      default: break;
    }
    count_atom();
    switch (n.kind) {
      case K::In: {
        Value s = term(n.t1);
        return need(s, Value::Kind::Set, "in").contains(term(n.t0));
      }
      case K::SubsetEq: {
        Value a = term(n.t0), b = term(n.t1);
        return need(a, Value::Kind::Set, "subset").subset_of(need(b, Value::Kind::Set, "subset"));
      }
      case K::Eq: return term(n.t0) == term(n.t1);
      case K::Neq: return !(term(n.t0) == term(n.t1));
      case K::Lt:
        return need(term(n.t0), Value::Kind::Nat, "<").as_nat() <
               need(term(n.t1), Value::Kind::Nat, "<").as_nat();
      case K::Leq:
        return need(term(n.t0), Value::Kind::Nat, "<=").as_nat() <=
               need(term(n.t1), Value::Kind::Nat, "<=").as_nat();
      case K::Adjacent:
        return interp_.adjacent(need(term(n.t0), Value::Kind::Coord, "adjacent").as_coord(),
                                need(term(n.t1), Value::Kind::Coord, "adjacent").as_coord());
      case K::Obstacle:
        return interp_.is_obstacle(need(term(n.t0), Value::Kind::Coord, "obstacle").as_coord());
      case K::CardLeq: {
        Value a = term(n.t0), b = term(n.t1);
        return need(a, Value::Kind::Set, "card_leq").size() <=
               need(b, Value::Kind::Set, "card_leq").size();
      }
      default: return false;
    }
  }

  bool quantifier(const detail::EvalProgram::FormulaNode& n) {
    Value domain = term(n.t0);
    if (!domain.is_set()) {
      throw EvalError(EvalErrorKind::DomainNotASet, "quantifier domain is not a set");
    }
    const bool universal = n.kind == K::Forall;
    for (const auto& element : domain.elements()) {
      if (n.slot1 >= 0) {
        Coord c = need(element, Value::Kind::Coord, "coordinate pattern").as_coord();
        slots_[static_cast<std::size_t>(n.slot0)] = Value::nat(c.x);
        slots_[static_cast<std::size_t>(n.slot1)] = Value::nat(c.y);
      } else {
        slots_[static_cast<std::size_t>(n.slot0)] = element;
      }
      if (formula(n.kids[0]) != universal) return !universal;
    }
    return universal;
  }

  const detail::EvalProgram& p_;
  const Interp& interp_;
  EvalStats* stats_;
  const EvalOptions& options_;
  std::uint64_t atoms_ = 0;
  std::vector<Value> slots_;
  std::vector<std::optional<Value>> cache_;
};

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, std::vector<std::string> slots)
    : slots_(std::move(slots)), program_(std::make_unique<detail::EvalProgram>()) {
  Compiler compiler(*program_, slots_);
  program_->root = compiler.formula(hoist_invariants(f));
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

bool CompiledFormula::eval(std::span<const Value> values, const Interp& interp, EvalStats* stats,
                           const EvalOptions& options) const {
  if (values.size() != slots_.size()) {
    throw EvalError(EvalErrorKind::UnboundVariable, "slot count mismatch");
  }
  return Machine(*program_, values, interp, stats, options).run();
}

bool eval(const Formula& f, const Env& env, EvalStats* stats, const EvalOptions& options) {
  std::vector<std::string> names;
  std::vector<Value> values;
  for (const auto& [name, value] : env.bindings) {
    names.push_back(name);
    values.push_back(value);
  }
  return CompiledFormula(f, std::move(names)).eval(values, env.interp, stats, options);
}

Value eval_term(const Term& t, const Env& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.bindings.find(t.name());
      if (it == env.bindings.end()) {
        throw EvalError(EvalErrorKind::UnboundVariable, "unbound variable `" + t.name() + "`");
      }
      return it->second;
    }
    case Term::Kind::Lit: return t.value();
    case Term::Kind::Diff: return set_difference(eval_term(t.lhs(), env), eval_term(t.rhs(), env));
    case Term::Kind::Pair:
      return Value::coord(eval_term(t.lhs(), env).as_nat(), eval_term(t.rhs(), env).as_nat());
  }
  return {};
}

}  // namespace agc
