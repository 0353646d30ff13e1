#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agc/sem_type.hpp"
#include "agc/value.hpp"

namespace agc {

/// Term of the contract logic: variable, literal, set difference or coordinate pair.
/// Immutable handle; copies share the underlying node.
class Term {
 public:
  enum class Kind { Var, Lit, Diff, Pair };

  static Term var(std::string name);
  static Term lit(Value value, SemType type);
  static Term nat(Nat n) { return lit(Value::nat(n), SemType::nat()); }
  static Term diff(Term a, Term b);
  // Folds a pair of two nat literals into a coord literal, so every
  // constant coordinate has one canonical representation.
  static Term pair(Term x, Term y);

  Kind kind() const;
  const std::string& name() const;
  const Value& value() const;
  const SemType& lit_type() const;
  const Term& lhs() const;
  const Term& rhs() const;

  // Node identity, stable for the lifetime of any copy of this handle.
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Variable pattern bound by a quantifier: `x` or `(x, y)` over coordinates.
struct Binder {
  std::string first;
  std::optional<std::string> second;

  bool is_pair() const { return second.has_value(); }
  std::vector<std::string> names() const;
  friend bool operator==(const Binder&, const Binder&) = default;
};

class Formula {
 public:
  enum class Kind {
    True, False,
    Not, And, Or, Implies,
    Forall, Exists,
    In, SubsetEq, Eq, Neq, Lt, Leq, Adjacent, Obstacle, CardLeq,
  };

  static Formula truth();
  static Formula falsity();
  static Formula negate(Formula f);
  // Zero operands yield true/false, one operand is returned unchanged.
  static Formula conj(std::vector<Formula> operands);
  static Formula disj(std::vector<Formula> operands);
  static Formula implies(Formula premise, Formula conclusion);
  static Formula forall(Binder binder, Term domain, Formula body);
  static Formula exists(Binder binder, Term domain, Formula body);
  static Formula forall(std::string var, Term domain, Formula body) {
    return forall(Binder{std::move(var), std::nullopt}, std::move(domain), std::move(body));
  }
  static Formula exists(std::string var, Term domain, Formula body) {
    return exists(Binder{std::move(var), std::nullopt}, std::move(domain), std::move(body));
  }
  // Binary atoms: In, SubsetEq, Eq, Neq, Lt, Leq, Adjacent, CardLeq.
  static Formula atom(Kind kind, Term a, Term b);
  static Formula obstacle(Term cell);

  Kind kind() const;
  bool is_quantifier() const;
  bool is_atom() const;
  bool is_connective() const;

  // Not / And / Or / Implies children.
  const std::vector<Formula>& operands() const;
  const Binder& binder() const;
  const Term& domain() const;
  const Formula& body() const;
  // Atom arguments (one for Obstacle, two otherwise).
  const std::vector<Term>& terms() const;

  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

const char* kind_name(Formula::Kind kind);

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& f);

/// Structural equality, bound names included.
bool operator==(const Term& a, const Term& b);
bool operator==(const Formula& a, const Formula& b);

/// Equality up to consistent renaming of bound variables.
bool alpha_equal(const Formula& a, const Formula& b);

/// Renames every bound variable so no quantifier shadows another binder or
/// any name in `reserved` (free variables are always reserved).
Formula normalize(const Formula& f, const std::set<std::string>& reserved = {});

/// Capture-avoiding renaming of free variables.
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming);

/// Top-level conjuncts, nested And flattened.
std::vector<Formula> conjuncts(const Formula& f);

std::size_t formula_size(const Formula& f);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

}  // namespace agc
