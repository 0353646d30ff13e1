#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "agc/formula.hpp"
#include "agc/value.hpp"

namespace agc {

namespace detail {
struct EvalProgram;
}

enum class Adjacency { Four, Eight };

/// Interpretation of the built-in predicates `adjacent` and `obstacle`.
struct Interp {
  Adjacency adjacency = Adjacency::Four;
  // Unset means "no obstacle anywhere".
  std::function<bool(Coord)> obstacle;

  bool adjacent(Coord a, Coord b) const;
  bool is_obstacle(Coord c) const { return obstacle ? obstacle(c) : false; }

  // Obstacle exactly at the cells of `cells` (a set of coords).
  static Interp with_obstacles(Value cells, Adjacency adjacency = Adjacency::Four);
  // Every cell may hold an obstacle; `obstacle(c)` is always true.
  static Interp obstacles_everywhere(Adjacency adjacency = Adjacency::Four);
};

struct Env {
  Bindings bindings;
  Interp interp;
};

struct EvalStats {
  std::uint64_t atoms = 0;
};

struct EvalOptions {
  // Maximum atom evaluations per call; 0 means unbounded.
  std::uint64_t max_atoms = 0;
};

/// Formula compiled against a fixed list of free-variable slots.
///
/// Variables are resolved to slot indices once; quantifier-invariant
/// conjuncts are hoisted out of quantifier bodies, and compound terms that
/// only mention free slots are evaluated once per call.
class CompiledFormula {
 public:
  // Throws EvalError(UnboundVariable) when `f` mentions a free variable
  // missing from `slots`.
  CompiledFormula(const Formula& f, std::vector<std::string> slots);
  ~CompiledFormula();
  CompiledFormula(CompiledFormula&&) noexcept;
  CompiledFormula& operator=(CompiledFormula&&) noexcept;

  const std::vector<std::string>& slots() const { return slots_; }

  // `values[i]` binds `slots()[i]`. Throws EvalError(DomainNotASet |
  // IllTyped | BudgetExceeded).
  bool eval(std::span<const Value> values, const Interp& interp, EvalStats* stats = nullptr,
            const EvalOptions& options = {}) const;

 private:
  std::vector<std::string> slots_;
  std::unique_ptr<detail::EvalProgram> program_;
};

/// Two-valued semantics over a finite environment.
bool eval(const Formula& f, const Env& env, EvalStats* stats = nullptr,
          const EvalOptions& options = {});

Value eval_term(const Term& t, const Env& env);

/// Moves quantifier-invariant conjuncts/disjuncts/premises out of quantifier
/// bodies. Semantics-preserving for every domain, including empty ones.
Formula hoist_invariants(const Formula& f);

}  // namespace agc
