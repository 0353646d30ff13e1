#pragma once

#include <map>
#include <string>

#include "agc/formula.hpp"
#include "agc/sem_type.hpp"

namespace agc {

using TypeEnv = std::map<std::string, SemType>;

/// Type of a term under `env`. Throws TypeError.
SemType typecheck_term(const Term& t, const TypeEnv& env);

/// Checks `f` against `env` and returns SemType::boolean() on success.
/// Throws TypeError(UnboundVariable | TypeMismatch). Pure.
SemType typecheck_formula(const Formula& f, const TypeEnv& env);

}  // namespace agc
