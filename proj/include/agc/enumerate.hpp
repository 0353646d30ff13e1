#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "agc/contract.hpp"
#include "agc/eval.hpp"
#include "agc/value.hpp"

namespace agc {

struct DomainBounds {
  // Nat ranges over 0..max_n-1; coords over that range squared.
  Nat max_n = 3;
  std::uint64_t max_card = 4;
  std::uint64_t max_plans = 3;
  std::uint64_t max_envs = 1'000'000;
};

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Finite, random-access domain of one semantic type under bounds.
///
/// Sets of base values range over subsets of size <= max_card; sets of sets
/// over outer sets of size <= max_plans. Subsets are listed by size, then
/// lexicographically by element index.
class Domain {
 public:
  Domain(const SemType& type, const DomainBounds& bounds);

  const SemType& type() const { return type_; }
  std::uint64_t size() const { return size_; }
  Value at(std::uint64_t index) const;

 private:
  SemType type_;
  DomainBounds bounds_;
  std::uint64_t max_subset_ = 0;
  std::shared_ptr<const Domain> element_;
  std::uint64_t size_ = 0;
};

/// Lazy odometer over the product of port domains; the first port varies
/// fastest.
class EnvEnumerator {
 public:
  EnvEnumerator(std::vector<Port> ports, const DomainBounds& bounds);

  const std::vector<Port>& ports() const { return ports_; }
  // Product of domain sizes, saturating.
  std::uint64_t estimate() const { return estimate_; }

  // Advances to the next environment; false once every one has been seen.
  bool next();
  const std::vector<Value>& values() const { return values_; }
  Bindings bindings() const;

 private:
  const Value& value_at(std::size_t port, std::uint64_t index);

  std::vector<Port> ports_;
  std::vector<Domain> domains_;
  std::vector<std::vector<std::optional<Value>>> cache_;
  std::vector<std::uint64_t> digits_;
  std::vector<Value> values_;
  std::uint64_t estimate_ = 1;
  bool started_ = false;
  bool done_ = false;
};

/// Every environment over `ports` within `bounds`, each exactly once.
/// Throws EvalError(BudgetExceeded) when the count would exceed max_envs.
EnvEnumerator enumerate_envs(const std::vector<Port>& ports, const DomainBounds& bounds);

std::string format_bounds(const DomainBounds& b);

}  // namespace agc
