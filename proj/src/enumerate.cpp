#include "agc/enumerate.hpp"

#include <algorithm>
#include <limits>

#include "agc/errors.hpp"

namespace agc {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
// Values cached per port; larger domains are recomputed on demand.
constexpr std::uint64_t kCacheLimit = 1u << 16;

}  // namespace

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kMax - b ? kMax : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kMax / b ? kMax : a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

Domain::Domain(const SemType& type, const DomainBounds& bounds) : type_(type), bounds_(bounds) {
  switch (type.kind()) {
    case SemType::Kind::Nat: size_ = bounds.max_n; break;
    case SemType::Kind::Bool: size_ = 2; break;
    case SemType::Kind::Coord: size_ = saturating_mul(bounds.max_n, bounds.max_n); break;
    case SemType::Kind::Set: {
      element_ = std::make_shared<const Domain>(type.element(), bounds);
      const std::uint64_t m = element_->size();
      max_subset_ = std::min(m, type.element().kind() == SemType::Kind::Set ? bounds.max_plans
                                                                            : bounds.max_card);
      size_ = 0;
      for (std::uint64_t k = 0; k <= max_subset_; ++k) size_ = saturating_add(size_, binomial(m, k));
      break;
    }
  }
}

Value Domain::at(std::uint64_t index) const {
  switch (type_.kind()) {
    case SemType::Kind::Nat: return Value::nat(index);
    case SemType::Kind::Bool: return Value::boolean(index != 0);
    case SemType::Kind::Coord: return Value::coord(index / bounds_.max_n, index % bounds_.max_n);
    case SemType::Kind::Set: break;
  }
  const std::uint64_t m = element_->size();
  std::uint64_t k = 0;
  for (; k <= max_subset_; ++k) {
    const std::uint64_t c = binomial(m, k);
    if (index < c) break;
    index -= c;
  }
  // Unrank the index-th k-combination of 0..m-1 in lexicographic order.
  Value::Elements elements;
  elements.reserve(k);
  std::uint64_t v = 0;
  for (std::uint64_t j = 0; j < k; ++j, ++v) {
    for (;; ++v) {
      const std::uint64_t c = binomial(m - v - 1, k - j - 1);
      if (index < c) break;
      index -= c;
    }
    elements.push_back(element_->at(v));
  }
  if (type_.element().kind() == SemType::Kind::Set) return Value::set(std::move(elements));
  return Value::sorted_set(std::move(elements));
}

EnvEnumerator::EnvEnumerator(std::vector<Port> ports, const DomainBounds& bounds)
    : ports_(std::move(ports)) {
  for (const auto& p : ports_) {
    domains_.emplace_back(p.type, bounds);
    estimate_ = saturating_mul(estimate_, domains_.back().size());
  }
  cache_.resize(ports_.size());
  digits_.assign(ports_.size(), 0);
  values_.resize(ports_.size());
}

const Value& EnvEnumerator::value_at(std::size_t port, std::uint64_t index) {
  auto& cache = cache_[port];
  if (index >= kCacheLimit) {
    values_[port] = domains_[port].at(index);
    return values_[port];
  }
  if (cache.size() <= index) cache.resize(index + 1);
  if (!cache[index]) cache[index] = domains_[port].at(index);
  return *cache[index];
}

bool EnvEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (estimate_ == 0) {
      done_ = true;
      return false;
    }
    for (std::size_t i = 0; i < ports_.size(); ++i) values_[i] = value_at(i, 0);
    return true;
  }
  for (std::size_t i = 0; i < ports_.size(); ++i) {
    if (++digits_[i] < domains_[i].size()) {
      values_[i] = value_at(i, digits_[i]);
      return true;
    }
    digits_[i] = 0;
    values_[i] = value_at(i, 0);
  }
  done_ = true;
  return false;
}

Bindings EnvEnumerator::bindings() const {
  Bindings b;
  for (std::size_t i = 0; i < ports_.size(); ++i) b.emplace(ports_[i].name, values_[i]);
  return b;
}

EnvEnumerator enumerate_envs(const std::vector<Port>& ports, const DomainBounds& bounds) {
  EnvEnumerator e(ports, bounds);
  if (e.estimate() > bounds.max_envs) {
    throw EvalError(EvalErrorKind::BudgetExceeded,
                    std::to_string(e.estimate()) + " environments exceed the budget of " +
                        std::to_string(bounds.max_envs));
  }
  return e;
}

std::string format_bounds(const DomainBounds& b) {
  return "n=" + std::to_string(b.max_n) + ",card=" + std::to_string(b.max_card) +
         ",plans=" + std::to_string(b.max_plans) + ",envs=" + std::to_string(b.max_envs);
}

}  // namespace agc
