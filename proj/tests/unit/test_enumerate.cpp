#include <doctest.h>

#include <limits>
#include <set>

#include "agc/enumerate.hpp"
#include "agc/errors.hpp"
#include "reference.hpp"

using namespace agc;

namespace {

std::vector<Bindings> all(const std::vector<Port>& ports, const DomainBounds& b) {
  std::vector<Bindings> out;
  auto e = enumerate_envs(ports, b);
  while (e.next()) out.push_back(e.bindings());
  return out;
}

Port port(const char* name, SemType t) { return Port{name, t, Direction::Input}; }

}  // namespace

TEST_SUITE("enumerate") {
  TEST_CASE("one coordinate on a two by two grid") {
    DomainBounds b;
    b.max_n = 2;
    CHECK(all({port("s0", SemType::coord())}, b).size() == 4);
  }

  TEST_CASE("a nat below one has one value") {
    DomainBounds b;
    b.max_n = 1;
    auto envs = all({port("b", SemType::nat())}, b);
    REQUIRE(envs.size() == 1);
    CHECK(envs[0].at("b") == Value::nat(0));
  }

  TEST_CASE("grid subsets times start cells") {
    DomainBounds b;
    b.max_n = 2;
    b.max_card = 2;
    auto envs = all({port("Grid", SemType::set_of(SemType::coord())), port("s0", SemType::coord())}, b);
    CHECK(envs.size() == 44);
    std::set<Bindings> unique(envs.begin(), envs.end());
    CHECK(unique.size() == 44);
  }

  TEST_CASE("the first port varies fastest") {
    DomainBounds b;
    b.max_n = 2;
    auto envs = all({port("a", SemType::nat()), port("b", SemType::nat())}, b);
    REQUIRE(envs.size() == 4);
    CHECK(envs[1].at("a") == Value::nat(1));
    CHECK(envs[1].at("b") == Value::nat(0));
  }

  TEST_CASE("domains match the brute-force construction") {
    DomainBounds b;
    b.max_n = 2;
    b.max_card = 3;
    b.max_plans = 2;
    for (const auto& t : {SemType::nat(), SemType::boolean(), SemType::coord(),
                          SemType::set_of(SemType::nat()), SemType::set_of(SemType::coord()),
                          SemType::set_of(SemType::set_of(SemType::coord()))}) {
      Domain d(t, b);
      std::set<Value> mine;
      for (std::uint64_t i = 0; i < d.size(); ++i) {
        Value v = d.at(i);
        CHECK(value_has_type(v, t));
        mine.insert(v);
      }
      const auto brute = ref::values(t, b);
      CHECK(mine.size() == d.size());
      CHECK(mine == std::set<Value>(brute.begin(), brute.end()));
    }
  }

  TEST_CASE("sets are listed by size first") {
    DomainBounds b;
    b.max_n = 2;
    Domain d(SemType::set_of(SemType::coord()), b);
    CHECK(d.at(0) == Value::empty_set());
    CHECK(d.at(1).size() == 1);
    CHECK(d.at(5).size() == 2);
    CHECK(d.at(d.size() - 1).size() == 4);
  }

  TEST_CASE("count equals the product of domain sizes") {
    DomainBounds b;
    std::vector<Port> ports{port("n", SemType::nat()), port("Grid", SemType::set_of(SemType::coord()))};
    auto e = enumerate_envs(ports, b);
    CHECK(e.estimate() == 3 * 256);
    std::uint64_t count = 0;
    while (e.next()) ++count;
    CHECK(count == e.estimate());
  }

  TEST_CASE("budget") {
    DomainBounds b;
    b.max_envs = 100;
    try {
      enumerate_envs({port("Grid", SemType::set_of(SemType::coord()))}, b);
      FAIL("expected a budget error");
    } catch (const EvalError& e) {
      CHECK(e.kind() == EvalErrorKind::BudgetExceeded);
    }
  }

  TEST_CASE("saturating arithmetic") {
    const auto max = std::numeric_limits<std::uint64_t>::max();
    CHECK(saturating_mul(max, 2) == max);
    CHECK(saturating_add(max, 1) == max);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(2, 5) == 0);
    CHECK(binomial(1000, 500) == max);
  }

  TEST_CASE("no ports gives one empty environment") {
    CHECK(all({}, DomainBounds{}).size() == 1);
  }
}
