#include <doctest.h>

#include "agc/contract.hpp"
#include "agc/errors.hpp"
#include "helpers.hpp"

using namespace agc;

namespace {

Contract simple(const std::string& name, SemType in, SemType out) {
  Contract c;
  c.component = name;
  c.inputs = {Port{"a", in, Direction::Input}};
  c.outputs = {Port{"b", out, Direction::Output}};
  return c;
}

GraphErrorKind graph_error(const SystemGraph& g) {
  try {
    validate_graph(g);
  } catch (const GraphError& e) {
    return e.kind();
  }
  FAIL("expected a graph error");
  return GraphErrorKind::InvalidContract;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("the rover chain is valid") {
    auto g = test::rover_graph();
    CHECK_NOTHROW(validate_graph(g));
    CHECK(g.links.size() == 2);
    CHECK(g.links[0].ports.size() == 4);
    auto order = topological_order(g);
    CHECK(g.components[order[0]].component == "Detection");
    CHECK(g.components[order[2]].component == "Agent");
  }

  TEST_CASE("a single component without links is valid") {
    SystemGraph g{{simple("A", SemType::nat(), SemType::nat())}, {}, std::nullopt};
    CHECK_NOTHROW(validate_graph(g));
  }

  TEST_CASE("two components feeding each other form a cycle") {
    std::vector<Contract> cs{simple("A", SemType::nat(), SemType::nat()),
                             simple("B", SemType::nat(), SemType::nat())};
    SystemGraph g{cs,
                  {resolve_link(cs, "A", "b", "B", "a", LinkKind::Equal),
                   resolve_link(cs, "B", "b", "A", "a", LinkKind::Equal)},
                  std::nullopt};
    CHECK(graph_error(g) == GraphErrorKind::CycleDetected);
  }

  TEST_CASE("linked ports must have matching types") {
    std::vector<Contract> cs{simple("A", SemType::nat(), SemType::coord()),
                             simple("B", SemType::nat(), SemType::nat())};
    SystemGraph g{cs, {resolve_link(cs, "A", "b", "B", "a", LinkKind::Equal)}, std::nullopt};
    CHECK(graph_error(g) == GraphErrorKind::PortTypeMismatch);
  }

  TEST_CASE("subset links need set types") {
    auto set = SemType::set_of(SemType::coord());
    std::vector<Contract> ok{simple("A", SemType::nat(), set), simple("B", set, SemType::nat())};
    SystemGraph g{ok, {resolve_link(ok, "A", "b", "B", "a", LinkKind::SubsetOf)}, std::nullopt};
    CHECK_NOTHROW(validate_graph(g));
    std::vector<Contract> bad{simple("A", SemType::nat(), SemType::nat()),
                              simple("B", SemType::nat(), SemType::nat())};
    SystemGraph h{bad, {resolve_link(bad, "A", "b", "B", "a", LinkKind::SubsetOf)}, std::nullopt};
    CHECK(graph_error(h) == GraphErrorKind::PortTypeMismatch);
  }

  TEST_CASE("every input of a non-source is linked exactly once") {
    std::vector<Contract> cs{simple("A", SemType::nat(), SemType::nat()),
                             simple("B", SemType::nat(), SemType::nat())};
    cs[1].inputs.push_back(Port{"c", SemType::nat(), Direction::Input});
    SystemGraph g{cs, {resolve_link(cs, "A", "b", "B", "a", LinkKind::Equal)}, std::nullopt};
    CHECK(graph_error(g) == GraphErrorKind::UnlinkedInput);
    g.links.push_back(resolve_link(cs, "A", "b", "B", "a", LinkKind::Equal));
    CHECK(graph_error(g) == GraphErrorKind::DuplicateLink);
  }

  TEST_CASE("unknown components and ports are rejected when resolving links") {
    std::vector<Contract> cs{simple("A", SemType::nat(), SemType::nat())};
    CHECK_THROWS_AS(resolve_link(cs, "A", "b", "Z", "a", LinkKind::Equal), GraphError);
    CHECK_THROWS_AS(resolve_link(cs, "A", "nope", "A", "a", LinkKind::Equal), GraphError);
  }

  TEST_CASE("assumptions may not mention outputs") {
    Contract c = simple("A", SemType::nat(), SemType::nat());
    c.assumption = Formula::atom(Formula::Kind::Lt, Term::var("b"), Term::nat(3));
    CHECK_THROWS(validate_contract(c));
  }

  TEST_CASE("pass-through ports are one variable") {
    const auto& planner = test::component(test::rover_graph(), "Planner");
    CHECK(planner.is_pass_through("Grid"));
    CHECK_FALSE(planner.is_pass_through("PlanSet"));
    REQUIRE(planner.own_outputs().size() == 1);
    CHECK(planner.own_outputs()[0].name == "PlanSet");
  }
}
