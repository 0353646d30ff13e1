#include <doctest.h>

#include <random>

#include "agc/dsl.hpp"
#include "agc/errors.hpp"
#include "generators.hpp"
#include "helpers.hpp"

using namespace agc;

namespace {

const char* kDetection = R"(
component Detection {
  in iD (n : nat);
  out oD (n : nat, Grid : set<coord>, Obstacles : set<coord>, s0 : coord);
  assume 0 <= n;
  guarantee (forall (x, y) in Obstacles . obstacle(x, y))
    and Obstacles subset Grid and s0 in Grid and not s0 in Obstacles;
}
)";

bool span_inside(const SourceSpan& s, std::size_t size) {
  return s.start_offset <= s.end_offset && s.end_offset <= size;
}

}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("the detection contract parses") {
    auto cs = parse_contract_file(kDetection);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].component == "Detection");
    CHECK(cs[0].input_vector == "iD");
    CHECK(cs[0].outputs.size() == 4);
    CHECK(conjuncts(cs[0].guarantee).size() == 4);
  }

  TEST_CASE("an empty file has no contracts") {
    CHECK(parse_contract_file("").empty());
    CHECK(parse_contract_file("  # only a comment\n").empty());
  }

  TEST_CASE("a quantifier without a domain is a parse error") {
    const std::string text = "component C { in (a : nat); out (b : nat); assume true;\n"
                             "  guarantee forall p in . true; }";
    try {
      parse_contract_file(text, "c.agc");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.span().start_line == 2);
      CHECK(std::string(e.what()).size() > 0);
      CHECK(span_inside(e.span(), text.size()));
      CHECK(format_diagnostic(e).rfind("c.agc:2:", 0) == 0);
    }
  }

  TEST_CASE("type errors carry spans") {
    const std::string text = "component C { in (a : nat); out (b : nat);\n"
                             "  assume a < goal; guarantee true; }";
    try {
      parse_contract_file(text);
      FAIL("expected a type error");
    } catch (const SpannedTypeError& e) {
      CHECK(e.kind() == TypeErrorKind::UnboundVariable);
      CHECK(e.span().start_line == 2);
    }
  }

  TEST_CASE("the rover chain parses as a system") {
    auto g = test::rover_graph();
    CHECK(g.components.size() == 3);
    REQUIRE(g.links.size() == 2);
    CHECK(g.links[0].id == "L1");
    CHECK(g.links[0].kind == LinkKind::Equal);
    CHECK(g.links[1].from_component == "Planner");
  }

  TEST_CASE("subset links between set ports") {
    auto cs = parse_contract_file(
        "component A { in (x : nat); out (o : set<coord>); assume true; guarantee true; }\n"
        "component B { in (i : set<coord>); out (r : nat); assume true; guarantee true; }\n");
    auto g = parse_system_file("link A.out -> B.in subset;", cs);
    REQUIRE(g.links.size() == 1);
    CHECK(g.links[0].kind == LinkKind::SubsetOf);
  }

  TEST_CASE("links to undeclared components are rejected") {
    auto cs = test::rover_contracts();
    try {
      parse_system_file("link Detection.oD -> Mapper.iM equal;", cs);
      FAIL("expected a graph error");
    } catch (const SpannedGraphError& e) {
      CHECK(e.kind() == GraphErrorKind::UnknownComponent);
    }
  }

  TEST_CASE("printing the agent shows card_leq") {
    auto g = test::rover_graph();
    CHECK(print_contract(test::component(g, "Agent")).find("card_leq(plan, q)") != std::string::npos);
  }

  TEST_CASE("a trivial assumption prints as assume true") {
    Contract c;
    c.component = "C";
    c.inputs = {Port{"a", SemType::nat(), Direction::Input}};
    c.outputs = {Port{"b", SemType::nat(), Direction::Output}};
    CHECK(print_contract(c).find("assume true;") != std::string::npos);
  }

  TEST_CASE("parse then print of the case study is a fixpoint") {
    for (bool goal : {false, true}) {
      auto cs = test::rover_contracts(goal);
      const std::string once = print_contracts(cs);
      const std::string twice = print_contracts(parse_contract_file(once));
      CHECK(once == twice);
      auto g = test::rover_graph(goal);
      CHECK(print_system(parse_system_file(print_system(g), cs)) == print_system(g));
    }
  }

  TEST_CASE("generated contracts round trip") {
    gen::Gen g(3);
    for (int i = 0; i < 300; ++i) {
      Contract c = g.contract("C" + std::to_string(i));
      const std::string text = print_contract(c);
      auto back = parse_contract_file(text);
      REQUIRE(back.size() == 1);
      CHECK_MESSAGE(alpha_equal(c, back[0]), text);
    }
  }

  TEST_CASE("the parser is total on arbitrary input") {
    std::mt19937_64 rng(5);
    const std::string base = test::rover_contracts().empty() ? "" : read_text_file(test::data("rover.agc"));
    for (int i = 0; i < 500; ++i) {
      std::string text;
      if (i % 2) {
        text = base;
        for (int k = 0; k < 4; ++k) {
          text[rng() % text.size()] = static_cast<char>(rng() % 256);
        }
      } else {
        text.resize(rng() % 80);
        for (auto& ch : text) ch = static_cast<char>(rng() % 256);
      }
      try {
        parse_contract_file(text);
      } catch (const ParseError& e) {
        CHECK(span_inside(e.span(), text.size()));
      } catch (const SpannedTypeError& e) {
        CHECK(span_inside(e.span(), text.size()));
      } catch (const SpannedGraphError& e) {
        CHECK(span_inside(e.span(), text.size()));
      }
    }
  }

  TEST_CASE("missing files raise io errors") {
    CHECK_THROWS_AS(read_text_file("/nonexistent/file.agc"), IoError);
  }
}
