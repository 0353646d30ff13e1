#include <doctest.h>

#include "agc/composition.hpp"
#include "agc/dsl.hpp"
#include "agc/errors.hpp"
#include "helpers.hpp"
#include "reference.hpp"

using namespace agc;

namespace {

SystemGraph build(const std::string& contracts, const std::string& system) {
  return parse_system_file(system, parse_contract_file(contracts));
}

const char* kChain = R"(
component A {
  in i (a : nat);
  out o (x : nat);
  assume a < 3;
  guarantee x < 3;
}
component B {
  in i (y : nat);
  out o (z : nat);
  assume y < 2;
  guarantee z < 2;
}
)";

std::vector<Verdict> discharge_all(const std::vector<Obligation>& os, const DischargeOptions& opt = {}) {
  std::vector<Verdict> out;
  for (const auto& o : os) out.push_back(discharge(o, opt));
  return out;
}


}  // namespace

TEST_SUITE("composition") {
  TEST_CASE("the case study has one obligation per link") {
    auto g = test::rover_graph();
    auto os = generate_obligations(g);
    REQUIRE(os.size() == 2);
    CHECK(os[0].id == "O1");
    CHECK(os[0].link.id == "L1");
    CHECK(os[0].rule == "PR1");
    CHECK(os[1].id == "O2");
    CHECK(alpha_equal(os[0].consequent, test::component(g, "Planner").assumption));
    CHECK(alpha_equal(os[1].consequent, test::component(g, "Agent").assumption));
  }

  TEST_CASE("the case study discharges and composes") {
    auto g = test::rover_graph();
    auto os = generate_obligations(g);
    auto vs = discharge_all(os);
    for (const auto& v : vs) {
      CHECK(v.status == VerdictStatus::Discharged);
      CHECK(v.method == "syntactic");
    }
    auto d = derive_system_contract(g, os, vs);
    CHECK(d.source == "Detection");
    CHECK(d.sink == "Agent");
    REQUIRE(d.provenance.size() == 2);
    CHECK(d.provenance[0].rule == "PR1");
    CHECK(d.provenance[0].link_id == "L1");
    CHECK(d.provenance[1].link_id == "L2");
    CHECK(alpha_equal(d.assumption, test::component(g, "Detection").assumption));
    CHECK(alpha_equal(d.guarantee, test::component(g, "Agent").guarantee));
    auto text = render_derived(d);
    CHECK(text.find("derived Detection -> Agent") != std::string::npos);
    CHECK(text.find("PR1(L1), PR1(L2)") != std::string::npos);
  }

  TEST_CASE("a graph without links has no obligations") {
    auto g = build(kChain, "");
    CHECK(generate_obligations(g).empty());
  }

  TEST_CASE("a weaker guarantee is refuted with a counterexample") {
    auto g = build(R"(
component A { in i (a : nat); out o (x : nat); assume true; guarantee x < 3; }
component B { in i (y : nat); out o (z : nat); assume y < 2; guarantee true; }
)", "link A.o -> B.i equal;");
    auto os = generate_obligations(g, DomainBounds{.max_n = 4});
    REQUIRE(os.size() == 1);
    auto v = discharge(os[0]);
    REQUIRE(v.status == VerdictStatus::Refuted);
    REQUIRE(v.counterexample);
    CHECK(v.counterexample->bindings.at("x") == Value::nat(2));
    CHECK(eval(os[0].premise, *v.counterexample));
    CHECK_FALSE(eval(os[0].consequent, *v.counterexample));
  }

  TEST_CASE("a stronger guarantee is discharged by enumeration") {
    auto g = build(R"(
component A { in i (a : nat); out o (x : nat); assume true; guarantee x < 2; }
component B { in i (y : nat); out o (z : nat); assume y < 3; guarantee true; }
)", "link A.o -> B.i equal;");
    auto os = generate_obligations(g, DomainBounds{.max_n = 4});
    auto v = discharge(os[0]);
    CHECK(v.status == VerdictStatus::Discharged);
    CHECK(v.method == "enumeration");
    CHECK(v.envs_checked == 4);
  }

  TEST_CASE("subset links add a containment premise") {
    auto g = build(R"(
component A { in i (a : nat); out o (xs : set<nat>); assume true; guarantee forall v in xs . v < 2; }
component B { in i (ys : set<nat>); out o (z : nat); assume forall v in ys . v < 2; guarantee true; }
)", "link A.o -> B.i subset;");
    auto os = generate_obligations(g, DomainBounds{.max_n = 3});
    REQUIRE(os.size() == 1);
    CHECK(os[0].rule == "PR2");
    bool has_subset = false;
    for (const auto& c : conjuncts(os[0].premise)) {
      if (c.kind() == Formula::Kind::SubsetEq) has_subset = true;
    }
    CHECK(has_subset);
    CHECK(discharge(os[0]).status == VerdictStatus::Discharged);
  }

  TEST_CASE("subset links do not transfer upper bounds the wrong way") {
    auto g = build(R"(
component A { in i (a : nat); out o (xs : set<nat>); assume true; guarantee card_leq(xs, xs); }
component B { in i (ys : set<nat>); out o (z : nat); assume forall v in ys . v < 1; guarantee true; }
)", "link A.o -> B.i subset;");
    auto v = discharge(generate_obligations(g, DomainBounds{.max_n = 2})[0]);
    CHECK(v.status == VerdictStatus::Refuted);
  }

  TEST_CASE("planner guarantee entails agent assumption by enumeration") {
    auto g = test::rover_graph();
    DomainBounds b;
    b.max_n = 2;
    b.max_plans = 2;
    auto os = generate_obligations(g, b);
    auto v = discharge(os[1], DischargeOptions{.exhaustive = true});
    CHECK(v.status == VerdictStatus::Discharged);
    CHECK(v.method == "enumeration");
    CHECK(v.envs_checked > 0);
  }

  TEST_CASE("a one-environment budget is exhausted") {
    auto g = test::rover_graph();
    DomainBounds b;
    b.max_envs = 1;
    auto os = generate_obligations(g, b);
    auto v = discharge(os[0], DischargeOptions{.exhaustive = true});
    CHECK(v.status == VerdictStatus::Exhausted);
    CHECK_FALSE(v.counterexample);
  }

  TEST_CASE("discharge is deterministic") {
    auto g = build(kChain, "link A.o -> B.i equal;");
    auto os = generate_obligations(g, DomainBounds{.max_n = 5});
    auto a = discharge(os[0]);
    auto b = discharge(os[0]);
    CHECK(a.status == b.status);
    CHECK(a.envs_checked == b.envs_checked);
    REQUIRE(a.counterexample);
    REQUIRE(b.counterexample);
    CHECK(a.counterexample->bindings == b.counterexample->bindings);
    CHECK(render_obligation(os[0], a) == render_obligation(os[0], b));
  }

  TEST_CASE("verdicts agree with brute force") {
    auto g = build(kChain, "link A.o -> B.i equal;");
    for (Nat n = 1; n <= 5; ++n) {
      DomainBounds b;
      b.max_n = n;
      auto o = generate_obligations(g, b)[0];
      auto v = discharge(o);
      auto models = ref::models(o.vars, o.premise, b, Interp::obstacles_everywhere());
      auto cex = ref::falsify(models, o.consequent, Interp::obstacles_everywhere());
      CHECK((v.status == VerdictStatus::Refuted) == cex.has_value());
    }
  }

  TEST_CASE("a single component derives its own contract") {
    auto g = build(R"(component A { in i (a : nat); out o (x : nat); assume a < 3; guarantee x < 3; })", "");
    auto d = derive_system_contract(g, {}, {});
    CHECK(d.source == "A");
    CHECK(d.sink == "A");
    CHECK(d.provenance.empty());
  }

  TEST_CASE("a refuted link blocks the derivation") {
    auto g = build(kChain, "link A.o -> B.i equal;");
    auto os = generate_obligations(g);
    auto vs = discharge_all(os);
    REQUIRE(vs[0].status == VerdictStatus::Refuted);
    try {
      derive_system_contract(g, os, vs);
      FAIL("expected a composition error");
    } catch (const CompositionError& e) {
      CHECK(e.kind() == CompositionErrorKind::ObligationNotDischarged);
    }
  }

  TEST_CASE("several sinks need a focus") {
    const char* three = R"(
component A { in i (a : nat); out o (x : nat); assume true; guarantee x < 2; }
component B { in i (y : nat); out o (z : nat); assume y < 2; guarantee true; }
component C { in i (w : nat); out o (v : nat); assume w < 2; guarantee true; }
)";
    auto g = build(three, "link A.o -> B.i equal;\nlink A.o -> C.i equal;");
    auto os = generate_obligations(g);
    auto vs = discharge_all(os);
    try {
      derive_system_contract(g, os, vs);
      FAIL("expected a composition error");
    } catch (const CompositionError& e) {
      CHECK(e.kind() == CompositionErrorKind::UnsupportedTopology);
    }
    auto focused = build(three, "link A.o -> B.i equal;\nlink A.o -> C.i equal;\nfocus C;");
    auto d = derive_system_contract(focused, generate_obligations(focused),
                                    discharge_all(generate_obligations(focused)));
    CHECK(d.sink == "C");
    REQUIRE(d.provenance.size() == 1);
    CHECK(d.provenance[0].link_id == "L2");
  }

  TEST_CASE("rendered obligations list every field") {
    auto g = test::rover_graph();
    auto os = generate_obligations(g);
    auto text = render_obligation(os[0], discharge(os[0]));
    for (const char* key : {"obligation O1", "link", "rule", "vars", "bounds", "formula", "status",
                            "method", "envsChecked"}) {
      CHECK(text.find(key) != std::string::npos);
    }
    CHECK(text.find("elapsed") == std::string::npos);
    CHECK(render_obligation(os[0], discharge(os[0]), {.timing = true}).find("elapsed") !=
          std::string::npos);
  }
}
