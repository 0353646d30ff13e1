#include <doctest.h>

#include "agc/formula.hpp"
#include "generators.hpp"

using namespace agc;

namespace {

Formula in(const char* a, const char* b) {
  return Formula::atom(Formula::Kind::In, Term::var(a), Term::var(b));
}

}  // namespace

TEST_SUITE("formula") {
  TEST_CASE("free variables exclude binders") {
    auto f = Formula::forall("p", Term::var("PlanSet"),
                             Formula::conj({in("s0", "p"), in("p", "Plans")}));
    CHECK(free_vars(f) == std::set<std::string>{"PlanSet", "s0", "Plans"});
    Binder pair{"x", std::string("y")};
    auto g = Formula::forall(pair, Term::var("Grid"),
                             Formula::atom(Formula::Kind::Lt, Term::var("x"), Term::var("n")));
    CHECK(free_vars(g) == std::set<std::string>{"Grid", "n"});
  }

  TEST_CASE("pairs of literals fold into coordinates") {
    Term t = Term::pair(Term::nat(1), Term::nat(2));
    CHECK(t.kind() == Term::Kind::Lit);
    CHECK(t.value() == Value::coord(1, 2));
    CHECK(Term::pair(Term::var("x"), Term::nat(2)).kind() == Term::Kind::Pair);
  }

  TEST_CASE("alpha equality ignores bound names only") {
    auto a = Formula::exists("r", Term::var("p"), in("r", "Grid"));
    auto b = Formula::exists("t", Term::var("p"), in("t", "Grid"));
    auto c = Formula::exists("t", Term::var("p"), in("t", "Obstacles"));
    CHECK(alpha_equal(a, b));
    CHECK_FALSE(a == b);
    CHECK_FALSE(alpha_equal(a, c));
  }

  TEST_CASE("normalization removes shadowing") {
    auto inner = Formula::exists("x", Term::var("S"), in("x", "S"));
    auto f = Formula::forall("x", Term::var("S"), Formula::conj({in("x", "S"), inner}));
    auto g = normalize(f, {"S"});
    CHECK(alpha_equal(f, g));
    CHECK(g.binder().first != g.body().operands()[1].binder().first);
  }

  TEST_CASE("renaming free variables avoids capture") {
    auto f = Formula::exists("y", Term::var("S"), in("x", "S"));
    auto g = rename_free(f, {{"x", "y"}});
    CHECK(free_vars(g) == std::set<std::string>{"S", "y"});
    CHECK(g.binder().first != "y");
  }

  TEST_CASE("conjuncts flatten nested conjunctions") {
    auto f = Formula::conj({in("a", "A"), Formula::conj({in("b", "B"), in("c", "C")})});
    CHECK(conjuncts(f).size() == 3);
    CHECK(conjuncts(Formula::truth()).size() == 1);
  }

  TEST_CASE("printer respects precedence") {
    auto f = Formula::implies(Formula::disj({in("a", "A"), in("b", "B")}),
                              Formula::negate(in("c", "C")));
    CHECK(to_string(f) == "a in A or b in B => not c in C");
    auto g = Formula::conj({Formula::forall("x", Term::var("A"), in("x", "B")), in("c", "C")});
    CHECK(to_string(g) == "(forall x in A . x in B) and c in C");
    auto h = Formula::obstacle(Term::pair(Term::var("x"), Term::var("y")));
    CHECK(to_string(h) == "obstacle(x, y)");
  }

  TEST_CASE("normalization keeps random formulas alpha equal") {
    gen::Gen g(7);
    TypeEnv env{{"a", SemType::nat()}, {"S", SemType::set_of(SemType::coord())}};
    for (int i = 0; i < 200; ++i) {
      auto f = g.formula(env, 4);
      CHECK(alpha_equal(f, normalize(f)));
    }
  }
}
