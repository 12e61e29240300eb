#include <doctest.h>

#include <random>

#include "bdi/desugar.hpp"
#include "bdi/model_io.hpp"
#include "bdi/parser.hpp"
#include "bdi/policy.hpp"
#include "bdi/printer.hpp"
#include "bdi/satisfaction.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"
#include "support/random_model.hpp"
#include "support/reference_eval.hpp"

using namespace bdi;
using bdi::testing::FormulaFuzzer;
using bdi::testing::Vocabulary;

namespace {

Vocabulary fixture_vocabulary() {
  Vocabulary v;
  v.props = {"yes", "no", "win", "loss", "retired"};
  v.events = {"Poll", "NoPoll", "Sen", "Rep", "Ret"};
  return v;
}

// The fixture model with both tagged intention relations attached.
const Interpretation& deliberated_fixture() {
  static const Interpretation m = [] {
    Interpretation base = load_model(bdi::testing::fixture("phil.model"));
    return pw_deliberate(pw_deliberate(base, Procedure::Maximin), Procedure::MaxExpVal);
  }();
  return m;
}

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("belief in an optional Senate run") {
    auto f = parse_state_formula("BEL(OPTIONAL(<> done(Sen)))");
    CHECK(f == bel(optional(eventually(done(primitive("Sen"))))));
  }

  TEST_CASE("single-term probability constraint") {
    auto f = parse_state_formula("PROB(OPTIONAL(<> yes)) = 0.42");
    const auto* c = std::get_if<state::Prob>(&f->node);
    REQUIRE(c != nullptr);
    CHECK(c->terms.size() == 1);
    CHECK(c->cmp == Comparator::Eq);
    CHECK(c->bound == 0.42);
    CHECK(c->terms[0].formula == optional(eventually(as_path(prop("yes")))));
  }

  TEST_CASE("constants") {
    CHECK(parse_state_formula("true") == constant(true));
    CHECK(parse_state_formula("false") == constant(false));
  }

  TEST_CASE("done outside a path context is rejected") {
    CHECK_THROWS_AS(parse_state_formula("done(Sen)"), ParseError);
    CHECK_THROWS_AS(parse_state_formula("BEL(done(Sen))"), ParseError);
    CHECK_NOTHROW(parse_state_formula("OPTIONAL(done(Sen))"));
  }

  TEST_CASE("path formulas") {
    CHECK(parse_path_formula("<> (done(Sen) & loss)") ==
          eventually(conj(done(primitive("Sen")), as_path(prop("loss")))));
    CHECK(parse_path_formula("p") == as_path(prop("p")));
    CHECK(parse_path_formula("done(Poll; ?yes; Sen)") ==
          done(sequence(sequence(primitive("Poll"), test(prop("yes"))), primitive("Sen"))));
  }

  TEST_CASE("sequences associate left however they are grouped") {
    CHECK(parse_event("a;(b;c)") == parse_event("(a;b);c"));
  }

  TEST_CASE("precedence: unary, &, |, ->") {
    CHECK(parse_state_formula("~p & q | r -> p") ==
          implies(disj(conj(neg(prop("p")), prop("q")), prop("r")), prop("p")));
    CHECK(parse_state_formula("p -> q -> r") == implies(prop("p"), implies(prop("q"), prop("r"))));
  }

  TEST_CASE("errors carry a position") {
    try {
      parse_state_formula("BEL(p &\n  )");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_state_formula("PROB(p) >= "), ParseError);
    CHECK_THROWS_AS(parse_state_formula("INTEND[best](p)"), ParseError);
    CHECK_THROWS_AS(parse_state_formula("PROB(p) + PAYOFF(q) >= 1"), ParseError);
    CHECK_THROWS_AS(parse_state_formula("p q"), ParseError);
  }
}

TEST_SUITE("printer") {
  TEST_CASE("canonical text") {
    CHECK(render(bel(optional(eventually(done(primitive("Sen")))))) ==
          "BEL(OPTIONAL(<> done(Sen)))");
    CHECK(render(eventually(eventually(as_path(prop("p"))))) == "<> <> p");
    CHECK(render(prob({{2, prop("p"), {}}, {-1, prop("q"), {}}}, Comparator::Ge, 0.5)) ==
          "2*PROB(p) - 1*PROB(q) >= 0.5");
  }

  TEST_CASE("always prints back as []") {
    auto p = always(as_path(prop("p")));
    CHECK(render(p) == "[] p");
    CHECK(parse_path_formula("[] p") == p);
  }

  TEST_CASE("round trip on fuzzed formulas of depth at most 6") {
    FormulaFuzzer fuzz(11);
    int checked = 0;
    while (checked < 300) {
      auto f = fuzz.state(6);
      if (depth(f) > 6) continue;
      ++checked;
      INFO(render(f));
      CHECK(parse_state_formula(render(f)) == f);
    }
  }
}

TEST_SUITE("desugar") {
  TEST_CASE("conditional probability becomes a linear constraint") {
    auto c = std::get<state::Prob>(parse_state_formula("PROB(win | yes) >= 0.8")->node);
    auto r = rewrite_conditional(c);
    CHECK(r == std::get<state::Prob>(
                   prob({{1, conj(prop("win"), prop("yes")), {}}, {-0.8, prop("yes"), {}}},
                        Comparator::Ge, 0)
                       ->node));

    auto t = rewrite_conditional(std::get<state::Prob>(parse_state_formula("PROB(p | true) >= 0.3")->node));
    CHECK(t.terms[0].formula == conj(prop("p"), constant(true)));
    CHECK(t.terms[1].formula == constant(true));
    CHECK(t.terms[1].coefficient == -0.3);
  }

  TEST_CASE("conditional term inside a sum is unsupported") {
    state::Prob mixed{{{1, prop("p"), prop("q")}, {1, prop("r"), {}}}, Comparator::Ge, 0.5};
    CHECK_THROWS_AS(rewrite_conditional(mixed), UnsupportedError);
  }

  TEST_CASE("conditional equality agrees with the ratio on the fixture") {
    const auto& m = deliberated_fixture();
    const Situation s = m.designated;
    auto win = optional(eventually(as_path(prop("win"))));
    auto yes = optional(eventually(as_path(prop("yes"))));
    double joint = bdi::testing::reference_measure(m, s, conj(win, yes));
    double given = bdi::testing::reference_measure(m, s, yes);
    REQUIRE(given > 0.0);
    for (double alpha : {0.5, 0.8}) {
      auto f = prob({{1, win, yes}}, Comparator::Eq, alpha);
      CHECK(check(m, s, f) == nearly_equal(joint / given, alpha));
    }
    CHECK(check(m, s, parse_state_formula("PROB(OPTIONAL(<> win) | OPTIONAL(<> yes)) = 0.8")));
  }

  TEST_CASE("a condition of probability zero makes the constraint vacuous") {
    const auto& m = deliberated_fixture();
    CHECK(check(m, m.designated, parse_state_formula("PROB(win | yes) = 0.5")));
    CHECK(check(m, m.designated, parse_state_formula("PROB(win | yes) = 0.8")));
  }

  TEST_CASE("sugar is removed") {
    CHECK(desugar(parse_state_formula("INEVITABLE(<> done(Rep))")) ==
          neg(optional(neg(eventually(done(primitive("Rep")))))));
    CHECK(desugar(always(as_path(prop("p")))) ==
          neg(eventually(neg(as_path(prop("p"))))));
    CHECK(desugar(parse_state_formula("p -> q")) == disj(neg(prop("p")), prop("q")));
  }

  TEST_CASE("output is core and desugaring is idempotent") {
    FormulaFuzzer fuzz(5);
    for (int i = 0; i < 300; ++i) {
      auto f = fuzz.state(6);
      auto d = desugar(f);
      INFO(render(f));
      CHECK(is_core(d));
      CHECK(desugar(d) == d);
    }
  }

  TEST_CASE("the evaluator refuses sugar") {
    const auto& m = deliberated_fixture();
    CHECK_THROWS_AS(holds_state(m, m.designated, parse_state_formula("p -> q")), ModelError);
    CHECK_THROWS_AS(holds_state(m, m.designated, parse_state_formula("PROB(p) <= 1")), ModelError);
  }
}

TEST_SUITE("soundness") {
  TEST_CASE("desugared formulas agree with the reference evaluator on the fixture") {
    const auto& m = deliberated_fixture();
    FormulaFuzzer fuzz(21, fixture_vocabulary());
    auto situations = bdi::testing::all_situations(m);
    for (int i = 0; i < 100; ++i) {
      auto f = fuzz.state(5);
      INFO(render(f));
      for (const auto& s : situations) {
        INFO(s.key());
        REQUIRE(check(m, s, f) == bdi::testing::reference_holds(m, s, f));
      }
    }
  }

  TEST_CASE("desugared formulas agree with the reference evaluator on 100 random models") {
    std::mt19937_64 rng(3);
    FormulaFuzzer fuzz(4);
    for (int k = 0; k < 100; ++k) {
      auto m = bdi::testing::random_model(rng);
      REQUIRE(validate_interpretation(m).empty());
      auto situations = bdi::testing::all_situations(m);
      for (int i = 0; i < 10; ++i) {
        auto f = fuzz.state(5);
        INFO(render(f));
        for (const auto& s : situations) {
          INFO(s.key());
          REQUIRE(check(m, s, f) == bdi::testing::reference_holds(m, s, f));
        }
      }
    }
  }

  TEST_CASE("INEVITABLE is the dual of OPTIONAL") {
    std::mt19937_64 rng(8);
    FormulaFuzzer fuzz(9);
    for (int k = 0; k < 30; ++k) {
      auto m = bdi::testing::random_model(rng);
      for (int i = 0; i < 10; ++i) {
        auto psi = fuzz.path(4);
        for (const auto& s : bdi::testing::all_situations(m)) {
          CHECK(check(m, s, inevitable(psi)) == check(m, s, neg(optional(neg(psi)))));
          CHECK(check(m, s, optional(psi)) == !check(m, s, inevitable(neg(psi))));
        }
      }
    }
  }

  TEST_CASE("probability of truth is one and measure is monotone") {
    std::mt19937_64 rng(13);
    FormulaFuzzer fuzz(14);
    for (int k = 0; k < 30; ++k) {
      auto m = bdi::testing::random_model(rng);
      for (const auto& s : bdi::testing::all_situations(m)) {
        CHECK(check(m, s, prob(constant(true), Comparator::Ge, 1)));
        CHECK(prob_measure(m, s, constant(false)) == 0.0);
        auto phi = desugar(fuzz.state(4));
        auto chi = desugar(fuzz.state(4));
        CHECK(prob_measure(m, s, conj(phi, chi)) <= prob_measure(m, s, phi) + kTolerance);
      }
    }
  }
}
