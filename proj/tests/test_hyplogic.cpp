#include <doctest.h>

#include <random>

#include "specworld/hyplogic.hpp"
#include "support/corpus.hpp"

using namespace specworld;
using namespace specworld::hyp;

namespace {

Formula parse_formula(const Str& src) {
    HypParseResult result = parse_hyp(src);
    REQUIRE_MESSAGE(std::holds_alternative<Formula>(result), "source: ", src);
    return std::get<Formula>(result);
}

toylang::Lts lts_of_source(const Str& src) {
    auto parsed = toylang::parse(src);
    REQUIRE(std::holds_alternative<toylang::Ast>(parsed));
    auto built = toylang::lts_of(std::get<toylang::Ast>(parsed));
    REQUIRE(std::holds_alternative<toylang::Lts>(built));
    return std::get<toylang::Lts>(built);
}

}  // namespace

TEST_CASE("a single atom parses") {
    Formula f = parse_formula("enabled(out!1)");
    const auto* atom = std::get_if<Formula::Enabled>(&f.node);
    REQUIRE(atom != nullptr);
    CHECK(atom->label == toylang::Label::output(1));
    CHECK(f.is_atom());
}

TEST_CASE("a conjunction with negation parses by hand-checked shape") {
    Formula f = parse_formula("enabled(out!1) and not enabled(out!3)");
    const auto* conj = std::get_if<Formula::And>(&f.node);
    REQUIRE(conj != nullptr);
    CHECK(std::holds_alternative<Formula::Enabled>(conj->lhs->node));
    CHECK(std::holds_alternative<Formula::Not>(conj->rhs->node));
}

TEST_CASE("the empty string fails to parse as a hypothesis") {
    HypParseResult result = parse_hyp("");
    REQUIRE(std::holds_alternative<HypParseFailure>(result));
    CHECK(std::get<HypParseFailure>(result).offset == 0);
}

TEST_CASE("malformed hypotheses report a position") {
    CHECK(std::holds_alternative<HypParseFailure>(parse_hyp("enabled(")));
    CHECK(std::holds_alternative<HypParseFailure>(parse_hyp("enabled(out!9)")));
    CHECK(std::holds_alternative<HypParseFailure>(parse_hyp("and and")));
    CHECK(std::holds_alternative<HypParseFailure>(parse_hyp("enabled(out!1) trailing")));
    CHECK(std::holds_alternative<HypParseFailure>(parse_hyp("output 1")));
}

TEST_CASE("precedence: implies binds loosest, not tightest") {
    Formula f = parse_formula("not deadlockfree and enabled(out!1) implies deadlockfree");
    const auto* implies = std::get_if<Formula::Implies>(&f.node);
    REQUIRE(implies != nullptr);
    const auto* conj = std::get_if<Formula::And>(&implies->lhs->node);
    REQUIRE(conj != nullptr);
    CHECK(std::holds_alternative<Formula::Not>(conj->lhs->node));
}

TEST_CASE("eval: enabled sees a reachable edge") {
    toylang::Lts l = lts_of_source("output 1");
    CHECK(eval_hyp(parse_formula("enabled(out!1)"), l));
    CHECK_FALSE(eval_hyp(parse_formula("enabled(out!2)"), l));
    CHECK(eval_hyp(parse_formula("not enabled(out!3)"), l));
}

TEST_CASE("eval: deadlockfree fails on a terminating program") {
    toylang::Lts idle = lts_of_source("");
    CHECK_FALSE(eval_hyp(parse_formula("deadlockfree"), idle));

    // A one-state self-loop never deadlocks.
    toylang::Lts loop;
    loop.num_states = 1;
    loop.transitions = {{0, toylang::Label::tau(), 0}};
    CHECK(eval_hyp(parse_formula("deadlockfree"), loop));
}

TEST_CASE("eval: initenabled only looks at the initial state") {
    toylang::Lts l = lts_of_source("output 1\noutput 2");
    CHECK(eval_hyp(parse_formula("initenabled(out!1)"), l));
    CHECK_FALSE(eval_hyp(parse_formula("initenabled(out!2)"), l));
    CHECK(eval_hyp(parse_formula("enabled(out!2)"), l));
}

TEST_CASE("eval: unreachable transitions do not count") {
    toylang::Lts l;
    l.num_states = 3;
    l.transitions = {{1, toylang::Label::output(1), 2}};  // state 1 unreachable
    CHECK_FALSE(eval_hyp(parse_formula("enabled(out!1)"), l));
}

TEST_CASE("eval at bottom forces every atom false") {
    CHECK_FALSE(eval_hyp_at_bottom(parse_formula("enabled(out!1)")));
    CHECK_FALSE(eval_hyp_at_bottom(parse_formula("deadlockfree")));
    CHECK(eval_hyp_at_bottom(parse_formula("not enabled(out!3)")));
    CHECK(eval_hyp_at_bottom(parse_formula("enabled(out!1) implies deadlockfree")));
    CHECK_FALSE(eval_hyp_on(parse_formula("enabled(out!1)"), SemObject::bottom()));
}

TEST_CASE("vocabulary is the syntactic label set") {
    CHECK(vocabulary(parse_formula("enabled(out!1)")) ==
          std::set<toylang::Label>{toylang::Label::output(1)});
    CHECK(vocabulary(parse_formula("deadlockfree")).empty());
    CHECK(vocabulary(parse_formula("enabled(out!1) or enabled(in?0)")) ==
          std::set<toylang::Label>{toylang::Label::output(1), toylang::Label::input(0)});
    CHECK(vocabulary(parse_formula("initenabled(tau) implies not enabled(out!2)")) ==
          std::set<toylang::Label>{toylang::Label::tau(), toylang::Label::output(2)});
}

TEST_CASE("propositional laws hold against sample systems") {
    std::mt19937 rng(23);
    const std::vector<toylang::Label> labels{toylang::Label::output(1),
                                             toylang::Label::output(2),
                                             toylang::Label::input(0)};
    const std::vector<Str> sources{"output 1", "output 1\noutput 2", "input a", ""};
    std::vector<toylang::Lts> systems;
    for (const Str& s : sources) systems.push_back(lts_of_source(s));

    for (int i = 0; i < 100; ++i) {
        Formula f = parse_formula(testsupport::random_formula_text(rng, labels, 2));
        Formula g = parse_formula(testsupport::random_formula_text(rng, labels, 2));
        for (const auto& l : systems) {
            CHECK(eval_hyp(Formula::negation(f), l) == !eval_hyp(f, l));
            CHECK(eval_hyp(Formula::conjunction(f, g), l) ==
                  (eval_hyp(f, l) && eval_hyp(g, l)));
            CHECK(eval_hyp(Formula::disjunction(f, g), l) ==
                  (eval_hyp(f, l) || eval_hyp(g, l)));
            CHECK(eval_hyp(Formula::implication(f, g), l) ==
                  (!eval_hyp(f, l) || eval_hyp(g, l)));
            // Conjunction elimination, the shape global entailment relies on.
            if (eval_hyp(Formula::conjunction(f, g), l)) CHECK(eval_hyp(f, l));
        }
    }
}

TEST_CASE("print then parse is the identity on random formulas") {
    std::mt19937 rng(29);
    const std::vector<toylang::Label> labels{toylang::Label::output(1),
                                             toylang::Label::output(2),
                                             toylang::Label::tau()};
    for (int i = 0; i < 200; ++i) {
        Formula f = parse_formula(testsupport::random_formula_text(rng, labels, 3));
        Str printed = print(f);
        CAPTURE(printed);
        Formula reparsed = parse_formula(printed);
        CHECK(structurally_equal(f, reparsed));
        CHECK(print(reparsed) == printed);
    }
}
