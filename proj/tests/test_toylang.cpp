#include <doctest.h>

#include <random>

#include "specworld/toylang.hpp"
#include "support/corpus.hpp"

using namespace specworld;
using namespace specworld::toylang;

namespace {

Ast parse_ok(const Str& src) {
    ParseResult result = parse(src);
    REQUIRE(std::holds_alternative<Ast>(result));
    return std::get<Ast>(result);
}

Lts lts_ok(const Str& src, const SemLimits& limits = {}) {
    LtsResult built = lts_of(parse_ok(src), limits);
    REQUIRE(std::holds_alternative<Lts>(built));
    return std::get<Lts>(built);
}

}  // namespace

TEST_CASE("labels print and parse") {
    CHECK(Label::output(1).text() == "out!1");
    CHECK(Label::input(0).text() == "in?0");
    CHECK(Label::tau().text() == "tau");
    CHECK(Label::parse("out!2") == Label::output(2));
    CHECK(Label::parse("in?3") == Label::input(3));
    CHECK(Label::parse("tau") == Label::tau());
    CHECK_FALSE(Label::parse("out!4").has_value());
    CHECK_FALSE(Label::parse("out!").has_value());
    CHECK_FALSE(Label::parse("nope").has_value());
}

TEST_CASE("parse accepts a minimal program") {
    Ast ast = parse_ok("output 1");
    REQUIRE(ast.stmts.size() == 1);
    const auto* output = std::get_if<Stmt::Output>(&ast.stmts[0].node);
    REQUIRE(output != nullptr);
    const auto* lit = std::get_if<Expr::Lit>(&output->expr.node);
    REQUIRE(lit != nullptr);
    CHECK(lit->value == 1);
}

TEST_CASE("parse rejects garbage at offset 0") {
    ParseResult result = parse("garbage((");
    REQUIRE(std::holds_alternative<ParseFailure>(result));
    CHECK(std::get<ParseFailure>(result).offset == 0);
}

TEST_CASE("parse builds the input/while shape by the grammar") {
    Ast ast = parse_ok("input a\nwhile a { output a\na = a + 1 }");
    REQUIRE(ast.stmts.size() == 2);
    const auto* input = std::get_if<Stmt::Input>(&ast.stmts[0].node);
    REQUIRE(input != nullptr);
    CHECK(input->var == 'a');
    const auto* loop = std::get_if<Stmt::While>(&ast.stmts[1].node);
    REQUIRE(loop != nullptr);
    CHECK(loop->body.size() == 2);
    CHECK(std::holds_alternative<Stmt::Output>(loop->body[0].node));
    CHECK(std::holds_alternative<Stmt::Assign>(loop->body[1].node));
}

TEST_CASE("parse handles if/else, separators, and reports bad literals") {
    CHECK_NOTHROW(parse_ok("if a == 1 { output 1 } else { output 2 }"));
    CHECK_NOTHROW(parse_ok("a = 1; b = a + 2; output b"));
    CHECK_NOTHROW(parse_ok("if a { output 1 }\noutput 2"));

    ParseResult bad = parse("output 4");
    REQUIRE(std::holds_alternative<ParseFailure>(bad));
    CHECK(std::get<ParseFailure>(bad).offset == 7);

    CHECK(std::holds_alternative<ParseFailure>(parse("output 1 output 2")));
    CHECK(std::holds_alternative<ParseFailure>(parse("while a output 1")));
    CHECK(std::holds_alternative<ParseFailure>(parse("d = 1")));
}

TEST_CASE("the empty source parses to the empty program") {
    Ast ast = parse_ok("");
    CHECK(ast.stmts.empty());
}

TEST_CASE("print then parse is structurally the identity on valid sources") {
    const Str sources[] = {
        "output 1",
        "input a\nwhile a { output a\na = a + 1 }",
        "if a == 1 { output 1 } else { output 2 }",
        "a = 2 * b + 1\noutput a - 1",
        "while a < 2 { a = a + 1; if b { output b } }",
        "output a == b",
    };
    for (const Str& src : sources) {
        Ast ast = parse_ok(src);
        Ast reparsed = parse_ok(print(ast));
        CHECK_MESSAGE(structurally_equal(ast, reparsed), "source: ", src);
    }
}

TEST_CASE("print round-trips on random grammar-shaped programs") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Str src = testsupport::random_program(rng);
        CAPTURE(src);
        Ast ast = parse_ok(src);
        Ast reparsed = parse_ok(print(ast));
        CHECK(structurally_equal(ast, reparsed));
    }
}

TEST_CASE("lts of a single output has two states and one edge") {
    Lts lts = lts_ok("output 1");
    CHECK(lts.num_states == 2);
    REQUIRE(lts.transitions.size() == 1);
    CHECK(lts.transitions[0] == Transition{0, Label::output(1), 1});
}

TEST_CASE("lts of a single input branches over every value") {
    Lts lts = lts_ok("input a");
    CHECK(lts.num_states == 5);
    CHECK(lts.transitions.size() == 4);
    for (int k = 0; k < 4; ++k) {
        bool found = false;
        for (const auto& t : lts.transitions)
            if (t.label == Label::input(k) && t.from == 0) found = true;
        CHECK(found);
    }
}

TEST_CASE("lts of the empty program is a single deadlocked state") {
    Lts lts = lts_ok("");
    CHECK(lts.num_states == 1);
    CHECK(lts.transitions.empty());
}

TEST_CASE("assignments and tests take tau steps") {
    Lts lts = lts_ok("a = 1\noutput a");
    CHECK(lts.num_states == 3);
    REQUIRE(lts.transitions.size() == 2);
    CHECK(lts.transitions[0].label == Label::tau());
    CHECK(lts.transitions[1].label == Label::output(1));
}

TEST_CASE("state exploration stops at the configured limit") {
    SemLimits tight{2};
    LtsResult built = lts_of(parse_ok("input a"), tight);
    REQUIRE(std::holds_alternative<Blowup>(built));
    CHECK(std::get<Blowup>(built).state_count == 3);
}

TEST_CASE("lts construction is deterministic") {
    const Str src = "input a\nif a { output a } else { output 2 }";
    CHECK(lts_ok(src) == lts_ok(src));
}

TEST_CASE("simulation is reflexive and accepts the empty behaviour") {
    Lts l = lts_ok("output 1\noutput 2");
    CHECK(simulation_preorder(l, l));

    Lts idle = lts_ok("");
    CHECK(simulation_preorder(idle, l));
    CHECK(simulation_preorder(idle, idle));
}

TEST_CASE("longer behaviour is not simulated by a prefix") {
    Lts two = lts_ok("output 1\noutput 2");
    Lts one = lts_ok("output 1");
    CHECK(simulation_preorder(one, two));
    CHECK_FALSE(simulation_preorder(two, one));
    // The brute-force oracle agrees on this pinned example.
    CHECK(brute_force_simulates(one, two));
    CHECK_FALSE(brute_force_simulates(two, one));
}

TEST_CASE("brute force accepts identical chains and rejects mismatched labels") {
    Lts chain1 = lts_ok("output 1");
    CHECK(brute_force_simulates(chain1, chain1));
    Lts chain2 = lts_ok("output 2");
    CHECK_FALSE(brute_force_simulates(chain1, chain2));
    CHECK_FALSE(brute_force_simulates(chain2, chain1));
}

TEST_CASE("the brute-force oracle refuses oversized products") {
    Lts big = lts_ok("input a");   // 5 states
    Lts other = lts_ok("input b"); // 5 states: product 25 > 12
    CHECK_THROWS_AS(brute_force_simulates(big, other), OracleTooLarge);
}

TEST_CASE("fixpoint simulation agrees with the oracle on random program pairs") {
    std::mt19937 rng(11);
    int compared = 0;
    while (compared < 150) {
        Str a = testsupport::random_program(rng, 2);
        Str b = testsupport::random_program(rng, 2);
        LtsResult la = lts_of(parse_ok(a));
        LtsResult lb = lts_of(parse_ok(b));
        const Lts* pa = std::get_if<Lts>(&la);
        const Lts* pb = std::get_if<Lts>(&lb);
        if (!pa || !pb) continue;
        if (pa->num_states * pb->num_states > kBruteForceGuard) continue;
        CAPTURE(a);
        CAPTURE(b);
        CHECK(simulation_preorder(*pa, *pb) == brute_force_simulates(*pa, *pb));
        ++compared;
    }
}

TEST_CASE("simulation is a preorder on a program sample") {
    const std::vector<Str> pool = {"output 1", "output 1\noutput 2", "output 2",
                                   "", "a = 1\noutput a"};
    std::vector<Lts> ltss;
    for (const Str& p : pool) ltss.push_back(lts_ok(p));

    for (const auto& l : ltss) CHECK(simulation_preorder(l, l));
    for (const auto& x : ltss)
        for (const auto& y : ltss)
            for (const auto& z : ltss)
                if (simulation_preorder(x, y) && simulation_preorder(y, z))
                    CHECK(simulation_preorder(x, z));
}

TEST_CASE("the toy framework maps failures to bottom and obeys the laws") {
    SemanticalFramework fw = make_framework();
    CHECK(fw.interpret("").is_bottom());
    CHECK(fw.interpret("garbage((").is_bottom());
    CHECK_FALSE(fw.interpret("output 1").is_bottom());

    std::vector<Str> pool{"output 1", "output 1\noutput 2", "garbage((", "input a"};
    CHECK(check_framework_laws(fw, pool).all_passed());
}

TEST_CASE("interpretation is memoized with stable identity") {
    SemanticalFramework fw = make_framework();
    SemObject first = fw.interpret("output 1");
    SemObject second = fw.interpret("output 1");
    CHECK(first.identity() == second.identity());
}

TEST_CASE("bottom behaves as the minimum for program simulation") {
    SemanticalFramework fw = make_framework();
    CHECK(program_simulates(fw, "", "output 1"));
    CHECK(program_simulates(fw, "garbage((", "output 1"));  // failure is bottom
    CHECK_FALSE(program_simulates(fw, "output 1", "garbage(("));
    CHECK(program_simulates(fw, "garbage((", ""));
    CHECK(program_simulates(fw, "output 1", "output 1\noutput 2"));
    CHECK_FALSE(program_simulates(fw, "output 1\noutput 2", "output 1"));
}

TEST_CASE("blowups interpret to bottom") {
    SemanticalFramework fw = make_framework(SemLimits{2});
    CHECK(fw.interpret("input a").is_bottom());
}
