/*
 * toylang.hpp - the concrete programming language: a three-variable
 * imperative toy language with mod-4 arithmetic, its operational semantics
 * as finite labeled transition systems, and simulation-preorder decision
 * procedures (a fixpoint algorithm plus a brute-force oracle).
 *
 * Grammar (ASCII; statements separated by newlines or ';'):
 *   stmt  := "input" var | "output" expr | var "=" expr
 *          | "if" expr "{" stmts "}" ["else" "{" stmts "}"]
 *          | "while" expr "{" stmts "}"
 *   expr  := add (("==" | "<") add)?
 *   add   := mul (("+" | "-") mul)*
 *   mul   := atom ("*" atom)*
 *   atom  := "a" | "b" | "c" | "0" | "1" | "2" | "3"
 * Arithmetic is modulo 4; comparisons yield 0/1.
 */

#pragma once

#include "specworld/kernel.hpp"

#include <cstdint>
#include <variant>

namespace specworld::toylang {

/// Transition labels: in?k and out!k for k in 0..3, plus tau for internal
/// steps (assignments and tests).
struct Label {
    enum class Kind { Input, Output, Tau };

    Kind kind = Kind::Tau;
    int value = 0;  // meaningful for Input/Output only

    auto operator<=>(const Label&) const = default;

    static Label input(int k) { return {Kind::Input, k}; }
    static Label output(int k) { return {Kind::Output, k}; }
    static Label tau() { return {Kind::Tau, 0}; }

    std::string text() const;
    static std::optional<Label> parse(std::string_view text);
};

enum class BinOp { Add, Sub, Mul, Eq, Lt };

struct Expr {
    struct Var {
        char name;  // 'a' | 'b' | 'c'
    };
    struct Lit {
        int value;  // 0..3
    };
    struct Bin {
        BinOp op;
        std::shared_ptr<const Expr> lhs;
        std::shared_ptr<const Expr> rhs;
    };

    std::variant<Var, Lit, Bin> node;

    static Expr var(char name) { return Expr{Var{name}}; }
    static Expr lit(int value) { return Expr{Lit{value}}; }
    static Expr bin(BinOp op, Expr lhs, Expr rhs);
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Stmt {
    struct Input {
        char var;
    };
    struct Output {
        Expr expr;
    };
    struct Assign {
        char var;
        Expr expr;
    };
    struct If {
        Expr cond;
        Block then_body;
        Block else_body;  // may be empty
    };
    struct While {
        Expr cond;
        Block body;
    };

    std::variant<Input, Output, Assign, If, While> node;
};

struct Ast {
    Block stmts;
};

bool structurally_equal(const Expr& x, const Expr& y);
bool structurally_equal(const Ast& x, const Ast& y);

/// Canonical source text; parse(print(ast)) is structurally equal to ast
/// for any parser-produced ast.
Str print(const Ast& ast);

struct ParseFailure {
    std::size_t offset = 0;
    std::string message;
};

using ParseResult = std::variant<Ast, ParseFailure>;

/// Deterministic recursive-descent parse; never throws on bad input.
ParseResult parse(const Str& src);

struct SemLimits {
    std::size_t state_limit = 4096;
    static constexpr int value_modulus = 4;
};

using StateId = std::uint32_t;

struct Transition {
    StateId from;
    Label label;
    StateId to;

    auto operator<=>(const Transition&) const = default;
};

/// Finite LTS with states 0..num_states-1; state 0 is initial unless stated
/// otherwise.  Transitions are kept sorted and deduplicated.
struct Lts {
    std::size_t num_states = 1;
    StateId initial = 0;
    std::vector<Transition> transitions;

    void normalize();  // sort + dedupe; call after hand-building

    bool operator==(const Lts&) const = default;
};

struct Blowup {
    std::size_t state_count;  // count at which exploration stopped
};

using LtsResult = std::variant<Lts, Blowup>;

/// Explores the reachable (program counter, valuation) space from the
/// all-zeros valuation.  Input statements branch over every value in
/// 0..3; output emits out!v; assignments and tests take tau steps.
/// Exceeding limits.state_limit yields Blowup.
LtsResult lts_of(const Ast& ast, const SemLimits& limits = {});

/// Greatest-simulation decision by fixpoint refinement from the full
/// relation: true iff the greatest simulation relates the initial states.
bool simulation_preorder(const Lts& l1, const Lts& l2);

struct OracleTooLarge : Error {
    OracleTooLarge() : Error("state product exceeds the brute-force guard") {}
};

/// Testing oracle: enumerates every relation containing the initial pair
/// and reports whether any of them is a simulation.  Guarded by
/// |S1| * |S2| <= 12; beyond that throws OracleTooLarge.
bool brute_force_simulates(const Lts& l1, const Lts& l2);

inline constexpr std::size_t kBruteForceGuard = 12;

/// The toy-language semantical framework: interpret is parse + lts_of with
/// every failure (and the empty string) mapped to Bottom; sim extends the
/// simulation preorder with Bottom as minimum.  Interpretations and
/// simulation queries are memoized behind the returned closures.
SemanticalFramework make_framework(const SemLimits& limits = {});

/// Payload accessor: null for Bottom or foreign objects.
const Lts* lts_of_object(const SemObject& obj);

}  // namespace specworld::toylang
