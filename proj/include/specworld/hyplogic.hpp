/*
 * hyplogic.hpp - the hypothesis language: propositional formulas over
 * atomic reachability properties of an LTS.
 *
 * Grammar (ASCII):
 *   formula := or_f ("implies" formula)?          (implies is right-assoc)
 *   or_f    := and_f ("or" and_f)*
 *   and_f   := unary ("and" unary)*
 *   unary   := "not" unary | "(" formula ")" | atom
 *   atom    := "enabled(" label ")" | "initenabled(" label ")"
 *            | "deadlockfree"
 * where label is in?k, out!k (k in 0..3), or tau.
 */

#pragma once

#include "specworld/toylang.hpp"

#include <set>
#include <variant>

namespace specworld::hyp {

using toylang::Label;
using toylang::Lts;

struct Formula {
    struct Enabled {
        Label label;  // some reachable transition carries the label
    };
    struct InitEnabled {
        Label label;  // some transition from the initial state carries it
    };
    struct DeadlockFree {};  // every reachable state has a successor
    struct Not {
        std::shared_ptr<const Formula> arg;
    };
    struct And {
        std::shared_ptr<const Formula> lhs;
        std::shared_ptr<const Formula> rhs;
    };
    struct Or {
        std::shared_ptr<const Formula> lhs;
        std::shared_ptr<const Formula> rhs;
    };
    struct Implies {
        std::shared_ptr<const Formula> lhs;
        std::shared_ptr<const Formula> rhs;
    };

    std::variant<Enabled, InitEnabled, DeadlockFree, Not, And, Or, Implies> node;

    static Formula enabled(Label l) { return Formula{Enabled{l}}; }
    static Formula init_enabled(Label l) { return Formula{InitEnabled{l}}; }
    static Formula deadlock_free() { return Formula{DeadlockFree{}}; }
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);

    bool is_atom() const;
};

bool structurally_equal(const Formula& x, const Formula& y);

/// Canonical text; parse_hyp(print(f)) is structurally equal to f.
Str print(const Formula& f);

struct HypParseFailure {
    std::size_t offset = 0;
    std::string message;
};

using HypParseResult = std::variant<Formula, HypParseFailure>;

/// Deterministic parse; the empty string and any malformed input fail (and
/// are treated as meaningless by worlds).
HypParseResult parse_hyp(const Str& src);

/// Propositional evaluation over reachability atoms of a finite LTS.
bool eval_hyp(const Formula& f, const Lts& l);

/// Evaluation with every atom forced false: the reading of a formula
/// against Bottom, which exhibits no behaviour at all.
bool eval_hyp_at_bottom(const Formula& f);

/// Evaluates against a semantic object: Bottom (or a foreign payload)
/// evaluates with all atoms false, an LTS payload evaluates normally.
bool eval_hyp_on(const Formula& f, const SemObject& obj);

/// Labels syntactically occurring in the formula.
std::set<Label> vocabulary(const Formula& f);

}  // namespace specworld::hyp
