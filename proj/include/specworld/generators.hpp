/*
 * generators.hpp - program-generator strategies.  All generators are pure
 * functions of the evidence history, so replaying a history reproduces the
 * output exactly.
 */

#pragma once

#include "specworld/hyplogic.hpp"

namespace specworld {

/// Replays a fixed output list: entry i at history length i, with the last
/// entry repeating forever.
ProgramGenerator scripted_generator(std::string id,
                                    std::vector<GeneratorOutput> outputs);

/// Trial-and-error development: walks the pool, advancing one position for
/// every evidence entry that is not "ok" (clamped at the last element), and
/// always conjectures the fixed target hypothesis.  The action tag records
/// the position as "try:i".
ProgramGenerator enum_test_generator(std::string id, std::vector<Str> pool,
                                     Str target);

/// A signed atomic property; the building block of revision states.
struct SignedAtom {
    Str atom_source;       // canonical atom text, e.g. "enabled(out!1)"
    hyp::Formula atom;     // parsed form; must be an atom
    bool positive = true;

    bool holds_on(const SemObject& sem) const;
};

SignedAtom make_signed_atom(const Str& atom_source, bool positive);

/// State of the belief-revision generator: a contradiction-free set of
/// signed atoms describing the intended implementation, a candidate pool,
/// and a table resolving world constraint names to the atom each one is
/// about.
struct ReviseState {
    std::vector<SignedAtom> literals;
    std::vector<Str> pool;
    std::map<std::string, Str> constraint_atoms;
    SemanticalFramework framework;
};

/// Belief-revision development: every evidence entry naming a violated
/// constraint forces the corresponding atom positive (added when absent,
/// flipped when negative; unknown names are ignored).  The hypothesis is
/// the conjunction of the current literals, sorted by atom text (empty set
/// gives the empty hypothesis); the program is the first pool element whose
/// LTS satisfies every literal, or the empty program when none does.
ProgramGenerator revise_generator(std::string id, ReviseState init);

/// The literal set reached from init after the given history; exposed for
/// tests and for universe-closure computations.
std::vector<SignedAtom> revise_literals_after(const ReviseState& init,
                                              std::span<const Evidence> history);

/// Canonical conjunction text of a literal set (sorted by atom text).
Str revise_hypothesis_text(std::span<const SignedAtom> literals);

}  // namespace specworld
