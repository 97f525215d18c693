/*
 * worlds.hpp - possible-world constructors.  Checker worlds judge
 * hypotheses by evaluating them against the submitted program and demand a
 * (possibly time-varying) set of named constraints through the evidence
 * channel; scripted worlds replay a fixed response table for tests.
 */

#pragma once

#include "specworld/hyplogic.hpp"

namespace specworld {

struct NamedConstraint {
    std::string name;
    Str source;  // formula text, kept for reporting
    hyp::Formula formula;
};

/// One piece of a constraint schedule; active from from_step until the next
/// piece starts.  The last piece extends forever.
struct SchedulePiece {
    std::size_t from_step = 0;
    std::vector<NamedConstraint> constraints;
};

struct CheckerWorldConfig {
    std::string id;
    SemanticalFramework framework;
    std::set<toylang::Label> vocab;  // labels this world deems meaningful
    std::vector<SchedulePiece> schedule;
    /// Hypothesis strings tabulated into every truth assignment (alongside
    /// the submitted hypothesis); scenarios pass their hypothesis universe.
    std::vector<Str> hypothesis_universe;
};

/// The constraints active at step n.
const std::vector<NamedConstraint>& constraints_at(const CheckerWorldConfig& cfg,
                                                   std::size_t n);

/// Builds a checker world.  Its truth assignment marks a string meaningless
/// when it is empty, unparsable, or mentions labels outside the vocabulary,
/// and otherwise true iff the formula holds of the submitted program (with
/// Bottom exhibiting no behaviour, so every atom is false).  Its evidence
/// names the first violated constraint of the active schedule piece, or
/// carries the tag "ok".
///
/// Throws Error on invalid config (empty schedule, schedule not starting at
/// step 0, unsorted pieces, duplicate constraint names within a piece).
PossibleWorld checker_world(CheckerWorldConfig cfg);

struct ScriptedKey {
    std::size_t step = 0;
    Str program;
    Str hypothesis;

    auto operator<=>(const ScriptedKey&) const = default;
};

/// A world that looks up (step, program, hypothesis) in a finite table,
/// ignoring the action, and falls back to a default response.
PossibleWorld scripted_world(std::string id,
                             std::map<ScriptedKey, WorldResponse> table,
                             WorldResponse default_response);

/// Total deterministic dispatch to the world's function.
WorldResponse respond(const PossibleWorld& w, const Str& program,
                      const Str& hypothesis, const Action& action,
                      std::size_t step);

}  // namespace specworld
