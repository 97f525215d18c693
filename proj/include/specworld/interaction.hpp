/*
 * interaction.hpp - executes the generator/world recurrence and derives
 * everything defined on top of it: per-step languages, local and global
 * entailment, theories, the local/globally-valid program sets, the four
 * maturity predicates, and the finite-horizon limit operator.
 */

#pragma once

#include "specworld/worlds.hpp"

#include <set>

namespace specworld {

struct StepRecord {
    std::size_t step = 0;
    Str program;
    Str hypothesis;
    Action action;
    SemanticalFramework framework;
    TruthAssignment truth;
    Evidence evidence;
};

struct InteractionTrace {
    std::string world_id;
    std::string generator_id;
    std::vector<StepRecord> steps;
};

/// Runs the interaction recurrence for the given number of steps (>= 1):
/// step 0 is the generator's output on the empty history; step n+1 sees the
/// evidence of steps 0..n.
InteractionTrace run(const PossibleWorld& w, const ProgramGenerator& g,
                     std::size_t steps);

/// One independent trace per world of the specification.
std::map<std::string, InteractionTrace> run_spec(const Specification& spec,
                                                 const ProgramGenerator& g,
                                                 std::size_t steps);

/// Re-invokes generator and world over the trace and checks every record;
/// true when the trace satisfies the recurrence exactly.
bool verify_replay(const InteractionTrace& trace, const PossibleWorld& w,
                   const ProgramGenerator& g);

/// The finite universes a scenario fixes so that the derived sets become
/// extensionally computable.
struct Universes {
    std::vector<Str> programs;
    std::vector<Str> hypotheses;
};

/// A focus point (world, step) into one generator's interaction with a
/// specification.  Copies are cheap; the run data is shared immutably.
class Context {
public:
    /// Runs the generator against every world for `horizon` steps and
    /// focuses (world_id, step).  Requires step < horizon and a valid spec.
    static Context make(Specification spec, const ProgramGenerator& g,
                        std::size_t horizon, const std::string& world_id,
                        std::size_t step, Universes universes);

    /// Same run data, different focus.
    Context at(const std::string& world_id, std::size_t step) const;

    const Specification& spec() const { return data_->spec; }
    const std::string& generator_id() const { return data_->generator_id; }
    const std::map<std::string, InteractionTrace>& traces() const {
        return data_->traces;
    }
    const Universes& universes() const { return data_->universes; }
    const std::string& world_id() const { return world_id_; }
    std::size_t step() const { return step_; }

    /// The focused world's trace / step record.
    const InteractionTrace& trace() const;
    const StepRecord& record() const { return trace().steps.at(step_); }

    /// Short human-readable tag "generator@world/step".
    std::string name() const;

private:
    struct RunData {
        Specification spec;
        std::string generator_id;
        std::map<std::string, InteractionTrace> traces;
        Universes universes;
    };

    Context(std::shared_ptr<const RunData> data, std::string world_id,
            std::size_t step);

    std::shared_ptr<const RunData> data_;
    std::string world_id_;
    std::size_t step_;
};

/// L: hypothesis-universe strings not meaningless at the focused step.
std::set<Str> language_at(const Context& ctx);

/// Universe strings marked true at the focused step.
std::set<Str> true_sentences_at(const Context& ctx);

/// Local entailment at the focused world: u(r) true implies u(s) true.
bool entails_local(const Context& ctx, const Str& r, const Str& s);

/// Global entailment: local entailment in every world of the specification
/// (each with its own trace, at the focused step).
bool entails_global(const Context& ctx, const Str& r, const Str& s);

/// Th: universe strings globally entailed by the focused hypothesis.  May
/// contain strings outside L or marked false.
std::set<Str> theory_at(const Context& ctx);

/// Progs: the empty program and the current program (stated by the
/// generator even when semantically senseless) plus every universe program
/// that interprets to non-bottom at the focused step.
std::set<Str> local_programs_at(const Context& ctx);

/// Predicate form of global validity: non-empty and non-bottom in every
/// world's step-n framework.
bool globally_valid(const Context& ctx, const Str& p);

/// ValidProgs: universe programs globally valid at the focused step.
std::set<Str> global_valid_programs_at(const Context& ctx);

bool is_valid(const Context& ctx);     // current program globally valid
bool is_correct(const Context& ctx);   // current hypothesis marked true
bool is_complete(const Context& ctx);  // every true sentence is in Th
bool is_mature(const Context& ctx);    // all three

struct PropositionReport {
    struct Claim {
        std::string name;
        bool applicable = false;
        bool passed = true;
        std::string witness;
    };
    std::vector<Claim> claims;

    bool ok() const;  // every applicable claim passed
    std::string to_text() const;
};

/// Checks the theory propositions at the focused step: under correctness,
/// Th is contained in the true sentences and in L; under maturity, Th
/// equals the true sentences.  Claims that do not apply are marked so.
PropositionReport check_propositions(const Context& ctx);

/// Finite-horizon approximation of "holds from some point onwards".
struct LimitVerdict {
    bool holds = false;
    std::size_t from = 0;  // meaningful when holds
    std::size_t horizon = 0;

    std::string text() const;  // "holds from k (horizon N)" / "fails within horizon N"
};

/// Evaluates the predicate on 0..horizon inclusive and reports the least k
/// such that it holds on [k, horizon], if any.
LimitVerdict holds_in_limit(const std::function<bool(std::size_t)>& predicate,
                            std::size_t horizon);

/// One step record as a single-line JSON document (stable key order, truth
/// summarised over the hypothesis universe).
std::string trace_record_line(const StepRecord& record,
                              std::span<const Str> hypothesis_universe);

/// Line-delimited serialization of a whole trace; bit-identical across
/// replays of the same scenario.
std::string trace_to_jsonl(const InteractionTrace& trace,
                           std::span<const Str> hypothesis_universe);

}  // namespace specworld
