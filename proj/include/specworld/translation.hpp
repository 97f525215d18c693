/*
 * translation.hpp - translation functions between the outputs of two
 * program generators sharing a specification: the eight-condition verifier,
 * identity and composition, trivial synthesis between mature contexts, and
 * the per-world limit check.
 */

#pragma once

#include "specworld/interaction.hpp"

namespace specworld {

struct DomainMismatch : Error {
    using Error::Error;
};

/// Raised by synthesis when a side is not mature; names the side and the
/// first failing clause (valid / correct / complete).
struct NotMature : Error {
    NotMature(std::string context_name_, std::string clause_)
        : Error("context " + context_name_ + " is not mature: fails " + clause_),
          context_name(std::move(context_name_)),
          clause(std::move(clause_)) {}

    std::string context_name;
    std::string clause;
};

/// A finite string-to-string map whose declared domain is the source
/// context's local programs together with its language.  The program part
/// must land in programs, the sentence part in hypotheses; the verifier
/// checks both through its eight conditions.
struct TranslationFunction {
    std::vector<Str> domain_programs;
    std::vector<Str> domain_sentences;
    std::map<Str, Str> mapping;

    bool defined_on(const Str& s) const { return mapping.contains(s); }

    /// Throws DomainMismatch when s has no image.
    const Str& apply(const Str& s) const;
};

struct TranslationReport {
    struct Condition {
        std::string name;
        bool passed = true;
        std::string witness;
    };
    // Fixed order: empty-string, language, programs, current-program,
    // entailment, simulation, theory, valid-programs.
    std::vector<Condition> conditions;

    bool all_passed() const;
    std::string to_text() const;
};

/// Checks the eight translation conditions of f from src to dst by
/// enumeration over the universes.  Throws DomainMismatch when f is partial
/// on the required domain (src's local programs and language); theory
/// elements outside the stored mapping are skipped, matching the
/// image-of-a-set reading f(X) = {f(x) : x in X, f defined on x}.
TranslationReport verify(const TranslationFunction& f, const Context& src,
                         const Context& dst);

/// Identity on the context's own domain (programs, language, and the whole
/// hypothesis universe, so theory images stay covered); passes verify
/// against the context itself.
TranslationFunction identity_translation(const Context& ctx);

/// Pointwise composition, f then g.  Throws DomainMismatch when some image
/// of f over its declared domain is undefined under g.
TranslationFunction compose(const TranslationFunction& f,
                            const TranslationFunction& g);

enum class Direction { SourceToTarget, TargetToSource };

std::string_view to_string(Direction d);

struct SynthesisResult {
    Direction direction = Direction::SourceToTarget;
    TranslationFunction fn;
};

/// Constructs the trivial translation between two mature contexts.
///
/// Sentences: the designated true sentence is the target's current
/// hypothesis.  When neither language contains a false sentence, every
/// source sentence maps to it (direction source-to-target).  Otherwise the
/// direction is chosen so that the target language contains a false
/// sentence (source-to-target preferred when both qualify); true sentences
/// map to the designated true one, the rest to the lexicographically least
/// false sentence of the target.
///
/// Programs: a source program above some globally valid source program in
/// the simulation preorder maps to the target's current program, everything
/// else to the empty program.
///
/// Throws NotMature when either side fails a maturity clause.  The returned
/// function goes from src to dst when the direction is source-to-target,
/// and from dst to src otherwise.
SynthesisResult synthesize_trivial(const Context& src, const Context& dst);

/// For each world of the specification: does "both generators are mature
/// here and the trivial synthesis passes verification in its chosen
/// direction" hold in the limit, at the given horizon?
std::map<std::string, LimitVerdict> limit_translatability(
    const Specification& spec, const ProgramGenerator& g1,
    const ProgramGenerator& g2, std::size_t horizon, const Universes& universes);

}  // namespace specworld
