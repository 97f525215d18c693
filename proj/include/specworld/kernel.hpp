/*
 * kernel.hpp - core domain types shared by every scenario instantiation:
 * strings over a finite alphabet, three-valued truth assignments,
 * semantical frameworks with a bottom-minimal simulation preorder, and
 * the behavioural interfaces of possible worlds and program generators.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace specworld {

/// Programs and hypotheses are plain strings; the empty string doubles as
/// the empty program and the always-meaningless hypothesis.
using Str = std::string;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a truth assignment would mark the empty string true or false.
struct RejectedEmptyString : Error {
    RejectedEmptyString() : Error("the empty string must stay meaningless") {}
};

struct Alphabet {
    std::string symbols;

    static Alphabet ascii_printable();

    bool contains(char c) const;
    /// True when every character of s belongs to the alphabet.  The empty
    /// string is always admitted.
    bool admits(const Str& s) const;
};

enum class TruthValue { True, False, Meaningless };

std::string_view truth_symbol(TruthValue v);  // "t", "f", "?"
std::optional<TruthValue> truth_from_symbol(std::string_view sym);

/// Finite-map truth assignment: strings outside the stored entries are
/// meaningless, and the empty string is meaningless unconditionally.
class TruthAssignment {
public:
    TruthAssignment() = default;

    TruthValue at(const Str& s) const;
    TruthValue operator()(const Str& s) const { return at(s); }

    const std::map<Str, TruthValue>& entries() const { return entries_; }

    bool operator==(const TruthAssignment&) const = default;

private:
    friend TruthAssignment make_truth_assignment(std::map<Str, TruthValue> entries);
    std::map<Str, TruthValue> entries_;  // never holds Meaningless or ""
};

/// Builds a truth assignment from explicit entries.  Meaningless entries are
/// dropped (they equal the default); mapping the empty string to true or
/// false throws RejectedEmptyString.
TruthAssignment make_truth_assignment(std::map<Str, TruthValue> entries);

/// Type-erased semantic value.  A default-constructed SemObject is the
/// distinguished Bottom that non-valid programs denote; anything else wraps
/// an immutable payload owned by shared pointer, so copies are cheap and
/// payload identity is stable.
class SemObject {
public:
    SemObject() = default;

    static SemObject bottom() { return SemObject{}; }

    template <typename T>
    static SemObject of(T value) {
        SemObject o;
        o.payload_ = std::make_shared<Holder<T>>(std::move(value));
        return o;
    }

    bool is_bottom() const { return payload_ == nullptr; }

    template <typename T>
    const T* as() const {
        auto* h = dynamic_cast<const Holder<T>*>(payload_.get());
        return h ? &h->value : nullptr;
    }

    /// Stable payload address; null for Bottom.  Suitable as a memo key.
    const void* identity() const { return payload_.get(); }

private:
    struct HolderBase {
        virtual ~HolderBase() = default;
    };
    template <typename T>
    struct Holder final : HolderBase {
        explicit Holder(T v) : value(std::move(v)) {}
        T value;
    };

    std::shared_ptr<const HolderBase> payload_;
};

/// A semantical framework assigns every string a semantic object, with a
/// simulation preorder on objects whose minimum is Bottom.  interpret must
/// be total: unparsable sources and the empty string map to bottom.
struct SemanticalFramework {
    std::string id;
    SemObject bottom;  // the distinguished minimum; default-constructed
    std::function<SemObject(const Str&)> interpret;
    std::function<bool(const SemObject&, const SemObject&)> sim;
};

/// Simulation lifted from semantic objects to program text.
bool program_simulates(const SemanticalFramework& fw, const Str& p, const Str& q);

/// Simulation in both directions.
bool bisimilar(const SemanticalFramework& fw, const Str& p, const Str& q);

struct LawReport {
    struct Check {
        std::string law;
        bool passed = true;
        std::string witness;  // offending sample(s) when failed
    };
    std::vector<Check> checks;

    bool all_passed() const;
    std::string to_text() const;
};

/// Checks the framework laws on the given sample programs: reflexivity and
/// transitivity of sim over the interpreted samples plus bottom, bottom
/// minimality, and interpret("") == bottom.
LawReport check_framework_laws(const SemanticalFramework& fw,
                               std::span<const Str> samples);

/// Actions encode voluntary acts of the generator; evidence encodes what it
/// can observe.  Both are opaque tagged records: the framework only ever
/// compares and serializes them.
struct Action {
    std::string tag;
    std::map<std::string, std::string> payload;

    bool operator==(const Action&) const = default;
    auto operator<=>(const Action&) const = default;
};

struct Evidence {
    std::string tag;
    std::map<std::string, std::string> payload;

    bool operator==(const Evidence&) const = default;
    auto operator<=>(const Evidence&) const = default;
};

/// Evidence tag meaning "no constraint violated"; the convention coupling
/// checker worlds with the evidence-driven generators.
inline constexpr const char* kEvidenceOk = "ok";

struct WorldResponse {
    SemanticalFramework framework;
    TruthAssignment truth;
    Evidence evidence;
};

/// A possible world responds to (program, hypothesis, action, step) with a
/// semantical framework, a truth assignment, and fresh evidence.  respond
/// must be total and deterministic; the interface is behavioural, so any
/// callable with that contract qualifies.
struct PossibleWorld {
    std::string id;
    std::function<WorldResponse(const Str& program, const Str& hypothesis,
                                const Action& action, std::size_t step)>
        respond;
};

/// A specification is a finite nonempty set of possible worlds with
/// distinct ids.
struct Specification {
    std::vector<PossibleWorld> worlds;

    const PossibleWorld* find(const std::string& id) const;
};

/// Throws Error on an empty world set or duplicate ids.
void validate_specification(const Specification& spec);

struct GeneratorOutput {
    Str program;
    Str hypothesis;
    Action action;

    bool operator==(const GeneratorOutput&) const = default;
};

/// A program generator maps a finite evidence history to its next program,
/// hypothesis, and action.  Must be total (defined on the empty history)
/// and deterministic.
struct ProgramGenerator {
    std::string id;
    std::function<GeneratorOutput(std::span<const Evidence> history)> next;
};

}  // namespace specworld
