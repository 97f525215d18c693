/*
 * scenario.hpp - declarative scenario documents (JSON, schema 1), their
 * validation and compilation into worlds/generators, and the built-in
 * "gate" demo scenario.
 *
 * Document layout:
 *   {
 *     "schema": 1,
 *     "name": "gate",
 *     "state_limit": 4096,                  // optional
 *     "alphabet": "...",                    // optional, printable ASCII default
 *     "programs":   ["output 1", ...],      // program universe
 *     "hypotheses": ["enabled(out!1)", ...],// hypothesis universe
 *     "worlds": [
 *       {"id": "w1", "kind": "checker", "vocab": ["out!1"],
 *        "constraints": [{"from": 0, "require":
 *            [{"name": "must-out1", "formula": "enabled(out!1)"}]}]},
 *       {"id": "ws", "kind": "scripted",
 *        "default": {"truth": {...}, "evidence": {"tag": "ok"}},
 *        "table": [{"step": 0, "program": "...", "hypothesis": "...",
 *                   "truth": {...}, "evidence": {...}}]}
 *     ],
 *     "generators": [
 *       {"id": "enum", "kind": "enum_test", "pool": [...], "target": "..."},
 *       {"id": "rev", "kind": "revise", "pool": [...],
 *        "literals": [{"atom": "enabled(out!1)", "positive": false}],
 *        "constraint_atoms": {"must-out1": "enabled(out!1)"}},
 *       {"id": "s", "kind": "scripted",
 *        "outputs": [{"program": "...", "hypothesis": "...", "action": "tag"}]}
 *     ],
 *     "horizon": 10                          // optional default
 *   }
 */

#pragma once

#include "specworld/generators.hpp"
#include "specworld/interaction.hpp"

#include <json.hpp>

namespace specworld {

struct ScenarioError : Error {
    using Error::Error;
};

struct ScenarioDoc {
    struct Constraint {
        std::string name;
        Str formula;
    };
    struct Piece {
        std::size_t from = 0;
        std::vector<Constraint> require;
    };
    struct TableEntry {
        std::size_t step = 0;
        Str program;
        Str hypothesis;
        std::map<Str, std::string> truth;  // formula -> "t" | "f" | "?"
        std::string evidence_tag = kEvidenceOk;
    };
    struct World {
        std::string id;
        std::string kind;  // "checker" | "scripted"
        std::vector<std::string> vocab;
        std::vector<Piece> constraints;
        // scripted only:
        std::map<Str, std::string> default_truth;
        std::string default_evidence_tag = kEvidenceOk;
        std::vector<TableEntry> table;
    };
    struct Output {
        Str program;
        Str hypothesis;
        std::string action_tag;
    };
    struct Literal {
        Str atom;
        bool positive = true;
    };
    struct Generator {
        std::string id;
        std::string kind;  // "enum_test" | "revise" | "scripted"
        std::vector<Str> pool;
        Str target;
        std::vector<Literal> literals;
        std::map<std::string, Str> constraint_atoms;
        std::vector<Output> outputs;
    };

    int schema = 1;
    std::string name;
    std::optional<std::string> alphabet;
    std::size_t state_limit = 4096;
    std::vector<Str> programs;
    std::vector<Str> hypotheses;
    std::vector<World> worlds;
    std::vector<Generator> generators;
    std::size_t horizon = 10;
};

ScenarioDoc doc_from_json(const nlohmann::json& j);
nlohmann::json doc_to_json(const ScenarioDoc& doc);

/// The canonical built-in demo: a three-program pool, a conjunction target,
/// and two checker worlds whose constraint sets differ, so the enum-and-test
/// generator advances in one world and holds position in the other.
ScenarioDoc demo_gate_doc();

/// A validated scenario with its compiled worlds and generators.
struct Scenario {
    ScenarioDoc doc;
    Alphabet alphabet;
    toylang::SemLimits limits;
    SemanticalFramework framework;  // shared toy framework at the doc's limits
    Universes universes;
    Specification spec;
    std::map<std::string, ProgramGenerator> generators;
    std::vector<std::string> diagnostics;  // non-fatal load notes

    const ProgramGenerator& generator(const std::string& id) const;
};

/// Validates and compiles a document.  Hard errors (ScenarioError): wrong
/// schema, empty universes, missing/duplicate ids, unknown kinds, malformed
/// constraint formulas, generator pools or scripted outputs that mention
/// programs outside the universe, enum targets outside the universe.
/// Unparsable universe members are allowed and reported as diagnostics.
Scenario compile_scenario(const ScenarioDoc& doc);

/// Resolves a name or path: an existing file path is loaded as JSON; the
/// name "gate" yields the built-in; otherwise the directories listed in
/// SPECWORLD_SCENARIO_PATH (colon-separated) are searched for <name> and
/// <name>.json.
Scenario load_scenario(const std::string& name_or_path);

inline constexpr const char* kScenarioPathEnv = "SPECWORLD_SCENARIO_PATH";

}  // namespace specworld
