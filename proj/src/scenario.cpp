#include "specworld/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace specworld {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ScenarioError(where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string get_string(const json& j, const char* key, const std::string& where) {
    const json& v = member(j, key, where);
    if (!v.is_string()) bad(where, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<Str> get_string_list(const json& j, const char* key,
                                 const std::string& where) {
    const json& v = member(j, key, where);
    if (!v.is_array()) bad(where, std::string("field '") + key + "' must be a list");
    std::vector<Str> out;
    for (const json& item : v) {
        if (!item.is_string()) bad(where, std::string("'") + key + "' entries must be strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::map<Str, std::string> get_truth_map(const json& j, const std::string& where) {
    std::map<Str, std::string> out;
    if (!j.is_object()) bad(where, "truth must be an object of formula -> t|f|?");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_string() || !truth_from_symbol(value.get<std::string>()))
            bad(where, "truth values must be \"t\", \"f\", or \"?\"");
        out.emplace(key, value.get<std::string>());
    }
    return out;
}

ScenarioDoc::World world_from_json(const json& j) {
    ScenarioDoc::World world;
    world.id = get_string(j, "id", "world");
    const std::string where = "world " + world.id;
    world.kind = get_string(j, "kind", where);
    if (world.kind == "checker") {
        world.vocab = get_string_list(j, "vocab", where);
        const json& pieces = member(j, "constraints", where);
        if (!pieces.is_array()) bad(where, "'constraints' must be a list of pieces");
        for (const json& piece : pieces) {
            ScenarioDoc::Piece p;
            p.from = member(piece, "from", where).get<std::size_t>();
            const json& require = member(piece, "require", where);
            if (!require.is_array()) bad(where, "'require' must be a list");
            for (const json& c : require) {
                p.require.push_back({get_string(c, "name", where),
                                     get_string(c, "formula", where)});
            }
            world.constraints.push_back(std::move(p));
        }
    } else if (world.kind == "scripted") {
        if (j.contains("default")) {
            const json& d = j.at("default");
            if (d.contains("truth")) world.default_truth = get_truth_map(d.at("truth"), where);
            if (d.contains("evidence"))
                world.default_evidence_tag = get_string(d.at("evidence"), "tag", where);
        }
        if (j.contains("table")) {
            for (const json& row : j.at("table")) {
                ScenarioDoc::TableEntry entry;
                entry.step = member(row, "step", where).get<std::size_t>();
                entry.program = get_string(row, "program", where);
                entry.hypothesis = get_string(row, "hypothesis", where);
                if (row.contains("truth")) entry.truth = get_truth_map(row.at("truth"), where);
                if (row.contains("evidence"))
                    entry.evidence_tag = get_string(row.at("evidence"), "tag", where);
                world.table.push_back(std::move(entry));
            }
        }
    }
    return world;
}

ScenarioDoc::Generator generator_from_json(const json& j) {
    ScenarioDoc::Generator gen;
    gen.id = get_string(j, "id", "generator");
    const std::string where = "generator " + gen.id;
    gen.kind = get_string(j, "kind", where);
    if (gen.kind == "enum_test") {
        gen.pool = get_string_list(j, "pool", where);
        gen.target = get_string(j, "target", where);
    } else if (gen.kind == "revise") {
        gen.pool = get_string_list(j, "pool", where);
        if (j.contains("literals")) {
            for (const json& lit : j.at("literals")) {
                gen.literals.push_back({get_string(lit, "atom", where),
                                        lit.value("positive", true)});
            }
        }
        if (j.contains("constraint_atoms")) {
            const json& atoms = j.at("constraint_atoms");
            if (!atoms.is_object()) bad(where, "'constraint_atoms' must be an object");
            for (const auto& [name, atom] : atoms.items()) {
                if (!atom.is_string()) bad(where, "constraint atoms must be strings");
                gen.constraint_atoms.emplace(name, atom.get<std::string>());
            }
        }
    } else if (gen.kind == "scripted") {
        const json& outputs = member(j, "outputs", where);
        if (!outputs.is_array() || outputs.empty())
            bad(where, "'outputs' must be a nonempty list");
        for (const json& o : outputs) {
            gen.outputs.push_back({get_string(o, "program", where),
                                   get_string(o, "hypothesis", where),
                                   o.value("action", "")});
        }
    }
    return gen;
}

}  // namespace

ScenarioDoc doc_from_json(const json& j) {
    if (!j.is_object()) throw ScenarioError("scenario document must be an object");
    ScenarioDoc doc;
    doc.schema = member(j, "schema", "scenario").get<int>();
    if (doc.schema != 1)
        bad("scenario", "unsupported schema " + std::to_string(doc.schema));
    doc.name = j.value("name", "");
    if (j.contains("alphabet")) doc.alphabet = j.at("alphabet").get<std::string>();
    doc.state_limit = j.value("state_limit", std::size_t{4096});
    doc.programs = get_string_list(j, "programs", "scenario");
    doc.hypotheses = get_string_list(j, "hypotheses", "scenario");

    const json& worlds = member(j, "worlds", "scenario");
    if (!worlds.is_array()) bad("scenario", "'worlds' must be a list");
    for (const json& w : worlds) doc.worlds.push_back(world_from_json(w));

    const json& generators = member(j, "generators", "scenario");
    if (!generators.is_array()) bad("scenario", "'generators' must be a list");
    for (const json& g : generators) doc.generators.push_back(generator_from_json(g));

    doc.horizon = j.value("horizon", std::size_t{10});
    return doc;
}

nlohmann::json doc_to_json(const ScenarioDoc& doc) {
    json j;
    j["schema"] = doc.schema;
    if (!doc.name.empty()) j["name"] = doc.name;
    if (doc.alphabet) j["alphabet"] = *doc.alphabet;
    j["state_limit"] = doc.state_limit;
    j["programs"] = doc.programs;
    j["hypotheses"] = doc.hypotheses;

    json worlds = json::array();
    for (const auto& w : doc.worlds) {
        json jw{{"id", w.id}, {"kind", w.kind}};
        if (w.kind == "checker") {
            jw["vocab"] = w.vocab;
            json pieces = json::array();
            for (const auto& piece : w.constraints) {
                json require = json::array();
                for (const auto& c : piece.require)
                    require.push_back({{"name", c.name}, {"formula", c.formula}});
                pieces.push_back({{"from", piece.from}, {"require", std::move(require)}});
            }
            jw["constraints"] = std::move(pieces);
        } else {
            jw["default"] = {{"truth", w.default_truth},
                             {"evidence", {{"tag", w.default_evidence_tag}}}};
            json table = json::array();
            for (const auto& entry : w.table) {
                table.push_back({{"step", entry.step},
                                 {"program", entry.program},
                                 {"hypothesis", entry.hypothesis},
                                 {"truth", entry.truth},
                                 {"evidence", {{"tag", entry.evidence_tag}}}});
            }
            jw["table"] = std::move(table);
        }
        worlds.push_back(std::move(jw));
    }
    j["worlds"] = std::move(worlds);

    json generators = json::array();
    for (const auto& g : doc.generators) {
        json jg{{"id", g.id}, {"kind", g.kind}};
        if (g.kind == "enum_test") {
            jg["pool"] = g.pool;
            jg["target"] = g.target;
        } else if (g.kind == "revise") {
            jg["pool"] = g.pool;
            json literals = json::array();
            for (const auto& lit : g.literals)
                literals.push_back({{"atom", lit.atom}, {"positive", lit.positive}});
            jg["literals"] = std::move(literals);
            jg["constraint_atoms"] = g.constraint_atoms;
        } else {
            json outputs = json::array();
            for (const auto& o : g.outputs) {
                outputs.push_back({{"program", o.program},
                                   {"hypothesis", o.hypothesis},
                                   {"action", o.action_tag}});
            }
            jg["outputs"] = std::move(outputs);
        }
        generators.push_back(std::move(jg));
    }
    j["generators"] = std::move(generators);
    j["horizon"] = doc.horizon;
    return j;
}

ScenarioDoc demo_gate_doc() {
    const Str p1 = "output 1";
    const Str p2 = "output 1\noutput 2";
    const Str p3 = "garbage((";
    const Str conj = "enabled(out!1) and enabled(out!2)";

    ScenarioDoc doc;
    doc.name = "gate";
    doc.programs = {p1, p2, p3};
    doc.hypotheses = {"enabled(out!1)", "enabled(out!2)", conj};

    ScenarioDoc::World w1;
    w1.id = "w1";
    w1.kind = "checker";
    w1.vocab = {"out!1", "out!2"};
    w1.constraints = {{0, {{"must-out1", "enabled(out!1)"}}}};
    ScenarioDoc::World w2 = w1;
    w2.id = "w2";
    w2.constraints = {{0,
                       {{"must-out1", "enabled(out!1)"},
                        {"must-out2", "enabled(out!2)"}}}};
    doc.worlds = {std::move(w1), std::move(w2)};

    ScenarioDoc::Generator enum_gen;
    enum_gen.id = "enum";
    enum_gen.kind = "enum_test";
    enum_gen.pool = doc.programs;
    enum_gen.target = conj;
    ScenarioDoc::Generator p2const;
    p2const.id = "p2const";
    p2const.kind = "scripted";
    p2const.outputs = {{p2, conj, "commit"}};
    doc.generators = {std::move(enum_gen), std::move(p2const)};

    doc.horizon = 10;
    return doc;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

std::set<toylang::Label> parse_vocab(const std::vector<std::string>& vocab,
                                     const std::string& where) {
    std::set<toylang::Label> labels;
    for (const auto& text : vocab) {
        auto label = toylang::Label::parse(text);
        if (!label) bad(where, "bad label in vocab: " + text);
        labels.insert(*label);
    }
    return labels;
}

hyp::Formula parse_formula_or_fail(const Str& source, const std::string& where) {
    hyp::HypParseResult parsed = hyp::parse_hyp(source);
    if (const auto* f = std::get_if<hyp::Formula>(&parsed)) return *f;
    const auto& failure = std::get<hyp::HypParseFailure>(parsed);
    bad(where, "formula does not parse at offset " + std::to_string(failure.offset) +
                   ": " + source);
}

TruthAssignment truth_from_doc(const std::map<Str, std::string>& entries,
                               const std::string& where) {
    std::map<Str, TruthValue> values;
    for (const auto& [s, symbol] : entries) {
        auto v = truth_from_symbol(symbol);
        if (!v) bad(where, "bad truth symbol: " + symbol);
        values.emplace(s, *v);
    }
    try {
        return make_truth_assignment(std::move(values));
    } catch (const RejectedEmptyString&) {
        bad(where, "the empty string cannot be marked true or false");
    }
}

void check_programs_in_universe(const std::vector<Str>& referenced,
                                const std::set<Str>& universe,
                                const std::string& where) {
    for (const Str& p : referenced) {
        if (p.empty()) continue;  // the empty program is always admitted
        if (!universe.contains(p))
            bad(where, "program not in the program universe: " + p);
    }
}

}  // namespace

const ProgramGenerator& Scenario::generator(const std::string& id) const {
    auto it = generators.find(id);
    if (it == generators.end()) throw ScenarioError("unknown generator: " + id);
    return it->second;
}

Scenario compile_scenario(const ScenarioDoc& doc) {
    Scenario scenario;
    scenario.doc = doc;
    scenario.alphabet =
        doc.alphabet ? Alphabet{*doc.alphabet} : Alphabet::ascii_printable();
    if (doc.state_limit == 0) bad("scenario", "state_limit must be at least 1");
    scenario.limits = toylang::SemLimits{doc.state_limit};
    scenario.framework = toylang::make_framework(scenario.limits);

    if (doc.programs.empty()) bad("scenario", "program universe is empty");
    if (doc.hypotheses.empty()) bad("scenario", "hypothesis universe is empty");
    if (doc.worlds.empty()) bad("scenario", "no worlds");
    if (doc.generators.empty()) bad("scenario", "no generators");

    scenario.universes = Universes{doc.programs, doc.hypotheses};
    const std::set<Str> program_universe(doc.programs.begin(), doc.programs.end());
    const std::set<Str> hypothesis_universe(doc.hypotheses.begin(), doc.hypotheses.end());

    for (const Str& p : doc.programs) {
        if (!scenario.alphabet.admits(p))
            bad("scenario", "program outside the alphabet: " + p);
        if (p.empty()) {
            scenario.diagnostics.push_back(
                "program universe lists the empty program explicitly");
            continue;
        }
        if (scenario.framework.interpret(p).is_bottom())
            scenario.diagnostics.push_back("program interprets to bottom: " + p);
    }
    for (const Str& h : doc.hypotheses) {
        if (!scenario.alphabet.admits(h))
            bad("scenario", "hypothesis outside the alphabet: " + h);
        if (!std::holds_alternative<hyp::Formula>(hyp::parse_hyp(h)))
            scenario.diagnostics.push_back("hypothesis does not parse: " + h);
    }

    // Worlds.
    std::set<std::string> world_ids;
    for (const auto& w : doc.worlds) {
        const std::string where = "world " + w.id;
        if (w.id.empty()) bad("scenario", "world with empty id");
        if (!world_ids.insert(w.id).second) bad("scenario", "duplicate world id: " + w.id);
        if (w.kind == "checker") {
            CheckerWorldConfig cfg;
            cfg.id = w.id;
            cfg.framework = scenario.framework;
            cfg.vocab = parse_vocab(w.vocab, where);
            for (const auto& piece : w.constraints) {
                SchedulePiece compiled{piece.from, {}};
                for (const auto& c : piece.require) {
                    compiled.constraints.push_back(
                        {c.name, c.formula, parse_formula_or_fail(c.formula, where)});
                }
                cfg.schedule.push_back(std::move(compiled));
            }
            cfg.hypothesis_universe = doc.hypotheses;
            try {
                scenario.spec.worlds.push_back(checker_world(std::move(cfg)));
            } catch (const Error& e) {
                bad(where, e.what());
            }
        } else if (w.kind == "scripted") {
            std::map<ScriptedKey, WorldResponse> table;
            for (const auto& entry : w.table) {
                table.emplace(ScriptedKey{entry.step, entry.program, entry.hypothesis},
                              WorldResponse{scenario.framework,
                                            truth_from_doc(entry.truth, where),
                                            Evidence{entry.evidence_tag, {}}});
            }
            WorldResponse fallback{scenario.framework,
                                   truth_from_doc(w.default_truth, where),
                                   Evidence{w.default_evidence_tag, {}}};
            scenario.spec.worlds.push_back(
                scripted_world(w.id, std::move(table), std::move(fallback)));
        } else {
            bad(where, "unknown world kind: " + w.kind);
        }
    }

    // Generators.
    for (const auto& g : doc.generators) {
        const std::string where = "generator " + g.id;
        if (g.id.empty()) bad("scenario", "generator with empty id");
        if (scenario.generators.contains(g.id))
            bad("scenario", "duplicate generator id: " + g.id);
        try {
            if (g.kind == "enum_test") {
                check_programs_in_universe(g.pool, program_universe, where);
                if (!hypothesis_universe.contains(g.target))
                    bad(where, "target not in the hypothesis universe: " + g.target);
                scenario.generators.emplace(
                    g.id, enum_test_generator(g.id, g.pool, g.target));
            } else if (g.kind == "revise") {
                check_programs_in_universe(g.pool, program_universe, where);
                ReviseState init;
                for (const auto& lit : g.literals)
                    init.literals.push_back(make_signed_atom(lit.atom, lit.positive));
                init.pool = g.pool;
                init.constraint_atoms = g.constraint_atoms;
                init.framework = scenario.framework;

                // Every reachable hypothesis should live in the universe,
                // or theories computed over it will not see the current
                // conjecture; report the gaps.
                std::vector<Str> atoms;
                for (const auto& [name, atom] : g.constraint_atoms)
                    if (std::find(atoms.begin(), atoms.end(), atom) == atoms.end())
                        atoms.push_back(atom);
                if (atoms.size() <= 6) {
                    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size());
                         ++mask) {
                        auto literals = init.literals;
                        for (std::size_t i = 0; i < atoms.size(); ++i) {
                            if (mask & (std::size_t{1} << i)) {
                                bool found = false;
                                for (auto& lit : literals)
                                    if (lit.atom_source == atoms[i]) {
                                        lit.positive = true;
                                        found = true;
                                    }
                                if (!found)
                                    literals.push_back(make_signed_atom(atoms[i], true));
                            }
                        }
                        Str text = revise_hypothesis_text(literals);
                        if (!text.empty() && !hypothesis_universe.contains(text))
                            scenario.diagnostics.push_back(
                                where + ": reachable hypothesis not in universe: " + text);
                    }
                } else {
                    scenario.diagnostics.push_back(
                        where + ": too many constraint atoms to check hypothesis closure");
                }
                scenario.generators.emplace(g.id, revise_generator(g.id, std::move(init)));
            } else if (g.kind == "scripted") {
                std::vector<GeneratorOutput> outputs;
                std::vector<Str> referenced;
                for (const auto& o : g.outputs) {
                    referenced.push_back(o.program);
                    if (!o.hypothesis.empty() && !hypothesis_universe.contains(o.hypothesis))
                        scenario.diagnostics.push_back(
                            where + ": hypothesis not in universe: " + o.hypothesis);
                    outputs.push_back(
                        {o.program, o.hypothesis, Action{o.action_tag, {}}});
                }
                check_programs_in_universe(referenced, program_universe, where);
                scenario.generators.emplace(
                    g.id, scripted_generator(g.id, std::move(outputs)));
            } else {
                bad(where, "unknown generator kind: " + g.kind);
            }
        } catch (const ScenarioError&) {
            throw;
        } catch (const Error& e) {
            bad(where, e.what());
        }
    }

    if (doc.horizon == 0) bad("scenario", "horizon must be at least 1");
    try {
        validate_specification(scenario.spec);
    } catch (const Error& e) {
        bad("scenario", e.what());
    }
    return scenario;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

Scenario load_from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ScenarioError("scenario file " + path.string() + ": " + e.what());
    }
    return compile_scenario(doc_from_json(j));
}

}  // namespace

Scenario load_scenario(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::is_regular_file(name_or_path, ec)) return load_from_file(name_or_path);

    if (name_or_path == "gate") return compile_scenario(demo_gate_doc());

    if (const char* search = std::getenv(kScenarioPathEnv)) {
        std::istringstream dirs(search);
        std::string dir;
        while (std::getline(dirs, dir, ':')) {
            if (dir.empty()) continue;
            for (const auto& candidate :
                 {fs::path(dir) / name_or_path, fs::path(dir) / (name_or_path + ".json")}) {
                if (fs::is_regular_file(candidate, ec)) return load_from_file(candidate);
            }
        }
    }
    throw ScenarioError("scenario not found: " + name_or_path);
}

}  // namespace specworld
