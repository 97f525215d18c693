#include "support/corpus.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace specworld::testsupport {

namespace {

int pick(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

template <typename T>
const T& pick_one(std::mt19937& rng, const std::vector<T>& pool) {
    return pool[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(pool.size()) - 1))];
}

Str random_expr(std::mt19937& rng, int depth) {
    auto atom = [&]() -> Str {
        if (chance(rng, 0.5)) return std::string(1, static_cast<char>('a' + pick(rng, 0, 2)));
        return std::to_string(pick(rng, 0, 3));
    };
    if (depth <= 0 || chance(rng, 0.55)) return atom();
    int r = pick(rng, 0, 9);
    if (r < 4) return atom() + " + " + atom();
    if (r < 6) return atom() + " - " + atom();
    if (r < 8) return atom() + " * " + atom();
    if (r < 9) return atom() + " == " + atom();
    return atom() + " < " + atom();
}

void random_stmts(std::mt19937& rng, int count, int depth, std::vector<Str>& out) {
    for (int i = 0; i < count; ++i) {
        int r = pick(rng, 0, 99);
        if (r < 40) {
            out.push_back("output " + random_expr(rng, 1));
        } else if (r < 55) {
            out.push_back(std::string("input ") +
                          static_cast<char>('a' + pick(rng, 0, 2)));
        } else if (r < 75 || depth <= 0) {
            out.push_back(std::string(1, static_cast<char>('a' + pick(rng, 0, 2))) +
                          " = " + random_expr(rng, 1));
        } else if (r < 90) {
            std::vector<Str> body;
            random_stmts(rng, pick(rng, 1, 2), depth - 1, body);
            Str text = "if " + random_expr(rng, 0) + " { ";
            for (std::size_t k = 0; k < body.size(); ++k)
                text += (k ? "; " : "") + body[k];
            text += " }";
            if (chance(rng, 0.4)) {
                std::vector<Str> other;
                random_stmts(rng, 1, depth - 1, other);
                text += " else { " + other[0] + " }";
            }
            out.push_back(std::move(text));
        } else {
            std::vector<Str> body;
            random_stmts(rng, pick(rng, 1, 2), depth - 1, body);
            Str text = "while " + random_expr(rng, 0) + " { ";
            for (std::size_t k = 0; k < body.size(); ++k)
                text += (k ? "; " : "") + body[k];
            text += " }";
            out.push_back(std::move(text));
        }
    }
}

}  // namespace

Str random_program(std::mt19937& rng, int max_stmts) {
    std::vector<Str> stmts;
    random_stmts(rng, pick(rng, 1, max_stmts), 1, stmts);
    Str out;
    for (std::size_t i = 0; i < stmts.size(); ++i) out += (i ? "\n" : "") + stmts[i];
    return out;
}

Str random_formula_text(std::mt19937& rng, const std::vector<toylang::Label>& labels,
                        int depth) {
    auto atom = [&]() -> Str {
        int r = pick(rng, 0, 9);
        if (r < 6) return "enabled(" + pick_one(rng, labels).text() + ")";
        if (r < 8) return "initenabled(" + pick_one(rng, labels).text() + ")";
        return "deadlockfree";
    };
    if (depth <= 0 || chance(rng, 0.4)) return atom();
    int r = pick(rng, 0, 9);
    Str lhs = random_formula_text(rng, labels, depth - 1);
    if (r < 2) return "not (" + lhs + ")";
    Str rhs = random_formula_text(rng, labels, depth - 1);
    if (r < 5) return "(" + lhs + ") and (" + rhs + ")";
    if (r < 8) return "(" + lhs + ") or (" + rhs + ")";
    return "(" + lhs + ") implies (" + rhs + ")";
}

ScenarioDoc random_scenario_doc(std::uint32_t seed) {
    std::mt19937 rng(seed);

    std::vector<toylang::Label> labels{toylang::Label::output(1),
                                       toylang::Label::output(2)};
    if (chance(rng, 0.5)) labels.push_back(toylang::Label::output(3));

    // Designated solution program: emits a nonempty subset of the labels.
    std::vector<int> emitted;
    for (const auto& label : labels)
        if (chance(rng, 0.6)) emitted.push_back(label.value);
    if (emitted.empty()) emitted.push_back(labels.front().value);
    Str solution;
    for (std::size_t i = 0; i < emitted.size(); ++i)
        solution += (i ? "\n" : "") + ("output " + std::to_string(emitted[i]));

    // Constraint atoms: properties the solution actually has.
    std::vector<Str> constraint_atoms;
    for (int value : emitted) {
        constraint_atoms.push_back("enabled(out!" + std::to_string(value) + ")");
        if (constraint_atoms.size() == 2) break;
    }

    // Pool: the solution plus distractors, in random order.
    std::set<Str> program_set{solution};
    int extras = pick(rng, 2, 4);
    for (int i = 0; i < extras; ++i) program_set.insert(random_program(rng));
    if (chance(rng, 0.25)) program_set.insert("garbage((");
    std::vector<Str> programs(program_set.begin(), program_set.end());
    std::shuffle(programs.begin(), programs.end(), rng);
    while (programs.size() > 6) programs.pop_back();
    if (std::find(programs.begin(), programs.end(), solution) == programs.end())
        programs.back() = solution;

    // Revision generator: literals over the constraint atoms (plus
    // occasionally one unrelated atom that is never revised).
    std::vector<ScenarioDoc::Literal> literals;
    for (const Str& atom : constraint_atoms) {
        int r = pick(rng, 0, 9);
        if (r < 4) continue;                       // absent
        literals.push_back({atom, r < 7});         // positive or negative
    }
    if (chance(rng, 0.2))
        literals.push_back({"initenabled(out!" + std::to_string(emitted.front()) + ")",
                            chance(rng, 0.7)});

    std::map<std::string, Str> constraint_names;  // evidence tag -> atom
    for (std::size_t i = 0; i < constraint_atoms.size(); ++i)
        constraint_names.emplace("c" + std::to_string(i), constraint_atoms[i]);

    // Hypothesis universe: the reachable revision conjunctions, the enum
    // target, then single atoms while space remains (cap 8).
    auto closure_texts = [&]() {
        std::vector<Str> texts;
        for (std::size_t mask = 0; mask < (std::size_t{1} << constraint_atoms.size());
             ++mask) {
            std::map<Str, bool> signs;
            for (const auto& lit : literals) signs[lit.atom] = lit.positive;
            for (std::size_t i = 0; i < constraint_atoms.size(); ++i)
                if (mask & (std::size_t{1} << i)) signs[constraint_atoms[i]] = true;
            std::vector<Str> parts;
            for (const auto& [atom, positive] : signs)
                parts.push_back(positive ? atom : "not " + atom);
            std::sort(parts.begin(), parts.end());
            Str text;
            for (std::size_t i = 0; i < parts.size(); ++i)
                text += (i ? " and " : "") + parts[i];
            if (!text.empty()) texts.push_back(std::move(text));
        }
        return texts;
    }();

    std::vector<Str> target_parts = constraint_atoms;
    std::sort(target_parts.begin(), target_parts.end());
    Str target;
    for (std::size_t i = 0; i < target_parts.size(); ++i)
        target += (i ? " and " : "") + target_parts[i];

    std::set<Str> hypothesis_set(closure_texts.begin(), closure_texts.end());
    hypothesis_set.insert(target);
    for (const auto& label : labels) {
        if (hypothesis_set.size() >= 8) break;
        hypothesis_set.insert("enabled(" + label.text() + ")");
    }
    if (hypothesis_set.size() < 8 && chance(rng, 0.5)) hypothesis_set.insert("deadlockfree");
    if (hypothesis_set.size() < 8 && chance(rng, 0.3))
        hypothesis_set.insert("not enabled(" + labels.front().text() + ")");

    ScenarioDoc doc;
    doc.name = "corpus-" + std::to_string(seed);
    doc.programs = programs;
    doc.hypotheses.assign(hypothesis_set.begin(), hypothesis_set.end());

    // Worlds: the first demands every constraint; the others relax or
    // reschedule them, and sometimes shrink their vocabulary.
    std::vector<std::string> full_vocab;
    for (const auto& label : labels) full_vocab.push_back(label.text());

    int world_count = pick(rng, 2, 3);
    for (int i = 0; i < world_count; ++i) {
        ScenarioDoc::World world;
        world.id = "w" + std::to_string(i);
        world.kind = "checker";
        world.vocab = full_vocab;
        if (i > 0 && chance(rng, 0.3) && world.vocab.size() > 1)
            world.vocab.pop_back();

        std::vector<ScenarioDoc::Constraint> all;
        for (const auto& [name, atom] : constraint_names) all.push_back({name, atom});

        if (i == 0) {
            world.constraints = {{0, all}};
        } else if (chance(rng, 0.35) && !all.empty()) {
            // Specification change: start relaxed, then demand everything.
            std::vector<ScenarioDoc::Constraint> relaxed(all.begin(), all.begin() + 1);
            world.constraints = {{0, relaxed},
                                 {static_cast<std::size_t>(pick(rng, 1, 3)), all}};
        } else {
            std::vector<ScenarioDoc::Constraint> subset;
            for (const auto& c : all)
                if (chance(rng, 0.7)) subset.push_back(c);
            world.constraints = {{0, subset}};
        }
        doc.worlds.push_back(std::move(world));
    }

    ScenarioDoc::Generator enum_gen;
    enum_gen.id = "enum";
    enum_gen.kind = "enum_test";
    enum_gen.pool = programs;
    enum_gen.target = target;

    ScenarioDoc::Generator revise_gen;
    revise_gen.id = "revise";
    revise_gen.kind = "revise";
    revise_gen.pool = programs;
    revise_gen.literals = literals;
    revise_gen.constraint_atoms = constraint_names;

    doc.generators = {std::move(enum_gen), std::move(revise_gen)};
    doc.horizon = static_cast<std::size_t>(pick(rng, 5, 8));
    return doc;
}

std::vector<Scenario> corpus(std::size_t count) {
    std::vector<Scenario> scenarios;
    scenarios.reserve(count);
    for (std::size_t seed = 1; seed <= count; ++seed)
        scenarios.push_back(compile_scenario(random_scenario_doc(static_cast<std::uint32_t>(seed))));
    return scenarios;
}

std::vector<Context> all_contexts(const Scenario& scenario,
                                  const std::string& generator_id,
                                  std::size_t steps) {
    Context base = Context::make(scenario.spec, scenario.generator(generator_id),
                                 steps, scenario.spec.worlds.front().id, 0,
                                 scenario.universes);
    std::vector<Context> contexts;
    for (const auto& world : scenario.spec.worlds)
        for (std::size_t n = 0; n < steps; ++n) contexts.push_back(base.at(world.id, n));
    return contexts;
}

std::vector<toylang::Lts> small_lts_family(std::size_t max_states,
                                           std::size_t max_transitions,
                                           const std::vector<toylang::Label>& labels) {
    std::vector<toylang::Lts> family;
    for (std::size_t n = 1; n <= max_states; ++n) {
        std::vector<toylang::Transition> slots;
        for (toylang::StateId from = 0; from < n; ++from)
            for (const auto& label : labels)
                for (toylang::StateId to = 0; to < n; ++to)
                    slots.push_back({from, label, to});

        const std::size_t masks = std::size_t{1} << slots.size();
        for (std::size_t mask = 0; mask < masks; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) > max_transitions)
                continue;
            toylang::Lts lts;
            lts.num_states = n;
            lts.initial = 0;
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (mask & (std::size_t{1} << i)) lts.transitions.push_back(slots[i]);
            lts.normalize();
            family.push_back(std::move(lts));
        }
    }
    return family;
}

}  // namespace specworld::testsupport
