#include "specworld/generators.hpp"

#include <algorithm>

namespace specworld {

ProgramGenerator scripted_generator(std::string id,
                                    std::vector<GeneratorOutput> outputs) {
    if (outputs.empty())
        throw Error("scripted generator " + id + " needs at least one output");
    auto shared = std::make_shared<const std::vector<GeneratorOutput>>(std::move(outputs));

    ProgramGenerator gen;
    gen.id = std::move(id);
    gen.next = [shared](std::span<const Evidence> history) -> GeneratorOutput {
        return (*shared)[std::min(history.size(), shared->size() - 1)];
    };
    return gen;
}

ProgramGenerator enum_test_generator(std::string id, std::vector<Str> pool,
                                     Str target) {
    if (pool.empty())
        throw Error("enum-test generator " + id + " needs a nonempty pool");
    if (!std::holds_alternative<hyp::Formula>(hyp::parse_hyp(target)))
        throw Error("enum-test generator " + id + ": target does not parse");

    struct State {
        std::vector<Str> pool;
        Str target;
    };
    auto shared = std::make_shared<const State>(State{std::move(pool), std::move(target)});

    ProgramGenerator gen;
    gen.id = std::move(id);
    gen.next = [shared](std::span<const Evidence> history) -> GeneratorOutput {
        std::size_t violations = 0;
        for (const Evidence& e : history)
            if (e.tag != kEvidenceOk) ++violations;
        std::size_t index = std::min(violations, shared->pool.size() - 1);
        return GeneratorOutput{shared->pool[index], shared->target,
                               Action{"try:" + std::to_string(index), {}}};
    };
    return gen;
}

bool SignedAtom::holds_on(const SemObject& sem) const {
    return hyp::eval_hyp_on(atom, sem) == positive;
}

SignedAtom make_signed_atom(const Str& atom_source, bool positive) {
    hyp::HypParseResult parsed = hyp::parse_hyp(atom_source);
    const hyp::Formula* formula = std::get_if<hyp::Formula>(&parsed);
    if (!formula) throw Error("not a formula: " + atom_source);
    if (!formula->is_atom()) throw Error("not an atomic formula: " + atom_source);
    return SignedAtom{atom_source, *formula, positive};
}

namespace {

void validate_revise_state(const std::string& id, const ReviseState& init) {
    if (!init.framework.interpret)
        throw Error("revise generator " + id + " needs a framework");
    std::set<Str> seen;
    for (const auto& lit : init.literals) {
        if (!lit.atom.is_atom())
            throw Error("revise generator " + id + ": literal is not atomic: " + lit.atom_source);
        if (!seen.insert(lit.atom_source).second)
            throw Error("revise generator " + id + ": atom appears twice: " + lit.atom_source);
    }
    for (const auto& [name, atom] : init.constraint_atoms)
        make_signed_atom(atom, true);  // parses and is atomic, or throws
}

void force_positive(std::vector<SignedAtom>& literals, const Str& atom_source) {
    for (auto& lit : literals) {
        if (lit.atom_source == atom_source) {
            lit.positive = true;
            return;
        }
    }
    literals.push_back(make_signed_atom(atom_source, true));
}

}  // namespace

std::vector<SignedAtom> revise_literals_after(const ReviseState& init,
                                              std::span<const Evidence> history) {
    std::vector<SignedAtom> literals = init.literals;
    for (const Evidence& e : history) {
        if (e.tag == kEvidenceOk) continue;
        auto it = init.constraint_atoms.find(e.tag);
        if (it == init.constraint_atoms.end()) continue;
        force_positive(literals, it->second);
    }
    return literals;
}

Str revise_hypothesis_text(std::span<const SignedAtom> literals) {
    std::vector<Str> parts;
    parts.reserve(literals.size());
    for (const SignedAtom& lit : literals)
        parts.push_back(lit.positive ? lit.atom_source : "not " + lit.atom_source);
    std::sort(parts.begin(), parts.end());
    Str out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " and ";
        out += parts[i];
    }
    return out;
}

ProgramGenerator revise_generator(std::string id, ReviseState init) {
    validate_revise_state(id, init);
    auto shared = std::make_shared<const ReviseState>(std::move(init));

    ProgramGenerator gen;
    gen.id = std::move(id);
    gen.next = [shared](std::span<const Evidence> history) -> GeneratorOutput {
        std::vector<SignedAtom> literals = revise_literals_after(*shared, history);

        Str program;  // empty unless some pool element fits
        for (const Str& candidate : shared->pool) {
            SemObject sem = shared->framework.interpret(candidate);
            if (sem.is_bottom()) continue;
            bool fits = std::all_of(literals.begin(), literals.end(),
                                    [&](const SignedAtom& lit) { return lit.holds_on(sem); });
            if (fits) {
                program = candidate;
                break;
            }
        }

        return GeneratorOutput{std::move(program), revise_hypothesis_text(literals),
                               Action{"revise", {}}};
    };
    return gen;
}

}  // namespace specworld
