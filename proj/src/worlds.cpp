#include "specworld/worlds.hpp"

#include <algorithm>
#include <set>

namespace specworld {

const std::vector<NamedConstraint>& constraints_at(const CheckerWorldConfig& cfg,
                                                   std::size_t n) {
    const SchedulePiece* active = &cfg.schedule.front();
    for (const auto& piece : cfg.schedule) {
        if (piece.from_step <= n) active = &piece;
    }
    return active->constraints;
}

namespace {

void validate_checker_config(const CheckerWorldConfig& cfg) {
    if (cfg.id.empty()) throw Error("checker world needs an id");
    if (!cfg.framework.interpret || !cfg.framework.sim)
        throw Error("checker world " + cfg.id + " needs a complete framework");
    if (cfg.schedule.empty())
        throw Error("checker world " + cfg.id + " needs at least one schedule piece");
    if (cfg.schedule.front().from_step != 0)
        throw Error("checker world " + cfg.id + ": schedule must start at step 0");
    for (std::size_t i = 1; i < cfg.schedule.size(); ++i) {
        if (cfg.schedule[i].from_step <= cfg.schedule[i - 1].from_step)
            throw Error("checker world " + cfg.id + ": schedule pieces must be increasing");
    }
    for (const auto& piece : cfg.schedule) {
        std::set<std::string> names;
        for (const auto& c : piece.constraints) {
            if (!names.insert(c.name).second)
                throw Error("checker world " + cfg.id + ": duplicate constraint name " + c.name);
        }
    }
}

/// Truth of one hypothesis string against an interpreted program.
TruthValue judge(const CheckerWorldConfig& cfg, const Str& s,
                 const SemObject& program_sem) {
    if (s.empty()) return TruthValue::Meaningless;
    hyp::HypParseResult parsed = hyp::parse_hyp(s);
    const hyp::Formula* formula = std::get_if<hyp::Formula>(&parsed);
    if (!formula) return TruthValue::Meaningless;
    auto vocab = hyp::vocabulary(*formula);
    if (!std::includes(cfg.vocab.begin(), cfg.vocab.end(), vocab.begin(), vocab.end()))
        return TruthValue::Meaningless;
    return hyp::eval_hyp_on(*formula, program_sem) ? TruthValue::True
                                                   : TruthValue::False;
}

}  // namespace

PossibleWorld checker_world(CheckerWorldConfig cfg) {
    validate_checker_config(cfg);
    auto shared = std::make_shared<const CheckerWorldConfig>(std::move(cfg));

    PossibleWorld world;
    world.id = shared->id;
    world.respond = [shared](const Str& program, const Str& hypothesis,
                             const Action&, std::size_t step) -> WorldResponse {
        const SemObject sem = shared->framework.interpret(program);

        std::map<Str, TruthValue> entries;
        for (const Str& s : shared->hypothesis_universe) {
            TruthValue v = judge(*shared, s, sem);
            if (v != TruthValue::Meaningless) entries.emplace(s, v);
        }
        if (TruthValue v = judge(*shared, hypothesis, sem); v != TruthValue::Meaningless)
            entries.emplace(hypothesis, v);

        Evidence evidence{kEvidenceOk, {}};
        for (const NamedConstraint& c : constraints_at(*shared, step)) {
            if (!hyp::eval_hyp_on(c.formula, sem)) {
                evidence.tag = c.name;
                break;
            }
        }

        return WorldResponse{shared->framework,
                             make_truth_assignment(std::move(entries)),
                             std::move(evidence)};
    };
    return world;
}

PossibleWorld scripted_world(std::string id,
                             std::map<ScriptedKey, WorldResponse> table,
                             WorldResponse default_response) {
    auto shared_table =
        std::make_shared<const std::map<ScriptedKey, WorldResponse>>(std::move(table));
    auto shared_default = std::make_shared<const WorldResponse>(std::move(default_response));

    PossibleWorld world;
    world.id = std::move(id);
    world.respond = [shared_table, shared_default](
                        const Str& program, const Str& hypothesis, const Action&,
                        std::size_t step) -> WorldResponse {
        auto it = shared_table->find(ScriptedKey{step, program, hypothesis});
        return it != shared_table->end() ? it->second : *shared_default;
    };
    return world;
}

WorldResponse respond(const PossibleWorld& w, const Str& program,
                      const Str& hypothesis, const Action& action,
                      std::size_t step) {
    return w.respond(program, hypothesis, action, step);
}

}  // namespace specworld
