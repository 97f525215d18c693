#include "specworld/interaction.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace specworld {

InteractionTrace run(const PossibleWorld& w, const ProgramGenerator& g,
                     std::size_t steps) {
    if (steps == 0) throw Error("run needs at least one step");

    InteractionTrace trace{w.id, g.id, {}};
    trace.steps.reserve(steps);
    std::vector<Evidence> history;
    history.reserve(steps);

    for (std::size_t n = 0; n < steps; ++n) {
        GeneratorOutput output = g.next(history);
        WorldResponse response =
            w.respond(output.program, output.hypothesis, output.action, n);
        trace.steps.push_back(StepRecord{n, output.program, output.hypothesis,
                                         output.action, response.framework,
                                         response.truth, response.evidence});
        history.push_back(response.evidence);
    }
    return trace;
}

std::map<std::string, InteractionTrace> run_spec(const Specification& spec,
                                                 const ProgramGenerator& g,
                                                 std::size_t steps) {
    validate_specification(spec);
    std::map<std::string, InteractionTrace> traces;
    for (const PossibleWorld& w : spec.worlds) traces.emplace(w.id, run(w, g, steps));
    return traces;
}

bool verify_replay(const InteractionTrace& trace, const PossibleWorld& w,
                   const ProgramGenerator& g) {
    std::vector<Evidence> history;
    for (const StepRecord& record : trace.steps) {
        GeneratorOutput output = g.next(history);
        if (output.program != record.program ||
            output.hypothesis != record.hypothesis ||
            output.action != record.action)
            return false;
        WorldResponse response =
            w.respond(record.program, record.hypothesis, record.action, record.step);
        if (response.framework.id != record.framework.id ||
            response.truth != record.truth ||
            response.evidence != record.evidence)
            return false;
        history.push_back(response.evidence);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Context

Context::Context(std::shared_ptr<const RunData> data, std::string world_id,
                 std::size_t step)
    : data_(std::move(data)), world_id_(std::move(world_id)), step_(step) {
    auto it = data_->traces.find(world_id_);
    if (it == data_->traces.end())
        throw Error("context world " + world_id_ + " has no trace");
    for (const auto& [id, trace] : data_->traces) {
        if (trace.steps.size() <= step_)
            throw Error("trace for world " + id + " is shorter than step " +
                        std::to_string(step_));
    }
}

Context Context::make(Specification spec, const ProgramGenerator& g,
                      std::size_t horizon, const std::string& world_id,
                      std::size_t step, Universes universes) {
    if (horizon == 0) throw Error("context horizon must be at least 1");
    auto data = std::make_shared<RunData>();
    data->traces = run_spec(spec, g, horizon);
    data->spec = std::move(spec);
    data->generator_id = g.id;
    data->universes = std::move(universes);
    return Context(std::move(data), world_id, step);
}

Context Context::at(const std::string& world_id, std::size_t step) const {
    return Context(data_, world_id, step);
}

const InteractionTrace& Context::trace() const {
    return data_->traces.at(world_id_);
}

std::string Context::name() const {
    return data_->generator_id + "@" + world_id_ + "/" + std::to_string(step_);
}

// ---------------------------------------------------------------------------
// Derived sets

std::set<Str> language_at(const Context& ctx) {
    const TruthAssignment& u = ctx.record().truth;
    std::set<Str> language;
    for (const Str& s : ctx.universes().hypotheses)
        if (u(s) != TruthValue::Meaningless) language.insert(s);
    return language;
}

std::set<Str> true_sentences_at(const Context& ctx) {
    const TruthAssignment& u = ctx.record().truth;
    std::set<Str> sentences;
    for (const Str& s : ctx.universes().hypotheses)
        if (u(s) == TruthValue::True) sentences.insert(s);
    return sentences;
}

bool entails_local(const Context& ctx, const Str& r, const Str& s) {
    const TruthAssignment& u = ctx.record().truth;
    return u(r) != TruthValue::True || u(s) == TruthValue::True;
}

bool entails_global(const Context& ctx, const Str& r, const Str& s) {
    for (const auto& [world_id, trace] : ctx.traces()) {
        if (!entails_local(ctx.at(world_id, ctx.step()), r, s)) return false;
    }
    return true;
}

std::set<Str> theory_at(const Context& ctx) {
    const Str& hypothesis = ctx.record().hypothesis;
    std::set<Str> theory;
    for (const Str& s : ctx.universes().hypotheses)
        if (entails_global(ctx, hypothesis, s)) theory.insert(s);
    return theory;
}

std::set<Str> local_programs_at(const Context& ctx) {
    const StepRecord& record = ctx.record();
    std::set<Str> programs{Str{}, record.program};
    for (const Str& p : ctx.universes().programs)
        if (!record.framework.interpret(p).is_bottom()) programs.insert(p);
    return programs;
}

bool globally_valid(const Context& ctx, const Str& p) {
    if (p.empty()) return false;
    for (const auto& [world_id, trace] : ctx.traces()) {
        const SemanticalFramework& fw = trace.steps.at(ctx.step()).framework;
        if (fw.interpret(p).is_bottom()) return false;
    }
    return true;
}

std::set<Str> global_valid_programs_at(const Context& ctx) {
    std::set<Str> programs;
    for (const Str& p : ctx.universes().programs)
        if (globally_valid(ctx, p)) programs.insert(p);
    return programs;
}

bool is_valid(const Context& ctx) {
    return globally_valid(ctx, ctx.record().program);
}

bool is_correct(const Context& ctx) {
    const StepRecord& record = ctx.record();
    return record.truth(record.hypothesis) == TruthValue::True;
}

bool is_complete(const Context& ctx) {
    std::set<Str> theory = theory_at(ctx);
    for (const Str& s : true_sentences_at(ctx))
        if (!theory.contains(s)) return false;
    return true;
}

bool is_mature(const Context& ctx) {
    return is_correct(ctx) && is_valid(ctx) && is_complete(ctx);
}

// ---------------------------------------------------------------------------
// Propositions

bool PropositionReport::ok() const {
    return std::all_of(claims.begin(), claims.end(),
                       [](const Claim& c) { return !c.applicable || c.passed; });
}

std::string PropositionReport::to_text() const {
    std::ostringstream out;
    for (const Claim& c : claims) {
        if (!c.applicable)
            out << "n/a   " << c.name << '\n';
        else if (c.passed)
            out << "pass  " << c.name << '\n';
        else
            out << "FAIL  " << c.name << "  [" << c.witness << "]\n";
    }
    return out.str();
}

PropositionReport check_propositions(const Context& ctx) {
    const bool correct = is_correct(ctx);
    const bool mature = is_mature(ctx);
    const std::set<Str> theory = theory_at(ctx);
    const std::set<Str> truths = true_sentences_at(ctx);
    const std::set<Str> language = language_at(ctx);

    PropositionReport report;

    PropositionReport::Claim in_truths{"correct: theory within true sentences",
                                       correct, true, ""};
    PropositionReport::Claim in_language{"correct: theory within language",
                                         correct, true, ""};
    if (correct) {
        for (const Str& s : theory) {
            if (in_truths.passed && !truths.contains(s)) {
                in_truths.passed = false;
                in_truths.witness = s;
            }
            if (in_language.passed && !language.contains(s)) {
                in_language.passed = false;
                in_language.witness = s;
            }
        }
    }
    report.claims.push_back(std::move(in_truths));
    report.claims.push_back(std::move(in_language));

    PropositionReport::Claim equality{"mature: theory equals true sentences",
                                      mature, true, ""};
    if (mature) {
        for (const Str& s : theory) {
            if (!truths.contains(s)) {
                equality.passed = false;
                equality.witness = "in theory only: " + s;
                break;
            }
        }
        if (equality.passed) {
            for (const Str& s : truths) {
                if (!theory.contains(s)) {
                    equality.passed = false;
                    equality.witness = "in true sentences only: " + s;
                    break;
                }
            }
        }
    }
    report.claims.push_back(std::move(equality));

    return report;
}

// ---------------------------------------------------------------------------
// Limit operator

std::string LimitVerdict::text() const {
    if (holds)
        return "holds from " + std::to_string(from) + " (horizon " +
               std::to_string(horizon) + ")";
    return "fails within horizon " + std::to_string(horizon);
}

LimitVerdict holds_in_limit(const std::function<bool(std::size_t)>& predicate,
                            std::size_t horizon) {
    if (horizon == 0) throw Error("limit horizon must be at least 1");
    LimitVerdict verdict{false, 0, horizon};
    // Walk down from the horizon while the predicate holds; the suffix
    // start, if the suffix is nonempty, is the least such k.
    std::size_t k = horizon + 1;
    for (std::size_t m = horizon + 1; m-- > 0;) {
        if (!predicate(m)) break;
        k = m;
    }
    if (k <= horizon) {
        verdict.holds = true;
        verdict.from = k;
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Trace serialization

namespace {

nlohmann::json record_json(const Action& a) {
    return nlohmann::json{{"tag", a.tag}, {"payload", a.payload}};
}

nlohmann::json record_json(const Evidence& e) {
    return nlohmann::json{{"tag", e.tag}, {"payload", e.payload}};
}

}  // namespace

std::string trace_record_line(const StepRecord& record,
                              std::span<const Str> hypothesis_universe) {
    nlohmann::json truth = nlohmann::json::object();
    for (const Str& s : hypothesis_universe)
        truth[s] = std::string(truth_symbol(record.truth(s)));

    nlohmann::json line{
        {"step", record.step},
        {"program", record.program},
        {"hypothesis", record.hypothesis},
        {"hypothesis_truth", std::string(truth_symbol(record.truth(record.hypothesis)))},
        {"action", record_json(record.action)},
        {"framework", record.framework.id},
        {"truth", std::move(truth)},
        {"evidence", record_json(record.evidence)},
    };
    return line.dump();
}

std::string trace_to_jsonl(const InteractionTrace& trace,
                           std::span<const Str> hypothesis_universe) {
    std::string out;
    for (const StepRecord& record : trace.steps) {
        out += trace_record_line(record, hypothesis_universe);
        out += '\n';
    }
    return out;
}

}  // namespace specworld
