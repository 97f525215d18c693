#include "specworld/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace specworld::cli {

namespace {

std::string program_display(const Scenario& scenario, const Str& program) {
    if (program.empty()) return "<empty>";
    for (std::size_t i = 0; i < scenario.doc.programs.size(); ++i)
        if (scenario.doc.programs[i] == program)
            return "p" + std::to_string(i + 1);
    std::string shown;
    for (char c : program) shown += (c == '\n') ? "\\n" : std::string(1, c);
    if (shown.size() > 24) shown = shown.substr(0, 21) + "...";
    return "\"" + shown + "\"";
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

}  // namespace

int cmd_run(const Scenario& scenario, const RunOptions& options,
            std::ostream& out, std::ostream& err) {
    if (options.steps == 0) {
        err << "run: --steps must be at least 1\n";
        return 2;
    }
    const ProgramGenerator* gen;
    try {
        gen = &scenario.generator(options.generator);
    } catch (const ScenarioError& e) {
        err << "run: " << e.what() << '\n';
        return 2;
    }

    Context ctx = Context::make(scenario.spec, *gen, options.steps,
                                scenario.spec.worlds.front().id, 0,
                                scenario.universes);

    if (options.out_dir) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(*options.out_dir, ec);
        if (ec) {
            err << "run: cannot create " << *options.out_dir << ": " << ec.message()
                << '\n';
            return 2;
        }
        for (const auto& [world_id, trace] : ctx.traces()) {
            fs::path path = fs::path(*options.out_dir) / (world_id + ".trace");
            std::ofstream file(path, std::ios::binary | std::ios::trunc);
            file << trace_to_jsonl(trace, scenario.universes.hypotheses);
            if (!file) {
                err << "run: cannot write " << path.string() << '\n';
                return 2;
            }
        }
    }

    for (const auto& [world_id, trace] : ctx.traces()) {
        out << "world " << world_id << "  (generator " << trace.generator_id << ")\n";
        out << "  step  program       evidence      correct  valid\n";
        for (const StepRecord& record : trace.steps) {
            Context focus = ctx.at(world_id, record.step);
            out << "  " << std::left << std::setw(6) << record.step << std::setw(14)
                << program_display(scenario, record.program) << std::setw(14)
                << record.evidence.tag << std::setw(9) << yesno(is_correct(focus))
                << yesno(is_valid(focus)) << '\n';
        }
    }
    return 0;
}

int cmd_check(const Scenario& scenario, const CheckOptions& options,
              std::ostream& out, std::ostream& err) {
    if (options.horizon == 0) {
        err << "check: --horizon must be at least 1\n";
        return 2;
    }
    const ProgramGenerator* gen;
    try {
        gen = &scenario.generator(options.generator);
    } catch (const ScenarioError& e) {
        err << "check: " << e.what() << '\n';
        return 2;
    }

    Context ctx = Context::make(scenario.spec, *gen, options.horizon + 1,
                                scenario.spec.worlds.front().id, 0,
                                scenario.universes);

    bool mature_everywhere = true;
    for (const auto& [world_id, trace] : ctx.traces()) {
        out << "world " << world_id << "  (generator " << gen->id << ", horizon "
            << options.horizon << ")\n";
        auto verdict_of = [&](bool (*pred)(const Context&)) {
            return holds_in_limit(
                [&](std::size_t n) { return pred(ctx.at(world_id, n)); },
                options.horizon);
        };
        LimitVerdict valid = verdict_of(is_valid);
        LimitVerdict correct = verdict_of(is_correct);
        LimitVerdict complete = verdict_of(is_complete);
        LimitVerdict mature = verdict_of(is_mature);
        out << "  valid:    " << valid.text() << '\n';
        out << "  correct:  " << correct.text() << '\n';
        out << "  complete: " << complete.text() << '\n';
        out << "  mature:   " << mature.text() << '\n';

        std::optional<std::size_t> last_mature;
        for (std::size_t n = 0; n <= options.horizon; ++n)
            if (is_mature(ctx.at(world_id, n))) last_mature = n;
        if (last_mature) {
            out << "  propositions at step " << *last_mature << ":\n";
            std::istringstream lines(
                check_propositions(ctx.at(world_id, *last_mature)).to_text());
            std::string line;
            while (std::getline(lines, line)) out << "    " << line << '\n';
        } else {
            out << "  propositions: no mature step within horizon\n";
        }
        mature_everywhere = mature_everywhere && mature.holds;
    }

    if (!mature_everywhere) err << "check: maturity does not hold in every world\n";
    return mature_everywhere ? 0 : 1;
}

int cmd_translate(const Scenario& scenario, const TranslateOptions& options,
                  std::ostream& out, std::ostream& err) {
    const ProgramGenerator* gen1;
    const ProgramGenerator* gen2;
    try {
        gen1 = &scenario.generator(options.gen1);
        gen2 = &scenario.generator(options.gen2);
    } catch (const ScenarioError& e) {
        err << "translate: " << e.what() << '\n';
        return 2;
    }
    std::string world1 = options.world1.empty() ? scenario.spec.worlds.front().id
                                                : options.world1;
    std::string world2 = options.world2.empty() ? world1 : options.world2;
    for (const std::string& w : {world1, world2}) {
        if (!scenario.spec.find(w)) {
            err << "translate: unknown world: " << w << '\n';
            return 2;
        }
    }

    std::size_t steps =
        std::max({options.m.value_or(options.horizon), options.n.value_or(options.horizon),
                  options.horizon}) +
        1;
    Context base1 = Context::make(scenario.spec, *gen1, steps, world1, 0,
                                  scenario.universes);
    Context base2 = Context::make(scenario.spec, *gen2, steps, world2, 0,
                                  scenario.universes);

    // A missing step is auto-selected as the side's least mature step.
    auto least_mature = [&](const Context& base,
                            const std::string& world) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k <= options.horizon; ++k)
            if (is_mature(base.at(world, k))) return k;
        return std::nullopt;
    };
    std::optional<std::size_t> m = options.m ? options.m : least_mature(base1, world1);
    std::optional<std::size_t> n = options.n ? options.n : least_mature(base2, world2);
    if (!m || !n) {
        err << "translate: no step within horizon " << options.horizon
            << " where both sides are mature\n";
        return 1;
    }
    if (!options.m || !options.n)
        out << "auto-selected steps m=" << *m << " n=" << *n << '\n';

    Context src = base1.at(world1, *m);
    Context dst = base2.at(world2, *n);

    try {
        SynthesisResult synthesis = synthesize_trivial(src, dst);
        out << "direction: " << to_string(synthesis.direction) << '\n';
        out << "mapping:\n";
        for (const auto& [from, to] : synthesis.fn.mapping) {
            out << "  " << std::left << std::setw(44)
                << (from.empty() ? "<empty>" : from) << " -> "
                << (to.empty() ? "<empty>" : to) << '\n';
        }
        const Context& from = synthesis.direction == Direction::SourceToTarget ? src : dst;
        const Context& to = synthesis.direction == Direction::SourceToTarget ? dst : src;
        TranslationReport report = verify(synthesis.fn, from, to);
        out << "conditions:\n" << report.to_text();
        if (!report.all_passed()) {
            err << "translate: verification failed\n";
            return 1;
        }
        return 0;
    } catch (const NotMature& e) {
        err << "translate: " << e.what() << '\n';
        return 1;
    }
}

int cmd_laws(const Scenario& scenario, std::ostream& out, std::ostream& err) {
    LawReport report =
        check_framework_laws(scenario.framework, scenario.universes.programs);
    out << "framework " << scenario.framework.id << " over "
        << scenario.universes.programs.size() << " universe programs:\n";
    out << report.to_text();
    if (!report.all_passed()) {
        err << "laws: framework law violated\n";
        return 1;
    }
    return 0;
}

}  // namespace specworld::cli
