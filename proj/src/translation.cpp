#include "specworld/translation.hpp"

#include <algorithm>
#include <sstream>

namespace specworld {

const Str& TranslationFunction::apply(const Str& s) const {
    auto it = mapping.find(s);
    if (it == mapping.end())
        throw DomainMismatch("translation undefined on: " +
                             (s.empty() ? "<empty>" : s));
    return it->second;
}

bool TranslationReport::all_passed() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.passed; });
}

std::string TranslationReport::to_text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        const Condition& c = conditions[i];
        out << (i + 1) << ' ' << (c.passed ? "pass" : "FAIL") << "  " << c.name;
        if (!c.passed && !c.witness.empty()) out << "  [" << c.witness << "]";
        out << '\n';
    }
    return out.str();
}

namespace {

std::string shown(const Str& s) { return s.empty() ? "<empty>" : s; }

/// Simulation between two programs under the framework recorded at a
/// context's focused step.
bool simulates_at(const Context& ctx, const Str& p, const Str& q) {
    return program_simulates(ctx.record().framework, p, q);
}

}  // namespace

TranslationReport verify(const TranslationFunction& f, const Context& src,
                         const Context& dst) {
    const std::set<Str> src_programs = local_programs_at(src);
    const std::set<Str> src_language = language_at(src);
    for (const Str& s : src_programs)
        if (!f.defined_on(s))
            throw DomainMismatch("translation undefined on source program: " + shown(s));
    for (const Str& s : src_language)
        if (!f.defined_on(s))
            throw DomainMismatch("translation undefined on source sentence: " + shown(s));

    const std::set<Str> dst_programs = local_programs_at(dst);
    const std::set<Str> dst_language = language_at(dst);
    const std::set<Str> src_theory = theory_at(src);
    const std::set<Str> dst_theory = theory_at(dst);
    const std::set<Str> src_valid = global_valid_programs_at(src);
    const std::set<Str> dst_valid = global_valid_programs_at(dst);

    TranslationReport report;
    report.conditions.resize(8);

    auto& empty_cond = report.conditions[0];
    empty_cond.name = "empty string maps to empty string";
    if (!f.apply(Str{}).empty()) {
        empty_cond.passed = false;
        empty_cond.witness = "f(<empty>) = " + shown(f.apply(Str{}));
    }

    auto& lang_cond = report.conditions[1];
    lang_cond.name = "language maps into language";
    for (const Str& s : src_language) {
        if (!dst_language.contains(f.apply(s))) {
            lang_cond.passed = false;
            lang_cond.witness = shown(s) + " -> " + shown(f.apply(s));
            break;
        }
    }

    auto& prog_cond = report.conditions[2];
    prog_cond.name = "programs map into programs";
    for (const Str& p : src_programs) {
        if (!dst_programs.contains(f.apply(p))) {
            prog_cond.passed = false;
            prog_cond.witness = shown(p) + " -> " + shown(f.apply(p));
            break;
        }
    }

    auto& current_cond = report.conditions[3];
    current_cond.name = "translated current program simulated by target's";
    {
        const Str& image = f.apply(src.record().program);
        if (!simulates_at(dst, image, dst.record().program)) {
            current_cond.passed = false;
            current_cond.witness = shown(image) + " not simulated by " +
                                   shown(dst.record().program);
        }
    }

    auto& entail_cond = report.conditions[4];
    entail_cond.name = "entailment preserved on the language";
    for (const Str& r : src_language) {
        for (const Str& s : src_language) {
            if (!entails_local(src, r, s)) continue;
            if (!entails_local(dst, f.apply(r), f.apply(s))) {
                entail_cond.passed = false;
                entail_cond.witness = shown(r) + " entails " + shown(s) +
                                      " but images do not";
                goto entail_done;
            }
        }
    }
entail_done:

    {
        auto& sim_cond = report.conditions[5];
        sim_cond.name = "simulation preserved on local programs";
        for (const Str& p1 : src_programs) {
            for (const Str& p2 : src_programs) {
                if (!simulates_at(src, p1, p2)) continue;
                if (!simulates_at(dst, f.apply(p1), f.apply(p2))) {
                    sim_cond.passed = false;
                    sim_cond.witness = shown(p1) + " below " + shown(p2) +
                                       " but images are not";
                    goto sim_done;
                }
            }
        }
    }
sim_done:

    {
        auto& theory_cond = report.conditions[6];
        theory_cond.name = "theory maps into theory";
        for (const Str& s : src_theory) {
            if (!f.defined_on(s)) continue;  // outside the declared domain
            if (!dst_theory.contains(f.apply(s))) {
                theory_cond.passed = false;
                theory_cond.witness = shown(s) + " -> " + shown(f.apply(s));
                break;
            }
        }
    }

    auto& valid_cond = report.conditions[7];
    valid_cond.name = "valid programs map into valid programs";
    for (const Str& p : src_valid) {
        if (!dst_valid.contains(f.apply(p))) {
            valid_cond.passed = false;
            valid_cond.witness = shown(p) + " -> " + shown(f.apply(p));
            break;
        }
    }

    return report;
}

TranslationFunction identity_translation(const Context& ctx) {
    TranslationFunction f;
    std::set<Str> programs = local_programs_at(ctx);
    std::set<Str> sentences = language_at(ctx);
    f.domain_programs.assign(programs.begin(), programs.end());
    f.domain_sentences.assign(sentences.begin(), sentences.end());
    for (const Str& p : programs) f.mapping.emplace(p, p);
    for (const Str& s : sentences) f.mapping.emplace(s, s);
    // Cover the whole hypothesis universe so theory images stay defined
    // even when the theory escapes the language.
    for (const Str& s : ctx.universes().hypotheses) f.mapping.emplace(s, s);
    return f;
}

TranslationFunction compose(const TranslationFunction& f,
                            const TranslationFunction& g) {
    for (const Str& s : f.domain_programs) {
        if (!g.defined_on(f.apply(s)))
            throw DomainMismatch("composition breaks on program " + shown(s) +
                                 ": image " + shown(f.apply(s)) +
                                 " is outside the second function");
    }
    for (const Str& s : f.domain_sentences) {
        if (!g.defined_on(f.apply(s)))
            throw DomainMismatch("composition breaks on sentence " + shown(s) +
                                 ": image " + shown(f.apply(s)) +
                                 " is outside the second function");
    }

    TranslationFunction composite;
    composite.domain_programs = f.domain_programs;
    composite.domain_sentences = f.domain_sentences;
    for (const auto& [key, mid] : f.mapping) {
        if (g.defined_on(mid)) composite.mapping.emplace(key, g.apply(mid));
    }
    return composite;
}

std::string_view to_string(Direction d) {
    return d == Direction::SourceToTarget ? "source-to-target" : "target-to-source";
}

namespace {

void require_mature(const Context& ctx, const std::string& side) {
    if (!is_correct(ctx)) throw NotMature(side + " " + ctx.name(), "correct");
    if (!is_valid(ctx)) throw NotMature(side + " " + ctx.name(), "valid");
    if (!is_complete(ctx)) throw NotMature(side + " " + ctx.name(), "complete");
}

bool has_false_sentence(const Context& ctx) {
    const TruthAssignment& u = ctx.record().truth;
    for (const Str& s : ctx.universes().hypotheses)
        if (u(s) == TruthValue::False) return true;
    return false;
}

Str least_false_sentence(const Context& ctx) {
    const TruthAssignment& u = ctx.record().truth;
    for (const Str& s : language_at(ctx))  // std::set iterates in order
        if (u(s) == TruthValue::False) return s;
    throw Error("no false sentence in the target language");
}

/// The trivial map from `from` to `to`, as in the constructive proof.
TranslationFunction build_trivial(const Context& from, const Context& to,
                                  bool target_has_false) {
    TranslationFunction f;
    const std::set<Str> programs = local_programs_at(from);
    const std::set<Str> sentences = language_at(from);
    f.domain_programs.assign(programs.begin(), programs.end());
    f.domain_sentences.assign(sentences.begin(), sentences.end());

    const Str true_sentence = to.record().hypothesis;  // true by correctness
    const TruthAssignment& u = from.record().truth;
    if (target_has_false) {
        const Str false_sentence = least_false_sentence(to);
        for (const Str& s : sentences)
            f.mapping.emplace(s, u(s) == TruthValue::True ? true_sentence
                                                          : false_sentence);
    } else {
        for (const Str& s : sentences) f.mapping.emplace(s, true_sentence);
    }

    const std::set<Str> valid = global_valid_programs_at(from);
    const Str& target_program = to.record().program;
    for (const Str& p : programs) {
        bool above_valid = std::any_of(valid.begin(), valid.end(), [&](const Str& v) {
            return simulates_at(from, v, p);
        });
        f.mapping.insert_or_assign(p, above_valid ? target_program : Str{});
    }
    return f;
}

}  // namespace

SynthesisResult synthesize_trivial(const Context& src, const Context& dst) {
    require_mature(src, "source");
    require_mature(dst, "destination");

    const bool false_in_src = has_false_sentence(src);
    const bool false_in_dst = has_false_sentence(dst);

    SynthesisResult result;
    if (!false_in_src && !false_in_dst) {
        result.direction = Direction::SourceToTarget;
        result.fn = build_trivial(src, dst, /*target_has_false=*/false);
    } else if (false_in_dst) {
        result.direction = Direction::SourceToTarget;
        result.fn = build_trivial(src, dst, /*target_has_false=*/true);
    } else {
        result.direction = Direction::TargetToSource;
        result.fn = build_trivial(dst, src, /*target_has_false=*/true);
    }
    return result;
}

std::map<std::string, LimitVerdict> limit_translatability(
    const Specification& spec, const ProgramGenerator& g1,
    const ProgramGenerator& g2, std::size_t horizon, const Universes& universes) {
    if (horizon == 0) throw Error("limit horizon must be at least 1");
    if (spec.worlds.empty()) throw Error("specification needs at least one world");

    const std::string& first_world = spec.worlds.front().id;
    Context c1 = Context::make(spec, g1, horizon + 1, first_world, 0, universes);
    Context c2 = Context::make(spec, g2, horizon + 1, first_world, 0, universes);

    std::map<std::string, LimitVerdict> verdicts;
    for (const PossibleWorld& w : spec.worlds) {
        auto translatable = [&](std::size_t n) -> bool {
            Context a = c1.at(w.id, n);
            Context b = c2.at(w.id, n);
            try {
                SynthesisResult synthesis = synthesize_trivial(a, b);
                if (synthesis.direction == Direction::SourceToTarget)
                    return verify(synthesis.fn, a, b).all_passed();
                return verify(synthesis.fn, b, a).all_passed();
            } catch (const NotMature&) {
                return false;
            }
        };
        verdicts.emplace(w.id, holds_in_limit(translatable, horizon));
    }
    return verdicts;
}

}  // namespace specworld
