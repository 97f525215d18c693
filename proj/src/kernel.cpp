#include "specworld/kernel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace specworld {

Alphabet Alphabet::ascii_printable() {
    Alphabet a;
    for (char c = 0x20; c < 0x7f; ++c) a.symbols.push_back(c);
    a.symbols.push_back('\n');
    a.symbols.push_back('\t');
    return a;
}

bool Alphabet::contains(char c) const {
    return symbols.find(c) != std::string::npos;
}

bool Alphabet::admits(const Str& s) const {
    return std::all_of(s.begin(), s.end(), [&](char c) { return contains(c); });
}

std::string_view truth_symbol(TruthValue v) {
    switch (v) {
        case TruthValue::True: return "t";
        case TruthValue::False: return "f";
        case TruthValue::Meaningless: return "?";
    }
    return "?";
}

std::optional<TruthValue> truth_from_symbol(std::string_view sym) {
    if (sym == "t") return TruthValue::True;
    if (sym == "f") return TruthValue::False;
    if (sym == "?") return TruthValue::Meaningless;
    return std::nullopt;
}

TruthValue TruthAssignment::at(const Str& s) const {
    if (s.empty()) return TruthValue::Meaningless;
    auto it = entries_.find(s);
    return it == entries_.end() ? TruthValue::Meaningless : it->second;
}

TruthAssignment make_truth_assignment(std::map<Str, TruthValue> entries) {
    TruthAssignment u;
    for (auto& [s, v] : entries) {
        if (v == TruthValue::Meaningless) continue;
        if (s.empty()) throw RejectedEmptyString{};
        u.entries_.emplace(s, v);
    }
    return u;
}

bool program_simulates(const SemanticalFramework& fw, const Str& p, const Str& q) {
    return fw.sim(fw.interpret(p), fw.interpret(q));
}

bool bisimilar(const SemanticalFramework& fw, const Str& p, const Str& q) {
    return program_simulates(fw, p, q) && program_simulates(fw, q, p);
}

bool LawReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed; });
}

std::string LawReport::to_text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.passed ? "pass" : "FAIL") << "  " << c.law;
        if (!c.passed && !c.witness.empty()) out << "  [" << c.witness << "]";
        out << '\n';
    }
    return out.str();
}

namespace {

std::string quoted(const Str& s) {
    if (s.empty()) return "<empty>";
    std::string out = "\"";
    for (char c : s) {
        if (c == '\n')
            out += "\\n";
        else
            out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

LawReport check_framework_laws(const SemanticalFramework& fw,
                               std::span<const Str> samples) {
    // Carrier: bottom plus the interpretation of every sample, each tagged
    // with the source it came from so failures have a readable witness.
    std::vector<std::pair<std::string, SemObject>> carrier;
    carrier.emplace_back("<bottom>", fw.bottom);
    for (const Str& p : samples) carrier.emplace_back(quoted(p), fw.interpret(p));

    LawReport report;

    LawReport::Check empty_law{"interpret(empty) = bottom", true, ""};
    if (!fw.bottom.is_bottom()) {
        empty_law.passed = false;
        empty_law.witness = "framework bottom is not the distinguished Bottom";
    } else if (!fw.interpret("").is_bottom()) {
        empty_law.passed = false;
        empty_law.witness = "interpret(<empty>) is not bottom";
    }
    report.checks.push_back(std::move(empty_law));

    LawReport::Check refl{"sim reflexive", true, ""};
    for (const auto& [name, x] : carrier) {
        if (!fw.sim(x, x)) {
            refl.passed = false;
            refl.witness = name;
            break;
        }
    }
    report.checks.push_back(std::move(refl));

    LawReport::Check trans{"sim transitive", true, ""};
    for (const auto& [nx, x] : carrier) {
        for (const auto& [ny, y] : carrier) {
            if (!fw.sim(x, y)) continue;
            for (const auto& [nz, z] : carrier) {
                if (fw.sim(y, z) && !fw.sim(x, z)) {
                    trans.passed = false;
                    trans.witness = nx + ", " + ny + ", " + nz;
                    goto trans_done;
                }
            }
        }
    }
trans_done:
    report.checks.push_back(std::move(trans));

    LawReport::Check minimal{"bottom minimal", true, ""};
    for (const auto& [name, x] : carrier) {
        if (!fw.sim(fw.bottom, x)) {
            minimal.passed = false;
            minimal.witness = name;
            break;
        }
    }
    report.checks.push_back(std::move(minimal));

    return report;
}

const PossibleWorld* Specification::find(const std::string& id) const {
    for (const auto& w : worlds)
        if (w.id == id) return &w;
    return nullptr;
}

void validate_specification(const Specification& spec) {
    if (spec.worlds.empty()) throw Error("specification needs at least one world");
    std::set<std::string> seen;
    for (const auto& w : spec.worlds) {
        if (!seen.insert(w.id).second)
            throw Error("duplicate world id: " + w.id);
        if (!w.respond) throw Error("world " + w.id + " has no respond function");
    }
}

}  // namespace specworld
