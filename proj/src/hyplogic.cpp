#include "specworld/hyplogic.hpp"

#include <algorithm>
#include <cassert>

namespace specworld::hyp {

namespace {

std::shared_ptr<const Formula> box(Formula f) {
    return std::make_shared<const Formula>(std::move(f));
}

}  // namespace

Formula Formula::negation(Formula f) { return Formula{Not{box(std::move(f))}}; }

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return Formula{And{box(std::move(lhs)), box(std::move(rhs))}};
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    return Formula{Or{box(std::move(lhs)), box(std::move(rhs))}};
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    return Formula{Implies{box(std::move(lhs)), box(std::move(rhs))}};
}

bool Formula::is_atom() const {
    return std::holds_alternative<Enabled>(node) ||
           std::holds_alternative<InitEnabled>(node) ||
           std::holds_alternative<DeadlockFree>(node);
}

bool structurally_equal(const Formula& x, const Formula& y) {
    if (x.node.index() != y.node.index()) return false;
    if (const auto* e = std::get_if<Formula::Enabled>(&x.node))
        return e->label == std::get<Formula::Enabled>(y.node).label;
    if (const auto* e = std::get_if<Formula::InitEnabled>(&x.node))
        return e->label == std::get<Formula::InitEnabled>(y.node).label;
    if (std::holds_alternative<Formula::DeadlockFree>(x.node)) return true;
    if (const auto* n = std::get_if<Formula::Not>(&x.node))
        return structurally_equal(*n->arg, *std::get<Formula::Not>(y.node).arg);
    if (const auto* a = std::get_if<Formula::And>(&x.node)) {
        const auto& ya = std::get<Formula::And>(y.node);
        return structurally_equal(*a->lhs, *ya.lhs) && structurally_equal(*a->rhs, *ya.rhs);
    }
    if (const auto* o = std::get_if<Formula::Or>(&x.node)) {
        const auto& yo = std::get<Formula::Or>(y.node);
        return structurally_equal(*o->lhs, *yo.lhs) && structurally_equal(*o->rhs, *yo.rhs);
    }
    const auto& i = std::get<Formula::Implies>(x.node);
    const auto& yi = std::get<Formula::Implies>(y.node);
    return structurally_equal(*i.lhs, *yi.lhs) && structurally_equal(*i.rhs, *yi.rhs);
}

namespace {

// Binding strength, tighter is higher: implies < or < and < not < atom.
enum : int { kImplies = 0, kOr = 1, kAnd = 2, kNot = 3, kAtomLevel = 4 };

int level_of(const Formula& f) {
    if (std::holds_alternative<Formula::Implies>(f.node)) return kImplies;
    if (std::holds_alternative<Formula::Or>(f.node)) return kOr;
    if (std::holds_alternative<Formula::And>(f.node)) return kAnd;
    if (std::holds_alternative<Formula::Not>(f.node)) return kNot;
    return kAtomLevel;
}

void print_at(std::string& out, const Formula& f, int min_level) {
    const int level = level_of(f);
    const bool parens = level < min_level;
    if (parens) out.push_back('(');
    if (const auto* e = std::get_if<Formula::Enabled>(&f.node)) {
        out += "enabled(" + e->label.text() + ")";
    } else if (const auto* e2 = std::get_if<Formula::InitEnabled>(&f.node)) {
        out += "initenabled(" + e2->label.text() + ")";
    } else if (std::holds_alternative<Formula::DeadlockFree>(f.node)) {
        out += "deadlockfree";
    } else if (const auto* n = std::get_if<Formula::Not>(&f.node)) {
        out += "not ";
        print_at(out, *n->arg, kNot);
    } else if (const auto* a = std::get_if<Formula::And>(&f.node)) {
        print_at(out, *a->lhs, kAnd);        // left-associative
        out += " and ";
        print_at(out, *a->rhs, kAnd + 1);
    } else if (const auto* o = std::get_if<Formula::Or>(&f.node)) {
        print_at(out, *o->lhs, kOr);
        out += " or ";
        print_at(out, *o->rhs, kOr + 1);
    } else {
        const auto& i = std::get<Formula::Implies>(f.node);
        print_at(out, *i.lhs, kImplies + 1);  // right-associative
        out += " implies ";
        print_at(out, *i.rhs, kImplies);
    }
    if (parens) out.push_back(')');
}

}  // namespace

Str print(const Formula& f) {
    std::string out;
    print_at(out, f, kImplies);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct HypParser {
    const Str& src;
    std::size_t pos = 0;
    std::optional<HypParseFailure> failure;

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }

    void fail(std::size_t at, std::string message) {
        if (!failure) failure = HypParseFailure{at, std::move(message)};
    }

    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }

    // Words are maximal [a-z] runs; keywords must match the whole word.
    std::string peek_word() {
        skip_ws();
        std::size_t j = pos;
        while (j < src.size() && src[j] >= 'a' && src[j] <= 'z') ++j;
        return src.substr(pos, j - pos);
    }

    bool eat_word(std::string_view word) {
        if (peek_word() != word) return false;
        pos += word.size();
        return true;
    }

    bool eat_char(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::optional<Label> parse_label() {
        skip_ws();
        std::size_t at = pos;
        std::size_t j = pos;
        while (j < src.size() && src[j] != ')') ++j;
        auto label = Label::parse(std::string_view(src).substr(pos, j - pos));
        if (!label) {
            fail(at, "expected a label (in?k, out!k, or tau)");
            return std::nullopt;
        }
        pos = j;
        return label;
    }

    std::optional<Formula> parse_unary() {
        skip_ws();
        std::size_t at = pos;
        if (eat_char('(')) {
            auto inner = parse_formula();
            if (!inner) return std::nullopt;
            if (!eat_char(')')) {
                fail(pos, "expected ')'");
                return std::nullopt;
            }
            return inner;
        }
        std::string word = peek_word();
        if (word == "not") {
            pos += word.size();
            auto arg = parse_unary();
            if (!arg) return std::nullopt;
            return Formula::negation(std::move(*arg));
        }
        if (word == "enabled" || word == "initenabled") {
            pos += word.size();
            if (!eat_char('(')) {
                fail(pos, "expected '(' after " + word);
                return std::nullopt;
            }
            auto label = parse_label();
            if (!label) return std::nullopt;
            if (!eat_char(')')) {
                fail(pos, "expected ')'");
                return std::nullopt;
            }
            return word == "enabled" ? Formula::enabled(*label)
                                     : Formula::init_enabled(*label);
        }
        if (word == "deadlockfree") {
            pos += word.size();
            return Formula::deadlock_free();
        }
        fail(at, "expected a formula");
        return std::nullopt;
    }

    std::optional<Formula> parse_and() {
        auto lhs = parse_unary();
        if (!lhs) return std::nullopt;
        while (eat_word("and")) {
            auto rhs = parse_unary();
            if (!rhs) return std::nullopt;
            lhs = Formula::conjunction(std::move(*lhs), std::move(*rhs));
        }
        return lhs;
    }

    std::optional<Formula> parse_or() {
        auto lhs = parse_and();
        if (!lhs) return std::nullopt;
        while (eat_word("or")) {
            auto rhs = parse_and();
            if (!rhs) return std::nullopt;
            lhs = Formula::disjunction(std::move(*lhs), std::move(*rhs));
        }
        return lhs;
    }

    std::optional<Formula> parse_formula() {
        auto lhs = parse_or();
        if (!lhs) return std::nullopt;
        if (eat_word("implies")) {
            auto rhs = parse_formula();  // right-associative
            if (!rhs) return std::nullopt;
            return Formula::implication(std::move(*lhs), std::move(*rhs));
        }
        return lhs;
    }
};

}  // namespace

HypParseResult parse_hyp(const Str& src) {
    HypParser parser{src};
    auto formula = parser.parse_formula();
    if (formula && parser.at_end()) return *formula;
    if (parser.failure) return *parser.failure;
    return HypParseFailure{parser.pos, "trailing input after formula"};
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::vector<bool> reachable_states(const Lts& l) {
    std::vector<bool> seen(l.num_states, false);
    std::vector<toylang::StateId> stack{l.initial};
    seen[l.initial] = true;
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (const auto& t : l.transitions) {
            if (t.from == s && !seen[t.to]) {
                seen[t.to] = true;
                stack.push_back(t.to);
            }
        }
    }
    return seen;
}

struct AtomEvaluator {
    const Lts* lts = nullptr;  // null: every atom is false
    std::vector<bool> reachable;

    explicit AtomEvaluator(const Lts* l) : lts(l) {
        if (lts) reachable = reachable_states(*lts);
    }

    bool enabled(Label label) const {
        if (!lts) return false;
        return std::any_of(lts->transitions.begin(), lts->transitions.end(),
                           [&](const auto& t) {
                               return reachable[t.from] && t.label == label;
                           });
    }

    bool init_enabled(Label label) const {
        if (!lts) return false;
        return std::any_of(lts->transitions.begin(), lts->transitions.end(),
                           [&](const auto& t) {
                               return t.from == lts->initial && t.label == label;
                           });
    }

    bool deadlock_free() const {
        if (!lts) return false;
        for (toylang::StateId s = 0; s < lts->num_states; ++s) {
            if (!reachable[s]) continue;
            bool has_successor = std::any_of(
                lts->transitions.begin(), lts->transitions.end(),
                [&](const auto& t) { return t.from == s; });
            if (!has_successor) return false;
        }
        return true;
    }
};

bool eval_with(const Formula& f, const AtomEvaluator& atoms) {
    if (const auto* e = std::get_if<Formula::Enabled>(&f.node))
        return atoms.enabled(e->label);
    if (const auto* e2 = std::get_if<Formula::InitEnabled>(&f.node))
        return atoms.init_enabled(e2->label);
    if (std::holds_alternative<Formula::DeadlockFree>(f.node))
        return atoms.deadlock_free();
    if (const auto* n = std::get_if<Formula::Not>(&f.node))
        return !eval_with(*n->arg, atoms);
    if (const auto* a = std::get_if<Formula::And>(&f.node))
        return eval_with(*a->lhs, atoms) && eval_with(*a->rhs, atoms);
    if (const auto* o = std::get_if<Formula::Or>(&f.node))
        return eval_with(*o->lhs, atoms) || eval_with(*o->rhs, atoms);
    const auto& i = std::get<Formula::Implies>(f.node);
    return !eval_with(*i.lhs, atoms) || eval_with(*i.rhs, atoms);
}

}  // namespace

bool eval_hyp(const Formula& f, const Lts& l) {
    return eval_with(f, AtomEvaluator(&l));
}

bool eval_hyp_at_bottom(const Formula& f) {
    return eval_with(f, AtomEvaluator(nullptr));
}

bool eval_hyp_on(const Formula& f, const SemObject& obj) {
    const Lts* lts = toylang::lts_of_object(obj);
    return eval_with(f, AtomEvaluator(lts));
}

std::set<Label> vocabulary(const Formula& f) {
    std::set<Label> labels;
    if (const auto* e = std::get_if<Formula::Enabled>(&f.node)) {
        labels.insert(e->label);
    } else if (const auto* e2 = std::get_if<Formula::InitEnabled>(&f.node)) {
        labels.insert(e2->label);
    } else if (const auto* n = std::get_if<Formula::Not>(&f.node)) {
        labels = vocabulary(*n->arg);
    } else if (const auto* a = std::get_if<Formula::And>(&f.node)) {
        labels = vocabulary(*a->lhs);
        labels.merge(vocabulary(*a->rhs));
    } else if (const auto* o = std::get_if<Formula::Or>(&f.node)) {
        labels = vocabulary(*o->lhs);
        labels.merge(vocabulary(*o->rhs));
    } else if (const auto* i = std::get_if<Formula::Implies>(&f.node)) {
        labels = vocabulary(*i->lhs);
        labels.merge(vocabulary(*i->rhs));
    }
    return labels;
}

}  // namespace specworld::hyp
