#include "specworld/toylang.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace specworld::toylang {

std::string Label::text() const {
    switch (kind) {
        case Kind::Input: return "in?" + std::to_string(value);
        case Kind::Output: return "out!" + std::to_string(value);
        case Kind::Tau: return "tau";
    }
    return "tau";
}

std::optional<Label> Label::parse(std::string_view text) {
    if (text == "tau") return Label::tau();
    Kind kind;
    std::string_view rest;
    if (text.starts_with("in?")) {
        kind = Kind::Input;
        rest = text.substr(3);
    } else if (text.starts_with("out!")) {
        kind = Kind::Output;
        rest = text.substr(4);
    } else {
        return std::nullopt;
    }
    if (rest.size() != 1 || rest[0] < '0' || rest[0] > '3') return std::nullopt;
    return Label{kind, rest[0] - '0'};
}

Expr Expr::bin(BinOp op, Expr lhs, Expr rhs) {
    return Expr{Bin{op, std::make_shared<const Expr>(std::move(lhs)),
                    std::make_shared<const Expr>(std::move(rhs))}};
}

bool structurally_equal(const Expr& x, const Expr& y) {
    if (x.node.index() != y.node.index()) return false;
    if (const auto* v = std::get_if<Expr::Var>(&x.node))
        return v->name == std::get<Expr::Var>(y.node).name;
    if (const auto* l = std::get_if<Expr::Lit>(&x.node))
        return l->value == std::get<Expr::Lit>(y.node).value;
    const auto& bx = std::get<Expr::Bin>(x.node);
    const auto& by = std::get<Expr::Bin>(y.node);
    return bx.op == by.op && structurally_equal(*bx.lhs, *by.lhs) &&
           structurally_equal(*bx.rhs, *by.rhs);
}

namespace {

bool blocks_equal(const Block& x, const Block& y);

bool stmts_equal(const Stmt& x, const Stmt& y) {
    if (x.node.index() != y.node.index()) return false;
    if (const auto* i = std::get_if<Stmt::Input>(&x.node))
        return i->var == std::get<Stmt::Input>(y.node).var;
    if (const auto* o = std::get_if<Stmt::Output>(&x.node))
        return structurally_equal(o->expr, std::get<Stmt::Output>(y.node).expr);
    if (const auto* a = std::get_if<Stmt::Assign>(&x.node)) {
        const auto& ya = std::get<Stmt::Assign>(y.node);
        return a->var == ya.var && structurally_equal(a->expr, ya.expr);
    }
    if (const auto* f = std::get_if<Stmt::If>(&x.node)) {
        const auto& yf = std::get<Stmt::If>(y.node);
        return structurally_equal(f->cond, yf.cond) &&
               blocks_equal(f->then_body, yf.then_body) &&
               blocks_equal(f->else_body, yf.else_body);
    }
    const auto& w = std::get<Stmt::While>(x.node);
    const auto& yw = std::get<Stmt::While>(y.node);
    return structurally_equal(w.cond, yw.cond) && blocks_equal(w.body, yw.body);
}

bool blocks_equal(const Block& x, const Block& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!stmts_equal(x[i], y[i])) return false;
    return true;
}

// Precedence levels for the paren-free expression grammar.
enum : int { kCmp = 0, kAdd = 1, kMul = 2, kAtom = 3 };

int level_of(const Expr& e) {
    if (std::holds_alternative<Expr::Bin>(e.node)) {
        switch (std::get<Expr::Bin>(e.node).op) {
            case BinOp::Eq:
            case BinOp::Lt: return kCmp;
            case BinOp::Add:
            case BinOp::Sub: return kAdd;
            case BinOp::Mul: return kMul;
        }
    }
    return kAtom;
}

void print_expr(std::string& out, const Expr& e) {
    if (const auto* v = std::get_if<Expr::Var>(&e.node)) {
        out.push_back(v->name);
        return;
    }
    if (const auto* l = std::get_if<Expr::Lit>(&e.node)) {
        out += std::to_string(l->value);
        return;
    }
    const auto& b = std::get<Expr::Bin>(e.node);
    print_expr(out, *b.lhs);
    switch (b.op) {
        case BinOp::Add: out += " + "; break;
        case BinOp::Sub: out += " - "; break;
        case BinOp::Mul: out += " * "; break;
        case BinOp::Eq: out += " == "; break;
        case BinOp::Lt: out += " < "; break;
    }
    print_expr(out, *b.rhs);
}

void print_block(std::string& out, const Block& block);

void print_stmt(std::string& out, const Stmt& stmt) {
    if (const auto* i = std::get_if<Stmt::Input>(&stmt.node)) {
        out += "input ";
        out.push_back(i->var);
        return;
    }
    if (const auto* o = std::get_if<Stmt::Output>(&stmt.node)) {
        out += "output ";
        print_expr(out, o->expr);
        return;
    }
    if (const auto* a = std::get_if<Stmt::Assign>(&stmt.node)) {
        out.push_back(a->var);
        out += " = ";
        print_expr(out, a->expr);
        return;
    }
    if (const auto* f = std::get_if<Stmt::If>(&stmt.node)) {
        out += "if ";
        print_expr(out, f->cond);
        out += " { ";
        print_block(out, f->then_body);
        out += " }";
        if (!f->else_body.empty()) {
            out += " else { ";
            print_block(out, f->else_body);
            out += " }";
        }
        return;
    }
    const auto& w = std::get<Stmt::While>(stmt.node);
    out += "while ";
    print_expr(out, w.cond);
    out += " { ";
    print_block(out, w.body);
    out += " }";
}

void print_block(std::string& out, const Block& block) {
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) out += "; ";
        print_stmt(out, block[i]);
    }
}

}  // namespace

bool structurally_equal(const Ast& x, const Ast& y) {
    return blocks_equal(x.stmts, y.stmts);
}

Str print(const Ast& ast) {
    std::string out;
    for (std::size_t i = 0; i < ast.stmts.size(); ++i) {
        if (i) out += "\n";
        print_stmt(out, ast.stmts[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum class Kind {
        Word,       // keyword or identifier
        Number,     // digit run
        Assign,     // =
        Plus,
        Minus,
        Star,
        EqEq,
        Less,
        LBrace,
        RBrace,
        Separator,  // newline or ';'
        Invalid,
        End,
    };
    Kind kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> tokenize(const Str& src) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t at = i;
        if (c == '\n' || c == ';') {
            tokens.push_back({Token::Kind::Separator, std::string(1, c), at});
            ++i;
            continue;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i;
            while (j < src.size() && src[j] >= 'a' && src[j] <= 'z') ++j;
            tokens.push_back({Token::Kind::Word, src.substr(i, j - i), at});
            i = j;
            continue;
        }
        if (c >= '0' && c <= '9') {
            std::size_t j = i;
            while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
            tokens.push_back({Token::Kind::Number, src.substr(i, j - i), at});
            i = j;
            continue;
        }
        if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
            tokens.push_back({Token::Kind::EqEq, "==", at});
            i += 2;
            continue;
        }
        switch (c) {
            case '=': tokens.push_back({Token::Kind::Assign, "=", at}); break;
            case '+': tokens.push_back({Token::Kind::Plus, "+", at}); break;
            case '-': tokens.push_back({Token::Kind::Minus, "-", at}); break;
            case '*': tokens.push_back({Token::Kind::Star, "*", at}); break;
            case '<': tokens.push_back({Token::Kind::Less, "<", at}); break;
            case '{': tokens.push_back({Token::Kind::LBrace, "{", at}); break;
            case '}': tokens.push_back({Token::Kind::RBrace, "}", at}); break;
            default: tokens.push_back({Token::Kind::Invalid, std::string(1, c), at}); break;
        }
        ++i;
    }
    tokens.push_back({Token::Kind::End, "", src.size()});
    return tokens;
}

bool is_var_name(const std::string& word) {
    return word == "a" || word == "b" || word == "c";
}

struct Parser {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    std::optional<ParseFailure> failure = std::nullopt;

    const Token& peek() const { return tokens[pos]; }

    void fail(const Token& tok, std::string message) {
        if (!failure) failure = ParseFailure{tok.offset, std::move(message)};
    }

    void skip_separators() {
        while (peek().kind == Token::Kind::Separator) ++pos;
    }

    std::optional<Expr> parse_atom() {
        const Token& tok = peek();
        if (tok.kind == Token::Kind::Word && is_var_name(tok.text)) {
            ++pos;
            return Expr::var(tok.text[0]);
        }
        if (tok.kind == Token::Kind::Number) {
            if (tok.text.size() != 1 || tok.text[0] > '3') {
                fail(tok, "literal must be in 0..3");
                return std::nullopt;
            }
            ++pos;
            return Expr::lit(tok.text[0] - '0');
        }
        fail(tok, "expected a variable or a literal");
        return std::nullopt;
    }

    std::optional<Expr> parse_mul() {
        auto lhs = parse_atom();
        if (!lhs) return std::nullopt;
        while (peek().kind == Token::Kind::Star) {
            ++pos;
            auto rhs = parse_atom();
            if (!rhs) return std::nullopt;
            lhs = Expr::bin(BinOp::Mul, std::move(*lhs), std::move(*rhs));
        }
        return lhs;
    }

    std::optional<Expr> parse_add() {
        auto lhs = parse_mul();
        if (!lhs) return std::nullopt;
        while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
            BinOp op = peek().kind == Token::Kind::Plus ? BinOp::Add : BinOp::Sub;
            ++pos;
            auto rhs = parse_mul();
            if (!rhs) return std::nullopt;
            lhs = Expr::bin(op, std::move(*lhs), std::move(*rhs));
        }
        return lhs;
    }

    std::optional<Expr> parse_expr() {
        auto lhs = parse_add();
        if (!lhs) return std::nullopt;
        if (peek().kind == Token::Kind::EqEq || peek().kind == Token::Kind::Less) {
            BinOp op = peek().kind == Token::Kind::EqEq ? BinOp::Eq : BinOp::Lt;
            ++pos;
            auto rhs = parse_add();
            if (!rhs) return std::nullopt;
            return Expr::bin(op, std::move(*lhs), std::move(*rhs));
        }
        return lhs;
    }

    bool expect(Token::Kind kind, const char* what) {
        if (peek().kind != kind) {
            fail(peek(), std::string("expected ") + what);
            return false;
        }
        ++pos;
        return true;
    }

    std::optional<Block> parse_braced_block() {
        skip_separators();
        if (!expect(Token::Kind::LBrace, "'{'")) return std::nullopt;
        auto body = parse_block(/*top_level=*/false);
        if (!body) return std::nullopt;
        if (!expect(Token::Kind::RBrace, "'}'")) return std::nullopt;
        return body;
    }

    std::optional<Stmt> parse_stmt() {
        const Token& tok = peek();
        if (tok.kind != Token::Kind::Word) {
            fail(tok, "expected statement");
            return std::nullopt;
        }
        if (tok.text == "input") {
            ++pos;
            const Token& var = peek();
            if (var.kind != Token::Kind::Word || !is_var_name(var.text)) {
                fail(var, "expected variable a, b, or c");
                return std::nullopt;
            }
            ++pos;
            return Stmt{Stmt::Input{var.text[0]}};
        }
        if (tok.text == "output") {
            ++pos;
            auto expr = parse_expr();
            if (!expr) return std::nullopt;
            return Stmt{Stmt::Output{std::move(*expr)}};
        }
        if (tok.text == "if") {
            ++pos;
            auto cond = parse_expr();
            if (!cond) return std::nullopt;
            auto then_body = parse_braced_block();
            if (!then_body) return std::nullopt;
            Block else_body;
            std::size_t saved = pos;
            skip_separators();
            if (peek().kind == Token::Kind::Word && peek().text == "else") {
                ++pos;
                auto parsed = parse_braced_block();
                if (!parsed) return std::nullopt;
                else_body = std::move(*parsed);
            } else {
                pos = saved;
            }
            return Stmt{Stmt::If{std::move(*cond), std::move(*then_body),
                                 std::move(else_body)}};
        }
        if (tok.text == "while") {
            ++pos;
            auto cond = parse_expr();
            if (!cond) return std::nullopt;
            auto body = parse_braced_block();
            if (!body) return std::nullopt;
            return Stmt{Stmt::While{std::move(*cond), std::move(*body)}};
        }
        if (is_var_name(tok.text)) {
            ++pos;
            if (!expect(Token::Kind::Assign, "'='")) return std::nullopt;
            auto expr = parse_expr();
            if (!expr) return std::nullopt;
            return Stmt{Stmt::Assign{tok.text[0], std::move(*expr)}};
        }
        fail(tok, "expected statement");
        return std::nullopt;
    }

    std::optional<Block> parse_block(bool top_level) {
        Block block;
        skip_separators();
        while (true) {
            const Token& tok = peek();
            if (top_level ? tok.kind == Token::Kind::End
                          : tok.kind == Token::Kind::RBrace)
                break;
            auto stmt = parse_stmt();
            if (!stmt) return std::nullopt;
            block.push_back(std::move(*stmt));
            const Token& after = peek();
            if (after.kind == Token::Kind::Separator) {
                skip_separators();
                continue;
            }
            // Next statement needs a separator; '}' / end close the block.
            if (top_level ? after.kind != Token::Kind::End
                          : after.kind != Token::Kind::RBrace) {
                fail(after, "expected statement separator");
                return std::nullopt;
            }
        }
        return block;
    }
};

}  // namespace

ParseResult parse(const Str& src) {
    Parser parser{tokenize(src)};
    auto block = parser.parse_block(/*top_level=*/true);
    if (!block) {
        assert(parser.failure.has_value());
        return *parser.failure;
    }
    return Ast{std::move(*block)};
}

// ---------------------------------------------------------------------------
// Operational semantics

namespace {

struct Instr {
    enum class Op { Input, Output, Assign, JumpIfZero, Jump };
    Op op;
    char var = 0;
    std::optional<Expr> expr;
    std::size_t target = 0;
};

void compile_block(const Block& block, std::vector<Instr>& code);

void compile_stmt(const Stmt& stmt, std::vector<Instr>& code) {
    if (const auto* i = std::get_if<Stmt::Input>(&stmt.node)) {
        code.push_back({Instr::Op::Input, i->var, std::nullopt, 0});
        return;
    }
    if (const auto* o = std::get_if<Stmt::Output>(&stmt.node)) {
        code.push_back({Instr::Op::Output, 0, o->expr, 0});
        return;
    }
    if (const auto* a = std::get_if<Stmt::Assign>(&stmt.node)) {
        code.push_back({Instr::Op::Assign, a->var, a->expr, 0});
        return;
    }
    if (const auto* f = std::get_if<Stmt::If>(&stmt.node)) {
        std::size_t cond_at = code.size();
        code.push_back({Instr::Op::JumpIfZero, 0, f->cond, 0});
        compile_block(f->then_body, code);
        if (f->else_body.empty()) {
            code[cond_at].target = code.size();
        } else {
            std::size_t skip_at = code.size();
            code.push_back({Instr::Op::Jump, 0, std::nullopt, 0});
            code[cond_at].target = code.size();
            compile_block(f->else_body, code);
            code[skip_at].target = code.size();
        }
        return;
    }
    const auto& w = std::get<Stmt::While>(stmt.node);
    std::size_t head = code.size();
    code.push_back({Instr::Op::JumpIfZero, 0, w.cond, 0});
    compile_block(w.body, code);
    code.push_back({Instr::Op::Jump, 0, std::nullopt, head});
    code[head].target = code.size();
}

void compile_block(const Block& block, std::vector<Instr>& code) {
    for (const Stmt& stmt : block) compile_stmt(stmt, code);
}

int var_index(char name) { return name - 'a'; }

int eval_expr(const Expr& e, const std::array<int, 3>& vals) {
    constexpr int mod = SemLimits::value_modulus;
    if (const auto* v = std::get_if<Expr::Var>(&e.node)) return vals[var_index(v->name)];
    if (const auto* l = std::get_if<Expr::Lit>(&e.node)) return l->value;
    const auto& b = std::get<Expr::Bin>(e.node);
    int lhs = eval_expr(*b.lhs, vals);
    int rhs = eval_expr(*b.rhs, vals);
    switch (b.op) {
        case BinOp::Add: return (lhs + rhs) % mod;
        case BinOp::Sub: return ((lhs - rhs) % mod + mod) % mod;
        case BinOp::Mul: return (lhs * rhs) % mod;
        case BinOp::Eq: return lhs == rhs ? 1 : 0;
        case BinOp::Lt: return lhs < rhs ? 1 : 0;
    }
    return 0;
}

struct MachineState {
    std::size_t pc;
    std::array<int, 3> vals;

    std::uint32_t key() const {
        return static_cast<std::uint32_t>(pc) * 64u +
               static_cast<std::uint32_t>(vals[0] * 16 + vals[1] * 4 + vals[2]);
    }
};

// Unconditional jumps are control-flow plumbing, not observable steps.
std::size_t resolve_jumps(const std::vector<Instr>& code, std::size_t pc) {
    std::size_t hops = 0;
    while (pc < code.size() && code[pc].op == Instr::Op::Jump) {
        pc = code[pc].target;
        assert(++hops <= code.size() + 1);
    }
    return pc;
}

}  // namespace

void Lts::normalize() {
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()),
                      transitions.end());
}

LtsResult lts_of(const Ast& ast, const SemLimits& limits) {
    std::vector<Instr> code;
    compile_block(ast.stmts, code);

    std::unordered_map<std::uint32_t, StateId> ids;
    std::vector<MachineState> states;
    std::deque<StateId> frontier;
    std::vector<Transition> transitions;

    auto intern = [&](MachineState s) -> std::optional<StateId> {
        auto [it, fresh] = ids.try_emplace(s.key(), static_cast<StateId>(states.size()));
        if (fresh) {
            if (states.size() >= limits.state_limit) return std::nullopt;
            states.push_back(s);
            frontier.push_back(it->second);
        }
        return it->second;
    };

    MachineState initial{resolve_jumps(code, 0), {0, 0, 0}};
    if (!intern(initial)) return Blowup{1};

    while (!frontier.empty()) {
        StateId from = frontier.front();
        frontier.pop_front();
        MachineState s = states[from];
        if (s.pc >= code.size()) continue;  // terminated: no transitions
        const Instr& instr = code[s.pc];
        auto step = [&](Label label, MachineState next) -> bool {
            next.pc = resolve_jumps(code, next.pc);
            auto to = intern(next);
            if (!to) return false;
            transitions.push_back({from, label, *to});
            return true;
        };
        bool ok = true;
        switch (instr.op) {
            case Instr::Op::Input:
                for (int k = 0; k < SemLimits::value_modulus && ok; ++k) {
                    MachineState next = s;
                    next.pc = s.pc + 1;
                    next.vals[var_index(instr.var)] = k;
                    ok = step(Label::input(k), next);
                }
                break;
            case Instr::Op::Output: {
                MachineState next = s;
                next.pc = s.pc + 1;
                ok = step(Label::output(eval_expr(*instr.expr, s.vals)), next);
                break;
            }
            case Instr::Op::Assign: {
                MachineState next = s;
                next.pc = s.pc + 1;
                next.vals[var_index(instr.var)] = eval_expr(*instr.expr, s.vals);
                ok = step(Label::tau(), next);
                break;
            }
            case Instr::Op::JumpIfZero: {
                MachineState next = s;
                next.pc = eval_expr(*instr.expr, s.vals) != 0 ? s.pc + 1 : instr.target;
                ok = step(Label::tau(), next);
                break;
            }
            case Instr::Op::Jump:
                assert(false && "jumps are resolved before interning");
                break;
        }
        if (!ok) return Blowup{states.size() + 1};
    }

    Lts lts;
    lts.num_states = states.size();
    lts.initial = 0;
    lts.transitions = std::move(transitions);
    lts.normalize();
    return lts;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

using Adjacency = std::vector<std::vector<std::pair<Label, StateId>>>;

Adjacency adjacency_of(const Lts& lts) {
    Adjacency adj(lts.num_states);
    for (const Transition& t : lts.transitions) adj[t.from].emplace_back(t.label, t.to);
    return adj;
}

}  // namespace

bool simulation_preorder(const Lts& l1, const Lts& l2) {
    const Adjacency succ1 = adjacency_of(l1);
    const Adjacency succ2 = adjacency_of(l2);
    const std::size_t n1 = l1.num_states;
    const std::size_t n2 = l2.num_states;

    std::vector<char> rel(n1 * n2, 1);
    auto at = [&](std::size_t s, std::size_t t) -> char& { return rel[s * n2 + t]; };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < n1; ++s) {
            for (std::size_t t = 0; t < n2; ++t) {
                if (!at(s, t)) continue;
                for (const auto& [label, s2] : succ1[s]) {
                    bool matched = false;
                    for (const auto& [other, t2] : succ2[t]) {
                        if (other == label && at(s2, t2)) {
                            matched = true;
                            break;
                        }
                    }
                    if (!matched) {
                        at(s, t) = 0;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    return at(l1.initial, l2.initial) != 0;
}

bool brute_force_simulates(const Lts& l1, const Lts& l2) {
    const std::size_t n1 = l1.num_states;
    const std::size_t n2 = l2.num_states;
    if (n1 * n2 > kBruteForceGuard) throw OracleTooLarge{};

    const Adjacency succ1 = adjacency_of(l1);
    const Adjacency succ2 = adjacency_of(l2);
    const std::size_t pairs = n1 * n2;

    // For each candidate pair (s, t) and each transition of s, the set of
    // pairs (s', t') that could discharge it, as a bitmask over pairs.
    std::vector<std::vector<std::uint32_t>> needs(pairs);
    for (std::size_t s = 0; s < n1; ++s) {
        for (std::size_t t = 0; t < n2; ++t) {
            auto& entry = needs[s * n2 + t];
            for (const auto& [label, s2] : succ1[s]) {
                std::uint32_t mask = 0;
                for (const auto& [other, t2] : succ2[t]) {
                    if (other == label)
                        mask |= std::uint32_t{1} << (s2 * n2 + t2);
                }
                entry.push_back(mask);
            }
        }
    }

    const std::uint32_t init_bit =
        std::uint32_t{1} << (l1.initial * n2 + l2.initial);
    const std::uint32_t limit = std::uint32_t{1} << pairs;
    for (std::uint32_t rel = 0; rel < limit; ++rel) {
        if (!(rel & init_bit)) continue;
        bool simulation = true;
        for (std::size_t p = 0; p < pairs && simulation; ++p) {
            if (!(rel & (std::uint32_t{1} << p))) continue;
            for (std::uint32_t need : needs[p]) {
                if (!(need & rel)) {
                    simulation = false;
                    break;
                }
            }
        }
        if (simulation) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Framework

const Lts* lts_of_object(const SemObject& obj) { return obj.as<Lts>(); }

SemanticalFramework make_framework(const SemLimits& limits) {
    struct Memo {
        std::mutex mu;
        std::map<Str, SemObject> interpretations;
        std::map<std::pair<const void*, const void*>, bool> simulations;
    };
    auto memo = std::make_shared<Memo>();

    SemanticalFramework fw;
    fw.id = "toylang/mod4:" + std::to_string(limits.state_limit);
    fw.bottom = SemObject::bottom();

    fw.interpret = [limits, memo](const Str& src) -> SemObject {
        if (src.empty()) return SemObject::bottom();
        {
            std::lock_guard lock(memo->mu);
            auto it = memo->interpretations.find(src);
            if (it != memo->interpretations.end()) return it->second;
        }
        SemObject result;  // bottom unless the source parses and explores
        ParseResult parsed = parse(src);
        if (const Ast* ast = std::get_if<Ast>(&parsed)) {
            LtsResult built = lts_of(*ast, limits);
            if (Lts* lts = std::get_if<Lts>(&built))
                result = SemObject::of<Lts>(std::move(*lts));
        }
        std::lock_guard lock(memo->mu);
        // Keep whichever object landed first so payload identity is stable.
        return memo->interpretations.try_emplace(src, std::move(result))
            .first->second;
    };

    fw.sim = [memo](const SemObject& x, const SemObject& y) -> bool {
        if (x.is_bottom()) return true;
        if (y.is_bottom()) return false;
        if (x.identity() == y.identity()) return true;
        const Lts* lx = lts_of_object(x);
        const Lts* ly = lts_of_object(y);
        if (!lx || !ly) return false;  // foreign payloads are incomparable
        auto key = std::make_pair(x.identity(), y.identity());
        {
            std::lock_guard lock(memo->mu);
            auto it = memo->simulations.find(key);
            if (it != memo->simulations.end()) return it->second;
        }
        bool result = simulation_preorder(*lx, *ly);
        std::lock_guard lock(memo->mu);
        memo->simulations.emplace(key, result);
        return result;
    };

    return fw;
}

}  // namespace specworld::toylang
