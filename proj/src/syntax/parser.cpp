#include "axrel/syntax/parser.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <sstream>

namespace axrel::syntax {

namespace {

enum class Tok { Ident, Nat, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::vector<Token> tokenize(std::string_view s, std::size_t first_line) {
    std::vector<Token> out;
    SourcePos pos{0, first_line, 1};
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++pos.line;
                pos.column = 1;
            } else {
                ++pos.column;
            }
            ++pos.offset;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        SourcePos start = pos;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            while (j < s.size() && s[j] == '\'') ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), start});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Nat, std::string(s.substr(i, j - i)), start});
            advance(j - i);
            continue;
        }
        for (std::string_view sym : {"<->", "->"}) {
            if (s.substr(i, sym.size()) == sym) {
                out.push_back({Tok::Sym, std::string(sym), start});
                advance(sym.size());
                goto next;
            }
        }
        if (std::string_view("()&|!=<+-*^.,:").find(c) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, c), start});
            advance(1);
            continue;
        }
        throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    next:;
    }
    out.push_back({Tok::End, "", pos});
    return out;
}

const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"A", "E", "B", "Q", "IB", "Ph", "Ob", "IOb", "W"};
    return k;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const SortContext& ctx) : toks_(std::move(toks)), context_(ctx) {
        // Names used somewhere as predicate or observer/body arguments; an
        // equation between two otherwise undetermined variables takes B for them.
        for (std::size_t i = 0; i + 2 < toks_.size(); ++i) {
            const Token& k = toks_[i];
            if (k.kind != Tok::Ident || toks_[i + 1].text != "(") continue;
            if (k.text == "IB" || k.text == "Ph" || k.text == "Ob" || k.text == "IOb") {
                if (toks_[i + 2].kind == Tok::Ident) body_hint_.insert(toks_[i + 2].text);
            } else if (k.text == "W" && i + 4 < toks_.size()) {
                if (toks_[i + 2].kind == Tok::Ident) body_hint_.insert(toks_[i + 2].text);
                if (toks_[i + 4].kind == Tok::Ident) body_hint_.insert(toks_[i + 4].text);
            }
        }
    }

    FormulaPtr parse_all() {
        FormulaPtr f = formula();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after formula");
        return f;
    }

    TermPtr parse_term_all() {
        TermPtr t = term();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after term");
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;
    const SortContext& context_;
    std::vector<std::pair<std::string, Sort>> bound_;
    std::map<std::string, Sort> inferred_;
    std::set<std::size_t> paren_formula_failed_;
    // Variables whose sort is not yet known are built with a placeholder and
    // tagged here; settle() fixes them once the atom decides.
    std::set<const Term*> pending_;
    std::set<std::string> body_hint_;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
    bool is_sym(const char* s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Sym && peek(k).text == s;
    }
    bool accept(const char* s) {
        if (!is_sym(s)) return false;
        ++at_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(peek().pos, msg); }
    void expect(const char* s) {
        if (!accept(s)) {
            const Token& t = peek();
            fail(std::string("expected '") + s + "' but found " + (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"));
        }
    }

    // ------------------------------------------------------------ formulas

    FormulaPtr formula() {
        if (is_quantifier_start()) return quantifier();
        return iff_level();
    }

    bool is_quantifier_start() const {
        return peek().kind == Tok::Ident && (peek().text == "A" || peek().text == "E");
    }

    FormulaPtr quantifier() {
        const Token& q = peek();
        bool universal = q.text == "A";
        SourcePos qpos = q.pos;
        ++at_;
        std::vector<std::pair<std::string, Sort>> binders;
        do {
            const Token& v = peek();
            if (v.kind != Tok::Ident || keywords().count(v.text)) fail("expected a variable name in quantifier");
            ++at_;
            expect(":");
            const Token& s = peek();
            if (s.kind != Tok::Ident || (s.text != "B" && s.text != "Q")) fail("expected sort B or Q");
            ++at_;
            binders.emplace_back(v.text, s.text == "B" ? Sort::Body : Sort::Quantity);
        } while (peek().kind == Tok::Ident && is_sym(":", 1));
        expect(".");
        for (const auto& b : binders) bound_.push_back(b);
        FormulaPtr body = formula();
        bound_.resize(bound_.size() - binders.size());
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
            Formula f;
            f.kind = universal ? Formula::Kind::Forall : Formula::Kind::Exists;
            f.var = it->first;
            f.var_sort = it->second;
            f.lhs = body;
            f.pos = qpos;
            body = std::make_shared<const Formula>(std::move(f));
        }
        return body;
    }

    FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b, SourcePos pos) {
        Formula f;
        f.kind = k;
        f.lhs = std::move(a);
        f.rhs = std::move(b);
        f.pos = pos;
        return std::make_shared<const Formula>(std::move(f));
    }

    FormulaPtr iff_level() {
        FormulaPtr a = imp_level();
        while (is_sym("<->")) {
            SourcePos p = peek().pos;
            ++at_;
            a = binary(Formula::Kind::Iff, a, rhs_operand(&Parser::imp_level), p);
        }
        return a;
    }

    FormulaPtr imp_level() {
        FormulaPtr a = or_level();
        if (is_sym("->")) {
            SourcePos p = peek().pos;
            ++at_;
            FormulaPtr b = is_quantifier_start() ? quantifier() : imp_level();
            return binary(Formula::Kind::Implies, a, b, p);
        }
        return a;
    }

    FormulaPtr or_level() {
        FormulaPtr a = and_level();
        while (is_sym("|")) {
            SourcePos p = peek().pos;
            ++at_;
            a = binary(Formula::Kind::Or, a, rhs_operand(&Parser::and_level), p);
        }
        return a;
    }

    FormulaPtr and_level() {
        FormulaPtr a = unary();
        while (is_sym("&")) {
            SourcePos p = peek().pos;
            ++at_;
            a = binary(Formula::Kind::And, a, unary(), p);
        }
        return a;
    }

    // A quantifier in operand position swallows the rest of the formula.
    FormulaPtr rhs_operand(FormulaPtr (Parser::*level)()) {
        if (is_quantifier_start()) return quantifier();
        return (this->*level)();
    }

    FormulaPtr unary() {
        if (is_sym("!")) {
            SourcePos p = peek().pos;
            ++at_;
            Formula f;
            f.kind = Formula::Kind::Not;
            f.lhs = unary();
            f.pos = p;
            return std::make_shared<const Formula>(std::move(f));
        }
        if (is_quantifier_start()) return quantifier();
        if (is_sym("(") && !paren_formula_failed_.count(at_)) {
            std::size_t save = at_;
            auto saved_inferred = inferred_;
            auto saved_pending = pending_;
            try {
                ++at_;
                FormulaPtr f = formula();
                expect(")");
                return f;
            } catch (const SyntaxError&) {
                paren_formula_failed_.insert(save);
                at_ = save;
                inferred_ = std::move(saved_inferred);
                pending_ = std::move(saved_pending);
            }
        }
        return atom();
    }

    FormulaPtr atom() {
        const Token& t = peek();
        if (t.kind == Tok::Ident) {
            static const std::map<std::string, Formula::Kind> preds{{"IB", Formula::Kind::IB},
                                                                    {"Ph", Formula::Kind::Ph},
                                                                    {"Ob", Formula::Kind::Ob},
                                                                    {"IOb", Formula::Kind::IOb}};
            auto it = preds.find(t.text);
            if (it != preds.end()) {
                SourcePos p = t.pos;
                ++at_;
                expect("(");
                TermPtr arg = term(Sort::Body);
                expect(")");
                Formula f;
                f.kind = it->second;
                f.args = {arg};
                f.pos = p;
                return std::make_shared<const Formula>(std::move(f));
            }
            if (t.text == "W") {
                SourcePos p = t.pos;
                ++at_;
                expect("(");
                Formula f;
                f.kind = Formula::Kind::W;
                f.pos = p;
                for (int i = 0; i < 6; ++i) {
                    if (i) expect(",");
                    f.args.push_back(term(i < 2 ? Sort::Body : Sort::Quantity));
                }
                expect(")");
                return std::make_shared<const Formula>(std::move(f));
            }
        }
        SourcePos p = peek().pos;
        std::optional<Sort> unknown;
        TermPtr lhs = term(unknown);
        Formula f;
        f.pos = p;
        if (accept("<")) {
            lhs = settle(lhs, Sort::Quantity);
            f.kind = Formula::Kind::Lt;
            f.args = {lhs, term(Sort::Quantity)};
        } else if (accept("=")) {
            f.kind = Formula::Kind::Eq;
            std::optional<Sort> ls = determined_sort(lhs);
            TermPtr rhs = term(ls);
            std::optional<Sort> rs = determined_sort(rhs);
            Sort s = ls ? *ls : rs ? *rs : body_hint_.count(lhs->name) ? Sort::Body : Sort::Quantity;
            f.args = {settle(lhs, s), settle(rhs, s)};
        } else {
            fail("expected '=' or '<' after term");
        }
        return std::make_shared<const Formula>(std::move(f));
    }

    // --------------------------------------------------------------- terms


    std::optional<Sort> determined_sort(const TermPtr& t) const {
        if (t->kind != Term::Kind::Var) return Sort::Quantity;
        if (pending_.count(t.get())) return std::nullopt;
        return t->sort;
    }

    TermPtr settle(const TermPtr& t, Sort s) {
        if (!pending_.count(t.get())) {
            if (t->term_sort() != s) throw SortError(t->pos, sort_name(s), sort_name(t->term_sort()), "term");
            return t;
        }
        pending_.erase(t.get());
        resolve(t->name, t->pos, s);
        Term copy = *t;
        copy.sort = s;
        return std::make_shared<const Term>(std::move(copy));
    }

    std::optional<Sort> lookup(const std::string& name) const {
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
            if (it->first == name) return it->second;
        if (auto it = context_.find(name); it != context_.end()) return it->second;
        if (auto it = inferred_.find(name); it != inferred_.end()) return it->second;
        return std::nullopt;
    }

    std::optional<Sort> resolve(const std::string& name, SourcePos pos, std::optional<Sort> expected) {
        std::optional<Sort> known = lookup(name);
        if (known) {
            if (expected && *expected != *known)
                throw SortError(pos, sort_name(*expected), sort_name(*known), "variable '" + name + "'");
            return known;
        }
        if (expected) inferred_[name] = *expected;
        return expected;
    }

    TermPtr term(std::optional<Sort> expected = Sort::Quantity) {
        SourcePos p = peek().pos;
        // A bare variable may be body-sorted; anything compound is a quantity.
        if (peek().kind == Tok::Ident && !keywords().count(peek().text)) {
            bool bare = !(is_sym("+", 1) || is_sym("-", 1) || is_sym("*", 1) || is_sym("^", 1));
            if (bare) {
                std::string name = peek().text;
                ++at_;
                std::optional<Sort> s = resolve(name, p, expected);
                Term t;
                t.kind = Term::Kind::Var;
                t.name = name;
                t.sort = s.value_or(Sort::Quantity);
                t.pos = p;
                auto ptr = std::make_shared<const Term>(std::move(t));
                if (!s) pending_.insert(ptr.get());
                return ptr;
            }
        }
        if (expected && *expected == Sort::Body) {
            const Token& t = peek();
            if (t.kind == Tok::Ident && !keywords().count(t.text)) {
                // a quantity expression led by a variable where a body is required
                std::optional<Sort> s = lookup(t.text);
                throw SortError(p, "B", s ? sort_name(*s) : "Q", "term");
            }
            if (t.kind == Tok::Nat || is_sym("(") || is_sym("-")) throw SortError(p, "B", "Q", "term");
            fail("expected a body variable");
        }
        return sum();
    }

    TermPtr bin(Term::Kind k, TermPtr a, TermPtr b, SourcePos p) {
        Term t;
        t.kind = k;
        t.lhs = std::move(a);
        t.rhs = std::move(b);
        t.pos = p;
        return std::make_shared<const Term>(std::move(t));
    }

    TermPtr sum() {
        TermPtr a = prod();
        for (;;) {
            SourcePos p = peek().pos;
            if (accept("+"))
                a = bin(Term::Kind::Add, a, prod(), p);
            else if (accept("-"))
                a = bin(Term::Kind::Sub, a, prod(), p);
            else
                return a;
        }
    }

    TermPtr prod() {
        TermPtr a = power();
        while (is_sym("*")) {
            SourcePos p = peek().pos;
            ++at_;
            a = bin(Term::Kind::Mul, a, power(), p);
        }
        return a;
    }

    TermPtr power() {
        TermPtr a = prim();
        if (is_sym("^")) {
            SourcePos p = peek().pos;
            ++at_;
            if (peek().kind != Tok::Nat || peek().text != "2") fail("only the exponent 2 is supported");
            ++at_;
            a = bin(Term::Kind::Square, a, nullptr, p);
        }
        return a;
    }

    TermPtr prim() {
        const Token& t = peek();
        SourcePos p = t.pos;
        if (t.kind == Tok::Nat) {
            ++at_;
            unsigned long n = 0;
            try {
                n = std::stoul(t.text);
            } catch (const std::exception&) {
                throw SyntaxError(p, "numeral out of range");
            }
            Term out;
            out.kind = n == 0 ? Term::Kind::Zero : n == 1 ? Term::Kind::One : Term::Kind::Numeral;
            out.numeral = n > 1 ? n : 0;
            out.pos = p;
            return std::make_shared<const Term>(std::move(out));
        }
        if (t.kind == Tok::Ident) {
            if (keywords().count(t.text)) fail("unexpected keyword '" + t.text + "' in term");
            ++at_;
            resolve(t.text, p, Sort::Quantity);
            Term out;
            out.kind = Term::Kind::Var;
            out.name = t.text;
            out.sort = Sort::Quantity;
            out.pos = p;
            return std::make_shared<const Term>(std::move(out));
        }
        if (accept("-")) return bin(Term::Kind::Neg, power(), nullptr, p);
        if (accept("(")) {
            TermPtr inner = term(Sort::Quantity);
            expect(")");
            return inner;
        }
        if (t.kind == Tok::End) fail("unexpected end of input");
        fail("unexpected '" + t.text + "'");
    }
};

// ------------------------------------------------------------------ printer

class Printer {
public:
    explicit Printer(const std::set<std::string>& names) : taken_(names) {}

    std::string formula(const FormulaPtr& f) {
        std::string out;
        pf(f, 0, true, out);
        return out;
    }

    std::string term(const TermPtr& t) {
        std::string out;
        pt(t, 0, out);
        return out;
    }

private:
    std::set<std::string> taken_;
    std::vector<std::pair<std::string, std::string>> env_;  // AST name -> printed name

    std::string name_of(const std::string& n) const {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
            if (it->first == n) return it->second;
        return n;
    }

    bool is_bound(const std::string& n) const {
        for (const auto& e : env_)
            if (e.first == n) return true;
        return false;
    }

    static int prec(const Formula& f) {
        switch (f.kind) {
            case Formula::Kind::Iff: return 1;
            case Formula::Kind::Implies: return 2;
            case Formula::Kind::Or: return 3;
            case Formula::Kind::And: return 4;
            case Formula::Kind::Forall:
            case Formula::Kind::Exists: return 0;
            default: return 5;
        }
    }

    static const char* op(Formula::Kind k) {
        switch (k) {
            case Formula::Kind::Iff: return " <-> ";
            case Formula::Kind::Implies: return " -> ";
            case Formula::Kind::Or: return " | ";
            default: return " & ";
        }
    }

    // `tail`: nothing follows this subformula before the enclosing bracket, so
    // a quantifier here can be printed without parentheses.
    void pf(const FormulaPtr& f, int min_prec, bool tail, std::string& out) {
        if (f->is_quantifier()) {
            if (!tail) {
                out += "(";
                pf(f, 0, true, out);
                out += ")";
                return;
            }
            out += f->kind == Formula::Kind::Forall ? "A" : "E";
            std::size_t pushed = 0;
            FormulaPtr g = f;
            while (g->kind == f->kind) {
                std::string printed = g->var;
                if (is_bound(g->var) || keywords().count(g->var)) {
                    printed = fresh_name(g->var, taken_);
                }
                taken_.insert(printed);
                env_.emplace_back(g->var, printed);
                ++pushed;
                out += " " + printed + ":" + sort_name(g->var_sort);
                g = g->lhs;
            }
            out += " . ";
            pf(g, 0, true, out);
            env_.resize(env_.size() - pushed);
            return;
        }
        int p = prec(*f);
        if (p < min_prec) {
            out += "(";
            pf(f, 0, true, out);
            out += ")";
            return;
        }
        if (f->is_binary()) {
            bool right_assoc = f->kind == Formula::Kind::Implies;
            pf(f->lhs, right_assoc ? p + 1 : p, false, out);
            out += op(f->kind);
            pf(f->rhs, right_assoc ? p : p + 1, tail, out);
            return;
        }
        if (f->kind == Formula::Kind::Not) {
            out += "!";
            pf(f->lhs, 5, tail, out);
            return;
        }
        atom(*f, out);
    }

    void atom(const Formula& f, std::string& out) {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::IB: out += "IB("; break;
            case K::Ph: out += "Ph("; break;
            case K::Ob: out += "Ob("; break;
            case K::IOb: out += "IOb("; break;
            case K::W: out += "W("; break;
            case K::Eq:
            case K::Lt:
                pt(f.args[0], 0, out);
                out += f.kind == K::Eq ? " = " : " < ";
                pt(f.args[1], 0, out);
                return;
            default: break;
        }
        for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i) out += ",";
            pt(f.args[i], 0, out);
        }
        out += ")";
    }

    static int tprec(const Term& t) {
        switch (t.kind) {
            case Term::Kind::Add:
            case Term::Kind::Sub: return 1;
            case Term::Kind::Mul: return 2;
            case Term::Kind::Neg: return 3;
            case Term::Kind::Square: return 4;
            default: return 5;
        }
    }

    void pt(const TermPtr& t, int min_prec, std::string& out) {
        int p = tprec(*t);
        if (p < min_prec) {
            out += "(";
            pt(t, 0, out);
            out += ")";
            return;
        }
        switch (t->kind) {
            case Term::Kind::Var: out += name_of(t->name); return;
            case Term::Kind::Zero: out += "0"; return;
            case Term::Kind::One: out += "1"; return;
            case Term::Kind::Numeral: out += std::to_string(t->numeral); return;
            case Term::Kind::Add:
            case Term::Kind::Sub:
                pt(t->lhs, 1, out);
                out += t->kind == Term::Kind::Add ? " + " : " - ";
                pt(t->rhs, 2, out);
                return;
            case Term::Kind::Mul:
                pt(t->lhs, 2, out);
                out += "*";
                pt(t->rhs, 3, out);
                return;
            case Term::Kind::Neg:
                out += "-";
                pt(t->lhs, 3, out);
                return;
            case Term::Kind::Square:
                pt(t->lhs, 5, out);
                out += "^2";
                return;
        }
    }
};

}  // namespace

FormulaPtr parse(std::string_view text, const SortContext& context) {
    Parser p(tokenize(text, 1), context);
    return p.parse_all();
}

TermPtr parse_term(std::string_view text, const SortContext& context) {
    Parser p(tokenize(text, 1), context);
    return p.parse_term_all();
}

std::string print(const FormulaPtr& f) { return Printer(all_names(f)).formula(f); }

std::string print(const TermPtr& t) {
    std::set<std::string> names;
    for (const auto& v : free_vars(t)) names.insert(v.name);
    return Printer(names).term(t);
}

std::vector<NamedFormula> parse_formula_file(std::string_view text) {
    std::vector<NamedFormula> out;
    struct Block {
        NamedFormula::Role role;
        std::string name;
        std::size_t first_line;
        std::string body;
    };
    std::vector<Block> blocks;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (end == text.size() && line.empty()) break;
        ++line_no;
        std::string_view trimmed = line;
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
        bool header = false;
        for (auto [kw, role] : {std::pair{std::string_view("axiom"), NamedFormula::Role::Axiom},
                                std::pair{std::string_view("theorem"), NamedFormula::Role::Theorem}}) {
            if (trimmed.substr(0, kw.size()) == kw && trimmed.size() > kw.size() &&
                std::isspace(static_cast<unsigned char>(trimmed[kw.size()]))) {
                std::string_view rest = trimmed.substr(kw.size());
                std::size_t colon = rest.find(':');
                if (colon == std::string_view::npos)
                    throw SyntaxError(SourcePos{start, line_no, 1}, "missing ':' after block name");
                std::string name(rest.substr(0, colon));
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(0, 1);
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
                if (name.empty() || name.find_first_of(" \t") != std::string::npos)
                    throw SyntaxError(SourcePos{start, line_no, 1}, "bad block name");
                blocks.push_back({role, name, line_no, std::string(rest.substr(colon + 1)) + "\n"});
                header = true;
                break;
            }
        }
        if (!header) {
            std::string_view content = trimmed.substr(0, trimmed.find('#'));
            bool blank = content.find_first_not_of(" \t\r") == std::string_view::npos;
            if (blocks.empty()) {
                if (!blank) throw SyntaxError(SourcePos{start, line_no, 1}, "text before the first block header");
            } else {
                blocks.back().body += std::string(line) + "\n";
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    for (const auto& b : blocks) {
        Parser p(tokenize(b.body, b.first_line), {});
        NamedFormula nf;
        nf.role = b.role;
        nf.name = b.name;
        nf.formula = p.parse_all();
        out.push_back(std::move(nf));
    }
    return out;
}

std::string print_formula_file(const std::vector<NamedFormula>& items) {
    std::ostringstream os;
    for (const auto& it : items) {
        os << (it.role == NamedFormula::Role::Axiom ? "axiom " : "theorem ") << it.name << ":\n  "
           << print(it.formula) << "\n\n";
    }
    return os.str();
}

}  // namespace axrel::syntax
