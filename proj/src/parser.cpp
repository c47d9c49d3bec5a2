#include "polybound/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace polybound {

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view src) {
    static const char *const multi[] = {":|:", "->", "<=", ">=", "!=", "==", "&&", "||", "/\\", "\\/"};
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        int l = line;
        int cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'' ||
                    src[j] == '.')) {
                ++j;
            }
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                ++j;
            }
            out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const char *m : multi) {
            std::string_view mv(m);
            if (src.substr(i, mv.size()) == mv) {
                out.push_back({Tok::Sym, std::string(mv), l, cl});
                advance(mv.size());
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        if (std::string_view("()+-*^<>=!,/").find(c) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, c), l, cl});
            advance(1);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program program() {
        expect("(");
        expect_ident("GOAL");
        expect_ident("COMPLEXITY");
        expect(")");
        expect("(");
        expect_ident("STARTTERM");
        expect("(");
        expect_ident("FUNCTIONSYMBOLS");
        Loc init{ident()};
        expect(")");
        expect(")");
        expect("(");
        expect_ident("VAR");
        while (peek().kind == Tok::Ident) {
            vars_.emplace_back(ident());
            known_.insert(vars_.back());
        }
        expect(")");
        expect("(");
        expect_ident("RULES");
        std::vector<Transition> transitions;
        while (!is(")")) {
            transitions.push_back(rule(init, transitions.size()));
        }
        expect(")");
        if (peek().kind != Tok::End) {
            fail("trailing input after RULES block");
        }
        try {
            return Program(vars_, init, std::move(transitions));
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what(), peek().line, peek().column);
        }
    }

    Polynomial standalone_polynomial(const std::vector<Var> &vars) {
        vars_ = vars;
        known_ = std::set<Var>(vars.begin(), vars.end());
        Polynomial p = expr();
        if (peek().kind != Tok::End) {
            fail("trailing input after polynomial");
        }
        return p;
    }

private:
    const Token &peek() const { return toks_[pos_]; }
    bool is(const std::string &s) const { return peek().kind == Tok::Sym && peek().text == s; }

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, peek().line, peek().column); }

    void expect(const std::string &s) {
        if (!is(s)) {
            fail("expected '" + s + "' but found '" + peek().text + "'");
        }
        ++pos_;
    }

    void expect_ident(const std::string &s) {
        if (peek().kind != Tok::Ident || peek().text != s) {
            fail("expected '" + s + "' but found '" + peek().text + "'");
        }
        ++pos_;
    }

    std::string ident() {
        if (peek().kind != Tok::Ident) {
            fail("expected identifier but found '" + peek().text + "'");
        }
        return toks_[pos_++].text;
    }

    Transition rule(const Loc &init, size_t index) {
        const Token start = peek();
        Loc src{ident()};
        expect("(");
        std::vector<std::string> lhs_args;
        lhs_args.push_back(ident());
        while (is(",")) {
            ++pos_;
            lhs_args.push_back(ident());
        }
        expect(")");
        if (lhs_args.size() != vars_.size()) {
            throw ParseError("left-hand side arity does not match VAR declaration", start.line, start.column);
        }
        for (size_t i = 0; i < lhs_args.size(); ++i) {
            if (lhs_args[i] != vars_[i].name) {
                throw ParseError("left-hand side argument '" + lhs_args[i] + "' must be '" + vars_[i].name + "'",
                                 start.line, start.column);
            }
        }
        expect("->");
        const Token tgt_tok = peek();
        Loc tgt{ident()};
        if (tgt == init) {
            throw ParseError("rule targets the start symbol " + init.name, tgt_tok.line, tgt_tok.column);
        }
        expect("(");
        Update update;
        size_t k = 0;
        while (true) {
            const Token at = peek();
            Polynomial p = expr();
            if (k >= vars_.size()) {
                throw ParseError("right-hand side has more arguments than declared variables", at.line, at.column);
            }
            if (!p.has_integer_coefficients()) {
                throw ParseError("non-integer coefficient in update of " + vars_[k].name, at.line, at.column);
            }
            update[vars_[k++]] = std::move(p);
            if (!is(",")) {
                break;
            }
            ++pos_;
        }
        expect(")");
        if (k != vars_.size()) {
            throw ParseError("right-hand side arity does not match VAR declaration", tgt_tok.line, tgt_tok.column);
        }
        Formula guard = Formula::truth();
        if (is(":|:")) {
            ++pos_;
            guard = disj();
        }
        return Transition{"t" + std::to_string(index), src, std::move(guard), std::move(update), tgt};
    }

    Formula disj() {
        std::vector<Formula> parts{conj()};
        while (is("||") || is("\\/")) {
            ++pos_;
            parts.push_back(conj());
        }
        return Formula::disj(std::move(parts));
    }

    Formula conj() {
        std::vector<Formula> parts{lit()};
        while (is("&&") || is("/\\")) {
            ++pos_;
            parts.push_back(lit());
        }
        return Formula::conj(std::move(parts));
    }

    Formula lit() {
        if (is("!")) {
            ++pos_;
            return negate(lit());
        }
        if (peek().kind == Tok::Ident && (peek().text == "TRUE" || peek().text == "true")) {
            ++pos_;
            return Formula::truth();
        }
        if (peek().kind == Tok::Ident && (peek().text == "FALSE" || peek().text == "false")) {
            ++pos_;
            return Formula::falsity();
        }
        if (is("(")) {
            // Either a parenthesized formula or a parenthesized polynomial starting a comparison.
            size_t saved = pos_;
            try {
                ++pos_;
                Formula f = disj();
                expect(")");
                if (!is_relation() && !is_arith()) {
                    return f;
                }
            } catch (const ParseError &) {
            }
            pos_ = saved;
        }
        Polynomial lhs = expr();
        Relation rel = relation();
        Polynomial rhs = expr();
        return normalize_atom(lhs, rel, rhs);
    }

    bool is_relation() const {
        return is("<") || is(">") || is("<=") || is(">=") || is("=") || is("==") || is("!=");
    }
    bool is_arith() const { return is("+") || is("-") || is("*") || is("^") || is("/"); }

    Relation relation() {
        static const std::map<std::string, Relation> rels = {{"<", Relation::Lt},  {">", Relation::Gt},
                                                            {"<=", Relation::Le}, {">=", Relation::Ge},
                                                            {"=", Relation::Eq},  {"==", Relation::Eq},
                                                            {"!=", Relation::Ne}};
        if (peek().kind == Tok::Sym) {
            auto it = rels.find(peek().text);
            if (it != rels.end()) {
                ++pos_;
                return it->second;
            }
        }
        fail("expected a relation but found '" + peek().text + "'");
    }

    Polynomial expr() {
        Polynomial acc = term();
        while (is("+") || is("-")) {
            bool minus = is("-");
            ++pos_;
            Polynomial t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (is("*") || is("/")) {
            bool div = is("/");
            ++pos_;
            const Token at = peek();
            Polynomial f = unary();
            if (div) {
                if (!f.is_constant() || f.is_zero()) {
                    throw ParseError("division is only allowed by a nonzero constant", at.line, at.column);
                }
                acc = acc * Polynomial(1 / f.constant_term());
            } else {
                acc = acc * f;
            }
        }
        return acc;
    }

    Polynomial unary() {
        if (is("-")) {
            ++pos_;
            return -unary();
        }
        if (is("+")) {
            ++pos_;
            return unary();
        }
        Polynomial base = primary();
        if (is("^")) {
            ++pos_;
            if (peek().kind != Tok::Number) {
                fail("exponent must be a natural number");
            }
            unsigned long e = std::stoul(toks_[pos_++].text);
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial primary() {
        const Token &t = peek();
        if (t.kind == Tok::Number) {
            ++pos_;
            return Polynomial(Int(t.text));
        }
        if (t.kind == Tok::Ident) {
            Var v(t.text);
            if (!known_.contains(v)) {
                fail("unknown variable '" + t.text + "'");
            }
            ++pos_;
            return Polynomial(v);
        }
        if (is("(")) {
            ++pos_;
            Polynomial p = expr();
            expect(")");
            return p;
        }
        fail("expected a polynomial but found '" + t.text + "'");
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::vector<Var> vars_;
    std::set<Var> known_;
};

} // namespace

Program parse_program(std::string_view text) { return Parser(tokenize(text)).program(); }

Program parse_program_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

Polynomial parse_polynomial(std::string_view text, const std::vector<Var> &vars) {
    return Parser(tokenize(text)).standalone_polynomial(vars);
}

} // namespace polybound
