#include <cctype>
#include <string>
#include <vector>

#include "sliver/error.hpp"
#include "sliver/logic.hpp"

namespace sliver {

namespace {

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    Bang,
    Bar,
    Amp,
    Arrow,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    long value = 0;
    int line = 1;
    int col = 1;
};

[[noreturn]] void syntax_error(const Token& at, const std::string& msg) {
    fail_schema("formula syntax error at line " + std::to_string(at.line) + ", column " +
                std::to_string(at.col) + ": " + msg);
}

bool is_keyword(const std::string& s) {
    return s == "exists" || s == "E" || s == "A" || s == "X" || s == "F" || s == "G" || s == "U";
}

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto bump = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            bump(c);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (i < src.size()) {
                char d = src[i];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
                    text += d;
                    bump(d);
                } else {
                    break;
                }
            }
            tok.kind = Tok::Ident;
            tok.text = std::move(text);
            out.push_back(std::move(tok));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                text += src[i];
                bump(src[i]);
            }
            tok.kind = Tok::Int;
            tok.value = std::stol(text);
            tok.text = std::move(text);
            out.push_back(std::move(tok));
            continue;
        }
        switch (c) {
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case '[': tok.kind = Tok::LBrack; break;
            case ']': tok.kind = Tok::RBrack; break;
            case ',': tok.kind = Tok::Comma; break;
            case '.': tok.kind = Tok::Dot; break;
            case ':': tok.kind = Tok::Colon; break;
            case '!': tok.kind = Tok::Bang; break;
            case '|': tok.kind = Tok::Bar; break;
            case '&': tok.kind = Tok::Amp; break;
            case '-':
                bump(c);
                if (i >= src.size() || src[i] != '>')
                    syntax_error(tok, "expected '>' after '-'");
                tok.kind = Tok::Arrow;
                tok.text = "->";
                bump('>');
                out.push_back(std::move(tok));
                continue;
            default:
                syntax_error(tok, std::string("unexpected character '") + c + "'");
        }
        tok.text = c;
        bump(c);
        out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::End;
    end.text = "end of input";
    end.line = line;
    end.col = col;
    out.push_back(std::move(end));
    return out;
}

struct BinOp {
    int prec;
    bool right_assoc;
};

// Shared cursor and small helpers for both grammars.
struct ParserBase {
    std::vector<Token> toks;
    std::size_t pos = 0;

    explicit ParserBase(const std::string& src) : toks(tokenize(src)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t j = pos + ahead;
        return j < toks.size() ? toks[j] : toks.back();
    }

    const Token& advance() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            syntax_error(peek(), "expected " + what + ", found '" + describe(peek()) + "'");
        return advance();
    }

    std::string expect_name(const std::string& role) {
        const Token& t = peek();
        if (t.kind != Tok::Ident)
            syntax_error(t, "expected " + role + ", found '" + describe(t) + "'");
        if (is_keyword(t.text))
            syntax_error(t, "'" + t.text + "' is reserved and cannot be used as " + role);
        advance();
        return t.text;
    }

    static std::string describe(const Token& t) { return t.text; }

    bool at_ident(const char* text) const {
        return peek().kind == Tok::Ident && peek().text == text;
    }

    void expect_end() {
        if (peek().kind != Tok::End)
            syntax_error(peek(), "unexpected trailing input '" + describe(peek()) + "'");
    }

    // Returns the binary operator at the cursor, if any. U only exists at the
    // path level.
    bool binop(bool path_level, BinOp& op) const {
        switch (peek().kind) {
            case Tok::Arrow: op = {0, true}; return true;
            case Tok::Bar: op = {1, false}; return true;
            case Tok::Amp: op = {2, false}; return true;
            case Tok::Ident:
                if (path_level && peek().text == "U") {
                    op = {3, true};
                    return true;
                }
                return false;
            default:
                return false;
        }
    }
};

struct QctlParser : ParserBase {
    using ParserBase::ParserBase;

    QctlStateRef parse_state(int min_prec) {
        QctlStateRef lhs = state_primary();
        BinOp op;
        while (binop(false, op) && op.prec >= min_prec) {
            Tok kind = peek().kind;
            advance();
            QctlStateRef rhs = parse_state(op.right_assoc ? op.prec : op.prec + 1);
            switch (kind) {
                case Tok::Arrow: lhs = q_implies(std::move(lhs), std::move(rhs)); break;
                case Tok::Bar: lhs = q_or(std::move(lhs), std::move(rhs)); break;
                case Tok::Amp: lhs = q_and(std::move(lhs), std::move(rhs)); break;
                default: syntax_error(peek(), "unreachable operator");
            }
        }
        return lhs;
    }

    QctlStateRef state_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Bang:
                advance();
                return q_not(state_primary());
            case Tok::LParen: {
                advance();
                QctlStateRef f = parse_state(0);
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::Ident:
                if (t.text == "exists") {
                    advance();
                    return quantifier();
                }
                if (t.text == "E") {
                    advance();
                    return q_path(parse_path(0));
                }
                if (t.text == "A") {
                    advance();
                    return q_forall_path(parse_path(0));
                }
                if (is_keyword(t.text))
                    syntax_error(t, "path operator '" + t.text + "' outside E/A");
                advance();
                return q_atom(t.text);
            default:
                syntax_error(t, "expected a formula, found '" + describe(t) + "'");
        }
    }

    QctlStateRef quantifier() {
        const Token& name_tok = peek();
        std::string atom = expect_name("a quantified atom");
        if (is_reserved_atom(atom))
            syntax_error(name_tok, "cannot quantify reserved atom '" + atom + "'");
        expect(Tok::LBrack, "'['");
        std::set<int> obs;
        if (peek().kind != Tok::RBrack) {
            while (true) {
                const Token& n = expect(Tok::Int, "a component index");
                if (n.value < 1)
                    syntax_error(n, "observation component indices are 1-based");
                obs.insert(static_cast<int>(n.value));
                if (peek().kind != Tok::Comma) break;
                advance();
            }
        }
        expect(Tok::RBrack, "']'");
        expect(Tok::Dot, "'.'");
        return q_exists(std::move(atom), std::move(obs), parse_state(0));
    }

    QctlPathRef parse_path(int min_prec) {
        QctlPathRef lhs = path_primary();
        BinOp op;
        while (binop(true, op) && op.prec >= min_prec) {
            Tok kind = peek().kind;
            bool until = kind == Tok::Ident;
            advance();
            QctlPathRef rhs = parse_path(op.right_assoc ? op.prec : op.prec + 1);
            if (until) {
                lhs = qp_until(std::move(lhs), std::move(rhs));
            } else {
                switch (kind) {
                    case Tok::Arrow: lhs = qp_implies(std::move(lhs), std::move(rhs)); break;
                    case Tok::Bar: lhs = qp_or(std::move(lhs), std::move(rhs)); break;
                    case Tok::Amp: lhs = qp_and(std::move(lhs), std::move(rhs)); break;
                    default: syntax_error(peek(), "unreachable operator");
                }
            }
        }
        return lhs;
    }

    QctlPathRef path_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Bang:
                advance();
                return qp_not(path_primary());
            case Tok::LParen: {
                advance();
                QctlPathRef p = parse_path(0);
                expect(Tok::RParen, "')'");
                return p;
            }
            case Tok::Ident:
                if (t.text == "X") {
                    advance();
                    return qp_next(path_primary());
                }
                if (t.text == "F") {
                    advance();
                    return qp_eventually(path_primary());
                }
                if (t.text == "G") {
                    advance();
                    return qp_always(path_primary());
                }
                if (t.text == "E") {
                    advance();
                    return qp_embed(q_path(parse_path(0)));
                }
                if (t.text == "A") {
                    advance();
                    return qp_embed(q_forall_path(parse_path(0)));
                }
                if (t.text == "exists") {
                    advance();
                    return qp_embed(quantifier());
                }
                if (is_keyword(t.text))
                    syntax_error(t, "misplaced operator '" + t.text + "'");
                advance();
                return qp_embed(q_atom(t.text));
            default:
                syntax_error(t, "expected a path formula, found '" + describe(t) + "'");
        }
    }
};

struct SliParser : ParserBase {
    using ParserBase::ParserBase;

    bool at_binding() const {
        return peek().kind == Tok::LParen && peek(1).kind == Tok::Ident &&
               peek(2).kind == Tok::Comma;
    }

    SliStateRef parse_state(int min_prec) {
        SliStateRef lhs = state_primary();
        BinOp op;
        while (binop(false, op) && op.prec >= min_prec) {
            Tok kind = peek().kind;
            advance();
            SliStateRef rhs = parse_state(op.right_assoc ? op.prec : op.prec + 1);
            switch (kind) {
                case Tok::Arrow: lhs = s_implies(std::move(lhs), std::move(rhs)); break;
                case Tok::Bar: lhs = s_or(std::move(lhs), std::move(rhs)); break;
                case Tok::Amp: lhs = s_and(std::move(lhs), std::move(rhs)); break;
                default: syntax_error(peek(), "unreachable operator");
            }
        }
        return lhs;
    }

    SliStateRef state_primary() {
        const Token& t = peek();
        if (at_binding()) {
            advance();
            std::string agent = expect_name("an agent name");
            expect(Tok::Comma, "','");
            std::string var = expect_name("a strategy variable");
            expect(Tok::RParen, "')'");
            return s_bind(std::move(agent), std::move(var), parse_state(0));
        }
        switch (t.kind) {
            case Tok::Bang:
                advance();
                return s_not(state_primary());
            case Tok::LParen: {
                advance();
                SliStateRef f = parse_state(0);
                expect(Tok::RParen, "')'");
                return f;
            }
            case Tok::Ident:
                if (t.text == "exists") {
                    advance();
                    return quantifier();
                }
                if (t.text == "E") {
                    advance();
                    return s_path(parse_path(0));
                }
                if (t.text == "A") {
                    advance();
                    return s_forall_path(parse_path(0));
                }
                if (is_keyword(t.text))
                    syntax_error(t, "path operator '" + t.text + "' outside E/A");
                advance();
                return s_atom(t.text);
            default:
                syntax_error(t, "expected a formula, found '" + describe(t) + "'");
        }
    }

    SliStateRef quantifier() {
        std::string var = expect_name("a strategy variable");
        expect(Tok::Colon, "':'");
        std::string obs = expect_name("an observation symbol");
        expect(Tok::Dot, "'.'");
        return s_strat(std::move(var), std::move(obs), parse_state(0));
    }

    SliPathRef parse_path(int min_prec) {
        SliPathRef lhs = path_primary();
        BinOp op;
        while (binop(true, op) && op.prec >= min_prec) {
            Tok kind = peek().kind;
            bool until = kind == Tok::Ident;
            advance();
            SliPathRef rhs = parse_path(op.right_assoc ? op.prec : op.prec + 1);
            if (until) {
                lhs = sp_until(std::move(lhs), std::move(rhs));
            } else {
                switch (kind) {
                    case Tok::Arrow: lhs = sp_implies(std::move(lhs), std::move(rhs)); break;
                    case Tok::Bar: lhs = sp_or(std::move(lhs), std::move(rhs)); break;
                    case Tok::Amp: lhs = sp_and(std::move(lhs), std::move(rhs)); break;
                    default: syntax_error(peek(), "unreachable operator");
                }
            }
        }
        return lhs;
    }

    SliPathRef path_primary() {
        const Token& t = peek();
        if (at_binding()) return sp_embed(state_primary());
        switch (t.kind) {
            case Tok::Bang:
                advance();
                return sp_not(path_primary());
            case Tok::LParen: {
                advance();
                SliPathRef p = parse_path(0);
                expect(Tok::RParen, "')'");
                return p;
            }
            case Tok::Ident:
                if (t.text == "X") {
                    advance();
                    return sp_next(path_primary());
                }
                if (t.text == "F") {
                    advance();
                    return sp_eventually(path_primary());
                }
                if (t.text == "G") {
                    advance();
                    return sp_always(path_primary());
                }
                if (t.text == "E") {
                    advance();
                    return sp_embed(s_path(parse_path(0)));
                }
                if (t.text == "A") {
                    advance();
                    return sp_embed(s_forall_path(parse_path(0)));
                }
                if (t.text == "exists") {
                    advance();
                    return sp_embed(quantifier());
                }
                if (is_keyword(t.text))
                    syntax_error(t, "misplaced operator '" + t.text + "'");
                advance();
                return sp_embed(s_atom(t.text));
            default:
                syntax_error(t, "expected a path formula, found '" + describe(t) + "'");
        }
    }
};

}  // namespace

QctlStateRef parse_qctl(const std::string& text) {
    QctlParser p(text);
    QctlStateRef f = p.parse_state(0);
    p.expect_end();
    return f;
}

SliStateRef parse_sli(const std::string& text) {
    SliParser p(text);
    SliStateRef f = p.parse_state(0);
    p.expect_end();
    return f;
}

}  // namespace sliver
