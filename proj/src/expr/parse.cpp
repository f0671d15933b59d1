#include "kontakt/error.hpp"
#include "kontakt/expr.hpp"

#include <cctype>

namespace kontakt {

Lexer::Lexer(std::string_view src, int line, int col) : src_(src), line_(line), col_(col) {}

void Lexer::lex_one() {
    // skip blanks and comments
    for (;;) {
        if (pos_ >= src_.size()) break;
        char c = src_[pos_];
        if (c == '#') {
            while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        } else if (c == '\n') {
            ++pos_;
            ++line_;
            col_ = 1;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos_;
            ++col_;
        } else {
            break;
        }
    }
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
        t.kind = Token::End;
        buf_.push_back(t);
        return;
    }
    char c = src_[pos_];
    std::size_t start = pos_;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_' || src_[pos_] == '\''))
            ++pos_;
        t.kind = Token::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        t.kind = Token::Int;
    } else {
        ++pos_;
        t.kind = Token::Op;
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    col_ += static_cast<int>(pos_ - start);
    buf_.push_back(t);
}

const Token &Lexer::peek(std::size_t ahead) {
    while (buf_.size() <= ahead) lex_one();
    return buf_[ahead];
}

Token Lexer::next() {
    Token t = peek();
    buf_.erase(buf_.begin());
    return t;
}

bool Lexer::accept_op(char c) {
    const Token &t = peek();
    if (t.kind == Token::Op && t.text[0] == c) {
        next();
        return true;
    }
    return false;
}

void Lexer::expect_op(char c) {
    if (!accept_op(c)) fail(peek(), std::string("expected '") + c + "'");
}

void Lexer::fail(const Token &at, const std::string &msg) const {
    std::string got = at.kind == Token::End ? "end of input" : "'" + at.text + "'";
    throw Error(Errc::SyntaxError,
                std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg + " near " + got);
}

int ParseContext::coord_index(const std::string &name) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] == name) return static_cast<int>(i);
    return -1;
}

bool ParseContext::gen_allowed(GenKind k, int coord) const {
    if (!restrict_gens) return true;
    for (const auto &g : gens)
        if (g.kind == k && g.coord == coord) return true;
    return false;
}

namespace {

struct ScalarParser {
    Lexer &lx;
    const ParseContext &ctx;

    Expr sum() {
        Expr acc = product();
        for (;;) {
            if (lx.accept_op('+'))
                acc += product();
            else if (lx.accept_op('-'))
                acc -= product();
            else
                return acc;
        }
    }

    Expr product() {
        Expr acc = unary();
        for (;;) {
            if (lx.accept_op('*')) {
                acc *= unary();
            } else if (lx.peek().kind == Token::Op && lx.peek().text == "/") {
                Token at = lx.next();
                Expr d = unary();
                if (d.is_zero()) throw Error(Errc::ZeroDenominator, std::to_string(at.line) + ":" +
                                                                        std::to_string(at.col) + ": division by zero");
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    Expr unary() {
        if (lx.accept_op('-')) return -unary();
        if (lx.accept_op('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (lx.accept_op('^')) {
            bool neg = lx.accept_op('-');
            Token t = lx.next();
            if (t.kind != Token::Int) lx.fail(t, "integer exponent expected");
            int e = std::stoi(t.text);
            if (neg && base.is_zero()) throw Error(Errc::ZeroDenominator, "negative power of zero");
            return base.pow(neg ? -e : e);
        }
        return base;
    }

    Expr atom() {
        Token t = lx.next();
        if (t.kind == Token::Int) return Expr(Scalar(mpq_class(t.text)));
        if (t.kind == Token::Op && t.text == "(") {
            Expr e = sum();
            lx.expect_op(')');
            return e;
        }
        if (t.kind == Token::Ident) {
            if (t.text == "sqrt2") return Expr(Scalar::sqrt2());
            if (t.text == "sqrt3") return Expr(Scalar::sqrt3());
            if ((t.text == "sin" || t.text == "cos" || t.text == "exp") && lx.peek().kind == Token::Op &&
                lx.peek().text == "(") {
                lx.next();
                Token arg = lx.next();
                int c = arg.kind == Token::Ident ? ctx.coord_index(arg.text) : -1;
                if (c < 0)
                    throw Error(Errc::UnknownCoordinate, std::to_string(arg.line) + ":" + std::to_string(arg.col) +
                                                             ": '" + arg.text + "' is not a coordinate");
                lx.expect_op(')');
                GenKind k = t.text == "sin" ? GenKind::Sin : t.text == "cos" ? GenKind::Cos : GenKind::Exp;
                if (!ctx.gen_allowed(k, c))
                    throw Error(Errc::UnknownIdentifier, std::to_string(t.line) + ":" + std::to_string(t.col) +
                                                             ": " + t.text + "(" + arg.text + ") not declared");
                return Expr::gen(k, c);
            }
            int c = ctx.coord_index(t.text);
            if (c < 0)
                throw Error(Errc::UnknownCoordinate, std::to_string(t.line) + ":" + std::to_string(t.col) + ": '" +
                                                         t.text + "' is not a coordinate");
            return Expr::coord(c);
        }
        lx.fail(t, "expression expected");
    }
};

} // namespace

Expr parse_scalar(Lexer &lx, const ParseContext &ctx) {
    ScalarParser p{lx, ctx};
    return p.sum();
}

Expr parse_expr(std::string_view text, const ParseContext &ctx) {
    Lexer lx(text);
    Expr e = parse_scalar(lx, ctx);
    if (lx.peek().kind != Token::End) lx.fail(lx.peek(), "unexpected trailing input");
    return e;
}

Expr parse_expr(std::string_view text, const std::vector<std::string> &coords) {
    ParseContext ctx;
    ctx.coords = coords;
    return parse_expr(text, ctx);
}

} // namespace kontakt
