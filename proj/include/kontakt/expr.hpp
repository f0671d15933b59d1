#pragma once

#include "kontakt/poly.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace kontakt {

// Rational function num/den kept in normal form: cos powers below 2, gcd(num, den) = 1,
// den monic (den = 1 for polynomials).
class Expr {
public:
    Expr() : den_(1) {}
    Expr(long c) : num_(c), den_(1) {}
    Expr(const Scalar &c) : num_(c), den_(1) {}
    explicit Expr(const Poly &p);
    static Expr coord(int i) { return Expr(Poly::var(static_cast<Var>(i))); }
    static Expr gen(GenKind k, int coord) { return Expr(Poly::var(gen_var(k, coord))); }
    static Expr ratio(const Poly &num, const Poly &den);

    const Poly &num() const { return num_; }
    const Poly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Scalar constant_value() const { return num_.constant_value(); }
    bool has_gen() const { return num_.has_gen() || den_.has_gen(); }
    // true when the value involves coordinate i, directly or through sin/cos/exp of it
    bool depends_on(int coord) const;
    std::size_t complexity() const { return num_.size() + den_.size(); }

    Expr operator-() const;
    Expr &operator+=(const Expr &o);
    Expr &operator-=(const Expr &o);
    Expr &operator*=(const Expr &o);
    Expr &operator/=(const Expr &o);
    friend Expr operator+(Expr a, const Expr &b) { return a += b; }
    friend Expr operator-(Expr a, const Expr &b) { return a -= b; }
    friend Expr operator*(Expr a, const Expr &b) { return a *= b; }
    friend Expr operator/(Expr a, const Expr &b) { return a /= b; }
    Expr pow(int e) const;
    Expr inverse() const;

    friend bool operator==(const Expr &a, const Expr &b);
    friend bool operator!=(const Expr &a, const Expr &b) { return !(a == b); }

    // partial derivative in coordinate i (no range check; see differentiate)
    Expr diff(int coord) const;
    // substitute every symbol; sub returns the value of a coordinate or generator symbol
    Expr substitute(const std::function<Expr(Var)> &sub) const;

    std::string str(const NameFn &name) const;

private:
    Poly num_, den_;
};

Expr normalize(const Expr &e);
// range-checked derivative; dim is the chart dimension
Expr differentiate(const Expr &e, int coord, int dim);

struct Value {
    bool exact = true;
    Scalar exact_value;
    double approx = 0.0;
    double to_double() const { return exact ? exact_value.to_double() : approx; }
};

// point[i] is the value of coordinate i; exact unless a generator symbol occurs
Value evaluate_at(const Expr &e, const std::vector<Scalar> &point);
std::optional<Scalar> eval_exact(const Poly &p, const std::vector<Scalar> &point);
double eval_double(const Poly &p, const std::vector<Scalar> &point);

// ---- surface syntax ----

struct Token {
    enum Kind { Ident, Int, Op, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src, int line = 1, int col = 1);
    const Token &peek(std::size_t ahead = 0);
    Token next();
    bool accept_op(char c);
    void expect_op(char c);
    [[noreturn]] void fail(const Token &at, const std::string &msg) const;

private:
    void lex_one();
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_, col_;
    std::vector<Token> buf_;
};

struct GenDecl {
    GenKind kind;
    int coord;
    friend bool operator==(const GenDecl &a, const GenDecl &b) {
        return a.kind == b.kind && a.coord == b.coord;
    }
};

struct ParseContext {
    std::vector<std::string> coords;
    // when false, any sin/cos/exp of a coordinate is accepted
    bool restrict_gens = false;
    std::vector<GenDecl> gens;
    int coord_index(const std::string &name) const;
    bool gen_allowed(GenKind k, int coord) const;
};

// parses one scalar expression from the lexer (stops at the first token it cannot use)
Expr parse_scalar(Lexer &lx, const ParseContext &ctx);
Expr parse_expr(std::string_view text, const ParseContext &ctx);
Expr parse_expr(std::string_view text, const std::vector<std::string> &coords);

} // namespace kontakt
