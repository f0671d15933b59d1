#include "kontakt/cli.hpp"
#include "kontakt/error.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace kontakt::cli {

const char *const kToolVersion = "0.1.0";

const ModelChart *Model::chart(const std::string &n) const {
    for (const auto &c : charts)
        if (c.name == n) return &c;
    return nullptr;
}
const NamedField *Model::field(const std::string &n) const {
    for (const auto &f : fields)
        if (f.name == n) return &f;
    return nullptr;
}
const NamedForm *Model::form(const std::string &n) const {
    for (const auto &f : forms)
        if (f.name == n) return &f;
    return nullptr;
}
const NamedDist *Model::dist(const std::string &n) const {
    for (const auto &d : dists)
        if (d.name == n) return &d;
    return nullptr;
}
const NamedAlgebra *Model::algebra(const std::string &n) const {
    for (const auto &a : algebras)
        if (a.name == n) return &a;
    return nullptr;
}

namespace {

std::string loc(const Token &t) { return std::to_string(t.line) + ":" + std::to_string(t.col); }

[[noreturn]] void fail_at(Errc c, const Token &t, const std::string &msg) { throw Error(c, loc(t) + ": " + msg); }

bool is_op(const Token &t, char c) { return t.kind == Token::Op && t.text[0] == c; }

const std::set<std::string> kStatements = {"chart", "trans", "jet", "vf", "form", "dist", "algebra", "check"};
const std::set<std::string> kReserved = {"d", "sin", "cos", "exp", "sqrt2", "sqrt3"};

bool has_location(const std::string &msg) {
    std::size_t i = 0, colons = 0;
    while (i < msg.size() && colons < 2) {
        std::size_t s = i;
        while (i < msg.size() && std::isdigit(static_cast<unsigned char>(msg[i]))) ++i;
        if (i == s || i >= msg.size() || msg[i] != ':') return false;
        ++i;
        ++colons;
    }
    return colons == 2;
}

Error relocate(const Error &e, const Token &t) {
    std::string w = e.what();
    std::size_t p = w.find(": ");
    std::string msg = p == std::string::npos ? w : w.substr(p + 2);
    if (has_location(msg)) return e;
    return Error(e.code(), loc(t) + ": " + msg);
}

struct Val {
    enum Kind { S, V, F } kind = S;
    Expr s;
    VectorField v;
    Form f;
};

const char *kind_name(const Val &a) {
    return a.kind == Val::S ? "scalar" : a.kind == Val::V ? "vector field" : "form";
}

Val scalar(Expr e) {
    Val v;
    v.s = std::move(e);
    return v;
}
Val field_val(VectorField f) {
    Val v;
    v.kind = Val::V;
    v.v = std::move(f);
    return v;
}
Val form_val(Form f) {
    Val v;
    v.kind = Val::F;
    v.f = std::move(f);
    return v;
}

using Lookup = std::function<std::optional<Val>(const Token &)>;

// typed expressions: scalars, vector fields (d/dx, [X, Y]) and forms (dx, d(...), ^)
class ExprParser {
public:
    ExprParser(Lexer &lx, ChartPtr chart, Lookup lookup) : lx_(lx), chart_(std::move(chart)), lookup_(std::move(lookup)) {
        if (chart_) ctx_ = chart_->context();
    }

    Val sum() {
        Val acc = product();
        for (;;) {
            const Token &t = lx_.peek();
            if (is_op(t, '+') || is_op(t, '-')) {
                Token at = lx_.next();
                Val rhs = product();
                acc = add(std::move(acc), at.text == "-" ? neg(std::move(rhs)) : std::move(rhs), at);
            } else {
                return acc;
            }
        }
    }

    Expr scalar_expr() {
        Token at = lx_.peek();
        Val v = sum();
        if (v.kind != Val::S) fail_at(Errc::SyntaxError, at, std::string("scalar expected, got a ") + kind_name(v));
        return v.s;
    }

    Scalar constant() {
        Token at = lx_.peek();
        Expr e = scalar_expr();
        if (!e.is_constant()) fail_at(Errc::SyntaxError, at, "constant expected");
        return e.constant_value();
    }

private:
    Lexer &lx_;
    ChartPtr chart_;
    Lookup lookup_;
    ParseContext ctx_;

    bool starts_basis_field() {
        const Token &a = lx_.peek();
        return a.kind == Token::Ident && a.text == "d" && is_op(lx_.peek(1), '/');
    }

    Val product() {
        Val acc = unary();
        for (;;) {
            const Token &t = lx_.peek();
            if (is_op(t, '*')) {
                Token at = lx_.next();
                acc = mul(std::move(acc), unary(), at);
            } else if (is_op(t, '/')) {
                Token at = lx_.next();
                acc = div(std::move(acc), unary(), at);
            } else if (starts_basis_field()) {
                Token at = lx_.peek();
                acc = mul(std::move(acc), unary(), at);
            } else {
                return acc;
            }
        }
    }

    Val unary() {
        if (lx_.accept_op('-')) return neg(unary());
        if (lx_.accept_op('+')) return unary();
        return power();
    }

    Val power() {
        Val base = atom();
        while (is_op(lx_.peek(), '^')) {
            Token at = lx_.next();
            bool int_exp = lx_.peek().kind == Token::Int || (is_op(lx_.peek(), '-') && lx_.peek(1).kind == Token::Int);
            if (base.kind == Val::S && int_exp) {
                bool negative = lx_.accept_op('-');
                int e = std::stoi(lx_.next().text);
                if (negative && base.s.is_zero()) fail_at(Errc::ZeroDenominator, at, "negative power of zero");
                base.s = base.s.pow(negative ? -e : e);
            } else if (int_exp) {
                fail_at(Errc::SyntaxError, at, std::string("cannot raise a ") + kind_name(base) + " to a power");
            } else {
                base = wedge_vals(std::move(base), atom(), at);
            }
        }
        return base;
    }

    Val atom() {
        Token t = lx_.next();
        if (t.kind == Token::Int) return scalar(Expr(Scalar(mpq_class(t.text))));
        if (is_op(t, '(')) {
            Val v = sum();
            lx_.expect_op(')');
            return v;
        }
        if (is_op(t, '[')) {
            Val x = sum();
            lx_.expect_op(',');
            Val y = sum();
            lx_.expect_op(']');
            if (x.kind != Val::V || y.kind != Val::V) fail_at(Errc::SyntaxError, t, "bracket of vector fields expected");
            return field_val(lie_bracket(x.v, y.v));
        }
        if (t.kind != Token::Ident) lx_.fail(t, "expression expected");
        if (t.text == "sqrt2") return scalar(Expr(Scalar::sqrt2()));
        if (t.text == "sqrt3") return scalar(Expr(Scalar::sqrt3()));
        if ((t.text == "sin" || t.text == "cos" || t.text == "exp") && is_op(lx_.peek(), '(')) {
            lx_.next();
            Token arg = lx_.next();
            int c = arg.kind == Token::Ident ? ctx_.coord_index(arg.text) : -1;
            if (c < 0) fail_at(Errc::UnknownCoordinate, arg, "'" + arg.text + "' is not a coordinate");
            lx_.expect_op(')');
            GenKind k = t.text == "sin" ? GenKind::Sin : t.text == "cos" ? GenKind::Cos : GenKind::Exp;
            if (!ctx_.gen_allowed(k, c))
                fail_at(Errc::UnknownIdentifier, t, t.text + "(" + arg.text + ") is not declared with trans");
            return scalar(Expr::gen(k, c));
        }
        if (t.text == "d") {
            if (lx_.accept_op('/')) {
                Token n = lx_.next();
                int c = -1;
                if (n.kind == Token::Ident && n.text.size() > 1 && n.text[0] == 'd') c = ctx_.coord_index(n.text.substr(1));
                if (c < 0 || !chart_) {
                    std::string name = n.kind == Token::Ident && !n.text.empty() && n.text[0] == 'd' ? n.text.substr(1) : n.text;
                    fail_at(Errc::UnknownCoordinate, n, "'" + name + "' is not a coordinate");
                }
                return field_val(VectorField::basis(chart_, c));
            }
            if (is_op(lx_.peek(), '(')) {
                lx_.next();
                Val inner = sum();
                lx_.expect_op(')');
                if (inner.kind == Val::V) fail_at(Errc::DegreeError, t, "d of a vector field");
                if (inner.kind == Val::S) {
                    if (!chart_) fail_at(Errc::SyntaxError, t, "d of a constant without a chart");
                    return form_val(ext_d(Form::function(chart_, inner.s)));
                }
                return form_val(ext_d(inner.f));
            }
            fail_at(Errc::SyntaxError, t, "'d' must be followed by '/' or '('");
        }
        if (lookup_) {
            if (std::optional<Val> v = lookup_(t)) {
                if (v->kind == Val::F && is_op(lx_.peek(), '[') && lx_.peek(1).kind == Token::Int) {
                    lx_.next();
                    Token n = lx_.next();
                    lx_.expect_op(']');
                    int a = std::stoi(n.text);
                    if (a < 1 || a > v->f.channels())
                        fail_at(Errc::ArityMismatch, n, "channel " + n.text + " of a " + std::to_string(v->f.channels()) +
                                                            "-channel form");
                    return form_val(v->f.channel(a - 1));
                }
                return *v;
            }
        }
        int c = ctx_.coord_index(t.text);
        if (c >= 0) return scalar(Expr::coord(c));
        if (t.text.size() > 1 && t.text[0] == 'd') {
            int i = ctx_.coord_index(t.text.substr(1));
            if (i >= 0) return form_val(Form::dx(chart_, i));
        }
        fail_at(Errc::UnknownIdentifier, t, "unknown identifier '" + t.text + "'");
    }

    Val neg(Val a) {
        if (a.kind == Val::S) a.s = -a.s;
        if (a.kind == Val::V) a.v = -a.v;
        if (a.kind == Val::F) a.f = -a.f;
        return a;
    }

    Val add(Val a, Val b, const Token &at) {
        if (a.kind == Val::S && b.kind == Val::S) {
            a.s += b.s;
            return a;
        }
        if (a.kind == Val::S && a.s.is_zero()) return b;
        if (b.kind == Val::S && b.s.is_zero()) return a;
        if (a.kind != b.kind)
            fail_at(Errc::SyntaxError, at, std::string("cannot add a ") + kind_name(a) + " and a " + kind_name(b));
        if (a.kind == Val::V) {
            a.v += b.v;
            return a;
        }
        if (a.f.degree() != b.f.degree())
            fail_at(Errc::DegreeError, at, "cannot add forms of degree " + std::to_string(a.f.degree()) + " and " +
                                               std::to_string(b.f.degree()));
        a.f += b.f;
        return a;
    }

    Val mul(Val a, Val b, const Token &at) {
        if (a.kind == Val::S && b.kind == Val::S) return scalar(a.s * b.s);
        if (a.kind == Val::S && b.kind == Val::V) return field_val(a.s * b.v);
        if (a.kind == Val::V && b.kind == Val::S) return field_val(b.s * a.v);
        if (a.kind == Val::S && b.kind == Val::F) return form_val(a.s * b.f);
        if (a.kind == Val::F && b.kind == Val::S) return form_val(b.s * a.f);
        if (a.kind == Val::F && b.kind == Val::F) fail_at(Errc::SyntaxError, at, "use ^ to wedge forms");
        fail_at(Errc::SyntaxError, at, std::string("cannot multiply a ") + kind_name(a) + " by a " + kind_name(b));
    }

    Val div(Val a, Val b, const Token &at) {
        if (b.kind != Val::S) fail_at(Errc::SyntaxError, at, std::string("cannot divide by a ") + kind_name(b));
        if (b.s.is_zero()) fail_at(Errc::ZeroDenominator, at, "division by zero");
        Expr inv = b.s.inverse();
        return mul(std::move(a), scalar(inv), at);
    }

    Val wedge_vals(Val a, Val b, const Token &at) {
        if (a.kind == Val::F && b.kind == Val::F) return form_val(wedge(a.f, b.f));
        if ((a.kind == Val::S && b.kind == Val::F) || (a.kind == Val::F && b.kind == Val::S)) return mul(a, b, at);
        fail_at(Errc::SyntaxError, at, std::string("cannot wedge a ") + kind_name(a) + " and a " + kind_name(b));
    }
};

// options each check kind accepts; the first group is required
struct KindSpec {
    enum Target { FormT, DistT, AlgebraT, JetFieldT } target;
    std::set<std::string> required, optional;
};

const std::map<std::string, KindSpec> &kinds() {
    static const std::map<std::string, KindSpec> k = {
        {"kcontact", {KindSpec::FormT, {}, {"at", "expect"}}},
        {"reeb", {KindSpec::FormT, {}, {"expect"}}},
        {"kernel", {KindSpec::FormT, {}, {"expect"}}},
        {"compatible", {KindSpec::FormT, {"with"}, {"expect", "factor"}}},
        {"flag", {KindSpec::DistT, {}, {"max", "at", "expect", "expect_at"}}},
        {"maxnonint", {KindSpec::DistT, {}, {"expect"}}},
        {"involutive", {KindSpec::DistT, {}, {"expect"}}},
        {"construct", {KindSpec::DistT, {"sym"}, {"expect"}}},
        {"symmetry", {KindSpec::DistT, {"sym"}, {"expect"}}},
        {"mc", {KindSpec::AlgebraT, {}, {"d"}}},
        {"invariant", {KindSpec::AlgebraT, {"A"}, {"expect"}}},
        {"hdw", {KindSpec::AlgebraT, {"A"}, {"algebraic_rank", "pde_rank", "solutions"}}},
        {"prolong", {KindSpec::JetFieldT, {}, {"expect", "char"}}},
    };
    return k;
}

class ModelParser {
public:
    ModelParser(std::string_view text, std::string name) : lx_(text) { m_.name = std::move(name); }

    Model run() {
        while (lx_.peek().kind != Token::End) statement();
        finalize_chart();
        return std::move(m_);
    }

private:
    Lexer lx_;
    Model m_;
    bool pending_ = false;
    std::string pending_name_;
    std::vector<std::string> pending_coords_;
    std::vector<GenDecl> pending_gens_;
    int current_ = -1;

    Token ident(const char *what) {
        Token t = lx_.next();
        if (t.kind != Token::Ident) lx_.fail(t, std::string(what) + " expected");
        return t;
    }

    void keyword(const char *kw) {
        Token t = lx_.next();
        if (t.kind != Token::Ident || t.text != kw) lx_.fail(t, std::string("'") + kw + "' expected");
    }

    int integer() {
        bool negative = lx_.accept_op('-');
        Token t = lx_.next();
        if (t.kind != Token::Int) lx_.fail(t, "integer expected");
        int v = std::stoi(t.text);
        return negative ? -v : v;
    }

    std::vector<Token> ident_list() {
        lx_.expect_op('[');
        std::vector<Token> out;
        if (lx_.accept_op(']')) return out;
        do out.push_back(ident("identifier"));
        while (lx_.accept_op(','));
        lx_.expect_op(']');
        return out;
    }

    std::vector<int> int_tuple(char open, char close) {
        lx_.expect_op(open);
        std::vector<int> out;
        if (lx_.accept_op(close)) return out;
        do out.push_back(integer());
        while (lx_.accept_op(','));
        lx_.expect_op(close);
        return out;
    }

    void finalize_chart() {
        if (!pending_) return;
        pending_ = false;
        ModelChart c;
        c.name = pending_name_;
        c.chart = Chart::make(pending_name_, pending_coords_, pending_gens_);
        m_.charts.push_back(std::move(c));
        current_ = static_cast<int>(m_.charts.size()) - 1;
    }

    const ModelChart &current(const Token &at) {
        if (current_ < 0) fail_at(Errc::SyntaxError, at, "no chart declared");
        return m_.charts[current_];
    }

    void check_coord_names(const std::vector<Token> &names) {
        std::set<std::string> seen;
        for (const auto &n : names) {
            if (kReserved.count(n.text) || kStatements.count(n.text))
                fail_at(Errc::SyntaxError, n, "'" + n.text + "' is reserved");
            if (!seen.insert(n.text).second) fail_at(Errc::SyntaxError, n, "repeated coordinate '" + n.text + "'");
        }
        for (const auto &n : names)
            if (n.text.size() > 1 && n.text[0] == 'd' && seen.count(n.text.substr(1)))
                fail_at(Errc::SyntaxError, n, "coordinate '" + n.text + "' clashes with the differential of " +
                                                  n.text.substr(1));
    }

    void check_object_name(const Token &n) {
        const ChartPtr &c = current(n).chart;
        if (kReserved.count(n.text) || kStatements.count(n.text))
            fail_at(Errc::SyntaxError, n, "'" + n.text + "' is reserved");
        if (m_.field(n.text) || m_.form(n.text) || m_.dist(n.text))
            fail_at(Errc::SyntaxError, n, "'" + n.text + "' is already defined");
        if (c->index(n.text) >= 0 || (n.text.size() > 1 && n.text[0] == 'd' && c->index(n.text.substr(1)) >= 0))
            fail_at(Errc::SyntaxError, n, "'" + n.text + "' clashes with a coordinate");
    }

    Lookup model_lookup() {
        const std::string chart = m_.charts[current_].name;
        return [this, chart](const Token &t) -> std::optional<Val> {
            if (const NamedField *f = m_.field(t.text)) {
                if (f->chart != chart) fail_at(Errc::ChartMismatch, t, "'" + t.text + "' lives on chart " + f->chart);
                return field_val(f->value);
            }
            if (const NamedForm *f = m_.form(t.text)) {
                if (f->chart != chart) fail_at(Errc::ChartMismatch, t, "'" + t.text + "' lives on chart " + f->chart);
                return form_val(f->value);
            }
            return std::nullopt;
        };
    }

    void statement() {
        Token t = lx_.next();
        if (t.kind != Token::Ident || !kStatements.count(t.text)) lx_.fail(t, "statement expected");
        try {
            if (t.text != "trans") finalize_chart();
            if (t.text == "chart") chart_stmt();
            else if (t.text == "trans") trans_stmt(t);
            else if (t.text == "jet") jet_stmt();
            else if (t.text == "vf") vf_stmt(t);
            else if (t.text == "form") form_stmt(t);
            else if (t.text == "dist") dist_stmt(t);
            else if (t.text == "algebra") algebra_stmt();
            else check_stmt();
        } catch (const Error &e) {
            throw relocate(e, t);
        }
    }

    void chart_stmt() {
        Token n = ident("chart name");
        if (m_.chart(n.text)) fail_at(Errc::SyntaxError, n, "chart '" + n.text + "' is already declared");
        keyword("coords");
        std::vector<Token> cs = ident_list();
        check_coord_names(cs);
        pending_ = true;
        pending_name_ = n.text;
        pending_coords_.clear();
        pending_gens_.clear();
        for (const auto &c : cs) pending_coords_.push_back(c.text);
    }

    void trans_stmt(const Token &t) {
        if (!pending_) fail_at(Errc::SyntaxError, t, "trans must follow its chart declaration");
        Token f = ident("sin, cos or exp");
        if (f.text != "sin" && f.text != "cos" && f.text != "exp") lx_.fail(f, "sin, cos or exp expected");
        lx_.expect_op('(');
        Token c = ident("coordinate");
        lx_.expect_op(')');
        int i = -1;
        for (std::size_t j = 0; j < pending_coords_.size(); ++j)
            if (pending_coords_[j] == c.text) i = static_cast<int>(j);
        if (i < 0) fail_at(Errc::UnknownCoordinate, c, "'" + c.text + "' is not a coordinate");
        pending_gens_.push_back({f.text == "sin" ? GenKind::Sin : f.text == "cos" ? GenKind::Cos : GenKind::Exp, i});
    }

    void jet_stmt() {
        Token n = ident("chart name");
        if (m_.chart(n.text)) fail_at(Errc::SyntaxError, n, "chart '" + n.text + "' is already declared");
        keyword("base");
        std::vector<Token> base = ident_list();
        keyword("fibre");
        std::vector<Token> fibre = ident_list();
        std::vector<Token> derivs;
        if (lx_.peek().kind == Token::Ident && lx_.peek().text == "derivs") {
            lx_.next();
            derivs = ident_list();
        }
        if (base.empty() || fibre.empty()) fail_at(Errc::ArityMismatch, n, "jet chart needs base and fibre coordinates");
        JetNames names;
        for (const auto &b : base) names.base.push_back(b.text);
        for (const auto &f : fibre) names.fibre.push_back(f.text);
        if (!derivs.empty()) {
            if (derivs.size() != base.size() * fibre.size())
                fail_at(Errc::ArityMismatch, derivs[0], "expected " + std::to_string(base.size() * fibre.size()) +
                                                            " derivative names");
            for (std::size_t a = 0; a < fibre.size(); ++a) {
                std::vector<std::string> row;
                for (std::size_t i = 0; i < base.size(); ++i) row.push_back(derivs[a * base.size() + i].text);
                names.derivs.push_back(row);
            }
        }
        std::vector<Token> all = base;
        all.insert(all.end(), fibre.begin(), fibre.end());
        all.insert(all.end(), derivs.begin(), derivs.end());
        check_coord_names(all);
        ModelChart c;
        c.name = n.text;
        c.jet = build_jet_chart(names, n.text);
        c.chart = c.jet->chart;
        if (derivs.empty()) {
            std::vector<Token> generated;
            for (const auto &s : c.chart->coords()) generated.push_back(Token{Token::Ident, s, n.line, n.col});
            check_coord_names(generated);
        }
        m_.charts.push_back(std::move(c));
        current_ = static_cast<int>(m_.charts.size()) - 1;
    }

    void vf_stmt(const Token &t) {
        const ModelChart &c = current(t);
        Token n = ident("field name");
        check_object_name(n);
        lx_.expect_op('=');
        Token at = lx_.peek();
        Val v = ExprParser(lx_, c.chart, model_lookup()).sum();
        if (v.kind == Val::S && v.s.is_zero()) v = field_val(VectorField(c.chart));
        if (v.kind != Val::V) fail_at(Errc::SyntaxError, at, std::string("vector field expected, got a ") + kind_name(v));
        m_.fields.push_back({n.text, c.name, v.v});
    }

    void form_stmt(const Token &t) {
        const ModelChart &c = current(t);
        Token n = ident("form name");
        check_object_name(n);
        keyword("channels");
        Token kt = lx_.peek();
        int k = integer();
        if (k < 1) fail_at(Errc::ArityMismatch, kt, "at least one channel");
        lx_.expect_op('=');
        std::vector<std::pair<Token, Val>> vals;
        do {
            Token at = lx_.peek();
            vals.push_back({at, ExprParser(lx_, c.chart, model_lookup()).sum()});
        } while (lx_.accept_op(';'));
        int degree = -1;
        for (const auto &[at, v] : vals) {
            if (v.kind == Val::V) fail_at(Errc::SyntaxError, at, "form expected, got a vector field");
            int d = v.kind == Val::F ? v.f.degree() : (v.s.is_zero() ? -1 : 0);
            if (d < 0) continue;
            if (degree >= 0 && d != degree) fail_at(Errc::DegreeError, at, "channels of different degree");
            degree = d;
        }
        if (degree < 0) degree = 1;
        std::vector<Form> chans;
        for (const auto &[at, v] : vals) {
            if (v.kind == Val::S) {
                chans.push_back(v.s.is_zero() ? Form(c.chart, degree, 1) : Form::function(c.chart, v.s));
                continue;
            }
            for (int a = 0; a < v.f.channels(); ++a) chans.push_back(v.f.channel(a));
        }
        if (static_cast<int>(chans.size()) != k)
            fail_at(Errc::ArityMismatch, kt, "declared " + std::to_string(k) + " channels, got " + std::to_string(chans.size()));
        m_.forms.push_back({n.text, c.name, Form::stack(chans)});
    }

    const NamedField &field_ref(const Token &g, const std::string &chart) {
        const NamedField *f = m_.field(g.text);
        if (!f) fail_at(Errc::UnknownIdentifier, g, "unknown vector field '" + g.text + "'");
        if (f->chart != chart) fail_at(Errc::ChartMismatch, g, "'" + g.text + "' lives on chart " + f->chart);
        return *f;
    }

    void dist_stmt(const Token &t) {
        const ModelChart &c = current(t);
        Token n = ident("distribution name");
        check_object_name(n);
        lx_.expect_op('=');
        std::vector<Token> gs = ident_list();
        NamedDist d;
        d.name = n.text;
        d.chart = c.name;
        std::vector<VectorField> v;
        for (const auto &g : gs) {
            v.push_back(field_ref(g, c.name).value);
            d.gens.push_back(g.text);
        }
        d.value = Distribution(c.chart, v);
        m_.dists.push_back(std::move(d));
    }

    void algebra_stmt() {
        Token n = ident("algebra name");
        if (m_.algebra(n.text)) fail_at(Errc::SyntaxError, n, "algebra '" + n.text + "' is already declared");
        keyword("dim");
        Token rt = lx_.peek();
        int r = integer();
        if (r < 1) fail_at(Errc::ArityMismatch, rt, "dimension must be positive");
        LieAlgebraData data(n.text, r);
        lx_.expect_op('{');
        while (!lx_.accept_op('}')) {
            Token ct = lx_.next();
            if (ct.kind != Token::Ident || ct.text != "c") lx_.fail(ct, "'c[a b g] = value' or '}' expected");
            lx_.expect_op('[');
            int idx[3];
            for (int &i : idx) {
                Token it = lx_.peek();
                i = integer();
                if (i < 1 || i > r) fail_at(Errc::ArityMismatch, it, "index outside 1.." + std::to_string(r));
            }
            lx_.expect_op(']');
            lx_.expect_op('=');
            Scalar v = ExprParser(lx_, nullptr, nullptr).constant();
            if (idx[0] == idx[1]) {
                if (!v.is_zero()) fail_at(Errc::ArityMismatch, ct, "c[a a g] must vanish");
                continue;
            }
            data.set(idx[0], idx[1], idx[2], v);
        }
        m_.algebras.push_back({n.text, std::move(data)});
    }

    std::vector<Scalar> point(const ChartPtr &c) {
        Token open = lx_.peek();
        lx_.expect_op('(');
        std::vector<Scalar> p(c->dim());
        bool named = lx_.peek().kind == Token::Ident && is_op(lx_.peek(1), '=');
        if (named) {
            std::set<int> seen;
            do {
                Token n = ident("coordinate");
                int i = c->index(n.text);
                if (i < 0) fail_at(Errc::UnknownCoordinate, n, "'" + n.text + "' is not a coordinate");
                if (!seen.insert(i).second) fail_at(Errc::SyntaxError, n, "coordinate assigned twice");
                lx_.expect_op('=');
                p[i] = ExprParser(lx_, nullptr, nullptr).constant();
            } while (lx_.accept_op(','));
        } else {
            std::vector<Scalar> vals;
            do vals.push_back(ExprParser(lx_, nullptr, nullptr).constant());
            while (lx_.accept_op(','));
            if (static_cast<int>(vals.size()) != c->dim())
                fail_at(Errc::ArityMismatch, open, "point needs " + std::to_string(c->dim()) + " values");
            p = vals;
        }
        lx_.expect_op(')');
        return p;
    }

    bool boolean() {
        Token t = ident("true or false");
        if (t.text != "true" && t.text != "false") lx_.fail(t, "true or false expected");
        return t.text == "true";
    }

    std::string status_word(bool allow_generic) {
        Token t = ident("status");
        if (t.text == "pass") return "pass";
        if (t.text == "generic" && allow_generic) {
            lx_.expect_op('-');
            keyword("pass");
            return "generic-pass";
        }
        if (t.text == "fail") {
            if (allow_generic && lx_.accept_op('(')) {
                Token it = lx_.peek();
                int i = integer();
                if (i < 1 || i > 3) fail_at(Errc::ArityMismatch, it, "condition id is 1, 2 or 3");
                lx_.expect_op(')');
                return "fail(" + std::to_string(i) + ")";
            }
            return "fail";
        }
        lx_.fail(t, allow_generic ? "pass, generic-pass, fail or fail(n) expected" : "pass or fail expected");
    }

    InvariantForm invariant_expr(int r, const Token &at) {
        std::vector<std::string> coords;
        for (int i = 1; i <= r; ++i) coords.push_back("e" + std::to_string(i));
        ChartPtr scratch = Chart::make("lie", coords);
        Lookup eta = [&](const Token &t) -> std::optional<Val> {
            if (t.text.size() > 3 && t.text.compare(0, 3, "eta") == 0 &&
                t.text.find_first_not_of("0123456789", 3) == std::string::npos) {
                int i = std::stoi(t.text.substr(3));
                if (i < 1 || i > r) fail_at(Errc::ArityMismatch, t, t.text + " outside eta1..eta" + std::to_string(r));
                return form_val(Form::dx(scratch, i - 1));
            }
            return std::nullopt;
        };
        Val v = ExprParser(lx_, nullptr, eta).sum();
        if (v.kind == Val::S && v.s.is_zero()) return InvariantForm(r, 2);
        if (v.kind != Val::F || v.f.channels() != 1) fail_at(Errc::SyntaxError, at, "invariant form expected");
        InvariantForm out(r, v.f.degree());
        for (const auto &[I, e] : v.f.channel_terms(0)) {
            if (!e.is_constant()) fail_at(Errc::SyntaxError, at, "invariant forms have constant coefficients");
            InvariantForm::Term t;
            for (int i : I) t.push_back(i + 1);
            out.add(0, t, e.constant_value());
        }
        return out;
    }

    void check_stmt() {
        Token kt = ident("check kind");
        auto it = kinds().find(kt.text);
        if (it == kinds().end()) fail_at(Errc::UnknownIdentifier, kt, "unknown check kind '" + kt.text + "'");
        const KindSpec &spec = it->second;
        Token tt = ident("check target");
        CheckDirective c;
        c.kind = kt.text;
        c.target = tt.text;
        c.line = kt.line;
        ChartPtr chart;
        int r = 0;
        int k = 0;
        switch (spec.target) {
        case KindSpec::FormT: {
            const NamedForm *f = m_.form(tt.text);
            if (!f) fail_at(Errc::UnknownIdentifier, tt, "unknown form '" + tt.text + "'");
            c.chart = f->chart;
            break;
        }
        case KindSpec::DistT: {
            const NamedDist *d = m_.dist(tt.text);
            if (!d) fail_at(Errc::UnknownIdentifier, tt, "unknown distribution '" + tt.text + "'");
            c.chart = d->chart;
            break;
        }
        case KindSpec::AlgebraT: {
            const NamedAlgebra *a = m_.algebra(tt.text);
            if (!a) fail_at(Errc::UnknownIdentifier, tt, "unknown algebra '" + tt.text + "'");
            r = a->data.r;
            break;
        }
        case KindSpec::JetFieldT: {
            const NamedField *f = m_.field(tt.text);
            if (!f) fail_at(Errc::UnknownIdentifier, tt, "unknown vector field '" + tt.text + "'");
            c.chart = f->chart;
            const ModelChart *mc = m_.chart(f->chart);
            if (!mc->jet) fail_at(Errc::PreconditionViolated, tt, "'" + tt.text + "' is not on a jet chart");
            k = mc->jet->k;
            break;
        }
        }
        if (!c.chart.empty()) chart = m_.chart(c.chart)->chart;

        std::set<std::string> given;
        for (;;) {
            const Token &o = lx_.peek();
            if (o.kind != Token::Ident || kStatements.count(o.text)) break;
            Token opt = lx_.next();
            if (!spec.required.count(opt.text) && !spec.optional.count(opt.text))
                fail_at(Errc::SyntaxError, opt, "option '" + opt.text + "' does not apply to " + c.kind);
            bool repeatable = opt.text == "at" || opt.text == "expect_at" || opt.text == "d";
            if (!given.insert(opt.text).second && !repeatable)
                fail_at(Errc::SyntaxError, opt, "option '" + opt.text + "' given twice");
            option(c, opt, chart, r, k);
        }
        for (const auto &req : spec.required)
            if (!given.count(req)) fail_at(Errc::SyntaxError, kt, c.kind + " needs option '" + req + "'");
        m_.checks.push_back(std::move(c));
    }

    void option(CheckDirective &c, const Token &opt, const ChartPtr &chart, int r, int k) {
        const std::string &o = opt.text;
        if (o == "with") {
            Token n = ident("form name");
            const NamedForm *f = m_.form(n.text);
            if (!f) fail_at(Errc::UnknownIdentifier, n, "unknown form '" + n.text + "'");
            if (f->chart != c.chart) fail_at(Errc::ChartMismatch, n, "'" + n.text + "' lives on chart " + f->chart);
            c.with = n.text;
        } else if (o == "sym") {
            for (const auto &g : ident_list()) c.sym.push_back(field_ref(g, c.chart).name);
        } else if (o == "A") {
            Token at = lx_.peek();
            c.A = int_tuple('{', '}');
            if (c.A.empty()) fail_at(Errc::ArityMismatch, at, "A must not be empty");
            for (int a : c.A)
                if (a < 1 || a > r) fail_at(Errc::ArityMismatch, at, "index outside 1.." + std::to_string(r));
        } else if (o == "max") {
            Token at = lx_.peek();
            c.max = integer();
            if (*c.max < 1) fail_at(Errc::ArityMismatch, at, "max must be positive");
        } else if (o == "at") {
            c.points.push_back(point(chart));
        } else if (o == "expect_at") {
            c.expect_growth_at.push_back(int_tuple('(', ')'));
        } else if (o == "factor") {
            c.factor = ExprParser(lx_, chart, nullptr).scalar_expr();
        } else if (o == "d") {
            Token lt = lx_.peek();
            int label = integer();
            if (label < 1 || label > r) fail_at(Errc::ArityMismatch, lt, "label outside 1.." + std::to_string(r));
            if (c.expect_d.count(label)) fail_at(Errc::SyntaxError, lt, "d " + std::to_string(label) + " given twice");
            lx_.expect_op('=');
            c.expect_d[label] = invariant_expr(r, lt);
        } else if (o == "algebraic_rank" || o == "pde_rank" || o == "solutions") {
            int v = integer();
            (o == "algebraic_rank" ? c.algebraic_rank : o == "pde_rank" ? c.pde_rank : c.solutions) = v;
        } else if (o == "char") {
            Token at = lx_.peek();
            lx_.expect_op('(');
            do c.characteristic.push_back(ExprParser(lx_, chart, nullptr).scalar_expr());
            while (lx_.accept_op(','));
            lx_.expect_op(')');
            if (static_cast<int>(c.characteristic.size()) != k)
                fail_at(Errc::ArityMismatch, at, "characteristic needs " + std::to_string(k) + " components");
        } else if (o == "expect") {
            expect(c);
        }
    }

    void expect(CheckDirective &c) {
        const std::string &kd = c.kind;
        if (kd == "kcontact") {
            c.expect_status = status_word(true);
        } else if (kd == "invariant") {
            c.expect_status = status_word(false);
        } else if (kd == "flag") {
            c.expect_growth = int_tuple('(', ')');
        } else if (kd == "maxnonint" || kd == "involutive" || kd == "symmetry" || kd == "compatible") {
            c.expect_bool = boolean();
        } else if (kd == "reeb" || kd == "kernel") {
            for (const auto &g : ident_list()) c.expect_names.push_back(field_ref(g, c.chart).name);
        } else if (kd == "construct") {
            Token n = ident("form name");
            const NamedForm *f = m_.form(n.text);
            if (!f) fail_at(Errc::UnknownIdentifier, n, "unknown form '" + n.text + "'");
            if (f->chart != c.chart) fail_at(Errc::ChartMismatch, n, "'" + n.text + "' lives on chart " + f->chart);
            c.expect_names = {n.text};
        } else if (kd == "prolong") {
            c.expect_names = {field_ref(ident("field name"), c.chart).name};
        }
    }
};

} // namespace

Model parse_model(std::string_view text, std::string name) { return ModelParser(text, std::move(name)).run(); }

Model load_model(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::PreconditionViolated, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str(), std::filesystem::path(path).stem().string());
}

std::vector<std::pair<std::string, Scalar>> parse_assignments(std::string_view text) {
    Lexer lx(text);
    std::vector<std::pair<std::string, Scalar>> out;
    if (lx.peek().kind == Token::End) return out;
    do {
        Token n = lx.next();
        if (n.kind != Token::Ident) lx.fail(n, "coordinate name expected");
        lx.expect_op('=');
        out.push_back({n.text, ExprParser(lx, nullptr, nullptr).constant()});
    } while (lx.accept_op(','));
    if (lx.peek().kind != Token::End) lx.fail(lx.peek(), "unexpected trailing input");
    return out;
}

} // namespace kontakt::cli
