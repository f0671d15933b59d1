#include "doctest.h"

#include "kontakt/error.hpp"
#include "kontakt/geom.hpp"

using namespace kontakt;

namespace {

struct Ctx {
    ChartPtr c;
    explicit Ctx(ChartPtr chart) : c(std::move(chart)) {}
    Expr e(const std::string &s) const { return c->parse(s); }
    Form d(const std::string &x) const { return Form::dx(c, c->require(x)); }
    Form fn(const std::string &s) const { return Form::function(c, e(s)); }
    VectorField del(const std::string &x) const { return VectorField::basis(c, c->require(x)); }
};

} // namespace

TEST_CASE("chart construction") {
    auto c = Chart::make("M", {"p", "q"}, {{GenKind::Sin, 1}});
    CHECK(c->declares(GenKind::Cos, 1));
    CHECK(c->gens().size() == 2);
    CHECK_THROWS_AS(Chart::make("M", {"x", "x"}), Error);
    CHECK_THROWS_AS(Chart::make("M", {}), Error);
    try {
        c->parse("exp(p)");
        FAIL("undeclared generator");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::UnknownIdentifier);
    }
}

TEST_CASE("wedge") {
    Ctx m(Chart::make("R6", {"x", "y", "z", "t", "p", "q"}));
    CHECK(wedge(m.d("x"), m.d("x")).is_zero());
    Form a = m.d("z") - m.e("p") * m.d("x");
    Form b = m.d("t") - m.e("q") * m.d("y");
    Form expect = wedge(m.d("z"), m.d("t")) - m.e("q") * wedge(m.d("z"), m.d("y")) -
                  m.e("p") * wedge(m.d("x"), m.d("t")) + m.e("p*q") * wedge(m.d("x"), m.d("y"));
    CHECK(wedge(a, b) == expect);
    CHECK(wedge(a, b).str() == "p*q*dx^dy - p*dx^dt + q*dy^dz + dz^dt");
    CHECK(wedge(b, a) == -wedge(a, b));

    Form two = Form::stack({a, b});
    CHECK(wedge(two, m.d("x")).channels() == 2);
    CHECK_THROWS_AS(wedge(two, two), Error);
    auto other = Chart::make("N", {"x"});
    try {
        wedge(a, Form::dx(other, 0));
        FAIL("chart mismatch");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::ChartMismatch);
    }
}

TEST_CASE("wedge of the Engel two-contact form is nonvanishing") {
    Ctx m(Chart::make("E", {"x1", "x2", "x3", "x4"}));
    Form e1 = m.d("x2") - m.e("x3 - x4*x1") * m.d("x1") - m.e("x1") * m.d("x3");
    Form e2 = m.d("x3") - m.e("x4") * m.d("x1");
    CHECK_FALSE(wedge(e1, e2).is_zero());
}

TEST_CASE("exterior derivative") {
    Ctx m(Chart::make("R4", {"x", "y", "z", "p"}, {{GenKind::Exp, 2}}));
    Form eta = m.d("z") - m.e("p") * m.d("x");
    CHECK(ext_d(eta) == wedge(m.d("x"), m.d("p")));
    Form zeta = m.e("exp(z)") * eta;
    CHECK(ext_d(zeta) == m.e("exp(z)") * wedge(m.d("x"), m.d("p")) + m.e("p*exp(z)") * wedge(m.d("x"), m.d("z")));
    CHECK(ext_d(ext_d(m.e("x*y^2*exp(z)") * m.d("p") + m.e("z/(1+x^2)") * m.d("y"))).is_zero());
    Ctx line(Chart::make("L", {"s"}));
    CHECK(ext_d(line.d("s")).is_zero());
}

TEST_CASE("interior product") {
    Ctx m(Chart::make("R4", {"x", "y", "z", "p"}));
    Form eta = m.d("z") - m.e("p") * m.d("x");
    CHECK(interior_product(m.del("z"), eta) == m.fn("1"));
    VectorField v = m.e("y") * m.del("x") + m.del("p");
    CHECK(interior_product(v, m.d("x") - m.e("y") * m.d("p")).is_zero());
    try {
        interior_product(v, m.fn("x"));
        FAIL("degree error");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::DegreeError);
    }
    Form w = wedge(m.d("x"), m.d("y"));
    VectorField X = m.del("x"), Y = m.del("y");
    CHECK(pair2(w, 0, X, Y) == Expr(1));
    CHECK(interior_product(X, w) == m.d("y"));
}

TEST_CASE("Reeb fields of the canonical two-contact form annihilate d eta") {
    Ctx m(Chart::make("Q", {"x", "y", "p", "q", "z", "t"}));
    Form eta = Form::stack({m.d("z") - m.e("p") * m.d("x"), m.d("t") - m.e("q") * m.d("y")});
    Form deta = ext_d(eta);
    CHECK(deta == Form::stack({wedge(m.d("x"), m.d("p")), wedge(m.d("y"), m.d("q"))}));
    CHECK(interior_product(m.del("z"), deta).is_zero());
    CHECK(interior_product(m.del("t"), deta).is_zero());
}

TEST_CASE("Lie bracket") {
    Ctx m(Chart::make("R4", {"x", "y", "z", "t"}));
    VectorField X2 = m.del("y") + m.e("x^3/3 + z^2*x + t^2") * m.del("z") + m.e("x") * m.del("t");
    CHECK(lie_bracket(m.del("x"), X2) == m.e("x^2 + z^2") * m.del("z") + m.del("t"));
    CHECK(lie_bracket(X2, X2).is_zero());
    CHECK(lie_bracket(m.del("x"), X2).str() == "(x^2 + z^2)*d/dz + d/dt");

    Ctx e(Chart::make("E", {"x1", "x2", "x3", "x4"}));
    VectorField E1 = e.del("x4");
    VectorField E2 = e.e("x4") * e.del("x3") + e.e("x3") * e.del("x2") + e.del("x1");
    CHECK(lie_bracket(E1, E2) == e.del("x3"));
}

TEST_CASE("Lie derivative") {
    Ctx m(Chart::make("R4", {"x", "y", "z", "p"}, {{GenKind::Exp, 2}}));
    CHECK(lie_derivative(m.del("z"), m.d("z") - m.e("p") * m.d("x")).is_zero());
    CHECK(lie_derivative(m.del("z"), m.e("exp(z)") * m.d("x")) == m.e("exp(z)") * m.d("x"));
    VectorField X = m.e("x*y") * m.del("z") + m.e("exp(z)") * m.del("p") + m.del("y");
    Form a = m.e("p^2") * wedge(m.d("x"), m.d("z")) + m.e("y/(1+p^2)") * wedge(m.d("y"), m.d("p"));
    Form lhs = lie_derivative(X, a);
    CHECK(lhs == ext_d(interior_product(X, a)) + interior_product(X, ext_d(a)));
    CHECK(lie_derivative(X, m.fn("x*p")) == Form::function(m.c, X.apply(m.e("x*p"))));
}

TEST_CASE("pullback") {
    Ctx j(Chart::make("J", {"x", "z", "p"}));
    Form eta = j.d("z") - j.e("p") * j.d("x");
    Form dxdp = wedge(j.d("x"), j.d("p"));
    CHECK(pullback(j.c, std::vector<Expr>{j.e("x"), j.e("z"), j.e("p")}, dxdp) == dxdp);

    auto line = Chart::make("L", {"x"});
    std::map<std::string, Expr> section = {
        {"x", line->parse("x")}, {"p", line->parse("x")}, {"z", line->parse("x^2/2")}};
    CHECK(pullback(line, section, eta).is_zero());
    section.erase("z");
    try {
        pullback(line, section, eta);
        FAIL("incomplete map");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::MapIncomplete);
    }

    // sum z_a eta^a restricted to z = (1, 0)
    Ctx big(Chart::make("B", {"x", "y", "p", "q", "u", "v", "z1", "z2"}));
    Form e1 = big.d("u") - big.e("p") * big.d("x"), e2 = big.d("v") - big.e("q") * big.d("y");
    Form sum = big.e("z1") * e1 + big.e("z2") * e2;
    Ctx small(Chart::make("S", {"x", "y", "p", "q", "u", "v"}));
    std::vector<Expr> inc;
    for (const auto &c : small.c->coords()) inc.push_back(small.e(c));
    inc.push_back(Expr(1));
    inc.push_back(Expr(0));
    CHECK(pullback(small.c, inc, sum) == small.d("u") - small.e("p") * small.d("x"));
}

TEST_CASE("pullback of transcendental coefficients") {
    Ctx m(Chart::make("M", {"q", "s"}, {{GenKind::Sin, 0}}));
    Ctx n(Chart::make("N", {"a"}, {{GenKind::Sin, 0}}));
    Form f = m.e("sin(q)") * m.d("s");
    CHECK(pullback(n.c, std::vector<Expr>{n.e("a"), n.e("a")}, f) == n.e("sin(a)") * n.d("a"));
    CHECK(pullback(n.c, std::vector<Expr>{Expr(0), n.e("a")}, f).is_zero());
    try {
        pullback(n.c, std::vector<Expr>{n.e("2*a"), n.e("a")}, f);
        FAIL("sin(2a) accepted");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::NotRepresentable);
    }
}

TEST_CASE("k-vector field integrability") {
    Ctx q(Chart::make("Q", {"x", "y", "p", "q", "z1", "z2"}));
    CHECK(kvec_is_integrable({{q.del("z1"), q.del("z2")}}));
    Ctx r(Chart::make("R2", {"x", "y"}));
    CHECK_FALSE(kvec_is_integrable({{r.del("x"), r.e("x") * r.del("y")}}));

    Ctx t(Chart::make("T", {"x1", "x2", "x3", "x4", "p1", "p2", "p3", "p4"}));
    VectorField X1 = t.e("x1") * t.del("p1") - t.e("p1") * t.del("x1") +
                     t.e("sqrt2") * (t.e("x2") * t.del("p2") - t.e("p2") * t.del("x2"));
    VectorField X2 = t.e("x3") * t.del("p3") - t.e("p3") * t.del("x3") + t.e("x4") * t.del("p4") -
                     t.e("p4") * t.del("x4");
    CHECK(kvec_is_integrable({{X1, X2}}));
}

TEST_CASE("printing") {
    Ctx m(Chart::make("R3", {"x", "z", "p"}));
    CHECK((m.d("z") - m.e("p") * m.d("x")).str() == "-p*dx + dz");
    CHECK((m.e("1/(1+x)") * m.d("p")).str() == "(1/(x + 1))*dp");
    CHECK(Form(m.c, 1, 1).str() == "0");
    CHECK(Form::stack({m.d("x"), m.d("z")}).str() == "dx ; dz");
    CHECK((m.e("2") * m.del("x") - m.del("p")).str() == "2*d/dx - d/dp");
}
