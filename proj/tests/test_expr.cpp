#include "doctest.h"

#include "kontakt/error.hpp"
#include "kontakt/expr.hpp"

#include <random>

using namespace kontakt;

namespace {

const std::vector<std::string> kXYZT = {"x", "y", "z", "t"};

Expr P(const std::string &s, const std::vector<std::string> &coords = kXYZT) { return parse_expr(s, coords); }

std::string S(const Expr &e, const std::vector<std::string> &coords = kXYZT) {
    return e.str([&](int i) { return coords[i]; });
}

Scalar Q(long n, long d = 1) { return Scalar::rational(n, d); }

Expr random_poly(std::mt19937 &rng, int nvars, int terms, int maxdeg) {
    std::uniform_int_distribution<int> coef(-4, 4), var(0, nvars - 1), deg(0, maxdeg);
    Expr acc;
    for (int i = 0; i < terms; ++i) {
        Expr t(static_cast<long>(coef(rng)));
        int d = deg(rng);
        for (int k = 0; k < d; ++k) t *= Expr::coord(var(rng));
        acc += t;
    }
    return acc;
}

Expr random_trig(std::mt19937 &rng) {
    std::uniform_int_distribution<int> pick(0, 5), coef(-3, 3);
    Expr acc;
    for (int i = 0; i < 4; ++i) {
        Expr t(static_cast<long>(coef(rng)));
        for (int k = 0; k < 3; ++k) {
            switch (pick(rng)) {
            case 0: t *= Expr::gen(GenKind::Sin, 0); break;
            case 1: t *= Expr::gen(GenKind::Cos, 0); break;
            case 2: t *= Expr::gen(GenKind::Exp, 1); break;
            case 3: t *= Expr::coord(0); break;
            case 4: t *= Expr::coord(1); break;
            default: break;
            }
        }
        acc += t;
    }
    return acc;
}

Expr random_rational(std::mt19937 &rng) {
    Expr d = random_poly(rng, 3, 3, 2);
    if (d.is_zero()) d = Expr(1);
    return random_poly(rng, 3, 4, 3) / d;
}

} // namespace

TEST_CASE("scalar arithmetic in Q(sqrt2, sqrt3)") {
    Scalar r2 = Scalar::sqrt2(), r3 = Scalar::sqrt3();
    CHECK(r2 * r2 == Scalar(2));
    CHECK(r2 * r3 * r2 * r3 == Scalar(6));
    CHECK((Scalar(1) + r2) * (Scalar(1) - r2) == Scalar(-1));
    // values from an independent radical simplifier
    Scalar inv = (Scalar(1) + r2 + r3).inverse();
    CHECK(inv == Scalar(mpq_class(1, 2), mpq_class(1, 4), 0, mpq_class(-1, 4)));
    Scalar x = Scalar(5) - r3 + Scalar(2) * r2 * r3;
    CHECK(x.inverse() == Scalar(mpq_class(5, 142), mpq_class(15, 71), mpq_class(-23, 142), mpq_class(2, 71)));
    CHECK(x * x.inverse() == Scalar(1));
    CHECK_THROWS_AS(Scalar().inverse(), Error);
    CHECK(r3.to_double() == doctest::Approx(1.7320508075688772));
}

TEST_CASE("normalize: Pythagorean form, gcd cancellation, quadratic constants") {
    std::vector<std::string> q = {"q"};
    CHECK(S(P("cos(q)^2 + sin(q)^2", q), q) == "1");
    CHECK(P("cos(q)^2 + sin(q)^2", q) == Expr(1));
    CHECK(S(P("(x^2 - 1)/(x - 1)")) == "x + 1");
    CHECK(P("(1 + sqrt2)*(1 - sqrt2)") == Expr(-1));
    CHECK(S(P("(x*y + y)/(x^2 - 1)")) == "y/(x - 1)");
    CHECK(S(P("(2*x)/(4*x*z + 2*x)")) == "1/(2*z + 1)");
    CHECK(S(P("(x^2*z - z*t^2)/(x*t + t^2)")) == "(x*z - z*t)/t");
    CHECK(normalize(P("x/y")) == P("x/y"));
    CHECK_THROWS_AS(Expr::ratio(Poly(1), Poly()), Error);
    try {
        P("x/(y - y)");
        FAIL("expected ZeroDenominator");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::ZeroDenominator);
    }
    // a denominator that vanishes only after the Pythagorean rewrite
    std::vector<std::string> qq = {"q"};
    try {
        P("1/(sin(q)^2 + cos(q)^2 - 1)", qq);
        FAIL("expected ZeroDenominator");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::ZeroDenominator);
    }
}

TEST_CASE("multivariate gcd on products with a planted factor") {
    std::mt19937 rng(7);
    for (int it = 0; it < 60; ++it) {
        Expr a = random_poly(rng, 4, 3, 2), b = random_poly(rng, 4, 3, 2), g = random_poly(rng, 4, 3, 2);
        if (a.is_zero() || b.is_zero() || g.is_zero()) continue;
        Poly A = (a * g).num(), B = (b * g).num();
        Poly G = gcd(A, B);
        Poly q;
        REQUIRE(divide_exact(G, g.num(), q));
        Poly qa, qb;
        REQUIRE(divide_exact(A, G, qa));
        REQUIRE(divide_exact(B, G, qb));
        CHECK(gcd(qa, qb).is_constant());
    }
}

TEST_CASE("differentiate") {
    CHECK(S(differentiate(P("x^3/3 + z^2*x + t^2"), 0, 4)) == "x^2 + z^2");
    CHECK(differentiate(P("exp(z)"), 2, 4) == P("exp(z)"));
    std::vector<std::string> q = {"q"};
    CHECK(differentiate(P("sin(q)", q), 0, 1) == P("cos(q)", q));
    CHECK(differentiate(P("cos(q)", q), 0, 1) == P("-sin(q)", q));
    CHECK(S(differentiate(P("sin(q)*cos(q)", q), 0, 1), q) == "-2*sin(q)^2 + 1");
    CHECK(differentiate(P("1/x"), 0, 4) == P("-1/x^2"));
    try {
        differentiate(P("x"), 4, 4);
        FAIL("expected UnknownCoordinate");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::UnknownCoordinate);
    }
}

TEST_CASE("evaluate_at") {
    std::vector<Scalar> origin(4, Scalar(0));
    Value v = evaluate_at(P("x^2 + z^2"), origin);
    CHECK(v.exact);
    CHECK(v.exact_value.is_zero());
    std::vector<Scalar> ones(4, Scalar(1));
    v = evaluate_at(P("2*x^3*z/3 + t - z*t^2"), ones);
    CHECK(v.exact);
    CHECK(v.exact_value == Q(2, 3));
    v = evaluate_at(P("sqrt3"), origin);
    CHECK(v.to_double() == doctest::Approx(1.7320508));
    v = evaluate_at(P("exp(x)"), origin);
    CHECK_FALSE(v.exact);
    CHECK(v.approx == doctest::Approx(1.0));
    try {
        evaluate_at(P("1/x"), origin);
        FAIL("expected PoleAtPoint");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::PoleAtPoint);
    }
}

TEST_CASE("parser errors carry locations") {
    try {
        P("x + w");
        FAIL("expected UnknownCoordinate");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::UnknownCoordinate);
        CHECK(std::string(e.what()).find("1:5") != std::string::npos);
    }
    CHECK_THROWS_AS(P("x +"), Error);
    CHECK_THROWS_AS(P("(x"), Error);
    ParseContext ctx;
    ctx.coords = {"q"};
    ctx.restrict_gens = true;
    try {
        parse_expr("sin(q)", ctx);
        FAIL("undeclared generator accepted");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::UnknownIdentifier);
    }
    ctx.gens = {{GenKind::Sin, 0}, {GenKind::Cos, 0}};
    CHECK(parse_expr("sin(q)*cos(q)", ctx) == Expr::gen(GenKind::Sin, 0) * Expr::gen(GenKind::Cos, 0));
}

TEST_CASE("printing round-trips through the parser") {
    std::mt19937 rng(11);
    for (int it = 0; it < 50; ++it) {
        Expr e = random_rational(rng) * Expr(Scalar(1) + Scalar::sqrt3());
        CHECK(P(S(e)) == e);
    }
    std::vector<std::string> q = {"q", "z"};
    for (int it = 0; it < 30; ++it) {
        Expr e = random_trig(rng);
        CHECK(P(S(e, q), q) == e);
    }
}

TEST_CASE("field axioms on random expressions") {
    std::mt19937 rng(3);
    for (int it = 0; it < 80; ++it) {
        Expr e = random_rational(rng), f = random_rational(rng);
        CHECK((e * f - f * e).is_zero());
        CHECK((e + (-e)).is_zero());
        CHECK((e + f) * (e - f) == e * e - f * f);
        if (!f.is_zero()) CHECK((e / f) * f == e);
    }
}

TEST_CASE("Leibniz rule") {
    std::mt19937 rng(5);
    for (int it = 0; it < 60; ++it) {
        Expr e = random_rational(rng), f = random_rational(rng);
        for (int c = 0; c < 3; ++c) CHECK((e * f).diff(c) == e.diff(c) * f + e * f.diff(c));
    }
    for (int it = 0; it < 40; ++it) {
        Expr e = random_trig(rng), f = random_trig(rng);
        for (int c = 0; c < 2; ++c) CHECK((e * f).diff(c) == e.diff(c) * f + e * f.diff(c));
    }
}

TEST_CASE("Pythagorean confluence") {
    std::mt19937 rng(9);
    Expr s = Expr::gen(GenKind::Sin, 0), c = Expr::gen(GenKind::Cos, 0);
    for (int it = 0; it < 40; ++it) {
        Expr g = random_trig(rng);
        CHECK((c * c * g + s * s * g - g).is_zero());
        Expr h = random_trig(rng);
        if (!h.is_zero()) CHECK(((c * c + s * s) * g / h - g / h).is_zero());
    }
}

TEST_CASE("evaluation is a ring homomorphism on exact inputs") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    for (int it = 0; it < 60; ++it) {
        Expr e = random_rational(rng), f = random_rational(rng);
        std::vector<Scalar> pt;
        for (int i = 0; i < 3; ++i) pt.push_back(Q(num(rng), den(rng)));
        try {
            Scalar a = evaluate_at(e, pt).exact_value, b = evaluate_at(f, pt).exact_value;
            CHECK(evaluate_at(e * f, pt).exact_value == a * b);
            CHECK(evaluate_at(e + f, pt).exact_value == a + b);
        } catch (const Error &err) {
            CHECK(err.code() == Errc::PoleAtPoint);
        }
    }
}
