#include "doctest.h"

#include "kontakt/cli.hpp"
#include "kontakt/dist.hpp"
#include "kontakt/geom.hpp"

#include <random>

using namespace kontakt;

namespace {

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    // a few monomials of degree <= 2 with small integer coefficients
    Expr poly(int n) {
        Expr e(0);
        int terms = uniform(0, 3);
        for (int t = 0; t < terms; ++t) {
            Expr m(uniform(-3, 3));
            int deg = uniform(0, 2);
            for (int k = 0; k < deg; ++k) m = m * Expr::coord(uniform(0, n - 1));
            e = e + m;
        }
        return e;
    }

    VectorField field(const ChartPtr &c) {
        std::vector<Expr> v;
        for (int i = 0; i < c->dim(); ++i) v.push_back(poly(c->dim()));
        return VectorField(c, v);
    }

    Form form(const ChartPtr &c, int p) {
        Form f(c, p, 1);
        MultiIndex I(p);
        auto rec = [&](auto &&self, int pos, int from) -> void {
            if (pos == p) {
                if (uniform(0, 1)) f.set(0, I, poly(c->dim()));
                return;
            }
            for (int i = from; i < c->dim(); ++i) {
                I[pos] = i;
                self(self, pos + 1, i + 1);
            }
        };
        rec(rec, 0, 0);
        return f;
    }

    Scalar rational() { return Scalar::rational(uniform(-6, 6), uniform(1, 4)); }
};

ChartPtr chart_of_dim(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return Chart::make("R" + std::to_string(n), names);
}

constexpr int kInstances = 100;

} // namespace

TEST_CASE("d squared vanishes") {
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        Gen g(1000 + n);
        auto c = chart_of_dim(n);
        for (int t = 0; t < kInstances; ++t) {
            for (int p = 0; p <= 2; ++p) {
                Form w = g.form(c, p);
                CHECK(ext_d(ext_d(w)).is_zero());
            }
        }
    }
}

TEST_CASE("cartan formula") {
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        Gen g(2000 + n);
        auto c = chart_of_dim(n);
        for (int t = 0; t < kInstances; ++t) {
            VectorField X = g.field(c), Y = g.field(c);
            int p = t % 3;
            Form w = g.form(c, p);
            Form L = lie_derivative(X, w);
            Form cartan = interior_product(X, ext_d(w));
            if (p > 0) cartan += ext_d(interior_product(X, w));
            CHECK(L == cartan);
            // against the derivation rule for one-forms: (L_X w)(Y) = X(w(Y)) - w([X, Y])
            if (p == 1) CHECK(pair1(L, 0, Y) == X.apply(pair1(w, 0, Y)) - pair1(w, 0, lie_bracket(X, Y)));
            if (p == 0) CHECK(L.value() == X.apply(w.value()));
        }
    }
}

TEST_CASE("interior product twice is zero") {
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        Gen g(3000 + n);
        auto c = chart_of_dim(n);
        for (int t = 0; t < kInstances; ++t) {
            VectorField X = g.field(c);
            for (int p = 2; p <= 3; ++p) CHECK(interior_product(X, interior_product(X, g.form(c, p))).is_zero());
        }
    }
}

TEST_CASE("bracket is antisymmetric and satisfies jacobi") {
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        Gen g(4000 + n);
        auto c = chart_of_dim(n);
        for (int t = 0; t < kInstances; ++t) {
            VectorField X = g.field(c), Y = g.field(c), Z = g.field(c);
            CHECK(lie_bracket(X, Y) == -lie_bracket(Y, X));
            VectorField J = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                            lie_bracket(Z, lie_bracket(X, Y));
            CHECK(J.is_zero());
        }
    }
}

TEST_CASE("d is a graded derivation") {
    Gen g(5000);
    auto c = chart_of_dim(4);
    for (int t = 0; t < kInstances; ++t) {
        Form a = g.form(c, 1), b = g.form(c, 2);
        CHECK(ext_d(wedge(a, b)) == wedge(ext_d(a), b) - wedge(a, ext_d(b)));
    }
}

namespace {

// every distribution the corpus models name: dists, kernels of one-forms, cartan and
// vertical distributions of jet charts, and the derived flags of the dists
std::vector<std::pair<std::string, Distribution>> corpus_distributions() {
    std::vector<std::pair<std::string, Distribution>> out;
    for (const auto &[name, text] : embedded_corpus()) {
        cli::Model m = cli::parse_model(text, name);
        for (const auto &d : m.dists) {
            Distribution D = d.value;
            LieFlag F = lie_flag(D, 4);
            for (std::size_t s = 0; s < F.steps.size(); ++s)
                out.emplace_back(name + ":" + d.name + "^" + std::to_string(s), F.steps[s]);
        }
        for (const auto &f : m.forms)
            if (f.value.degree() == 1) out.emplace_back(name + ":ker " + f.name, kernel_of_one_form(f.value));
        for (const auto &c : m.charts)
            if (c.jet) {
                out.emplace_back(name + ":cartan", c.jet->cartan);
                out.emplace_back(name + ":vertical", c.jet->polarisation);
            }
    }
    return out;
}

} // namespace

TEST_CASE("pointwise rank never exceeds generic rank") {
    Gen g(6000);
    auto all = corpus_distributions();
    CHECK(all.size() >= 15);
    for (const auto &[name, D] : all) {
        CAPTURE(name);
        int generic = generic_rank(D);
        int equal = 0;
        for (int t = 0; t < 20; ++t) {
            std::vector<Scalar> p;
            for (int i = 0; i < D.dim(); ++i) p.push_back(g.rational());
            int r = rank_at_point(D, p);
            CHECK(r <= generic);
            if (r == generic) ++equal;
        }
        CHECK(equal >= 1);
    }
}
