// one line per acceptance criterion; exit status 0 iff all pass
#include "kontakt/cli.hpp"
#include "kontakt/error.hpp"
#include "kontakt/ham.hpp"
#include "kontakt/jet.hpp"
#include "kontakt/liegroup.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace kontakt;

namespace {

struct Failed {
    std::string what;
};

void need(bool ok, const std::string &what) {
    if (!ok) throw Failed{what};
}

struct Ctx {
    ChartPtr c;
    explicit Ctx(ChartPtr chart) : c(std::move(chart)) {}
    Expr e(const std::string &s) const { return c->parse(s); }
    Form d(const std::string &x) const { return Form::dx(c, c->require(x)); }
    VectorField del(const std::string &x) const { return VectorField::basis(c, c->require(x)); }
};

bool contains(const std::vector<VectorField> &v, const VectorField &x) {
    for (const auto &y : v)
        if (y == x) return true;
    return false;
}

void r6_two_contact() {
    Ctx m(Chart::make("R6", {"x", "y", "p", "q", "z", "t"}));
    Form eta = Form::stack({m.d("z") - m.e("p") * m.d("x"), m.d("t") - m.e("q") * m.d("y")});
    KContactReport r = validate_k_contact(eta);
    need(r.ok(), "validate: " + r.status_str());
    std::vector<VectorField> R = reeb_frame(eta);
    need(R.size() == 2 && R[0] == m.del("z") && R[1] == m.del("t"), "reeb frame");
    Distribution K = kernel_of_one_form(eta);
    std::vector<VectorField> printed = {m.del("x") + m.e("p") * m.del("z"), m.del("y") + m.e("q") * m.del("t"),
                                        m.del("p"), m.del("q")};
    need(K.gens.size() == 4, "kernel size");
    for (const auto &f : printed) need(contains(K.gens, f), "kernel field " + f.str());
    need(spans_equal(K, Distribution(m.c, printed)), "kernel span");
}

void conformal_counterexample() {
    Ctx m(Chart::make("R4", {"x", "y", "z", "p"}, {{GenKind::Exp, 2}}));
    Form eta = Form::stack({m.d("x") - m.e("y") * m.d("p"), m.d("z") - m.e("p") * m.d("y")});
    Form zeta = m.e("exp(z)") * eta;
    need(validate_k_contact(eta).ok(), "eta is k-contact");
    CompatibilityReport c = compatibility_check(eta, zeta);
    need(c.compatible, "compatible");
    need(c.factor && *c.factor == m.e("exp(z)^2"), "factor");
    KContactReport r = validate_k_contact(zeta);
    need(r.status == KStatus::Fail && r.failed == 2, "zeta fails condition 2: " + r.status_str());
    need(r.reeb_rank == 0, "generic rank of ker d zeta");
}

void engel_goursat() {
    Ctx e(Chart::make("Engel", {"x1", "x2", "x3", "x4"}));
    Distribution E(e.c, {e.del("x4"), e.del("x1") + e.e("x3") * e.del("x2") + e.e("x4") * e.del("x3")});
    need(lie_flag(E, 4).growth.ranks == std::vector<int>{2, 3, 4}, "engel growth");
    KVectorField R{{e.del("x2"), e.e("x1") * e.del("x2") + e.del("x3")}};
    Form eta = construct_from_symmetries(E, R);
    Form printed = Form::stack({e.d("x2") - e.e("x3 - x4*x1") * e.d("x1") - e.e("x1") * e.d("x3"),
                                e.d("x3") - e.e("x4") * e.d("x1")});
    for (int a = 0; a < 2; ++a) need(eta.channel(a) == printed.channel(a), "engel channel " + std::to_string(a + 1));
    auto er = reeb_frame(eta);
    for (int a = 0; a < 2; ++a) need(er[a] == R[a], "engel reeb");

    Ctx g(Chart::make("Goursat", {"x1", "x2", "x3", "x4", "x5"}));
    Distribution G(g.c, {g.del("x5"), g.del("x1") + g.e("x3") * g.del("x2") + g.e("x4") * g.del("x3") +
                                          g.e("x5") * g.del("x4")});
    need(lie_flag(G, 5).growth.ranks == std::vector<int>{2, 3, 4, 5}, "goursat growth");
    KVectorField S{{g.del("x2"), g.e("x1") * g.del("x2") + g.del("x3"),
                    g.e("x1^2/2") * g.del("x2") + g.e("x1") * g.del("x3") + g.del("x4")}};
    Form geta = construct_from_symmetries(G, S);
    Form gprinted =
        Form::stack({g.d("x2") - g.e("x3 - x4*x1 + x5*x1^2/2") * g.d("x1") - g.e("x1") * g.d("x3") +
                         g.e("x1^2/2") * g.d("x4"),
                     g.d("x3") - g.e("x1") * g.d("x4") + g.e("x1*x5 - x4") * g.d("x1"), g.d("x4") - g.e("x5") * g.d("x1")});
    for (int a = 0; a < 3; ++a) need(geta.channel(a) == gprinted.channel(a), "goursat channel " + std::to_string(a + 1));
    auto gr = reeb_frame(geta);
    for (int a = 0; a < 3; ++a) need(gr[a] == S[a], "goursat reeb");
}

void maximally_nonintegrable() {
    Ctx m(Chart::make("R4", {"x", "y", "z", "t"}));
    Distribution D(m.c, {m.del("x"), m.del("y") + m.e("x^3/3 + z^2*x + t^2") * m.del("z") + m.e("x") * m.del("t")});
    need(is_maximally_nonintegrable(D), "maximally non-integrable");
    std::vector<Scalar> origin(4), p1 = {Scalar(1), Scalar(0), Scalar(0), Scalar(0)};
    LieFlag F = lie_flag(D, 4, {origin, p1});
    need(F.growth.ranks.size() >= 3 && F.growth.ranks[2] == 4, "generic rank of the second derived step");
    need(F.point_ranks[0][2] == 3, "rank 3 at the origin");
    need(F.point_ranks[1][2] == 4, "rank 4 at (1,0,0,0)");
    need(rank_at_point(F.steps[2], origin) == 3 && rank_at_point(F.steps[2], p1) == 4, "rank_at_point");
}

InvariantForm w(int r, int i, int j) { return wedge(InvariantForm::coframe(r, i), InvariantForm::coframe(r, j)); }

void lie_groups() {
    LieAlgebraData su3 = corpus_algebra("su3"), su4 = corpus_algebra("su4"), u2 = corpus_algebra("u2"),
                   rh3 = corpus_algebra("rh3");
    need(maurer_cartan(su3, 3) == Scalar(2) * w(8, 1, 2) + w(8, 4, 5) - w(8, 6, 7), "su3 d eta3");
    need(maurer_cartan(su3, 8) == Scalar::sqrt3() * (w(8, 4, 5) + w(8, 6, 7)), "su3 d eta8");
    Scalar s = Scalar::sqrt2() * Scalar::sqrt3() * Scalar::rational(2, 3);
    need(maurer_cartan(su4, 15) == s * (w(15, 9, 10) + w(15, 11, 12) + w(15, 13, 14)), "su4 d eta15");
    need(maurer_cartan(u2, 4).is_zero(), "u2 d eta4");
    need(invariant_kcontact_check(su3, {3, 8}).pass, "su3 {3,8}");
    need(invariant_kcontact_check(su4, {3, 8, 15}).pass, "su4 {3,8,15}");
    need(invariant_kcontact_check(u2, {3, 4}).pass, "u2 {3,4}");
    need(invariant_kcontact_check(rh3, {1, 3}).pass, "rh3 {1,3}");
    need(hdw_invariant_system(rh3, {1, 3}).algebraic_trivial(), "rh3 algebraic HDW system vanishes");
}

struct Canon {
    CanonicalModel m;
    KContactStructure S;
    Canon(int n, int k) : m(canonical_k_contact(n, k)), S(KContactStructure::from(m.eta)) {}
};

void hamiltonian_properties() {
    const auto &corpus = hamiltonian_corpus();
    need(corpus.size() >= 10, "corpus size");
    std::map<int, int> per_k;
    std::map<std::pair<int, int>, std::vector<HamKFunction>> by_chart;
    std::map<std::pair<int, int>, Canon> charts;
    for (const auto &e : corpus) {
        auto key = std::pair{e.n, e.k};
        auto it = charts.try_emplace(key, e.n, e.k).first;
        const Canon &c = it->second;
        HamKFunction f = corpus_function(c.m, e);
        VectorField X = solve_eta_hamiltonian(c.S, f);
        need(characteristic_of(c.S, X) == f, e.name + ": characteristic");
        std::vector<Form> rhs;
        for (int a = 0; a < e.k; ++a) {
            Form r(c.m.chart, 1, 1);
            for (int b = 0; b < e.k; ++b) r -= c.S.reeb[b].apply(f.value(a)) * c.S.eta.channel(b);
            rhs.push_back(r);
        }
        need((lie_derivative(X, c.S.eta) - Form::stack(rhs)).is_zero(), e.name + ": (i)");
        need((apply(X, f) + apply(reeb_derivation(c.S, f), f)).is_zero(), e.name + ": (ii)");
        for (int b = 0; b < e.k; ++b)
            need((lie_bracket(X, c.S.reeb[b]) + solve_eta_hamiltonian(c.S, apply(c.S.reeb[b], f))).is_zero(),
                 e.name + ": (iii)");
        by_chart[key].push_back(f);
        ++per_k[e.k];
    }
    for (int k = 1; k <= 3; ++k) need(per_k[k] > 0, "no entry with k = " + std::to_string(k));
    int triples = 0;
    for (auto &[key, fs] : by_chart) {
        const Canon &c = charts.at(key);
        fs.push_back(k_function(c.m.chart, std::vector<Expr>(key.second, Expr(-1))));
        for (const auto &a : fs)
            for (const auto &b : fs) {
                HamKFunction br = eta_bracket(c.S, a, b);
                need((br + eta_bracket(c.S, b, a)).is_zero(), "antisymmetry");
                need((solve_eta_hamiltonian(c.S, br) +
                      lie_bracket(solve_eta_hamiltonian(c.S, a), solve_eta_hamiltonian(c.S, b)))
                         .is_zero(),
                     "morphism");
            }
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j)
                for (std::size_t l = j + 1; l < fs.size(); ++l) {
                    HamKFunction J = eta_bracket(c.S, fs[i], eta_bracket(c.S, fs[j], fs[l])) +
                                     eta_bracket(c.S, fs[j], eta_bracket(c.S, fs[l], fs[i])) +
                                     eta_bracket(c.S, fs[l], eta_bracket(c.S, fs[i], fs[j]));
                    need(J.is_zero(), "jacobi");
                    ++triples;
                }
    }
    need(triples > 0, "no triples");
}

void hdw_suite() {
    int symplectized = 0;
    for (const auto &e : hamiltonian_corpus()) {
        Canon c(e.n, e.k);
        HamKFunction f = corpus_function(c.m, e);
        Expr h = f.value(0);
        HdwSolution s = hdw_darboux_solve(c.S, c.m.partition, h);
        need(s.residual.is_zero(), e.name + ": darboux residual");
        need(lift_cover_hdw(c.S, s.fields, h).residual.is_zero(), e.name + ": cover lift");
        VectorField X = solve_eta_hamiltonian(c.S, f);
        need(lift_presymplectic(c.S, X, f).residual.is_zero(), e.name + ": presymplectic lift");
        bool diagonal = true;
        for (int a = 0; a < e.k; ++a)
            for (int b = 0; b < e.k; ++b)
                if (a != b && !c.S.reeb[b].apply(f.value(a)).is_zero()) diagonal = false;
        if (diagonal) {
            need(lift_symplectization(c.S, X, f).residual.is_zero(), e.name + ": symplectization lift");
            ++symplectized;
        }
    }
    need(symplectized > 0, "no symplectization lift exercised");
}

// every k-contact one-form named by the corpus models, plus the canonical charts
std::vector<std::pair<std::string, Form>> corpus_forms() {
    std::vector<std::pair<std::string, Form>> out;
    for (const auto &[name, text] : embedded_corpus()) {
        cli::Model m = cli::parse_model(text, name);
        for (const auto &f : m.forms)
            if (f.value.degree() == 1 && validate_k_contact(f.value).ok()) out.emplace_back(name + ":" + f.name, f.value);
        for (const auto &c : m.charts)
            if (c.jet) out.emplace_back(name + ":jet", c.jet->eta);
    }
    for (auto [n, k] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 3}})
        out.emplace_back("canonical", canonical_k_contact(n, k).eta);
    return out;
}

void cover_self_checks() {
    for (const auto &[name, eta] : corpus_forms()) {
        SymplecticCover c = build_symplectic_cover(eta);
        need(c.d_theta_minus_omega.is_zero(), name + ": d theta = omega");
        need(c.iota_delta_theta.is_zero(), name + ": i_Delta theta = 0");
        need(c.lie_delta_omega_minus_omega.is_zero(), name + ": L_Delta omega = omega");
        need(build_presymplectic_cover(eta).closed, name + ": presymplectic closed");
    }
    need(build_symplectization(canonical_k_contact(2, 2).eta).k_symplectic, "canonical symplectization");
    // degenerate example: eta^a = dp_1^{a+1} - sum_i p_i^a dx^i, indices cyclic
    int n = 2, k = 2;
    std::vector<std::string> coords = {"x1", "x2", "p1_1", "p2_1", "p1_2", "p2_2"};
    auto c = Chart::make("perm", coords);
    auto p = [&](int i, int a) { return n + a * n + i; };
    std::vector<Form> ch;
    for (int a = 0; a < k; ++a) {
        Form f = Form::dx(c, p(0, (a + 1) % k));
        for (int i = 0; i < n; ++i) f -= Expr::coord(p(i, a)) * Form::dx(c, i);
        ch.push_back(f);
    }
    Form eta = Form::stack(ch);
    need(!validate_k_contact(eta).ok(), "degenerate example is not k-contact");
    need(build_symplectization(eta).k_symplectic, "degenerate symplectization");
}

void jet_suite() {
    int total = 0, dirac = 0;
    for (const auto &name : jet_corpus_names()) {
        JetCorpus C = jet_corpus(name);
        for (const auto &e : C.entries) {
            need(prolong(C.chart, e.field) == e.expected_pr, name + " " + e.name + ": prolongation");
            need(characteristic(C.chart, e.field) == e.expected_h, name + " " + e.name + ": characteristic");
            need(tangency_check(C.chart, e.field), name + " " + e.name + ": tangency");
            need(is_lie_symmetry(e.expected_pr, C.chart.cartan), name + " " + e.name + ": cartan symmetry");
            ++total;
            if (name == "dirac") ++dirac;
        }
    }
    need(total - dirac >= 15, "hamilton-jacobi entries");
    need(dirac == 4, "dirac entries");
}

// the random exterior-calculus suite, at acceptance size
struct Rand {
    std::mt19937 rng{20261016};
    int u(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    Expr poly(int n) {
        Expr e(0);
        for (int t = u(0, 3); t > 0; --t) {
            Expr m(u(-3, 3));
            for (int k = u(0, 2); k > 0; --k) m = m * Expr::coord(u(0, n - 1));
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
        std::function<void(int, int)> rec = [&](int pos, int from) {
            if (pos == p) {
                if (u(0, 1)) f.set(0, I, poly(c->dim()));
                return;
            }
            for (int i = from; i < c->dim(); ++i) {
                I[pos] = i;
                rec(pos + 1, i + 1);
            }
        };
        rec(0, 0);
        return f;
    }
};

void exterior_calculus() {
    Rand g;
    for (int n = 3; n <= 6; ++n) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        auto c = Chart::make("R", names);
        std::string at = " (dim " + std::to_string(n) + ")";
        for (int t = 0; t < 100; ++t) {
            Form w1 = g.form(c, t % 3);
            need(ext_d(ext_d(w1)).is_zero(), "d^2" + at);
            VectorField X = g.field(c), Y = g.field(c), Z = g.field(c);
            Form cartan = interior_product(X, ext_d(w1));
            if (w1.degree() > 0) cartan += ext_d(interior_product(X, w1));
            need(lie_derivative(X, w1) == cartan, "cartan" + at);
            need(interior_product(X, interior_product(X, g.form(c, 2 + t % 2))).is_zero(), "i_X i_X" + at);
            need((lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y)))
                     .is_zero(),
                 "jacobi" + at);
        }
    }
}

void generic_point_consistency() {
    std::mt19937 rng(11);
    auto q = [&] {
        return Scalar::rational(std::uniform_int_distribution<int>(-6, 6)(rng), std::uniform_int_distribution<int>(1, 4)(rng));
    };
    int entries = 0;
    for (const auto &[name, text] : embedded_corpus()) {
        cli::Model m = cli::parse_model(text, name);
        std::vector<std::pair<std::string, Distribution>> ds;
        for (const auto &d : m.dists) {
            LieFlag F = lie_flag(d.value, 4);
            for (std::size_t s = 0; s < F.steps.size(); ++s) ds.emplace_back(d.name + "^" + std::to_string(s), F.steps[s]);
        }
        for (const auto &f : m.forms)
            if (f.value.degree() == 1) ds.emplace_back("ker " + f.name, kernel_of_one_form(f.value));
        for (const auto &c : m.charts)
            if (c.jet) {
                ds.emplace_back("cartan", c.jet->cartan);
                ds.emplace_back("vertical", c.jet->polarisation);
            }
        for (const auto &[dn, D] : ds) {
            int generic = generic_rank(D), equal = 0;
            for (int t = 0; t < 20; ++t) {
                std::vector<Scalar> p;
                for (int i = 0; i < D.dim(); ++i) p.push_back(q());
                int r = rank_at_point(D, p);
                need(r <= generic, name + " " + dn + ": point rank above generic rank");
                equal += r == generic;
            }
            need(equal > 0, name + " " + dn + ": generic rank never attained");
            ++entries;
        }
    }
    need(entries > 0, "no distributions");
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void cli_determinism() {
    std::string out[2];
    for (int i = 0; i < 2; ++i) {
        std::string path = "acceptance_run" + std::to_string(i) + ".json";
        std::string cmd = std::string(KONTAKT_BIN) + " corpus run --json " + path + " > /dev/null";
        int st = std::system(cmd.c_str());
        need(WIFEXITED(st) && WEXITSTATUS(st) == 0, "exit code " + std::to_string(WEXITSTATUS(st)));
        out[i] = slurp(path);
        std::remove(path.c_str());
    }
    need(!out[0].empty(), "empty report");
    need(out[0] == out[1], "reports differ");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"R6 two-contact validation", r6_two_contact},
        {"conformal rescaling counterexample", conformal_counterexample},
        {"Engel and Goursat", engel_goursat},
        {"maximally non-integrable, not k-contact", maximally_nonintegrable},
        {"Lie groups", lie_groups},
        {"Hamiltonian identities", hamiltonian_properties},
        {"HDW solutions and lifts", hdw_suite},
        {"cover self-checks", cover_self_checks},
        {"jet prolongations", jet_suite},
        {"exterior calculus properties", exterior_calculus},
        {"generic and pointwise ranks", generic_point_consistency},
        {"CLI determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            criteria[i].second();
        } catch (const Failed &f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception &e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= 60) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("took longer than 60 s");
        }
        char line[160];
        std::snprintf(line, sizeof line, "%s %2zu %-42s %7.2fs", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                      secs);
        std::cout << line << (detail.empty() ? "" : "  " + detail) << std::endl;
        failed += !ok;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}
