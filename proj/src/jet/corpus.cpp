#include "kontakt/error.hpp"
#include "kontakt/jet.hpp"

namespace kontakt {

namespace {

struct HjRow {
    const char *name;
    std::vector<const char *> xi;
    const char *zeta;
    const char *h;
    std::vector<std::pair<const char *, const char *>> pr;
    bool printed_pr, printed_h;
};

// u0 + u1^2 + u2^2 + u3^2 = 0 on J^1(R^4, R^5)
const std::vector<HjRow> &hj_rows() {
    static const std::vector<HjRow> rows = {
        {"P0", {"1", "0", "0", "0"}, "0", "u0", {{"x0", "1"}}, true, true},
        {"P1", {"0", "1", "0", "0"}, "0", "u1", {{"x1", "1"}}, true, true},
        {"P2", {"0", "0", "1", "0"}, "0", "u2", {{"x2", "1"}}, true, true},
        {"P3", {"0", "0", "0", "1"}, "0", "u3", {{"x3", "1"}}, true, true},
        {"Pu", {"0", "0", "0", "0"}, "1", "-1", {{"u", "1"}}, true, true},
        {"J12", {"0", "-x2", "x1", "0"}, "0", "-u1*x2 + u2*x1", {{"x1", "-x2"}, {"x2", "x1"}, {"u1", "-u2"}, {"u2", "u1"}}, true, false},
        {"J13", {"0", "-x3", "0", "x1"}, "0", "-u1*x3 + u3*x1", {{"x1", "-x3"}, {"x3", "x1"}, {"u1", "-u3"}, {"u3", "u1"}}, true, false},
        {"J23", {"0", "0", "-x3", "x2"}, "0", "-u2*x3 + u3*x2", {{"x2", "-x3"}, {"x3", "x2"}, {"u2", "-u3"}, {"u3", "u2"}}, true, false},
        {"D1", {"x0", "x1/2", "x2/2", "x3/2"}, "0", "u0*x0 + u1*x1/2 + u2*x2/2 + u3*x3/2", {{"x0", "x0"}, {"x1", "x1/2"}, {"x2", "x2/2"}, {"x3", "x3/2"}, {"u0", "-u0"}, {"u1", "-u1/2"}, {"u2", "-u2/2"}, {"u3", "-u3/2"}}, true, true},
        {"D2", {"0", "x1/2", "x2/2", "x3/2"}, "u", "-u + u1*x1/2 + u2*x2/2 + u3*x3/2", {{"x1", "x1/2"}, {"x2", "x2/2"}, {"x3", "x3/2"}, {"u", "u"}, {"u0", "u0"}, {"u1", "u1/2"}, {"u2", "u2/2"}, {"u3", "u3/2"}}, true, false},
        {"G1_1", {"0", "x0", "0", "0"}, "x1/2", "u1*x0 - x1/2", {{"x1", "x0"}, {"u", "x1/2"}, {"u0", "-u1"}, {"u1", "1/2"}}, false, true},
        {"G1_2", {"0", "0", "x0", "0"}, "x2/2", "u2*x0 - x2/2", {{"x2", "x0"}, {"u", "x2/2"}, {"u0", "-u2"}, {"u2", "1/2"}}, false, true},
        {"G1_3", {"0", "0", "0", "x0"}, "x3/2", "u3*x0 - x3/2", {{"x3", "x0"}, {"u", "x3/2"}, {"u0", "-u3"}, {"u3", "1/2"}}, false, true},
        {"G2_1", {"x1/2", "u", "0", "0"}, "0", "u*u1 + u0*x1/2", {{"x0", "x1/2"}, {"x1", "u"}, {"u0", "-u0*u1"}, {"u1", "-u0/2 - u1^2"}, {"u2", "-u1*u2"}, {"u3", "-u1*u3"}}, false, false},
        {"G2_2", {"x2/2", "0", "u", "0"}, "0", "u*u2 + u0*x2/2", {{"x0", "x2/2"}, {"x2", "u"}, {"u0", "-u0*u2"}, {"u1", "-u1*u2"}, {"u2", "-u0/2 - u2^2"}, {"u3", "-u2*u3"}}, false, false},
        {"G2_3", {"x3/2", "0", "0", "u"}, "0", "u*u3 + u0*x3/2", {{"x0", "x3/2"}, {"x3", "u"}, {"u0", "-u0*u3"}, {"u1", "-u1*u3"}, {"u2", "-u2*u3"}, {"u3", "-u0/2 - u3^2"}}, false, false},
        {"A1", {"x0^2", "x0*x1", "x0*x2", "x0*x3"}, "x1^2/4 + x2^2/4 + x3^2/4", "u0*x0^2 + u1*x0*x1 + u2*x0*x2 + u3*x0*x3 - x1^2/4 - x2^2/4 - x3^2/4", {{"x0", "x0^2"}, {"x1", "x0*x1"}, {"x2", "x0*x2"}, {"x3", "x0*x3"}, {"u", "x1^2/4 + x2^2/4 + x3^2/4"}, {"u0", "-2*u0*x0 - u1*x1 - u2*x2 - u3*x3"}, {"u1", "-u1*x0 + x1/2"}, {"u2", "-u2*x0 + x2/2"}, {"u3", "-u3*x0 + x3/2"}}, true, true},
        {"A2", {"x1^2/4 + x2^2/4 + x3^2/4", "u*x1", "u*x2", "u*x3"}, "u^2", "-u^2 + u*u1*x1 + u*u2*x2 + u*u3*x3 + u0*x1^2/4 + u0*x2^2/4 + u0*x3^2/4", {{"x0", "x1^2/4 + x2^2/4 + x3^2/4"}, {"x1", "u*x1"}, {"x2", "u*x2"}, {"x3", "u*x3"}, {"u", "u^2"}, {"u0", "2*u*u0 - u0*u1*x1 - u0*u2*x2 - u0*u3*x3"}, {"u1", "u*u1 - u0*x1/2 - u1^2*x1 - u1*u2*x2 - u1*u3*x3"}, {"u2", "u*u2 - u0*x2/2 - u1*u2*x1 - u2^2*x2 - u2*u3*x3"}, {"u3", "u*u3 - u0*x3/2 - u1*u3*x1 - u2*u3*x2 - u3^2*x3"}}, false, false},
        {"K1", {"x0*x1/2", "u*x0 + x1^2/4 - x2^2/4 - x3^2/4", "x1*x2/2", "x1*x3/2"}, "u*x1/2", "u*u1*x0 - u*x1/2 + u0*x0*x1/2 + u1*x1^2/4 - u1*x2^2/4 - u1*x3^2/4 + u2*x1*x2/2 + u3*x1*x3/2", {{"x0", "x0*x1/2"}, {"x1", "u*x0 + x1^2/4 - x2^2/4 - x3^2/4"}, {"x2", "x1*x2/2"}, {"x3", "x1*x3/2"}, {"u", "u*x1/2"}, {"u0", "-u*u1 - u0*u1*x0"}, {"u1", "u/2 - u0*x0/2 - u1^2*x0 - u2*x2/2 - u3*x3/2"}, {"u2", "-u1*u2*x0 + u1*x2/2"}, {"u3", "-u1*u3*x0 + u1*x3/2"}}, false, false},
        {"K2", {"x0*x2/2", "x1*x2/2", "u*x0 - x1^2/4 + x2^2/4 - x3^2/4", "x2*x3/2"}, "u*x2/2", "u*u2*x0 - u*x2/2 + u0*x0*x2/2 + u1*x1*x2/2 - u2*x1^2/4 + u2*x2^2/4 - u2*x3^2/4 + u3*x2*x3/2", {{"x0", "x0*x2/2"}, {"x1", "x1*x2/2"}, {"x2", "u*x0 - x1^2/4 + x2^2/4 - x3^2/4"}, {"x3", "x2*x3/2"}, {"u", "u*x2/2"}, {"u0", "-u*u2 - u0*u2*x0"}, {"u1", "-u1*u2*x0 + u2*x1/2"}, {"u2", "u/2 - u0*x0/2 - u1*x1/2 - u2^2*x0 - u3*x3/2"}, {"u3", "-u2*u3*x0 + u2*x3/2"}}, false, false},
        {"K3", {"x0*x3/2", "x1*x3/2", "x2*x3/2", "u*x0 - x1^2/4 - x2^2/4 + x3^2/4"}, "u*x3/2", "u*u3*x0 - u*x3/2 + u0*x0*x3/2 + u1*x1*x3/2 + u2*x2*x3/2 - u3*x1^2/4 - u3*x2^2/4 + u3*x3^2/4", {{"x0", "x0*x3/2"}, {"x1", "x1*x3/2"}, {"x2", "x2*x3/2"}, {"x3", "u*x0 - x1^2/4 - x2^2/4 + x3^2/4"}, {"u", "u*x3/2"}, {"u0", "-u*u3 - u0*u3*x0"}, {"u1", "-u1*u3*x0 + u3*x1/2"}, {"u2", "-u2*u3*x0 + u3*x2/2"}, {"u3", "u/2 - u0*x0/2 - u1*x1/2 - u2*x2/2 - u3^2*x0"}}, false, false},
    };
    return rows;
}

JetCorpus hamilton_jacobi() {
    JetCorpus C;
    C.name = "hamilton_jacobi";
    JetNames n{{"x0", "x1", "x2", "x3"}, {"u"}, {{"u0", "u1", "u2", "u3"}}};
    C.chart = build_jet_chart(n, "HJ");
    const ChartPtr &c = C.chart.chart;
    for (const auto &r : hj_rows()) {
        JetCorpusEntry e;
        e.name = r.name;
        for (const char *s : r.xi) e.field.xi.push_back(c->parse(s));
        e.field.zeta.push_back(c->parse(r.zeta));
        e.expected_pr = VectorField(c);
        for (const auto &[coord, val] : r.pr) e.expected_pr[c->require(coord)] = c->parse(val);
        e.expected_h = k_function(c, {c->parse(r.h)});
        e.printed_pr = r.printed_pr;
        e.printed_h = r.printed_h;
        C.entries.push_back(std::move(e));
    }
    return C;
}

// psi_a = psiR_a + i psiI_a, a = 1..4, over x0..x3
JetCorpus dirac() {
    JetCorpus C;
    C.name = "dirac";
    JetNames n;
    n.base = {"x0", "x1", "x2", "x3"};
    for (const char *part : {"psiR", "psiI"})
        for (int a = 1; a <= 4; ++a) n.fibre.push_back(part + std::to_string(a));
    for (const auto &f : n.fibre) {
        std::vector<std::string> row;
        for (int i = 0; i < 4; ++i) row.push_back(f + "_" + std::to_string(i));
        n.derivs.push_back(row);
    }
    C.chart = build_jet_chart(n, "Dirac");
    const JetChart &J = C.chart;
    for (int i = 0; i < 4; ++i) {
        JetCorpusEntry e;
        e.name = "P" + std::to_string(i);
        e.field.xi.assign(4, Expr());
        e.field.xi[i] = Expr(1);
        e.field.zeta.assign(8, Expr());
        e.expected_pr = VectorField::basis(J.chart, J.x[i]);
        std::vector<Expr> h;
        for (int a = 0; a < 8; ++a) h.push_back(Expr::coord(J.yi[a][i]));
        e.expected_h = k_function(J.chart, h);
        C.entries.push_back(std::move(e));
    }
    return C;
}

} // namespace

std::vector<std::string> jet_corpus_names() { return {"dirac", "hamilton_jacobi"}; }

JetCorpus jet_corpus(const std::string &name) {
    if (name == "hamilton_jacobi") return hamilton_jacobi();
    if (name == "dirac") return dirac();
    throw Error(Errc::UnknownCorpus, "unknown jet corpus '" + name + "'");
}

} // namespace kontakt
