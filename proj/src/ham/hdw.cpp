#include "kontakt/error.hpp"
#include "kontakt/ham.hpp"

namespace kontakt {

HdwResidual hdw_residual(const KContactStructure &S, const KVectorField &X, const Expr &h) {
    int k = S.eta.channels();
    if (X.k() != k) throw Error(Errc::ChannelMismatch, "k-vector field has " + std::to_string(X.k()) + " entries");
    for (const auto &f : X.fields) require_same_chart(S.chart, f.chart());
    HdwResidual r;
    Form hf = Form::function(S.chart, h);
    r.form = -ext_d(hf);
    r.scalar = h;
    for (int a = 0; a < k; ++a) {
        r.form += interior_product(X[a], S.deta.channel(a));
        r.form += S.reeb[a].apply(h) * S.eta.channel(a);
        r.scalar += pair1(S.eta, a, X[a]);
    }
    return r;
}

HdwSolution hdw_darboux_solve(const KContactStructure &S, const DarbouxPartition &part, const Expr &h) {
    if (!verify_darboux_form(S.eta, part)) throw Error(Errc::NotDarboux, "eta is not canonical in this partition");
    const ChartPtr &c = S.chart;
    int k = S.eta.channels(), n = static_cast<int>(part.x.size());
    std::vector<int> q, z;
    std::vector<std::vector<int>> p;
    for (const auto &s : part.x) q.push_back(c->require(s));
    for (const auto &s : part.y) z.push_back(c->require(s));
    for (const auto &row : part.yi) {
        std::vector<int> r;
        for (const auto &s : row) r.push_back(c->require(s));
        p.push_back(r);
    }
    auto D = [&](int i) { return h.diff(i); };
    Expr kk(k);
    // trace constraints, split evenly over the diagonal
    std::vector<Expr> ptrace(n);
    for (int i = 0; i < n; ++i) {
        Expr t = D(q[i]);
        for (int a = 0; a < k; ++a) t += Expr::coord(p[a][i]) * D(z[a]);
        ptrace[i] = -t / kk;
    }
    Expr ztrace = -h;
    for (int a = 0; a < k; ++a)
        for (int j = 0; j < n; ++j) ztrace += Expr::coord(p[a][j]) * D(p[a][j]);
    ztrace /= kk;

    HdwSolution sol;
    sol.gauge = "uniform-diagonal";
    for (int a = 0; a < k; ++a) {
        VectorField X(c);
        for (int i = 0; i < n; ++i) {
            X[q[i]] = D(p[a][i]);
            X[p[a][i]] = ptrace[i];
        }
        X[z[a]] = ztrace;
        sol.fields.fields.push_back(X);
    }
    sol.residual = hdw_residual(S, sol.fields, h);
    if (!sol.residual.is_zero()) throw Error(Errc::Internal, "Darboux solution has a nonzero residual");
    return sol;
}

} // namespace kontakt
