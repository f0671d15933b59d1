#include "kontakt/error.hpp"
#include "kontakt/kcontact.hpp"

#include <set>

namespace kontakt {

Form construct_from_symmetries(const Distribution &D, const KVectorField &S) {
    for (const auto &X : S.fields) require_same_chart(D.chart, X.chart());
    if (!kvec_is_integrable(S)) throw Error(Errc::PreconditionViolated, "symmetries do not commute");
    for (const auto &X : S.fields)
        if (!is_lie_symmetry(X, D)) throw Error(Errc::NotASymmetry, X.str() + " is not a Lie symmetry");
    int n = D.dim(), k = S.k();
    Matrix m = D.matrix();
    int nd = static_cast<int>(m.size());
    for (const auto &X : S.fields) m.push_back(X.comps());
    if (rank(m, n) != n) throw Error(Errc::NotSupplementary, "distribution and symmetries do not span");
    Form eta(D.chart, 1, k);
    for (int b = 0; b < k; ++b) {
        Row rhs(m.size());
        rhs[nd + b] = Expr(1);
        LinearSolution s = solve(m, n, rhs);
        if (!s.consistent) throw Error(Errc::NotSupplementary, "symmetries meet the distribution");
        for (int i = 0; i < n; ++i) eta.set(b, {i}, s.particular[i]);
    }
    return eta;
}

bool check_polarisation(const Form &eta, const Distribution &V) {
    require_same_chart(eta.chart(), V.chart);
    if (!validate_k_contact(eta).ok()) throw Error(Errc::PreconditionViolated, "form is not k-contact");
    int dim = eta.dim(), k = eta.channels();
    if ((dim - k) % (k + 1) != 0) return false;
    int n = (dim - k) / (k + 1);
    if (n < 1) return false;
    for (const auto &v : V.gens)
        for (int a = 0; a < k; ++a)
            if (!pair1(eta, a, v).is_zero()) return false;
    if (generic_rank(V) != n * k) return false;
    SpanReducer red(V.matrix(), dim);
    for (std::size_t i = 0; i < V.gens.size(); ++i)
        for (std::size_t j = i + 1; j < V.gens.size(); ++j)
            if (!red.contains(lie_bracket(V.gens[i], V.gens[j]).comps())) return false;
    return true;
}

bool verify_darboux_form(const Form &eta, const DarbouxPartition &part, const std::optional<Distribution> &V) {
    if (eta.degree() != 1) throw Error(Errc::DegreeError, "expected a one-form");
    const ChartPtr &c = eta.chart();
    int k = eta.channels(), n = static_cast<int>(part.x.size());
    if (static_cast<int>(part.y.size()) != k || static_cast<int>(part.yi.size()) != k)
        throw Error(Errc::PartitionError, "expected " + std::to_string(k) + " fibre coordinates");
    std::set<std::string> seen;
    auto take = [&](const std::string &name) {
        if (c->index(name) < 0) throw Error(Errc::PartitionError, "'" + name + "' is not a coordinate");
        if (!seen.insert(name).second) throw Error(Errc::PartitionError, "'" + name + "' used twice");
        return c->index(name);
    };
    std::vector<int> xs, ys;
    for (const auto &s : part.x) xs.push_back(take(s));
    for (const auto &s : part.y) ys.push_back(take(s));
    std::vector<std::vector<int>> yis;
    for (const auto &row : part.yi) {
        if (static_cast<int>(row.size()) != n)
            throw Error(Errc::PartitionError, "each derivative block needs " + std::to_string(n) + " names");
        std::vector<int> r;
        for (const auto &s : row) r.push_back(take(s));
        yis.push_back(std::move(r));
    }
    if (static_cast<int>(seen.size()) != c->dim()) return false;
    for (int a = 0; a < k; ++a) {
        Form can = Form::dx(c, ys[a]);
        for (int i = 0; i < n; ++i) can -= Expr::coord(yis[a][i]) * Form::dx(c, xs[i]);
        if (can != eta.channel(a)) return false;
    }
    if (V) {
        Distribution W;
        W.chart = c;
        for (const auto &row : yis)
            for (int j : row) W.gens.push_back(VectorField::basis(c, j));
        if (!spans_equal(*V, W)) return false;
    }
    return true;
}

} // namespace kontakt
