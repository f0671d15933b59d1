#include "kontakt/error.hpp"
#include "kontakt/ham.hpp"

namespace kontakt {

namespace {

void require_field_of(const KContactStructure &S, const VectorField &X, const HamKFunction &h) {
    if (solve_eta_hamiltonian(S, h) != X) throw Error(Errc::NotHamiltonian, X.str() + " is not the field of this k-function");
}

bool uniqueness_hypothesis(const KContactStructure &S) {
    int k = S.eta.channels();
    for (int a = 0; a < k; ++a) {
        Distribution Da;
        if (k == 1) {
            Da.chart = S.chart;
            for (int i = 0; i < S.chart->dim(); ++i) Da.gens.push_back(VectorField::basis(S.chart, i));
        } else {
            std::vector<Form> others;
            for (int b = 0; b < k; ++b)
                if (b != a) others.push_back(S.deta.channel(b));
            Da = kernel_of_two_form(Form::stack(others));
        }
        bool leaves = false;
        for (const auto &v : Da.gens)
            if (!interior_product(v, S.deta.channel(a)).is_zero()) leaves = true;
        if (!leaves) return false;
    }
    return true;
}

} // namespace

CoverLift lift_cover_hdw(const KContactStructure &S, const KVectorField &X, const Expr &h) {
    if (!hdw_residual(S, X, h).is_zero()) throw Error(Errc::NotAnHdwSolution, "residual does not vanish");
    CoverLift L;
    L.cover = build_symplectic_cover(S.eta);
    const ChartPtr &c = L.cover.chart;
    Expr s = Expr::coord(L.cover.s);
    Form sum(c, 1, 1);
    for (int a = 0; a < X.k(); ++a) {
        VectorField Xa = lift_field(c, X[a]);
        Xa[L.cover.s] = s * S.reeb[a].apply(h);
        sum += interior_product(Xa, L.cover.omega.channel(a));
        L.fields.fields.push_back(Xa);
    }
    L.residual = sum - ext_d(Form::function(c, s * h));
    L.unique = uniqueness_hypothesis(S);
    return L;
}

PresymplecticLift lift_presymplectic(const KContactStructure &S, const VectorField &X, const HamKFunction &h) {
    require_field_of(S, X, h);
    PresymplecticLift L;
    L.cover = build_presymplectic_cover(S.eta);
    const ChartPtr &c = L.cover.chart;
    int k = S.eta.channels();
    L.field = lift_field(c, X);
    Expr H;
    for (int a = 0; a < k; ++a) {
        Expr fa;
        for (int b = 0; b < k; ++b) fa += Expr::coord(L.cover.z[b]) * S.reeb[a].apply(h.value(b));
        L.field[L.cover.z[a]] = fa;
        H += Expr::coord(L.cover.z[a]) * h.value(a);
    }
    L.residual = interior_product(L.field, L.cover.omega) - ext_d(Form::function(c, H));
    return L;
}

SymplectizationLift lift_symplectization(const KContactStructure &S, const VectorField &X, const HamKFunction &h) {
    int k = S.eta.channels();
    require_field_of(S, X, h);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && !S.reeb[b].apply(h.value(a)).is_zero())
                throw Error(Errc::HypothesisViolated, "R_" + std::to_string(b + 1) + " h^" + std::to_string(a + 1) +
                                                          " does not vanish");
    SymplectizationLift L;
    L.base = build_symplectization(S.eta);
    const ChartPtr &c = L.base.chart;
    L.field = lift_field(c, X);
    for (int a = 0; a < k; ++a) {
        Expr fa;
        for (int b = 0; b < k; ++b) fa += Expr::coord(L.base.z[b]) * S.reeb[b].apply(h.value(a));
        L.field[L.base.z[a]] = fa;
    }
    std::vector<Form> res;
    for (int a = 0; a < k; ++a)
        res.push_back(interior_product(L.field, L.base.omega.channel(a)) -
                      ext_d(Form::function(c, Expr::coord(L.base.z[a]) * h.value(a))));
    L.residual = Form::stack(res);
    return L;
}

} // namespace kontakt
