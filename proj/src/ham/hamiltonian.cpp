#include "kontakt/error.hpp"
#include "kontakt/ham.hpp"

namespace kontakt {

HamKFunction k_function(const ChartPtr &chart, std::vector<Expr> values) {
    return Form::function(chart, std::move(values));
}

namespace {

void require_k_function(const KContactStructure &S, const HamKFunction &h) {
    require_same_chart(S.chart, h.chart());
    if (h.degree() != 0) throw Error(Errc::DegreeError, "a k-function is a 0-form");
    if (h.channels() != S.eta.channels())
        throw Error(Errc::ChannelMismatch, "k-function has " + std::to_string(h.channels()) + " channels, eta has " +
                                               std::to_string(S.eta.channels()));
}

} // namespace

HamKFunction apply(const VectorField &X, const HamKFunction &f) {
    std::vector<Expr> v;
    for (int a = 0; a < f.channels(); ++a) v.push_back(X.apply(f.value(a)));
    return Form::function(f.chart(), std::move(v));
}

VectorField solve_eta_hamiltonian(const KContactStructure &S, const HamKFunction &h) {
    require_k_function(S, h);
    int n = S.eta.dim(), k = S.eta.channels();
    Matrix m = covector_matrix(S.eta);
    Row b;
    for (int a = 0; a < k; ++a) b.push_back(-h.value(a));
    Matrix two = two_form_matrix(S.deta);
    m.insert(m.end(), two.begin(), two.end());
    for (int a = 0; a < k; ++a) {
        // d h^a - sum_b (R_b h^a) eta^b
        Form rhs = ext_d(Form::function(S.chart, h.value(a)));
        for (int c = 0; c < k; ++c) rhs -= S.reeb[c].apply(h.value(a)) * S.eta.channel(c);
        auto cv = rhs.covector(0);
        b.insert(b.end(), cv.begin(), cv.end());
    }
    LinearSolution s = solve(m, n, b);
    if (!s.consistent) throw Error(Errc::NotHamiltonian, "no eta-Hamiltonian field for this k-function");
    if (!s.unique()) throw Error(Errc::Internal, "eta-Hamiltonian field is not unique");
    return VectorField(S.chart, std::move(s.particular));
}

HamKFunction characteristic_of(const KContactStructure &S, const VectorField &X) {
    require_same_chart(S.chart, X.chart());
    if (!conformal_symmetry_multiplier(X, S.eta).verdict)
        throw Error(Errc::NotASymmetry, X.str() + " does not preserve ker eta");
    std::vector<Expr> v;
    for (int a = 0; a < S.eta.channels(); ++a) v.push_back(-pair1(S.eta, a, X));
    return Form::function(S.chart, std::move(v));
}

VectorField reeb_derivation(const KContactStructure &S, const HamKFunction &h) {
    require_k_function(S, h);
    VectorField r(S.chart);
    for (int a = 0; a < h.channels(); ++a) r += h.value(a) * S.reeb[a];
    return r;
}

HamKFunction eta_bracket(const KContactStructure &S, const HamKFunction &h1, const HamKFunction &h2) {
    VectorField X1 = solve_eta_hamiltonian(S, h1);
    VectorField X2 = solve_eta_hamiltonian(S, h2);
    VectorField br = lie_bracket(X1, X2);
    std::vector<Expr> v;
    for (int a = 0; a < S.eta.channels(); ++a) v.push_back(pair1(S.eta, a, br));
    HamKFunction direct = Form::function(S.chart, std::move(v));
    HamKFunction closed = -apply(X1, h2) - apply(reeb_derivation(S, h2), h1);
    if (direct != closed) throw Error(Errc::Internal, "bracket formulas disagree");
    return direct;
}

bool is_dissipated(const KContactStructure &S, const HamKFunction &h, const HamKFunction &f) {
    VectorField Xh = solve_eta_hamiltonian(S, h);
    solve_eta_hamiltonian(S, f);
    bool d = (apply(Xh, f) + apply(reeb_derivation(S, f), h)).is_zero();
    if (d != eta_bracket(S, h, f).is_zero()) throw Error(Errc::Internal, "dissipation and bracket disagree");
    return d;
}

} // namespace kontakt
