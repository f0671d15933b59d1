#include "kontakt/jet.hpp"

#include "kontakt/error.hpp"

namespace kontakt {

DarbouxPartition JetChart::partition() const {
    DarbouxPartition p;
    for (int i : x) p.x.push_back(chart->coords()[i]);
    for (int a : y) p.y.push_back(chart->coords()[a]);
    for (const auto &row : yi) {
        std::vector<std::string> r;
        for (int j : row) r.push_back(chart->coords()[j]);
        p.yi.push_back(r);
    }
    return p;
}

namespace {

std::vector<std::string> numbered(const std::string &base, int n) {
    if (n == 1) return {base};
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(base + std::to_string(i));
    return out;
}

} // namespace

JetChart build_jet_chart(int m, int k) {
    if (m < 1 || k < 1) throw Error(Errc::PreconditionViolated, "jet chart needs m >= 1 and k >= 1");
    JetNames n;
    n.base = numbered("x", m);
    n.fibre = numbered("y", k);
    return build_jet_chart(n, "J1_" + std::to_string(m) + "_" + std::to_string(k));
}

JetChart build_jet_chart(const JetNames &names, std::string chart_name) {
    JetChart J;
    J.m = static_cast<int>(names.base.size());
    J.k = static_cast<int>(names.fibre.size());
    if (J.m < 1 || J.k < 1) throw Error(Errc::PreconditionViolated, "jet chart needs m >= 1 and k >= 1");
    std::vector<std::vector<std::string>> derivs = names.derivs;
    if (derivs.empty()) {
        for (int a = 0; a < J.k; ++a) {
            std::vector<std::string> row;
            for (int i = 1; i <= J.m; ++i) row.push_back(names.fibre[a] + "_" + std::to_string(i));
            derivs.push_back(row);
        }
    }
    if (static_cast<int>(derivs.size()) != J.k)
        throw Error(Errc::PreconditionViolated, "one row of derivative names per fibre coordinate");
    std::vector<std::string> coords = names.base;
    coords.insert(coords.end(), names.fibre.begin(), names.fibre.end());
    for (const auto &row : derivs) {
        if (static_cast<int>(row.size()) != J.m)
            throw Error(Errc::PreconditionViolated, "one derivative name per base coordinate");
        coords.insert(coords.end(), row.begin(), row.end());
    }
    J.chart = Chart::make(std::move(chart_name), coords);
    for (int i = 0; i < J.m; ++i) J.x.push_back(i);
    for (int a = 0; a < J.k; ++a) J.y.push_back(J.m + a);
    for (int a = 0; a < J.k; ++a) {
        std::vector<int> row;
        for (int i = 0; i < J.m; ++i) row.push_back(J.m + J.k + a * J.m + i);
        J.yi.push_back(row);
    }
    const ChartPtr &c = J.chart;
    std::vector<Form> chans;
    for (int a = 0; a < J.k; ++a) {
        Form f = Form::dx(c, J.y[a]);
        for (int i = 0; i < J.m; ++i) f -= Expr::coord(J.yi[a][i]) * Form::dx(c, J.x[i]);
        chans.push_back(f);
    }
    J.eta = Form::stack(chans);
    J.cartan.chart = c;
    J.polarisation.chart = c;
    for (int i = 0; i < J.m; ++i) {
        VectorField D = VectorField::basis(c, J.x[i]);
        for (int a = 0; a < J.k; ++a) D[J.y[a]] = Expr::coord(J.yi[a][i]);
        J.cartan.gens.push_back(D);
    }
    for (int a = 0; a < J.k; ++a)
        for (int i = 0; i < J.m; ++i) {
            J.cartan.gens.push_back(VectorField::basis(c, J.yi[a][i]));
            J.polarisation.gens.push_back(VectorField::basis(c, J.yi[a][i]));
        }
    return J;
}

namespace {

void require_projectable(const JetChart &J, const BundleField &X) {
    if (static_cast<int>(X.xi.size()) != J.m || static_cast<int>(X.zeta.size()) != J.k)
        throw Error(Errc::PreconditionViolated, "bundle field needs " + std::to_string(J.m) + " base and " +
                                                    std::to_string(J.k) + " fibre components");
    auto check = [&](const Expr &e) {
        for (const auto &row : J.yi)
            for (int j : row)
                if (e.depends_on(j))
                    throw Error(Errc::NotProjectable, "component depends on " + J.chart->coords()[j]);
    };
    for (const auto &e : X.xi) check(e);
    for (const auto &e : X.zeta) check(e);
}

std::vector<Expr> char_values(const JetChart &J, const BundleField &X) {
    std::vector<Expr> h;
    for (int a = 0; a < J.k; ++a) {
        Expr v = -X.zeta[a];
        for (int i = 0; i < J.m; ++i) v += Expr::coord(J.yi[a][i]) * X.xi[i];
        h.push_back(v);
    }
    return h;
}

} // namespace

BundleField bundle_field(const JetChart &J, const VectorField &X) {
    require_same_chart(J.chart, X.chart());
    BundleField B;
    for (int i : J.x) B.xi.push_back(X[i]);
    for (int a : J.y) B.zeta.push_back(X[a]);
    for (const auto &row : J.yi)
        for (int j : row)
            if (!X[j].is_zero()) throw Error(Errc::NotProjectable, "field has a component along " + J.chart->coords()[j]);
    require_projectable(J, B);
    return B;
}

VectorField as_vector_field(const JetChart &J, const BundleField &X) {
    VectorField v(J.chart);
    for (int i = 0; i < J.m; ++i) v[J.x[i]] = X.xi.at(i);
    for (int a = 0; a < J.k; ++a) v[J.y[a]] = X.zeta.at(a);
    return v;
}

VectorField prolong(const JetChart &J, const BundleField &X) {
    require_projectable(J, X);
    std::vector<Expr> h = char_values(J, X);
    VectorField pr = as_vector_field(J, X);
    for (int a = 0; a < J.k; ++a)
        for (int i = 0; i < J.m; ++i) {
            // -(d/dx^i + sum_b y^b_i d/dy^b) h^a
            Expr t = h[a].diff(J.x[i]);
            for (int b = 0; b < J.k; ++b) t += Expr::coord(J.yi[b][i]) * h[a].diff(J.y[b]);
            pr[J.yi[a][i]] = -t;
        }
    return pr;
}

HamKFunction characteristic(const JetChart &J, const BundleField &X) {
    require_projectable(J, X);
    HamKFunction h = k_function(J.chart, char_values(J, X));
    VectorField pr = prolong(J, X);
    for (int a = 0; a < J.k; ++a)
        if (h.value(a) != -pair1(J.eta, a, pr)) throw Error(Errc::Internal, "characteristic differs from -i_{pr X} eta");
    return h;
}

std::vector<Expr> tangency_residual(const JetChart &J, const BundleField &X) {
    require_projectable(J, X);
    std::vector<Expr> h = char_values(J, X);
    VectorField pr = prolong(J, X);
    std::vector<Expr> out;
    // Reeb fields of the canonical form are d/dy^a
    for (int b = 0; b < J.k; ++b) {
        Expr r = pr.apply(h[b]);
        for (int a = 0; a < J.k; ++a) r += h[b].diff(J.y[a]) * h[a];
        out.push_back(r);
    }
    return out;
}

bool tangency_check(const JetChart &J, const BundleField &X) {
    for (const auto &r : tangency_residual(J, X))
        if (!r.is_zero()) return false;
    return true;
}

} // namespace kontakt
