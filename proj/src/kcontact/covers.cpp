#include "kontakt/error.hpp"
#include "kontakt/kcontact.hpp"

namespace kontakt {

ChartPtr extend_chart(const ChartPtr &c, const std::string &base, int k, bool single, std::vector<int> &added) {
    std::string b = base;
    auto names = [&] {
        std::vector<std::string> out;
        if (single && k == 1) out.push_back(b);
        else
            for (int a = 1; a <= k; ++a) out.push_back(b + std::to_string(a));
        return out;
    };
    for (;;) {
        bool free = true;
        for (const auto &s : names())
            if (c->index(s) >= 0) free = false;
        if (free) break;
        b += "_";
    }
    std::vector<std::string> coords = c->coords();
    added.clear();
    for (const auto &s : names()) {
        added.push_back(static_cast<int>(coords.size()));
        coords.push_back(s);
    }
    return Chart::make(c->name() + "+" + b, coords, c->gens());
}

Form lift_form(const ChartPtr &ext, const Form &a) {
    std::vector<Expr> map;
    for (int i = 0; i < a.dim(); ++i) {
        if (ext->coords().at(i) != a.chart()->coords()[i])
            throw Error(Errc::ChartMismatch, "chart '" + ext->name() + "' does not extend '" + a.chart()->name() + "'");
        map.push_back(Expr::coord(i));
    }
    return pullback(ext, map, a);
}

VectorField lift_field(const ChartPtr &ext, const VectorField &v) {
    std::vector<Expr> c = v.comps();
    if (static_cast<int>(c.size()) > ext->dim()) throw Error(Errc::ChartMismatch, "field lives on a larger chart");
    c.resize(ext->dim());
    return VectorField(ext, std::move(c));
}

namespace {

void require_k_contact(const Form &eta) {
    KContactReport r = validate_k_contact(eta);
    if (!r.ok())
        throw Error(Errc::PreconditionViolated, "form is not k-contact (condition " + std::to_string(r.failed) + ")");
}

} // namespace

SymplecticCover build_symplectic_cover(const Form &eta) {
    require_k_contact(eta);
    SymplecticCover c;
    std::vector<int> added;
    c.chart = extend_chart(eta.chart(), "s", 1, true, added);
    c.s = added[0];
    c.eta = lift_form(c.chart, eta);
    Expr s = Expr::coord(c.s);
    c.omega = wedge(Form::dx(c.chart, c.s), c.eta) + s * ext_d(c.eta);
    c.theta = s * c.eta;
    c.delta = s * VectorField::basis(c.chart, c.s);
    c.d_theta_minus_omega = ext_d(c.theta) - c.omega;
    c.iota_delta_theta = interior_product(c.delta, c.theta);
    c.lie_delta_omega_minus_omega = lie_derivative(c.delta, c.omega) - c.omega;
    c.checks_pass = c.d_theta_minus_omega.is_zero() && c.iota_delta_theta.is_zero() &&
                    c.lie_delta_omega_minus_omega.is_zero();
    return c;
}

PresymplecticCover build_presymplectic_cover(const Form &eta) {
    require_k_contact(eta);
    PresymplecticCover c;
    int k = eta.channels();
    c.chart = extend_chart(eta.chart(), "z", k, false, c.z);
    c.eta = lift_form(c.chart, eta);
    Form sum(c.chart, 1, 1);
    for (int a = 0; a < k; ++a) sum += Expr::coord(c.z[a]) * c.eta.channel(a);
    c.omega = ext_d(sum);
    c.d_omega = ext_d(c.omega);
    c.closed = c.d_omega.is_zero();
    c.rank = two_form_rank(c.omega);
    return c;
}

Symplectization build_symplectization(const Form &zeta) {
    if (zeta.degree() != 1) throw Error(Errc::DegreeError, "expected a one-form");
    Symplectization c;
    int k = zeta.channels();
    c.chart = extend_chart(zeta.chart(), "z", k, false, c.z);
    c.eta = lift_form(c.chart, zeta);
    std::vector<Form> chans;
    for (int a = 0; a < k; ++a) chans.push_back(ext_d(Expr::coord(c.z[a]) * c.eta.channel(a)));
    c.omega = Form::stack(chans);
    c.k_symplectic = k_symplectic_validate(c.omega);
    return c;
}

CanonicalModel canonical_k_contact(int n, int k) {
    if (n < 1 || k < 1) throw Error(Errc::PreconditionViolated, "n and k must be positive");
    std::vector<std::string> coords;
    for (int i = 1; i <= n; ++i) coords.push_back("q" + std::to_string(i));
    for (int a = 1; a <= k; ++a)
        for (int i = 1; i <= n; ++i) coords.push_back("p" + std::to_string(i) + "_" + std::to_string(a));
    for (int a = 1; a <= k; ++a) coords.push_back("z" + std::to_string(a));
    CanonicalModel m;
    m.chart = Chart::make("canonical_" + std::to_string(n) + "_" + std::to_string(k), coords);
    m.n = n;
    m.k = k;
    auto p = [&](int i, int a) { return n + a * n + i; };
    std::vector<Form> chans;
    for (int a = 0; a < k; ++a) {
        Form f = Form::dx(m.chart, n + n * k + a);
        for (int i = 0; i < n; ++i) f -= Expr::coord(p(i, a)) * Form::dx(m.chart, i);
        chans.push_back(f);
    }
    m.eta = Form::stack(chans);
    m.vertical.chart = m.chart;
    for (int a = 0; a < k; ++a)
        for (int i = 0; i < n; ++i) m.vertical.gens.push_back(VectorField::basis(m.chart, p(i, a)));
    for (int i = 0; i < n; ++i) m.partition.x.push_back(coords[i]);
    for (int a = 0; a < k; ++a) {
        m.partition.y.push_back(coords[n + n * k + a]);
        std::vector<std::string> row;
        for (int i = 0; i < n; ++i) row.push_back(coords[p(i, a)]);
        m.partition.yi.push_back(row);
    }
    return m;
}

} // namespace kontakt
