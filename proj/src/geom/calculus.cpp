#include "kontakt/error.hpp"
#include "kontakt/geom.hpp"

#include <algorithm>

namespace kontakt {

namespace {

// sign of sorting I ++ J, 0 when they share an index
int merge_sign(const MultiIndex &I, const MultiIndex &J, MultiIndex &out) {
    out.clear();
    int inversions = 0;
    std::size_t i = 0, j = 0;
    while (i < I.size() || j < J.size()) {
        if (j == J.size() || (i < I.size() && I[i] < J[j])) {
            out.push_back(I[i++]);
        } else if (i == I.size() || J[j] < I[i]) {
            inversions += static_cast<int>(I.size() - i);
            out.push_back(J[j++]);
        } else {
            return 0;
        }
    }
    return inversions % 2 ? -1 : 1;
}

void wedge_channels(const Form &a, int ca, const Form &b, int cb, Form &out, int co) {
    MultiIndex K;
    for (const auto &[I, f] : a.channel_terms(ca))
        for (const auto &[J, g] : b.channel_terms(cb)) {
            int s = merge_sign(I, J, K);
            if (s == 0) continue;
            Expr v = f * g;
            out.add(co, K, s > 0 ? v : -v);
        }
}

} // namespace

Form wedge(const Form &a, const Form &b) {
    require_same_chart(a.chart(), b.chart());
    int ka = a.channels(), kb = b.channels();
    if (ka != 1 && kb != 1)
        throw Error(Errc::ChannelMismatch, "wedge of two multichannel forms (" + std::to_string(ka) + " and " +
                                               std::to_string(kb) + " channels)");
    int k = std::max(ka, kb);
    Form r(a.chart(), a.degree() + b.degree(), k);
    if (r.degree() > r.dim()) return r;
    for (int c = 0; c < k; ++c) wedge_channels(a, ka == 1 ? 0 : c, b, kb == 1 ? 0 : c, r, c);
    return r;
}

Form ext_d(const Form &a) {
    Form r(a.chart(), a.degree() + 1, a.channels());
    if (r.degree() > r.dim()) return r;
    MultiIndex K;
    for (int c = 0; c < a.channels(); ++c)
        for (const auto &[I, f] : a.channel_terms(c))
            for (int j = 0; j < a.dim(); ++j) {
                if (!f.depends_on(j) || std::binary_search(I.begin(), I.end(), j)) continue;
                Expr df = f.diff(j);
                if (df.is_zero()) continue;
                int s = merge_sign({j}, I, K);
                r.add(c, K, s > 0 ? df : -df);
            }
    return r;
}

Form interior_product(const VectorField &X, const Form &a) {
    require_same_chart(X.chart(), a.chart());
    if (a.degree() == 0) throw Error(Errc::DegreeError, "interior product with a function");
    Form r(a.chart(), a.degree() - 1, a.channels());
    for (int c = 0; c < a.channels(); ++c)
        for (const auto &[I, f] : a.channel_terms(c))
            for (std::size_t p = 0; p < I.size(); ++p) {
                const Expr &x = X[I[p]];
                if (x.is_zero()) continue;
                MultiIndex J = I;
                J.erase(J.begin() + static_cast<long>(p));
                Expr v = x * f;
                r.add(c, J, p % 2 ? -v : v);
            }
    return r;
}

VectorField lie_bracket(const VectorField &X, const VectorField &Y) {
    require_same_chart(X.chart(), Y.chart());
    VectorField r(X.chart());
    for (int i = 0; i < X.dim(); ++i) r[i] = X.apply(Y[i]) - Y.apply(X[i]);
    return r;
}

namespace {

// coordinate formula: (L_X a)_I = X(a_I) + sum_r sum_j a_{I with i_r -> j} d_{i_r} X^j
Form lie_derivative_direct(const VectorField &X, const Form &a) {
    Form r(a.chart(), a.degree(), a.channels());
    int n = a.dim();
    std::vector<std::vector<Expr>> dX(n, std::vector<Expr>(n)); // dX[j][i] = d_i X^j
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (X[j].depends_on(i)) dX[j][i] = X[j].diff(i);
    MultiIndex K;
    for (int c = 0; c < a.channels(); ++c)
        for (const auto &[J, f] : a.channel_terms(c)) {
            r.add(c, J, X.apply(f));
            // f dx^{j_1}..dx^{j_p}: replace dx^{j_r} by d(X^{j_r}) = sum_i d_i X^{j_r} dx^i
            for (std::size_t p = 0; p < J.size(); ++p)
                for (int i = 0; i < n; ++i) {
                    const Expr &g = dX[J[p]][i];
                    if (g.is_zero()) continue;
                    MultiIndex rest = J;
                    rest.erase(rest.begin() + static_cast<long>(p));
                    if (std::binary_search(rest.begin(), rest.end(), i)) continue;
                    // dx^i sits in slot p: move it to the front (p transpositions), then sort
                    int s = merge_sign({i}, rest, K);
                    if (p % 2) s = -s;
                    Expr v = f * g;
                    r.add(c, K, s > 0 ? v : -v);
                }
        }
    return r;
}

} // namespace

Form lie_derivative(const VectorField &X, const Form &a) {
    require_same_chart(X.chart(), a.chart());
    Form direct = lie_derivative_direct(X, a);
    // Cartan: d i_X a + i_X d a (the first term is absent for functions)
    Form cartan(a.chart(), a.degree(), a.channels());
    if (a.degree() > 0) cartan += ext_d(interior_product(X, a));
    if (a.degree() < a.dim()) cartan += interior_product(X, ext_d(a));
    if (cartan != direct) throw Error(Errc::Internal, "Cartan formula disagrees with the coordinate formula");
    return direct;
}

namespace {

bool single_coordinate(const Expr &e, int &idx) {
    if (!e.is_polynomial() || e.num().size() != 1 || !e.num().lead_coeff().is_one()) return false;
    const auto &ent = e.num().lead_monomial().entries();
    if (ent.size() != 1 || ent[0].second != 1 || is_gen(ent[0].first)) return false;
    idx = static_cast<int>(ent[0].first);
    return true;
}

} // namespace

Form pullback(const ChartPtr &source, const std::vector<Expr> &map, const Form &a) {
    const ChartPtr &target = a.chart();
    if (static_cast<int>(map.size()) != target->dim())
        throw Error(Errc::MapIncomplete, "map assigns " + std::to_string(map.size()) + " of " +
                                             std::to_string(target->dim()) + " target coordinates");
    auto sub = [&](Var v) -> Expr {
        if (!is_gen(v)) return map.at(v);
        const Expr &arg = map.at(gen_coord(v));
        GenKind k = gen_kind(v);
        if (arg.is_zero()) return Expr(k == GenKind::Sin ? 0 : 1);
        int j;
        if (single_coordinate(arg, j)) return Expr::gen(k, j);
        throw Error(Errc::NotRepresentable, symbol_name(v, target->namer()) + " pulled back along " +
                                                arg.str(source->namer()) + " leaves the coefficient field");
    };
    // pulled-back differentials of the target coordinates
    std::vector<Form> dphi;
    for (int i = 0; i < target->dim(); ++i) {
        Form f(source, 1, 1);
        for (int j = 0; j < source->dim(); ++j)
            if (map[i].depends_on(j)) f.add(0, {j}, map[i].diff(j));
        dphi.push_back(std::move(f));
    }
    Form r(source, a.degree(), a.channels());
    if (r.degree() > source->dim()) return r;
    for (int c = 0; c < a.channels(); ++c)
        for (const auto &[I, f] : a.channel_terms(c)) {
            Form term = Form::function(source, f.substitute(sub));
            for (int i : I) {
                term = wedge(term, dphi[i]);
                if (term.is_zero()) break;
            }
            for (const auto &[K, g] : term.channel_terms(0)) r.add(c, K, g);
        }
    return r;
}

Form pullback(const ChartPtr &source, const std::map<std::string, Expr> &map, const Form &a) {
    std::vector<Expr> m;
    for (const auto &c : a.chart()->coords()) {
        auto it = map.find(c);
        if (it == map.end()) throw Error(Errc::MapIncomplete, "no image for target coordinate '" + c + "'");
        m.push_back(it->second);
    }
    if (map.size() != m.size())
        for (const auto &[k, v] : map)
            if (a.chart()->index(k) < 0) throw Error(Errc::UnknownCoordinate, "'" + k + "' is not a target coordinate");
    return pullback(source, m, a);
}

bool kvec_is_integrable(const KVectorField &X) {
    for (int a = 0; a < X.k(); ++a)
        for (int b = a + 1; b < X.k(); ++b)
            if (!lie_bracket(X[a], X[b]).is_zero()) return false;
    return true;
}

Expr pair1(const Form &a, int channel, const VectorField &X) {
    if (a.degree() != 1) throw Error(Errc::DegreeError, "pairing a vector with a form of degree " + std::to_string(a.degree()));
    Expr acc;
    for (const auto &[I, f] : a.channel_terms(channel))
        if (!X[I[0]].is_zero()) acc += f * X[I[0]];
    return acc;
}

Expr pair2(const Form &a, int channel, const VectorField &X, const VectorField &Y) {
    if (a.degree() != 2) throw Error(Errc::DegreeError, "pairing two vectors with a form of degree " + std::to_string(a.degree()));
    Expr acc;
    for (const auto &[I, f] : a.channel_terms(channel)) {
        Expr m = X[I[0]] * Y[I[1]] - X[I[1]] * Y[I[0]];
        if (!m.is_zero()) acc += f * m;
    }
    return acc;
}

} // namespace kontakt
