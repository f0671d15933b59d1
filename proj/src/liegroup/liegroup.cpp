#include "kontakt/liegroup.hpp"

#include "kontakt/error.hpp"

#include <algorithm>
#include <set>

namespace kontakt {

LieAlgebraData::LieAlgebraData(std::string n, int dim)
    : name(std::move(n)), r(dim), consts(static_cast<std::size_t>(dim) * dim * dim) {}

namespace {

std::size_t slot(int r, int a, int b, int g) {
    if (a < 1 || b < 1 || g < 1 || a > r || b > r || g > r)
        throw Error(Errc::PreconditionViolated, "basis label out of range 1.." + std::to_string(r));
    return (static_cast<std::size_t>(a - 1) * r + (b - 1)) * r + (g - 1);
}

Scalar rat(long p, long q) { return Scalar::rational(p, q); }

} // namespace

const Scalar &LieAlgebraData::c(int a, int b, int g) const { return consts[slot(r, a, b, g)]; }

void LieAlgebraData::set(int a, int b, int g, const Scalar &v) {
    consts[slot(r, a, b, g)] = v;
    consts[slot(r, b, a, g)] = -v;
}

void LieAlgebraData::set_skew(int a, int b, int g, const Scalar &v) {
    set(a, b, g, v);
    set(b, g, a, v);
    set(g, a, b, v);
}

void LieAlgebraData::set_raw(int a, int b, int g, const Scalar &v) { consts[slot(r, a, b, g)] = v; }

LieAlgebraData abelian_algebra(int r) { return LieAlgebraData("abelian" + std::to_string(r), r); }

namespace {

struct TableRow {
    int a, b, g;
    Scalar v;
};

// rows list c_{ba}^g for a < b < g
void fill_table(LieAlgebraData &L, const std::vector<TableRow> &rows) {
    for (const auto &t : rows) L.set_skew(t.a, t.b, t.g, -t.v);
}

std::vector<TableRow> su3_rows() {
    Scalar s3 = Scalar::sqrt3();
    return {{1, 2, 3, 2}, {1, 4, 7, 1},  {1, 5, 6, -1}, {2, 4, 6, 1},  {2, 5, 7, 1},
            {3, 4, 5, 1}, {3, 6, 7, -1}, {4, 5, 8, s3}, {6, 7, 8, s3}};
}

std::vector<TableRow> su4_rows() {
    Scalar r13 = Scalar::sqrt3() * rat(1, 3);       // sqrt(1/3)
    Scalar r43 = Scalar::sqrt3() * rat(2, 3);       // sqrt(4/3)
    Scalar r83 = Scalar::sqrt2() * Scalar::sqrt3() * rat(2, 3); // sqrt(8/3)
    return {{1, 9, 12, 1},   {1, 10, 11, -1}, {2, 9, 11, 1},   {2, 10, 12, 1},  {3, 9, 10, 1},
            {3, 11, 12, -1}, {4, 9, 14, 1},   {4, 10, 13, -1}, {5, 9, 13, 1},   {5, 10, 14, 1},
            {6, 11, 14, 1},  {6, 12, 13, -1}, {7, 11, 13, 1},  {7, 12, 14, 1},  {8, 9, 10, r13},
            {8, 11, 12, r13}, {8, 13, 14, -r43}, {9, 10, 15, r83}, {11, 12, 15, r83}, {13, 14, 15, r83}};
}

} // namespace

std::vector<std::string> corpus_algebra_names() { return {"rh3", "su3", "su4", "u2"}; }

LieAlgebraData corpus_algebra(const std::string &name) {
    if (name == "su3") {
        LieAlgebraData L(name, 8);
        fill_table(L, su3_rows());
        return L;
    }
    if (name == "su4") {
        LieAlgebraData L(name, 15);
        fill_table(L, su3_rows());
        fill_table(L, su4_rows());
        return L;
    }
    if (name == "u2") {
        // [X_a, X_b] = 2 eps_abg X_g on the first three, X_4 central
        LieAlgebraData L(name, 4);
        L.set_skew(1, 2, 3, 2);
        return L;
    }
    if (name == "rh3") {
        LieAlgebraData L(name, 4);
        L.set(2, 4, 3, 1);
        return L;
    }
    throw Error(Errc::UnknownAlgebra, "unknown algebra '" + name + "'");
}

bool validate_structure(const LieAlgebraData &L) {
    int r = L.r;
    if (static_cast<int>(L.consts.size()) != r * r * r) return false;
    for (int a = 1; a <= r; ++a)
        for (int b = a; b <= r; ++b)
            for (int g = 1; g <= r; ++g)
                if (L.c(a, b, g) != -L.c(b, a, g)) return false;
    for (int a = 1; a <= r; ++a)
        for (int b = a + 1; b <= r; ++b)
            for (int g = b + 1; g <= r; ++g)
                for (int n = 1; n <= r; ++n) {
                    Scalar s;
                    for (int m = 1; m <= r; ++m) {
                        s += L.c(a, b, m) * L.c(m, g, n);
                        s += L.c(b, g, m) * L.c(m, a, n);
                        s += L.c(g, a, m) * L.c(m, b, n);
                    }
                    if (!s.is_zero()) return false;
                }
    return true;
}

// ---------------------------------------------------------------- invariant forms

InvariantForm::InvariantForm(int dim, int deg, int nchannels) : r(dim), degree(deg), channels(nchannels) {}

InvariantForm InvariantForm::coframe(int dim, int label) {
    InvariantForm f(dim, 1);
    f.add(0, {label}, 1);
    return f;
}

void InvariantForm::add(int channel, Term t, const Scalar &v) {
    if (static_cast<int>(t.size()) != degree) throw Error(Errc::DegreeError, "term has the wrong degree");
    int sign = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j + 1 < t.size() - i; ++j)
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1]) return;
    auto &ch = channels.at(channel);
    Scalar &slot = ch[t];
    slot += sign > 0 ? v : -v;
    if (slot.is_zero()) ch.erase(t);
}

Scalar InvariantForm::coeff(int channel, const Term &t) const {
    auto it = channels.at(channel).find(t);
    return it == channels.at(channel).end() ? Scalar() : it->second;
}

bool InvariantForm::is_zero() const {
    for (const auto &ch : channels)
        if (!ch.empty()) return false;
    return true;
}

std::string InvariantForm::str(int channel) const {
    const auto &ch = channels.at(channel);
    if (ch.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto &[t, v] : ch) {
        Scalar c = v;
        bool neg = c.lead_sign() < 0;
        if (neg) c = -c;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string basis;
        for (std::size_t i = 0; i < t.size(); ++i) basis += (i ? "^eta" : "eta") + std::to_string(t[i]);
        if (t.empty()) basis = "";
        if (c.is_one() && !basis.empty()) {
            out += basis;
        } else {
            std::string cs = c.is_compound() ? "(" + c.str() + ")" : c.str();
            out += basis.empty() ? cs : cs + "*" + basis;
        }
    }
    return out;
}

InvariantForm &InvariantForm::operator+=(const InvariantForm &o) {
    if (o.r != r || o.degree != degree || o.channels.size() != channels.size())
        throw Error(Errc::ChannelMismatch, "invariant forms of different shape");
    for (std::size_t a = 0; a < channels.size(); ++a)
        for (const auto &[t, v] : o.channels[a]) add(static_cast<int>(a), t, v);
    return *this;
}

InvariantForm &InvariantForm::operator-=(const InvariantForm &o) { return *this += Scalar(-1) * o; }

InvariantForm operator*(const Scalar &s, InvariantForm a) {
    for (auto &ch : a.channels) {
        for (auto &[t, v] : ch) v *= s;
        std::erase_if(ch, [](const auto &p) { return p.second.is_zero(); });
    }
    return a;
}

bool operator==(const InvariantForm &a, const InvariantForm &b) {
    return a.r == b.r && a.degree == b.degree && a.channels == b.channels;
}

InvariantForm wedge(const InvariantForm &a, const InvariantForm &b) {
    if (a.r != b.r) throw Error(Errc::ChannelMismatch, "different coframes");
    std::size_t na = a.channels.size(), nb = b.channels.size();
    if (na != nb && na != 1 && nb != 1) throw Error(Errc::ChannelMismatch, "channel counts do not combine");
    std::size_t n = std::max(na, nb);
    InvariantForm out(a.r, a.degree + b.degree, static_cast<int>(n));
    for (std::size_t ch = 0; ch < n; ++ch)
        for (const auto &[ta, va] : a.channels[na == 1 ? 0 : ch])
            for (const auto &[tb, vb] : b.channels[nb == 1 ? 0 : ch]) {
                InvariantForm::Term t = ta;
                t.insert(t.end(), tb.begin(), tb.end());
                out.add(static_cast<int>(ch), t, va * vb);
            }
    return out;
}

InvariantForm maurer_cartan(const LieAlgebraData &c, int alpha) {
    slot(c.r, alpha, 1, 1);
    InvariantForm f(c.r, 2);
    for (int b = 1; b <= c.r; ++b)
        for (int g = b + 1; g <= c.r; ++g)
            if (!c.c(b, g, alpha).is_zero()) f.add(0, {b, g}, -c.c(b, g, alpha));
    return f;
}

InvariantForm invariant_d(const LieAlgebraData &c, const InvariantForm &a) {
    if (a.r != c.r) throw Error(Errc::ChannelMismatch, "coframe size differs from the algebra");
    std::vector<InvariantForm> mc;
    for (int g = 1; g <= c.r; ++g) mc.push_back(maurer_cartan(c, g));
    InvariantForm out(a.r, a.degree + 1, static_cast<int>(a.channels.size()));
    for (std::size_t ch = 0; ch < a.channels.size(); ++ch)
        for (const auto &[t, v] : a.channels[ch])
            for (std::size_t j = 0; j < t.size(); ++j) {
                // eta^{t_0} ^ .. ^ d eta^{t_j} ^ .. , sign (-1)^j
                for (const auto &[pair, w] : mc[t[j] - 1].channels[0]) {
                    InvariantForm::Term u(t.begin(), t.begin() + j);
                    u.insert(u.end(), pair.begin(), pair.end());
                    u.insert(u.end(), t.begin() + j + 1, t.end());
                    Scalar s = v * w;
                    out.add(static_cast<int>(ch), u, j % 2 ? -s : s);
                }
            }
    return out;
}

bool invariant_d_squared_zero(const LieAlgebraData &c) {
    for (int a = 1; a <= c.r; ++a)
        if (!invariant_d(c, maurer_cartan(c, a)).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------- k-contact check

namespace {

void require_index_set(const LieAlgebraData &c, const std::vector<int> &A) {
    if (!validate_structure(c)) throw Error(Errc::PreconditionViolated, "structure constants fail antisymmetry or Jacobi");
    if (A.empty() || static_cast<int>(A.size()) >= c.r)
        throw Error(Errc::PreconditionViolated, "index set must have size 0 < k < r");
    std::set<int> seen;
    for (int a : A) {
        if (a < 1 || a > c.r) throw Error(Errc::PreconditionViolated, "index " + std::to_string(a) + " out of range");
        if (!seen.insert(a).second) throw Error(Errc::PreconditionViolated, "repeated index " + std::to_string(a));
    }
}

Row to_row(const ConstVector &v) { return Row(v.begin(), v.end()); }

ConstVector to_const(const Row &v) {
    ConstVector out;
    for (const auto &e : v) {
        if (!e.is_constant()) throw Error(Errc::Internal, "non-constant entry in a constant system");
        out.push_back(e.constant_value());
    }
    return out;
}

// rows (alpha in A, gamma): entry mu = coefficient of eta^gamma in i_{X_mu} d eta^alpha = -c_{mu gamma}^alpha
Matrix deta_rows(const LieAlgebraData &c, const std::vector<int> &A) {
    Matrix m;
    for (int al : A)
        for (int g = 1; g <= c.r; ++g) {
            Row row;
            for (int mu = 1; mu <= c.r; ++mu) row.push_back(Expr(-c.c(mu, g, al)));
            m.push_back(row);
        }
    return m;
}

} // namespace

InvariantKContactReport invariant_kcontact_check(const LieAlgebraData &c, const std::vector<int> &A) {
    require_index_set(c, A);
    int r = c.r, k = static_cast<int>(A.size());
    InvariantKContactReport rep;
    rep.A = A;
    for (int al : A) rep.deta.push_back(maurer_cartan(c, al));

    Matrix dm = deta_rows(c, A);
    for (const auto &v : nullspace(dm, r)) rep.kernel.push_back(to_const(v));
    rep.kernel_rank = static_cast<int>(rep.kernel.size());

    // ker eta is spanned by X_b, b not in A
    Matrix stack;
    for (int b = 1; b <= r; ++b)
        if (std::find(A.begin(), A.end(), b) == A.end()) {
            Row e(r, Expr());
            e[b - 1] = Expr(1);
            stack.push_back(e);
        }
    for (const auto &v : rep.kernel) stack.push_back(to_row(v));
    rep.union_rank = rank(stack, r);
    rep.pass = rep.kernel_rank == k && rep.union_rank == r;

    if (rep.pass) {
        std::vector<ConstVector> reeb;
        for (int a = 0; a < k; ++a) {
            Matrix m;
            Row rhs;
            for (int b = 0; b < k; ++b) {
                Row e(r, Expr());
                e[A[b] - 1] = Expr(1);
                m.push_back(e);
                rhs.push_back(Expr(a == b ? 1 : 0));
            }
            for (const auto &row : dm) {
                m.push_back(row);
                rhs.push_back(Expr());
            }
            LinearSolution s = solve(m, r, rhs);
            if (!s.unique()) throw Error(Errc::Internal, "Reeb system is not uniquely solvable");
            reeb.push_back(to_const(s.particular));
        }
        rep.reeb_is_basis = true;
        for (int a = 0; a < k; ++a)
            for (int mu = 1; mu <= r; ++mu)
                if (reeb[a][mu - 1] != Scalar(mu == A[a] ? 1 : 0)) rep.reeb_is_basis = false;
        rep.reeb = std::move(reeb);
    }

    // candidate frame (X_a), a in A
    rep.pairing = true; // eta^a(X_b) = delta by construction of the dual coframe
    rep.kernel_membership = true;
    for (int a : A)
        for (int al : A)
            for (int g = 1; g <= r; ++g)
                if (!c.c(a, g, al).is_zero()) rep.kernel_membership = false;
    rep.commuting = true;
    for (int a : A)
        for (int b : A)
            for (int g = 1; g <= r; ++g)
                if (!c.c(a, b, g).is_zero()) rep.commuting = false;
    return rep;
}

// ---------------------------------------------------------------- HDW on the group

std::string HdwInvariantSystem::unknown_name(int j) const {
    int a = j / r, b = j % r + 1;
    return "f" + std::to_string(A.at(a)) + "^" + std::to_string(b);
}

namespace {
bool all_zero(const Matrix &m) {
    for (const auto &row : m)
        for (const auto &e : row)
            if (!e.is_zero()) return false;
    return true;
}
} // namespace

bool HdwInvariantSystem::algebraic_trivial() const { return all_zero(algebraic); }
bool HdwInvariantSystem::pde_trivial() const { return all_zero(pde); }

HdwInvariantSystem hdw_invariant_system(const LieAlgebraData &c, const std::vector<int> &A) {
    InvariantKContactReport rep = invariant_kcontact_check(c, A);
    if (!rep.pass) throw Error(Errc::PreconditionViolated, "index set does not give a k-contact form");
    HdwInvariantSystem sys;
    sys.r = c.r;
    sys.A = A;
    int k = static_cast<int>(A.size()), n = k * c.r;
    auto row_for = [&](int g) {
        Row row(n, Expr());
        for (int a = 0; a < k; ++a)
            for (int b = 1; b <= c.r; ++b) row[a * c.r + b - 1] = Expr(c.c(b, g, A[a]));
        return row;
    };
    Matrix all;
    for (int g = 1; g <= c.r; ++g) {
        Row row = row_for(g);
        if (std::find(A.begin(), A.end(), g) != A.end()) {
            sys.algebraic.push_back(row);
        } else {
            sys.pde_labels.push_back(g);
            sys.pde.push_back(row);
        }
        all.push_back(row);
    }
    sys.trace.assign(n, Expr());
    for (int a = 0; a < k; ++a) sys.trace[a * c.r + A[a] - 1] = Expr(1);
    // constant coefficients: X_g of the trace vanishes
    for (const auto &v : nullspace(all, n)) sys.constant_solutions.push_back(to_const(v));
    return sys;
}

std::vector<ConstVector> hdw_commutators(const LieAlgebraData &c, const std::vector<int> &A, const ConstVector &f) {
    int k = static_cast<int>(A.size()), r = c.r;
    if (static_cast<int>(f.size()) != k * r) throw Error(Errc::PreconditionViolated, "coefficient vector has the wrong size");
    auto F = [&](int a, int b) { return f[a * r + b - 1]; };
    std::vector<ConstVector> out;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            ConstVector v(r);
            for (int kap = 1; kap <= r; ++kap)
                for (int pi = 1; pi <= r; ++pi) {
                    Scalar w = F(a, kap) * F(b, pi);
                    if (w.is_zero()) continue;
                    for (int nu = 1; nu <= r; ++nu) v[nu - 1] += w * c.c(kap, pi, nu);
                }
            out.push_back(v);
        }
    return out;
}

// ---------------------------------------------------------------- rh3 coordinates

CoordinateRealization rh3_coordinates() {
    CoordinateRealization R;
    R.chart = Chart::make("rh3", {"t", "a", "b", "c"}, {{GenKind::Exp, 0}});
    const ChartPtr &ch = R.chart;
    Expr et = Expr::gen(GenKind::Exp, 0), emt = Expr(1) / et;
    Expr a = Expr::coord(1), b = Expr::coord(2), c = Expr::coord(3);
    auto dx = [&](int i) { return Form::dx(ch, i); };
    // g^{-1} dg for g = exp(t) I + N
    R.coframe = {dx(0), emt * (dx(1) - a * dx(0)), emt * (dx(2) - b * dx(0)) + emt * emt * (a * c * dx(0) - a * dx(3)),
                 emt * (dx(3) - c * dx(0))};
    auto e = [&](int i) { return VectorField::basis(ch, i); };
    // g E_i
    R.frame = {e(0) + a * e(1) + b * e(2) + c * e(3), et * e(1), et * e(2), a * e(2) + et * e(3)};
    return R;
}

Form realize(const CoordinateRealization &R, const InvariantForm &f) {
    std::vector<Form> chans;
    for (std::size_t ch = 0; ch < f.channels.size(); ++ch) {
        Form out(R.chart, f.degree, 1);
        for (const auto &[t, v] : f.channels[ch]) {
            Form term = Form::function(R.chart, Expr(v));
            for (int i : t) term = wedge(term, R.coframe.at(i - 1));
            out += term;
        }
        chans.push_back(out);
    }
    return Form::stack(chans);
}

} // namespace kontakt
