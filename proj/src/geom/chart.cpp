#include "kontakt/error.hpp"
#include "kontakt/geom.hpp"

#include "format.hpp"

#include <set>

namespace kontakt {

ChartPtr Chart::make(std::string name, std::vector<std::string> coords, std::vector<GenDecl> gens) {
    if (coords.empty()) throw Error(Errc::PreconditionViolated, "chart '" + name + "' has no coordinates");
    std::set<std::string> seen;
    for (const auto &c : coords)
        if (!seen.insert(c).second)
            throw Error(Errc::PreconditionViolated, "coordinate '" + c + "' repeated in chart '" + name + "'");
    std::vector<GenDecl> full;
    auto push = [&](GenDecl g) {
        for (const auto &h : full)
            if (h == g) return;
        full.push_back(g);
    };
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (gens[i] == gens[j]) throw Error(Errc::PreconditionViolated, "generator declared twice");
        if (gens[i].coord < 0 || gens[i].coord >= static_cast<int>(coords.size()))
            throw Error(Errc::UnknownCoordinate, "generator argument out of range");
    }
    for (const auto &g : gens) {
        if (g.kind == GenKind::Exp) {
            push(g);
        } else {
            push({GenKind::Sin, g.coord});
            push({GenKind::Cos, g.coord});
        }
    }
    auto c = std::shared_ptr<Chart>(new Chart());
    c->name_ = std::move(name);
    c->coords_ = std::move(coords);
    c->gens_ = std::move(full);
    return c;
}

int Chart::index(const std::string &coord) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] == coord) return static_cast<int>(i);
    return -1;
}

int Chart::require(const std::string &coord) const {
    int i = index(coord);
    if (i < 0) throw Error(Errc::UnknownCoordinate, "'" + coord + "' is not a coordinate of chart '" + name_ + "'");
    return i;
}

bool Chart::declares(GenKind k, int coord) const {
    for (const auto &g : gens_)
        if (g.kind == k && g.coord == coord) return true;
    return false;
}

NameFn Chart::namer() const {
    auto coords = coords_;
    return [coords](int i) { return coords[i]; };
}

ParseContext Chart::context() const {
    ParseContext ctx;
    ctx.coords = coords_;
    ctx.restrict_gens = true;
    ctx.gens = gens_;
    return ctx;
}

Expr Chart::parse(std::string_view text) const { return parse_expr(text, context()); }

bool same_chart(const ChartPtr &a, const ChartPtr &b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->name() == b->name() && a->coords() == b->coords() && a->gens() == b->gens();
}

void require_same_chart(const ChartPtr &a, const ChartPtr &b) {
    if (!same_chart(a, b))
        throw Error(Errc::ChartMismatch, "objects live on charts '" + (a ? a->name() : std::string("?")) + "' and '" +
                                             (b ? b->name() : std::string("?")) + "'");
}

// ---- VectorField ----

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart)), c_(chart_->dim()) {}

VectorField::VectorField(ChartPtr chart, std::vector<Expr> comps) : chart_(std::move(chart)), c_(std::move(comps)) {
    if (static_cast<int>(c_.size()) != chart_->dim())
        throw Error(Errc::ArityMismatch, "vector field needs " + std::to_string(chart_->dim()) + " components");
}

VectorField VectorField::basis(ChartPtr chart, int i) {
    VectorField v(std::move(chart));
    v.c_.at(i) = Expr(1);
    return v;
}

bool VectorField::is_zero() const {
    for (const auto &e : c_)
        if (!e.is_zero()) return false;
    return true;
}

Expr VectorField::apply(const Expr &f) const {
    Expr acc;
    for (int i = 0; i < dim(); ++i)
        if (!c_[i].is_zero() && f.depends_on(i)) acc += c_[i] * f.diff(i);
    return acc;
}

VectorField &VectorField::operator+=(const VectorField &o) {
    require_same_chart(chart_, o.chart_);
    for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
    return *this;
}

VectorField &VectorField::operator-=(const VectorField &o) {
    require_same_chart(chart_, o.chart_);
    for (int i = 0; i < dim(); ++i) c_[i] -= o.c_[i];
    return *this;
}

VectorField operator*(const Expr &f, const VectorField &v) {
    VectorField r = v;
    for (auto &c : r.c_) c = f * c;
    return r;
}

VectorField VectorField::operator-() const {
    VectorField r = *this;
    for (auto &c : r.c_) c = -c;
    return r;
}

bool operator==(const VectorField &a, const VectorField &b) {
    if (!same_chart(a.chart_, b.chart_)) return false;
    for (int i = 0; i < a.dim(); ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

std::string VectorField::str() const {
    std::vector<std::string> terms;
    auto name = chart_->namer();
    for (int i = 0; i < dim(); ++i)
        if (!c_[i].is_zero()) terms.push_back(detail::scaled_atom(c_[i], "d/d" + chart_->coords()[i], name));
    return detail::join_terms(terms);
}

namespace detail {

std::string scaled_atom(const Expr &c, const std::string &atom, const NameFn &name) {
    if (c == Expr(1)) return atom;
    if (c == Expr(-1)) return "-" + atom;
    std::string s = c.str(name);
    bool simple = c.is_polynomial() && c.num().size() == 1;
    if (!simple) s = "(" + s + ")";
    return s + "*" + atom;
}

std::string join_terms(const std::vector<std::string> &terms) {
    if (terms.empty()) return "0";
    std::string out = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i][0] == '-')
            out += " - " + terms[i].substr(1);
        else
            out += " + " + terms[i];
    }
    return out;
}

} // namespace detail

} // namespace kontakt
