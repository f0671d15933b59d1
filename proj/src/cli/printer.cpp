#include "kontakt/cli.hpp"

#include <sstream>

namespace kontakt::cli {

namespace {

std::string join(const std::vector<std::string> &v, const char *sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string ints(const std::vector<int> &v, const char *open, const char *close) {
    std::vector<std::string> s;
    for (int i : v) s.push_back(std::to_string(i));
    return open + join(s) + close;
}

std::string form_text(const Form &f) {
    std::vector<std::string> ch;
    for (int a = 0; a < f.channels(); ++a) ch.push_back(f.channel_str(a));
    return join(ch, " ; ");
}

void print_chart(std::ostream &os, const ModelChart &c) {
    if (c.jet) {
        const JetChart &J = *c.jet;
        std::vector<std::string> base, fibre, derivs;
        for (int i : J.x) base.push_back(c.chart->coords()[i]);
        for (int a : J.y) fibre.push_back(c.chart->coords()[a]);
        for (const auto &row : J.yi)
            for (int j : row) derivs.push_back(c.chart->coords()[j]);
        os << "jet " << c.name << " base [" << join(base) << "] fibre [" << join(fibre) << "] derivs ["
           << join(derivs) << "]\n";
        return;
    }
    os << "chart " << c.name << " coords [" << join(c.chart->coords()) << "]\n";
    for (const auto &g : c.chart->gens()) {
        if (g.kind == GenKind::Cos && c.chart->declares(GenKind::Sin, g.coord)) continue;
        const char *fn = g.kind == GenKind::Exp ? "exp" : g.kind == GenKind::Sin ? "sin" : "cos";
        os << "trans " << fn << "(" << c.chart->coords()[g.coord] << ")\n";
    }
}

void print_check(std::ostream &os, const Model &m, const CheckDirective &c) {
    os << "check " << c.kind << " " << c.target;
    ChartPtr chart = c.chart.empty() ? nullptr : m.chart(c.chart)->chart;
    if (c.with) os << " with " << *c.with;
    if (!c.sym.empty()) os << " sym [" << join(c.sym) << "]";
    if (!c.A.empty()) os << " A " << ints(c.A, "{", "}");
    if (c.max) os << " max " << *c.max;
    for (const auto &p : c.points) {
        std::vector<std::string> s;
        for (const auto &x : p) s.push_back(x.str());
        os << " at (" << join(s) << ")";
    }
    if (c.expect_status) os << " expect " << *c.expect_status;
    if (c.expect_bool) os << " expect " << (*c.expect_bool ? "true" : "false");
    if (c.expect_growth) os << " expect " << ints(*c.expect_growth, "(", ")");
    if (!c.expect_names.empty()) {
        if (c.kind == "reeb" || c.kind == "kernel")
            os << " expect [" << join(c.expect_names) << "]";
        else
            os << " expect " << c.expect_names[0];
    }
    for (const auto &g : c.expect_growth_at) os << " expect_at " << ints(g, "(", ")");
    if (c.factor) os << " factor " << c.factor->str(chart->namer());
    for (const auto &[label, f] : c.expect_d) os << "\n    d " << label << " = " << f.str();
    if (c.algebraic_rank) os << " algebraic_rank " << *c.algebraic_rank;
    if (c.pde_rank) os << " pde_rank " << *c.pde_rank;
    if (c.solutions) os << " solutions " << *c.solutions;
    if (!c.characteristic.empty()) {
        std::vector<std::string> s;
        for (const auto &e : c.characteristic) s.push_back(e.str(chart->namer()));
        os << " char (" << join(s) << ")";
    }
    os << "\n";
}

bool same_chart_decl(const ModelChart &a, const ModelChart &b) {
    if (a.name != b.name || a.chart->coords() != b.chart->coords() || a.chart->gens() != b.chart->gens()) return false;
    if (a.jet.has_value() != b.jet.has_value()) return false;
    if (a.jet && (a.jet->x != b.jet->x || a.jet->y != b.jet->y || a.jet->yi != b.jet->yi)) return false;
    return true;
}

bool same_check(const CheckDirective &a, const CheckDirective &b) {
    return a.kind == b.kind && a.target == b.target && a.chart == b.chart && a.with == b.with && a.sym == b.sym &&
           a.A == b.A && a.max == b.max && a.points == b.points && a.expect_status == b.expect_status &&
           a.expect_bool == b.expect_bool && a.expect_growth == b.expect_growth &&
           a.expect_growth_at == b.expect_growth_at && a.expect_names == b.expect_names && a.factor == b.factor &&
           a.expect_d == b.expect_d && a.algebraic_rank == b.algebraic_rank && a.pde_rank == b.pde_rank &&
           a.solutions == b.solutions && a.characteristic == b.characteristic;
}

template <class T, class Eq> bool same_list(const std::vector<T> &a, const std::vector<T> &b, Eq eq) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq(a[i], b[i])) return false;
    return true;
}

} // namespace

std::string print_model(const Model &m) {
    std::ostringstream os;
    for (const auto &c : m.charts) {
        print_chart(os, c);
        for (const auto &f : m.fields)
            if (f.chart == c.name) os << "vf " << f.name << " = " << f.value.str() << "\n";
        for (const auto &f : m.forms)
            if (f.chart == c.name)
                os << "form " << f.name << " channels " << f.value.channels() << " = " << form_text(f.value) << "\n";
        for (const auto &d : m.dists)
            if (d.chart == c.name) os << "dist " << d.name << " = [" << join(d.gens) << "]\n";
    }
    for (const auto &a : m.algebras) os << export_algebra(a.data);
    for (const auto &c : m.checks) print_check(os, m, c);
    return os.str();
}

bool structurally_equal(const Model &a, const Model &b) {
    return same_list(a.charts, b.charts, same_chart_decl) &&
           same_list(a.fields, b.fields,
                     [](const NamedField &x, const NamedField &y) {
                         return x.name == y.name && x.chart == y.chart && x.value == y.value;
                     }) &&
           same_list(a.forms, b.forms,
                     [](const NamedForm &x, const NamedForm &y) {
                         return x.name == y.name && x.chart == y.chart && x.value == y.value;
                     }) &&
           same_list(a.dists, b.dists,
                     [](const NamedDist &x, const NamedDist &y) {
                         return x.name == y.name && x.chart == y.chart && x.gens == y.gens;
                     }) &&
           same_list(a.algebras, b.algebras,
                     [](const NamedAlgebra &x, const NamedAlgebra &y) {
                         return x.name == y.name && x.data.r == y.data.r && x.data.consts == y.data.consts;
                     }) &&
           same_list(a.checks, b.checks, same_check);
}

std::string export_algebra(const LieAlgebraData &c) {
    std::ostringstream os;
    os << "algebra " << c.name << " dim " << c.r << " {\n";
    for (int a = 1; a <= c.r; ++a)
        for (int b = a + 1; b <= c.r; ++b)
            for (int g = 1; g <= c.r; ++g)
                if (!c.c(a, b, g).is_zero())
                    os << "    c[" << a << " " << b << " " << g << "] = " << c.c(a, b, g).str() << "\n";
    os << "}\n";
    return os.str();
}

std::string export_jet_corpus(const JetCorpus &C) {
    Model m;
    m.name = C.name;
    ModelChart mc;
    mc.name = C.chart.chart->name();
    mc.chart = C.chart.chart;
    mc.jet = C.chart;
    m.charts.push_back(mc);
    for (const auto &e : C.entries) {
        m.fields.push_back({e.name, mc.name, as_vector_field(C.chart, e.field)});
        m.fields.push_back({"pr_" + e.name, mc.name, e.expected_pr});
        CheckDirective c;
        c.kind = "prolong";
        c.target = e.name;
        c.chart = mc.name;
        c.expect_names = {"pr_" + e.name};
        for (int a = 0; a < C.chart.k; ++a) c.characteristic.push_back(e.expected_h.value(a));
        m.checks.push_back(std::move(c));
    }
    return print_model(m);
}

} // namespace kontakt::cli
