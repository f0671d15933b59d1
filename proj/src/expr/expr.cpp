#include "kontakt/expr.hpp"

#include "kontakt/error.hpp"

#include <cmath>
#include <map>

namespace kontakt {

namespace {

Poly exact_quotient(const Poly &a, const Poly &b) {
    Poly q;
    if (!divide_exact(a, b, q)) throw Error(Errc::Internal, "expected exact division");
    return q;
}

void make_monic(Poly &n, Poly &d) {
    if (d.is_constant()) {
        Scalar c = d.constant_value();
        if (!c.is_one()) n = n.scaled(c.inverse());
        d = Poly(1);
        return;
    }
    const Scalar &lc = d.lead_coeff();
    if (lc.is_one()) return;
    Scalar inv = lc.inverse();
    n = n.scaled(inv);
    d = d.scaled(inv);
}

void canon(Poly &n, Poly &d) {
    if (d.is_zero()) throw Error(Errc::ZeroDenominator, "zero denominator");
    n = pythagorean_reduce(n);
    d = pythagorean_reduce(d);
    if (d.is_zero()) throw Error(Errc::ZeroDenominator, "denominator reduces to zero");
    if (n.is_zero()) {
        d = Poly(1);
        return;
    }
    if (!d.is_constant()) {
        Poly g = gcd(n, d);
        if (!g.is_constant()) {
            n = exact_quotient(n, g);
            d = exact_quotient(d, g);
        }
    }
    make_monic(n, d);
}

} // namespace

Expr::Expr(const Poly &p) : num_(pythagorean_reduce(p)), den_(1) {}

Expr Expr::ratio(const Poly &num, const Poly &den) {
    Expr e;
    e.num_ = num;
    e.den_ = den;
    canon(e.num_, e.den_);
    return e;
}

bool Expr::depends_on(int coord) const {
    Var x = static_cast<Var>(coord);
    for (const Poly *p : {&num_, &den_})
        for (Var v : p->vars())
            if (v == x || (is_gen(v) && gen_coord(v) == coord)) return true;
    return false;
}

Expr Expr::operator-() const {
    Expr r = *this;
    r.num_ = -r.num_;
    return r;
}

Expr &Expr::operator+=(const Expr &o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (is_polynomial() && o.is_polynomial()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        Poly n = num_ + o.num_;
        Poly d = den_;
        canon(n, d);
        num_ = std::move(n);
        den_ = std::move(d);
        return *this;
    }
    Poly g = gcd(den_, o.den_);
    Poly a = exact_quotient(den_, g), b = exact_quotient(o.den_, g);
    Poly n = num_ * b + o.num_ * a;
    Poly d = den_ * b;
    canon(n, d);
    num_ = std::move(n);
    den_ = std::move(d);
    return *this;
}

Expr &Expr::operator-=(const Expr &o) { return *this += -o; }

Expr &Expr::operator*=(const Expr &o) {
    if (is_zero() || o.is_zero()) return *this = Expr();
    if (is_polynomial() && o.is_polynomial()) {
        num_ = pythagorean_reduce(num_ * o.num_);
        return *this;
    }
    if (has_gen() || o.has_gen()) {
        Poly n = num_ * o.num_, d = den_ * o.den_;
        canon(n, d);
        num_ = std::move(n);
        den_ = std::move(d);
        return *this;
    }
    // both sides are in lowest terms, so cross cancellation suffices
    Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
    if (!d2.is_constant()) {
        Poly g = gcd(n1, d2);
        if (!g.is_constant()) {
            n1 = exact_quotient(n1, g);
            d2 = exact_quotient(d2, g);
        }
    }
    if (!d1.is_constant()) {
        Poly g = gcd(n2, d1);
        if (!g.is_constant()) {
            n2 = exact_quotient(n2, g);
            d1 = exact_quotient(d1, g);
        }
    }
    num_ = n1 * n2;
    den_ = d1 * d2;
    make_monic(num_, den_);
    return *this;
}

Expr Expr::inverse() const {
    if (is_zero()) throw Error(Errc::ZeroDenominator, "inverse of zero");
    Expr r;
    r.num_ = den_;
    r.den_ = num_;
    make_monic(r.num_, r.den_);
    return r;
}

Expr &Expr::operator/=(const Expr &o) { return *this *= o.inverse(); }

Expr Expr::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Expr r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

bool operator==(const Expr &a, const Expr &b) {
    if (a.is_polynomial() && b.is_polynomial()) return a.num_ == b.num_;
    if (!a.has_gen() && !b.has_gen()) return a.num_ == b.num_ && a.den_ == b.den_;
    return pythagorean_reduce(a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

Expr Expr::diff(int coord) const {
    if (is_polynomial()) return Expr(diff_coord(num_, coord));
    Poly dn = diff_coord(num_, coord), dd = diff_coord(den_, coord);
    if (dd.is_zero()) {
        Poly n = dn, d = den_;
        canon(n, d);
        Expr r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }
    Poly n = dn * den_ - num_ * dd;
    Poly d = den_ * den_;
    canon(n, d);
    Expr r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
}

namespace {
Expr eval_poly(const Poly &p, const std::function<Expr(Var)> &sub, std::map<Var, Expr> &cache) {
    Expr acc;
    for (const auto &t : p.terms()) {
        Expr term(t.c);
        for (const auto &[v, e] : t.m.entries()) {
            auto it = cache.find(v);
            if (it == cache.end()) it = cache.emplace(v, sub(v)).first;
            term *= it->second.pow(static_cast<int>(e));
        }
        acc += term;
    }
    return acc;
}
} // namespace

Expr Expr::substitute(const std::function<Expr(Var)> &sub) const {
    std::map<Var, Expr> cache;
    Expr n = eval_poly(num_, sub, cache);
    if (is_polynomial()) return n;
    return n / eval_poly(den_, sub, cache);
}

std::string Expr::str(const NameFn &name) const {
    if (is_polynomial()) return to_string(num_, name);
    // print with an integer denominator when possible
    Poly np = num_, dp = den_;
    mpz_class l = 1;
    bool rational = true;
    for (const auto &t : dp.terms()) {
        if (!t.c.is_rational()) rational = false;
        else mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c[0].get_den_mpz_t());
    }
    if (rational && l != 1) {
        np = np.scaled(Scalar(mpq_class(l)));
        dp = dp.scaled(Scalar(mpq_class(l)));
    }
    std::string n = to_string(np, name);
    if (np.size() > 1 || !np.lead_coeff().is_rational() || np.lead_coeff()[0].get_den() != 1) n = "(" + n + ")";
    std::string d = to_string(dp, name);
    bool bare = dp.size() == 1 && dp.lead_coeff().is_one() && dp.lead_monomial().entries().size() == 1;
    if (!bare) d = "(" + d + ")";
    return n + "/" + d;
}

Expr normalize(const Expr &e) { return Expr::ratio(e.num(), e.den()); }

Expr differentiate(const Expr &e, int coord, int dim) {
    if (coord < 0 || coord >= dim)
        throw Error(Errc::UnknownCoordinate, "coordinate index " + std::to_string(coord));
    return e.diff(coord);
}

std::optional<Scalar> eval_exact(const Poly &p, const std::vector<Scalar> &point) {
    Scalar acc;
    for (const auto &t : p.terms()) {
        Scalar term = t.c;
        for (const auto &[v, e] : t.m.entries()) {
            if (is_gen(v)) return std::nullopt;
            if (v >= point.size()) throw Error(Errc::UnknownCoordinate, "point does not assign coordinate");
            for (std::uint32_t k = 0; k < e; ++k) term *= point[v];
        }
        acc += term;
    }
    return acc;
}

double eval_double(const Poly &p, const std::vector<Scalar> &point) {
    double acc = 0.0;
    for (const auto &t : p.terms()) {
        double term = t.c.to_double();
        for (const auto &[v, e] : t.m.entries()) {
            double x;
            if (is_gen(v)) {
                int c = gen_coord(v);
                if (c >= static_cast<int>(point.size()))
                    throw Error(Errc::UnknownCoordinate, "point does not assign coordinate");
                double a = point[c].to_double();
                switch (gen_kind(v)) {
                case GenKind::Sin: x = std::sin(a); break;
                case GenKind::Cos: x = std::cos(a); break;
                default: x = std::exp(a); break;
                }
            } else {
                if (v >= point.size()) throw Error(Errc::UnknownCoordinate, "point does not assign coordinate");
                x = point[v].to_double();
            }
            term *= std::pow(x, static_cast<double>(e));
        }
        acc += term;
    }
    return acc;
}

Value evaluate_at(const Expr &e, const std::vector<Scalar> &point) {
    Value v;
    if (!e.has_gen()) {
        Scalar d = *eval_exact(e.den(), point);
        if (d.is_zero()) throw Error(Errc::PoleAtPoint, "denominator vanishes at point");
        v.exact = true;
        v.exact_value = *eval_exact(e.num(), point) / d;
        v.approx = v.exact_value.to_double();
        return v;
    }
    double d = eval_double(e.den(), point);
    if (std::fabs(d) < 1e-12) throw Error(Errc::PoleAtPoint, "denominator vanishes at point");
    v.exact = false;
    v.approx = eval_double(e.num(), point) / d;
    return v;
}

} // namespace kontakt
