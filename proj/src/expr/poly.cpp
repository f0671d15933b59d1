#include "kontakt/poly.hpp"

#include "kontakt/error.hpp"

#include <algorithm>
#include <sstream>

namespace kontakt {

// ---- Monomial ----

Monomial::Monomial(std::vector<Entry> e) : e_(std::move(e)) {
    std::sort(e_.begin(), e_.end());
    std::vector<Entry> out;
    for (const auto &x : e_) {
        if (x.second == 0) continue;
        if (!out.empty() && out.back().first == x.first)
            out.back().second += x.second;
        else
            out.push_back(x);
    }
    e_ = std::move(out);
    for (const auto &x : e_) deg_ += x.second;
}

std::uint32_t Monomial::exponent(Var v) const {
    for (const auto &x : e_)
        if (x.first == v) return x.second;
    return 0;
}

Monomial Monomial::operator*(const Monomial &o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
        if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
            r.e_.push_back(e_[i++]);
        } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
            r.e_.push_back(o.e_[j++]);
        } else {
            r.e_.emplace_back(e_[i].first, e_[i].second + o.e_[j].second);
            ++i;
            ++j;
        }
    }
    r.deg_ = deg_ + o.deg_;
    return r;
}

bool Monomial::divides(const Monomial &o) const {
    if (deg_ > o.deg_) return false;
    std::size_t j = 0;
    for (const auto &x : e_) {
        while (j < o.e_.size() && o.e_[j].first < x.first) ++j;
        if (j == o.e_.size() || o.e_[j].first != x.first || o.e_[j].second < x.second) return false;
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial &o) const {
    Monomial r;
    std::size_t i = 0;
    for (const auto &y : o.e_) {
        while (i < e_.size() && e_[i].first < y.first) ++i;
        std::uint32_t sub = (i < e_.size() && e_[i].first == y.first) ? e_[i].second : 0;
        if (y.second > sub) r.e_.emplace_back(y.first, y.second - sub);
    }
    r.deg_ = o.deg_ - deg_;
    return r;
}

Monomial Monomial::with_exponent(Var v, std::uint32_t e) const {
    std::vector<Entry> r;
    bool done = false;
    for (const auto &x : e_) {
        if (x.first == v) {
            if (e) r.emplace_back(v, e);
            done = true;
        } else {
            r.push_back(x);
        }
    }
    if (!done && e) r.emplace_back(v, e);
    return Monomial(std::move(r));
}

Monomial Monomial::gcd(const Monomial &o) const {
    std::vector<Entry> r;
    std::size_t j = 0;
    for (const auto &x : e_) {
        while (j < o.e_.size() && o.e_[j].first < x.first) ++j;
        if (j < o.e_.size() && o.e_[j].first == x.first)
            r.emplace_back(x.first, std::min(x.second, o.e_[j].second));
    }
    return Monomial(std::move(r));
}

int compare(const Monomial &a, const Monomial &b) {
    if (a.deg_ != b.deg_) return a.deg_ > b.deg_ ? 1 : -1;
    std::size_t n = std::min(a.e_.size(), b.e_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.e_[i].first != b.e_[i].first) return a.e_[i].first < b.e_[i].first ? 1 : -1;
        if (a.e_[i].second != b.e_[i].second) return a.e_[i].second > b.e_[i].second ? 1 : -1;
    }
    if (a.e_.size() != b.e_.size()) return a.e_.size() > b.e_.size() ? 1 : -1;
    return 0;
}

// ---- Poly ----

Poly::Poly(const Scalar &c) {
    if (!c.is_zero()) t_.push_back({Monomial(), c});
}

Poly Poly::var(Var v, std::uint32_t e) {
    Poly p;
    p.t_.push_back({Monomial({{v, e}}), Scalar(1)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> t) {
    std::sort(t.begin(), t.end(), [](const Term &a, const Term &b) { return compare(a.m, b.m) > 0; });
    Poly p;
    for (auto &x : t) {
        if (!p.t_.empty() && p.t_.back().m == x.m) {
            p.t_.back().c += x.c;
            if (p.t_.back().c.is_zero()) p.t_.pop_back();
        } else if (!x.c.is_zero()) {
            p.t_.push_back(std::move(x));
        }
    }
    // a zero sum may have left a gap in the combine chain; recombine if needed
    for (std::size_t i = 1; i < p.t_.size(); ++i) {
        if (p.t_[i].m == p.t_[i - 1].m) return from_terms(std::move(p.t_));
    }
    return p;
}

Scalar Poly::constant_value() const {
    if (t_.empty()) return Scalar();
    return t_[0].c;
}

std::uint32_t Poly::total_degree() const { return t_.empty() ? 0 : t_[0].m.degree(); }

std::vector<Var> Poly::vars() const {
    std::vector<Var> v;
    for (const auto &t : t_)
        for (const auto &e : t.m.entries()) v.push_back(e.first);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool Poly::has_var(Var v) const {
    for (const auto &t : t_)
        if (t.m.exponent(v)) return true;
    return false;
}

bool Poly::has_gen() const {
    for (const auto &t : t_)
        if (!t.m.entries().empty() && is_gen(t.m.entries().back().first)) return true;
    return false;
}

std::uint32_t Poly::degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto &t : t_) d = std::max(d, t.m.exponent(v));
    return d;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto &t : r.t_) t.c = -t.c;
    return r;
}

static std::vector<Term> merge_terms(const std::vector<Term> &a, const std::vector<Term> &b, bool sub) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size())
            c = -1;
        else if (j == b.size())
            c = 1;
        else
            c = compare(a[i].m, b[j].m);
        if (c > 0) {
            r.push_back(a[i++]);
        } else if (c < 0) {
            r.push_back(b[j++]);
            if (sub) r.back().c = -r.back().c;
        } else {
            Scalar s = sub ? a[i].c - b[j].c : a[i].c + b[j].c;
            if (!s.is_zero()) r.push_back({a[i].m, s});
            ++i;
            ++j;
        }
    }
    return r;
}

Poly &Poly::operator+=(const Poly &o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    t_ = merge_terms(t_, o.t_, false);
    return *this;
}

Poly &Poly::operator-=(const Poly &o) {
    if (o.t_.empty()) return *this;
    t_ = merge_terms(t_, o.t_, true);
    return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
    if (a.t_.empty() || b.t_.empty()) return Poly();
    if (a.is_constant()) return b.scaled(a.t_[0].c);
    if (b.is_constant()) return a.scaled(b.t_[0].c);
    if (a.t_.size() == 1) return b.times_monomial(a.t_[0].m, a.t_[0].c);
    if (b.t_.size() == 1) return a.times_monomial(b.t_[0].m, b.t_[0].c);
    std::vector<Term> r;
    r.reserve(a.t_.size() * b.t_.size());
    for (const auto &x : a.t_)
        for (const auto &y : b.t_) r.push_back({x.m * y.m, x.c * y.c});
    return Poly::from_terms(std::move(r));
}

Poly Poly::scaled(const Scalar &s) const {
    if (s.is_zero()) return Poly();
    if (s.is_one()) return *this;
    Poly r = *this;
    for (auto &t : r.t_) t.c *= s;
    return r;
}

Poly Poly::times_monomial(const Monomial &m, const Scalar &s) const {
    if (s.is_zero()) return Poly();
    Poly r;
    r.t_.reserve(t_.size());
    // multiplication by a monomial preserves the term order
    for (const auto &t : t_) r.t_.push_back({t.m * m, t.c * s});
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(1), b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool operator==(const Poly &a, const Poly &b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
        if (!(a.t_[i].m == b.t_[i].m) || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

Poly Poly::diff_symbol(Var v) const {
    std::vector<Term> r;
    for (const auto &t : t_) {
        std::uint32_t e = t.m.exponent(v);
        if (!e) continue;
        r.push_back({t.m.with_exponent(v, e - 1), t.c * Scalar(static_cast<long>(e))});
    }
    return from_terms(std::move(r));
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
    std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
    for (const auto &t : t_) {
        std::uint32_t e = t.m.exponent(v);
        buckets[e].push_back({t.m.with_exponent(v, 0), t.c});
    }
    std::vector<Poly> r;
    r.reserve(buckets.size());
    for (auto &b : buckets) r.push_back(from_terms(std::move(b)));
    return r;
}

Poly Poly::lead_in(Var v) const {
    std::uint32_t d = degree_in(v);
    std::vector<Term> r;
    for (const auto &t : t_)
        if (t.m.exponent(v) == d) r.push_back({t.m.with_exponent(v, 0), t.c});
    return from_terms(std::move(r));
}

Monomial Poly::min_monomial() const {
    if (t_.empty()) return Monomial();
    Monomial g = t_[0].m;
    for (std::size_t i = 1; i < t_.size() && !g.is_one(); ++i) g = g.gcd(t_[i].m);
    return g;
}

Poly Poly::div_monomial(const Monomial &m) const {
    if (m.is_one()) return *this;
    Poly r;
    r.t_.reserve(t_.size());
    for (const auto &t : t_) r.t_.push_back({m.quotient_of(t.m), t.c});
    return r;
}

// ---- division and gcd ----

Poly monic(const Poly &p) {
    if (p.is_zero() || p.lead_coeff().is_one()) return p;
    return p.scaled(p.lead_coeff().inverse());
}

bool divide_exact(const Poly &a, const Poly &b, Poly &q) {
    if (b.is_zero()) throw Error(Errc::ZeroDenominator, "polynomial division by zero");
    if (a.is_zero()) {
        q = Poly();
        return true;
    }
    if (b.is_constant()) {
        q = a.scaled(b.constant_value().inverse());
        return true;
    }
    if (b.total_degree() > a.total_degree()) return false;
    for (Var v : b.vars())
        if (b.degree_in(v) > a.degree_in(v)) return false;
    Poly r = a;
    std::vector<Term> qt;
    Scalar inv = b.lead_coeff().inverse();
    const Monomial &bm = b.lead_monomial();
    while (!r.is_zero()) {
        if (!bm.divides(r.lead_monomial())) return false;
        Monomial m = bm.quotient_of(r.lead_monomial());
        Scalar c = r.lead_coeff() * inv;
        r -= b.times_monomial(m, c);
        qt.push_back({m, c});
    }
    q = Poly::from_terms(std::move(qt));
    return true;
}

namespace {

Poly exact(const Poly &a, const Poly &b) {
    Poly q;
    if (!divide_exact(a, b, q)) throw Error(Errc::Internal, "inexact division in gcd");
    return q;
}

// scales p so rational coefficients become coprime integers (monic if any coefficient is irrational)
Poly numeric_primitive(const Poly &p) {
    if (p.is_zero()) return p;
    mpz_class den = 1, num = 0;
    for (const auto &t : p.terms()) {
        if (!t.c.is_rational()) return monic(p);
        const mpq_class &q = t.c[0];
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
    }
    mpq_class f(den, num);
    f.canonicalize();
    if (p.lead_coeff().lead_sign() < 0) f = -f;
    if (f == 1) return p;
    return p.scaled(Scalar(f));
}

Poly content_in(const Poly &p, Var v) {
    Poly g;
    for (const auto &c : p.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Poly prem(Poly a, const Poly &b, Var v) {
    std::uint32_t d = b.degree_in(v);
    Poly lc = b.lead_in(v);
    while (!a.is_zero()) {
        std::uint32_t da = a.degree_in(v);
        if (da < d) break;
        Poly la = a.lead_in(v);
        a = lc * a - la * b * Poly::var(v, da - d);
    }
    return a;
}

// ---- modular images, used to bound gcd degrees ----

constexpr std::uint64_t kP = 2147483497; // prime, 1 mod 24, so 2 and 3 are squares
constexpr std::uint64_t kSqrt2 = 974023842, kSqrt3 = 95134852;

std::uint64_t mulm(std::uint64_t a, std::uint64_t b) { return a * b % kP; }

std::uint64_t powm(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= kP;
    while (e) {
        if (e & 1) r = mulm(r, a);
        a = mulm(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t invm(std::uint64_t a) { return powm(a, kP - 2); }

bool rat_mod(const mpq_class &q, std::uint64_t &out) {
    mpz_class n = q.get_num() % static_cast<unsigned long>(kP);
    if (n < 0) n += static_cast<unsigned long>(kP);
    mpz_class d = q.get_den() % static_cast<unsigned long>(kP);
    if (d == 0) return false;
    out = mulm(n.get_ui(), invm(d.get_ui()));
    return true;
}

bool scalar_mod(const Scalar &c, std::uint64_t &out) {
    static const std::uint64_t basis[4] = {1, kSqrt2, kSqrt3, kSqrt2 * kSqrt3 % kP};
    std::uint64_t acc = 0;
    for (int i = 0; i < 4; ++i) {
        if (c[i] == 0) continue;
        std::uint64_t r;
        if (!rat_mod(c[i], r)) return false;
        acc = (acc + mulm(r, basis[i])) % kP;
    }
    out = acc;
    return true;
}

std::uint64_t point_value(Var v) {
    // fixed pseudo-random evaluation point
    std::uint64_t h = (static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL) * 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
    return h % (kP - 2) + 2;
}

using UPoly = std::vector<std::uint64_t>; // dense, low degree first

void trim(UPoly &u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
}

bool image_in(const Poly &p, Var v, UPoly &out) {
    out.assign(p.degree_in(v) + 1, 0);
    for (const auto &t : p.terms()) {
        std::uint64_t c;
        if (!scalar_mod(t.c, c)) return false;
        std::uint32_t k = 0;
        for (const auto &[w, e] : t.m.entries()) {
            if (w == v)
                k = e;
            else
                c = mulm(c, powm(point_value(w), e));
        }
        out[k] = (out[k] + c) % kP;
    }
    return true;
}

int ugcd_degree(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a := a mod b
        std::uint64_t inv = invm(b.back());
        while (a.size() >= b.size()) {
            std::uint64_t f = mulm(a.back(), inv);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + kP - mulm(f, b[i])) % kP;
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : static_cast<int>(a.size()) - 1;
}

// upper bound for the degree in v of gcd(a, b); -1 when the image is unusable
int gcd_degree_bound(const Poly &a, const Poly &b, Var v) {
    UPoly ia, ib;
    if (!image_in(a, v, ia) || !image_in(b, v, ib)) return -1;
    if (ia.empty() || ib.empty() || ia.back() == 0 || ib.back() == 0) return -1;
    return ugcd_degree(std::move(ia), std::move(ib));
}

Poly gcd_core(Poly a, Poly b) {
    if (a.is_constant() || b.is_constant()) return Poly(1);
    Poly q;
    if (a.size() >= b.size()) {
        if (divide_exact(a, b, q)) return monic(b);
    } else if (divide_exact(b, a, q)) {
        return monic(a);
    }
    auto va = a.vars(), vb = b.vars();
    for (Var v : va)
        if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_in(a, v), b);
    for (Var v : vb)
        if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_in(b, v));
    std::vector<int> bound(va.size());
    bool trivial = true;
    for (std::size_t i = 0; i < va.size(); ++i) {
        bound[i] = gcd_degree_bound(a, b, va[i]);
        if (bound[i] != 0) trivial = false;
    }
    if (trivial) return Poly(1);
    for (std::size_t i = 0; i < va.size(); ++i)
        if (bound[i] == 0) return gcd(content_in(a, va[i]), content_in(b, va[i]));
    // main variable: smallest combined degree
    Var v = va[0];
    int target = -1;
    std::uint32_t best = ~0u;
    for (std::size_t i = 0; i < va.size(); ++i) {
        Var w = va[i];
        std::uint32_t d = std::max(a.degree_in(w), b.degree_in(w));
        if (d < best) {
            best = d;
            v = w;
            target = bound[i];
        }
    }
    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly c = gcd(ca, cb);
    Poly pa = numeric_primitive(exact(a, ca)), pb = numeric_primitive(exact(b, cb));
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    Poly g;
    for (;;) {
        Poly r = prem(pa, pb, v);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.degree_in(v) == 0) {
            g = Poly(1);
            break;
        }
        r = numeric_primitive(exact(r, content_in(r, v)));
        pa = std::move(pb);
        pb = std::move(r);
        if (target > 0 && static_cast<int>(pb.degree_in(v)) == target) {
            Poly q1, q2;
            if (divide_exact(pa, pb, q1) && divide_exact(a, pb, q1) && divide_exact(b, pb, q2)) {
                g = pb;
                break;
            }
        }
    }
    if (!g.is_constant()) g = exact(g, content_in(g, v));
    return monic(c * g);
}

} // namespace

Poly gcd(const Poly &a, const Poly &b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);
    Monomial ma = a.min_monomial(), mb = b.min_monomial();
    Monomial mg = ma.gcd(mb);
    Poly g = gcd_core(a.div_monomial(ma), b.div_monomial(mb));
    return monic(g.times_monomial(mg, Scalar(1)));
}

// ---- generators ----

Poly pythagorean_reduce(const Poly &p) {
    if (!p.has_gen()) return p;
    bool needed = false;
    for (const auto &t : p.terms())
        for (const auto &[v, e] : t.m.entries())
            if (is_gen(v) && gen_kind(v) == GenKind::Cos && e >= 2) needed = true;
    if (!needed) return p;
    Poly acc;
    for (const auto &t : p.terms()) {
        Poly cur = Poly::from_terms({t});
        for (const auto &[v, e] : t.m.entries()) {
            if (!(is_gen(v) && gen_kind(v) == GenKind::Cos && e >= 2)) continue;
            std::vector<Term> shifted;
            for (const auto &ct : cur.terms()) shifted.push_back({ct.m.with_exponent(v, e % 2), ct.c});
            Var s = gen_var(GenKind::Sin, gen_coord(v));
            Poly one_minus = Poly(1) - Poly::var(s, 2);
            cur = Poly::from_terms(std::move(shifted)) * one_minus.pow(e / 2);
        }
        acc += cur;
    }
    return acc;
}

Poly diff_coord(const Poly &p, int coord) {
    Var x = static_cast<Var>(coord);
    Var vs = gen_var(GenKind::Sin, coord), vc = gen_var(GenKind::Cos, coord),
        ve = gen_var(GenKind::Exp, coord);
    std::vector<Term> r;
    for (const auto &t : p.terms()) {
        for (const auto &[v, e] : t.m.entries()) {
            Scalar k(static_cast<long>(e));
            if (v == x) {
                r.push_back({t.m.with_exponent(v, e - 1), t.c * k});
            } else if (v == vs) {
                Monomial m = t.m.with_exponent(vs, e - 1);
                r.push_back({m.with_exponent(vc, m.exponent(vc) + 1), t.c * k});
            } else if (v == vc) {
                Monomial m = t.m.with_exponent(vc, e - 1);
                r.push_back({m.with_exponent(vs, m.exponent(vs) + 1), -(t.c * k)});
            } else if (v == ve) {
                r.push_back({t.m, t.c * k});
            }
        }
    }
    return pythagorean_reduce(Poly::from_terms(std::move(r)));
}

// ---- printing ----

std::string symbol_name(Var v, const NameFn &name) {
    if (!is_gen(v)) return name(static_cast<int>(v));
    static const char *kinds[3] = {"sin", "cos", "exp"};
    return std::string(kinds[static_cast<int>(gen_kind(v))]) + "(" + name(gen_coord(v)) + ")";
}

std::string to_string(const Poly &p, const NameFn &name) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &t : p.terms()) {
        std::string mono;
        for (const auto &[v, e] : t.m.entries()) {
            if (!mono.empty()) mono += "*";
            mono += symbol_name(v, name);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string coef;
        bool neg = false;
        Scalar c = t.c;
        if (!c.is_compound() && c.lead_sign() < 0) {
            neg = true;
            c = -c;
        }
        std::string s;
        if (mono.empty())
            s = c.str();
        else if (c.is_one())
            s = mono;
        else
            s = c.str() + "*" + mono;
        if (first)
            os << (neg ? "-" : "") << s;
        else
            os << (neg ? " - " : " + ") << s;
        first = false;
    }
    return os.str();
}

} // namespace kontakt
