#pragma once

#include "kontakt/scalar.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kontakt {

using Var = std::uint32_t;

// Symbol ids: coordinates are 0..dim-1, generator symbols live above kGenBase.
enum class GenKind : std::uint32_t { Sin = 0, Cos = 1, Exp = 2 };
constexpr Var kGenBase = 1u << 24;

inline Var gen_var(GenKind k, int coord) {
    return kGenBase + 3u * static_cast<Var>(coord) + static_cast<Var>(k);
}
inline bool is_gen(Var v) { return v >= kGenBase; }
inline GenKind gen_kind(Var v) { return static_cast<GenKind>((v - kGenBase) % 3); }
inline int gen_coord(Var v) { return static_cast<int>((v - kGenBase) / 3); }

class Monomial {
public:
    using Entry = std::pair<Var, std::uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Entry> e);

    const std::vector<Entry> &entries() const { return e_; }
    std::uint32_t degree() const { return deg_; }
    std::uint32_t exponent(Var v) const;
    bool is_one() const { return e_.empty(); }

    Monomial operator*(const Monomial &o) const;
    bool divides(const Monomial &o) const;
    // o / this, requires divides(o)
    Monomial quotient_of(const Monomial &o) const;
    Monomial with_exponent(Var v, std::uint32_t e) const;
    Monomial gcd(const Monomial &o) const;

    // deglex, smaller variable id more significant
    friend int compare(const Monomial &a, const Monomial &b);
    friend bool operator==(const Monomial &a, const Monomial &b) { return a.e_ == b.e_; }

private:
    std::vector<Entry> e_;
    std::uint32_t deg_ = 0;
};

struct Term {
    Monomial m;
    Scalar c;
};

// Sparse polynomial over Q(sqrt2,sqrt3); terms sorted in decreasing deglex order.
class Poly {
public:
    Poly() = default;
    Poly(const Scalar &c);
    Poly(long c) : Poly(Scalar(c)) {}
    static Poly var(Var v, std::uint32_t e = 1);
    static Poly from_terms(std::vector<Term> t); // sorts and combines

    const std::vector<Term> &terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    Scalar constant_value() const; // requires is_constant
    const Scalar &lead_coeff() const { return t_.front().c; }
    const Monomial &lead_monomial() const { return t_.front().m; }
    std::uint32_t total_degree() const;

    std::vector<Var> vars() const;
    bool has_var(Var v) const;
    bool has_gen() const;
    std::uint32_t degree_in(Var v) const;

    Poly operator-() const;
    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
    friend Poly operator*(const Poly &a, const Poly &b);
    Poly scaled(const Scalar &s) const;
    Poly times_monomial(const Monomial &m, const Scalar &s) const;
    Poly pow(unsigned e) const;
    friend bool operator==(const Poly &a, const Poly &b);
    friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

    // partial derivative in the symbol v, generators treated as independent
    Poly diff_symbol(Var v) const;
    // coefficients in v: result[e] multiplies v^e
    std::vector<Poly> coeffs_in(Var v) const;
    // leading coefficient in v
    Poly lead_in(Var v) const;
    Monomial min_monomial() const;
    Poly div_monomial(const Monomial &m) const;

private:
    std::vector<Term> t_;
};

// quotient when b divides a exactly, else false
bool divide_exact(const Poly &a, const Poly &b, Poly &q);
// monic gcd in K[symbols]; gcd(0,0) = 0
Poly gcd(const Poly &a, const Poly &b);
// cos(u)^2 -> 1 - sin(u)^2 on every monomial
Poly pythagorean_reduce(const Poly &p);
// d/d coordinate with chain rule on generator symbols, followed by reduction
Poly diff_coord(const Poly &p, int coord);
// leading coefficient scaled to 1
Poly monic(const Poly &p);

using NameFn = std::function<std::string(int coord)>;
std::string to_string(const Poly &p, const NameFn &name);
std::string symbol_name(Var v, const NameFn &name);

} // namespace kontakt
