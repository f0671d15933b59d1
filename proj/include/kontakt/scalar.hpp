#pragma once

#include <gmpxx.h>

#include <array>
#include <string>

namespace kontakt {

// a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational a..d
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) { q_[0] = v; }
    Scalar(const mpq_class &v) { q_[0] = v; }
    Scalar(const mpq_class &a, const mpq_class &b, const mpq_class &c, const mpq_class &d);

    static Scalar sqrt2() { return {0, 1, 0, 0}; }
    static Scalar sqrt3() { return {0, 0, 1, 0}; }
    static Scalar rational(long num, long den);

    const mpq_class &operator[](int i) const { return q_[i]; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // sign of the leading nonzero basis coefficient; used only for display choices
    int lead_sign() const;

    Scalar operator-() const;
    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);
    Scalar inverse() const;

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(const Scalar &a, const Scalar &b);
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    friend bool operator==(const Scalar &a, const Scalar &b) { return a.q_ == b.q_; }
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    double to_double() const;
    // parseable text: "3/2", "-sqrt2", "(1 + 2*sqrt3)"; sqrt6 is written sqrt2*sqrt3
    std::string str() const;
    // true when str() needs parentheses as a factor
    bool is_compound() const;

private:
    std::array<mpq_class, 4> q_;
};

} // namespace kontakt
