#include "kontakt/scalar.hpp"

#include "kontakt/error.hpp"

#include <cmath>
#include <sstream>

namespace kontakt {

const char *errc_name(Errc c) {
    switch (c) {
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::UnknownCoordinate: return "UnknownCoordinate";
    case Errc::PoleAtPoint: return "PoleAtPoint";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::ChartMismatch: return "ChartMismatch";
    case Errc::ChannelMismatch: return "ChannelMismatch";
    case Errc::DegreeError: return "DegreeError";
    case Errc::MapIncomplete: return "MapIncomplete";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NotKContact: return "NotKContact";
    case Errc::NotSupplementary: return "NotSupplementary";
    case Errc::NotASymmetry: return "NotASymmetry";
    case Errc::PartitionError: return "PartitionError";
    case Errc::NotHamiltonian: return "NotHamiltonian";
    case Errc::NotDarboux: return "NotDarboux";
    case Errc::NotAnHdwSolution: return "NotAnHdwSolution";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::UnknownAlgebra: return "UnknownAlgebra";
    case Errc::NotProjectable: return "NotProjectable";
    case Errc::UnknownCorpus: return "UnknownCorpus";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

Scalar::Scalar(const mpq_class &a, const mpq_class &b, const mpq_class &c, const mpq_class &d) {
    q_[0] = a;
    q_[1] = b;
    q_[2] = c;
    q_[3] = d;
}

Scalar Scalar::rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

bool Scalar::is_zero() const {
    return sgn(q_[0]) == 0 && sgn(q_[1]) == 0 && sgn(q_[2]) == 0 && sgn(q_[3]) == 0;
}

bool Scalar::is_one() const { return is_rational() && q_[0] == 1; }

bool Scalar::is_rational() const { return sgn(q_[1]) == 0 && sgn(q_[2]) == 0 && sgn(q_[3]) == 0; }

int Scalar::lead_sign() const {
    for (const auto &c : q_)
        if (sgn(c) != 0) return sgn(c);
    return 0;
}

Scalar Scalar::operator-() const {
    Scalar r;
    for (int i = 0; i < 4; ++i) r.q_[i] = -q_[i];
    return r;
}

Scalar &Scalar::operator+=(const Scalar &o) {
    for (int i = 0; i < 4; ++i)
        if (sgn(o.q_[i]) != 0) q_[i] += o.q_[i];
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) {
    for (int i = 0; i < 4; ++i)
        if (sgn(o.q_[i]) != 0) q_[i] -= o.q_[i];
    return *this;
}

Scalar operator*(const Scalar &x, const Scalar &y) {
    if (x.is_rational()) {
        Scalar r;
        if (sgn(x.q_[0]) == 0) return r;
        for (int i = 0; i < 4; ++i)
            if (sgn(y.q_[i]) != 0) r.q_[i] = x.q_[0] * y.q_[i];
        return r;
    }
    if (y.is_rational()) return y * x;
    // basis 1, r2, r3, r6: r2*r2=2, r3*r3=3, r6*r6=6, r2*r3=r6, r2*r6=2r3, r3*r6=3r2
    const auto &a = x.q_;
    const auto &b = y.q_;
    Scalar r;
    r.q_[0] = a[0] * b[0] + 2 * a[1] * b[1] + 3 * a[2] * b[2] + 6 * a[3] * b[3];
    r.q_[1] = a[0] * b[1] + a[1] * b[0] + 3 * (a[2] * b[3] + a[3] * b[2]);
    r.q_[2] = a[0] * b[2] + a[2] * b[0] + 2 * (a[1] * b[3] + a[3] * b[1]);
    r.q_[3] = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
    return r;
}

Scalar &Scalar::operator*=(const Scalar &o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(Errc::ZeroDenominator, "inverse of zero scalar");
    if (is_rational()) return Scalar(mpq_class(1) / q_[0]);
    // x = P + Q r3 with P,Q in Q(r2); conj in r3, then conj in r2
    Scalar conj3(q_[0], q_[1], -q_[2], -q_[3]);
    Scalar n = *this * conj3; // lies in Q(r2)
    Scalar conj2(n.q_[0], -n.q_[1], 0, 0);
    Scalar m = n * conj2; // rational
    return conj3 * conj2 * Scalar(mpq_class(1) / m.q_[0]);
}

Scalar &Scalar::operator/=(const Scalar &o) {
    if (o.is_rational()) {
        if (sgn(o.q_[0]) == 0) throw Error(Errc::ZeroDenominator, "division by zero scalar");
        for (auto &c : q_)
            if (sgn(c) != 0) c /= o.q_[0];
        return *this;
    }
    return *this = *this * o.inverse();
}

double Scalar::to_double() const {
    return q_[0].get_d() + q_[1].get_d() * std::sqrt(2.0) + q_[2].get_d() * std::sqrt(3.0) +
           q_[3].get_d() * std::sqrt(6.0);
}

bool Scalar::is_compound() const {
    int n = 0;
    for (const auto &c : q_) n += sgn(c) != 0;
    return n > 1;
}

std::string Scalar::str() const {
    static const char *names[4] = {"", "sqrt2", "sqrt3", "sqrt2*sqrt3"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (sgn(q_[i]) == 0) continue;
        mpq_class c = q_[i];
        if (!first) {
            os << (sgn(c) < 0 ? " - " : " + ");
            c = abs(c);
        } else if (sgn(c) < 0 && i > 0) {
            os << "-";
            c = abs(c);
        }
        if (i == 0) {
            os << c.get_str();
        } else if (c == 1) {
            os << names[i];
        } else {
            os << c.get_str() << "*" << names[i];
        }
        first = false;
    }
    if (first) return "0";
    return is_compound() ? "(" + os.str() + ")" : os.str();
}

} // namespace kontakt
