#pragma once

#include "kontakt/geom.hpp"
#include "kontakt/linalg.hpp"
#include "kontakt/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kontakt {

// Basis labels are 1-based throughout this header: X_1, ..., X_r.
struct LieAlgebraData {
    std::string name;
    int r = 0;
    std::vector<Scalar> consts; // c_{ab}^g at ((a-1)*r + b-1)*r + g-1

    LieAlgebraData() = default;
    LieAlgebraData(std::string n, int dim);

    // c_{ab}^g, with [X_a, X_b] = sum_g c_{ab}^g X_g
    const Scalar &c(int a, int b, int g) const;
    // sets c_{ab}^g = v and c_{ba}^g = -v
    void set(int a, int b, int g, const Scalar &v);
    // sets the whole skew orbit of (a, b, g): c_{ab}^g = v, cyclic copies equal, odd ones negated
    void set_skew(int a, int b, int g, const Scalar &v);
    // raw write, no antisymmetry (used for corruption tests)
    void set_raw(int a, int b, int g, const Scalar &v);
};

LieAlgebraData abelian_algebra(int r);
// su3, su4, u2, rh3; throws UnknownAlgebra
LieAlgebraData corpus_algebra(const std::string &name);
std::vector<std::string> corpus_algebra_names();

bool validate_structure(const LieAlgebraData &c);

// left-invariant forms in the dual coframe eta^1..eta^r
struct InvariantForm {
    using Term = std::vector<int>; // strictly increasing coframe labels
    int r = 0;
    int degree = 0;
    std::vector<std::map<Term, Scalar>> channels;

    InvariantForm() = default;
    InvariantForm(int dim, int deg, int nchannels = 1);
    static InvariantForm coframe(int dim, int label);

    void add(int channel, Term t, const Scalar &v); // sorts t and tracks the sign
    Scalar coeff(int channel, const Term &t) const;
    bool is_zero() const;
    std::string str(int channel = 0) const;

    InvariantForm &operator+=(const InvariantForm &o);
    InvariantForm &operator-=(const InvariantForm &o);
    friend InvariantForm operator+(InvariantForm a, const InvariantForm &b) { return a += b; }
    friend InvariantForm operator-(InvariantForm a, const InvariantForm &b) { return a -= b; }
    friend InvariantForm operator*(const Scalar &s, InvariantForm a);
    friend bool operator==(const InvariantForm &a, const InvariantForm &b);
    friend bool operator!=(const InvariantForm &a, const InvariantForm &b) { return !(a == b); }
};

InvariantForm wedge(const InvariantForm &a, const InvariantForm &b); // channelwise, one side single-channel
// Chevalley-Eilenberg differential of the invariant complex
InvariantForm invariant_d(const LieAlgebraData &c, const InvariantForm &a);
// d eta^alpha = -1/2 sum c_{bg}^alpha eta^b ^ eta^g
InvariantForm maurer_cartan(const LieAlgebraData &c, int alpha);
// d(d eta^alpha) = 0 for every alpha
bool invariant_d_squared_zero(const LieAlgebraData &c);

using ConstVector = std::vector<Scalar>;

struct InvariantKContactReport {
    std::vector<int> A;
    int kernel_rank = 0; // rank of ker d eta over constants
    int union_rank = 0;  // rank of ker eta + ker d eta
    bool pass = false;
    std::vector<ConstVector> kernel;
    std::optional<std::vector<ConstVector>> reeb;
    bool reeb_is_basis = false; // Reeb frame is (X_a) for a in A
    // for the candidate frame (X_a), a in A
    bool pairing = false, kernel_membership = false, commuting = false;
    std::vector<InvariantForm> deta;
};

// throws PreconditionViolated for an invalid structure or index set
InvariantKContactReport invariant_kcontact_check(const LieAlgebraData &c, const std::vector<int> &A);

// HDW equations for X_a = sum_b f_a^b X_b (a over A), unknown f_a^b at a*r + b-1 with a the position in A
struct HdwInvariantSystem {
    int r = 0;
    std::vector<int> A;
    Matrix algebraic;            // rows g in A: sum c_{bg}^{A_a} f_a^b = 0
    std::vector<int> pde_labels; // g not in A
    Matrix pde;                  // rows: sum c_{bg}^{A_a} f_a^b = X_g(trace . f)
    Row trace;                   // trace . f = sum_a f_a^{A_a} = -h
    std::vector<ConstVector> constant_solutions;

    int unknowns() const { return static_cast<int>(A.size()) * r; }
    std::string unknown_name(int j) const; // "f3^4"
    bool algebraic_trivial() const;
    bool pde_trivial() const;
};

HdwInvariantSystem hdw_invariant_system(const LieAlgebraData &c, const std::vector<int> &A);
// components of [X_a, X_b] for constant coefficients, one vector per pair a < b
std::vector<ConstVector> hdw_commutators(const LieAlgebraData &c, const std::vector<int> &A, const ConstVector &f);

// rh3 = R_x x H3 in exponential coordinates (t, a, b, c), lambda1 = exp(t)
struct CoordinateRealization {
    ChartPtr chart;
    std::vector<Form> coframe;       // eta^1..eta^r
    std::vector<VectorField> frame;  // X_1..X_r
};
CoordinateRealization rh3_coordinates();
// the left-invariant form sum_i v_i eta^i
Form realize(const CoordinateRealization &R, const InvariantForm &f);

} // namespace kontakt
