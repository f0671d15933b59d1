#pragma once

#include "kontakt/kcontact.hpp"

#include <string>
#include <utility>

namespace kontakt {

// a k-function is a 0-form with one channel per component of eta
using HamKFunction = Form;

HamKFunction k_function(const ChartPtr &chart, std::vector<Expr> values);

// Throws NotHamiltonian when h admits no eta-Hamiltonian field.
VectorField solve_eta_hamiltonian(const KContactStructure &S, const HamKFunction &h);
// -i_X eta, after checking that X preserves ker eta. Throws NotASymmetry.
HamKFunction characteristic_of(const KContactStructure &S, const VectorField &X);
// sum_a h^a R_a
VectorField reeb_derivation(const KContactStructure &S, const HamKFunction &h);
// eta([X_h1, X_h2]), cross-checked against -X_h1 h2 - R_h2 h1
HamKFunction eta_bracket(const KContactStructure &S, const HamKFunction &h1, const HamKFunction &h2);
bool is_dissipated(const KContactStructure &S, const HamKFunction &h, const HamKFunction &f);

// channelwise X(f)
HamKFunction apply(const VectorField &X, const HamKFunction &f);

struct HdwResidual {
    Form form;   // sum i_{X_a} d eta^a - dh + sum (R_a h) eta^a
    Expr scalar; // sum i_{X_a} eta^a + h
    bool is_zero() const { return form.is_zero() && scalar.is_zero(); }
};

struct HdwSolution {
    KVectorField fields;
    std::string gauge;
    HdwResidual residual;
};

HdwResidual hdw_residual(const KContactStructure &S, const KVectorField &X, const Expr &h);
// Throws NotDarboux when eta is not canonical for the partition.
HdwSolution hdw_darboux_solve(const KContactStructure &S, const DarbouxPartition &part, const Expr &h);

struct CoverLift {
    SymplecticCover cover;
    KVectorField fields; // s (R_a h) d/ds + X_a
    Form residual;       // sum i_{X~_a} omega^a - d(s h)
    // every intersection of ker d eta^b (b != a) leaves ker d eta^a
    bool unique = false;
};
// Throws NotAnHdwSolution when (X, h) has a nonzero residual.
CoverLift lift_cover_hdw(const KContactStructure &S, const KVectorField &X, const Expr &h);

struct PresymplecticLift {
    PresymplecticCover cover;
    VectorField field;
    Form residual; // i_Y omega - d(sum z_a h^a)
};
PresymplecticLift lift_presymplectic(const KContactStructure &S, const VectorField &X, const HamKFunction &h);

struct SymplectizationLift {
    Symplectization base;
    VectorField field;
    Form residual; // channel a: i_X~ omega^a - d(z^a h^a)
};
// Throws HypothesisViolated unless R_b h^a = 0 for a != b.
SymplectizationLift lift_symplectization(const KContactStructure &S, const VectorField &X, const HamKFunction &h);

struct HamCorpusEntry {
    std::string name;
    int n = 0, k = 0; // canonical_k_contact(n, k)
    std::vector<std::string> h; // one expression per channel
};
// eta-Hamiltonian k-functions on canonical polarised charts
const std::vector<HamCorpusEntry> &hamiltonian_corpus();
// parses an entry on its canonical chart
HamKFunction corpus_function(const CanonicalModel &m, const HamCorpusEntry &e);

} // namespace kontakt
