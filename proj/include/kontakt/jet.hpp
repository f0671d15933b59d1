#pragma once

#include "kontakt/ham.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kontakt {

// J^1(M, E) in adapted coordinates x^i, y^a, y^a_i (a outer)
struct JetChart {
    int m = 0, k = 0;
    ChartPtr chart;
    std::vector<int> x, y;
    std::vector<std::vector<int>> yi; // yi[a][i]
    Form eta;                         // sum_a (dy^a - sum_i y^a_i dx^i) e_a
    Distribution cartan;              // total derivatives and d/dy^a_i
    Distribution polarisation;        // d/dy^a_i
    DarbouxPartition partition() const;
};

struct JetNames {
    std::vector<std::string> base, fibre;
    std::vector<std::vector<std::string>> derivs; // derivs[a][i]; empty means fibre + "_" + i
};

// default names: x1..xm (x when m = 1), y1..yk (y when k = 1), derivatives y<a>_<i>
JetChart build_jet_chart(int m, int k);
JetChart build_jet_chart(const JetNames &names, std::string chart_name = "J1");

// a vector field on E: components in jet-chart expressions of x and y only
struct BundleField {
    std::vector<Expr> xi;   // m
    std::vector<Expr> zeta; // k
};
BundleField bundle_field(const JetChart &J, const VectorField &X); // drops nothing; throws NotProjectable
VectorField as_vector_field(const JetChart &J, const BundleField &X);

// Throws NotProjectable when xi or zeta depends on a jet coordinate.
VectorField prolong(const JetChart &J, const BundleField &X);
HamKFunction characteristic(const JetChart &J, const BundleField &X);
// pr X h^b + sum_a (R_a h^b) h^a, one entry per channel
std::vector<Expr> tangency_residual(const JetChart &J, const BundleField &X);
bool tangency_check(const JetChart &J, const BundleField &X);

struct JetCorpusEntry {
    std::string name;
    BundleField field;
    VectorField expected_pr;
    HamKFunction expected_h;
    // whether the reference listing states pr X and h in exactly this form
    bool printed_pr = true, printed_h = true;
};

struct JetCorpus {
    std::string name;
    JetChart chart;
    std::vector<JetCorpusEntry> entries;
};

// hamilton_jacobi or dirac; throws UnknownCorpus
JetCorpus jet_corpus(const std::string &name);
std::vector<std::string> jet_corpus_names();

} // namespace kontakt
