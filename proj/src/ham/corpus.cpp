#include "kontakt/error.hpp"
#include "kontakt/ham.hpp"

namespace kontakt {

const std::vector<HamCorpusEntry> &hamiltonian_corpus() {
    // for k >= 2 only characteristics -zeta^a + p_i^a xi^i of point fields are Hamiltonian
    static const std::vector<HamCorpusEntry> c = {
        {"oscillator", 1, 1, {"p1_1^2/2 + q1^2/2 + z1"}},
        {"damped", 1, 1, {"q1*p1_1 - z1^2"}},
        {"contact-2", 2, 1, {"p1_1*p2_1 + q1*z1 - q2^3"}},
        {"reeb-z1", 1, 2, {"z1", "0"}},
        {"translation", 1, 2, {"p1_1", "p1_2"}},
        {"scaling", 1, 2, {"q1*p1_1 - z1", "q1*p1_2 - z2"}},
        {"mixed", 1, 2, {"z1*p1_1 - q1^2", "z1*p1_2 - z1*z2"}},
        {"rotation", 2, 2, {"q2*p1_1 - q1*p2_1", "q2*p1_2 - q1*p2_2"}},
        {"fibre-rotation", 2, 2, {"z2", "-z1"}},
        {"shear", 2, 2, {"(q1 + z2)*p1_1 - z1*q2", "(q1 + z2)*p1_2"}},
        {"k3", 1, 3, {"(q1 + z3)*p1_1 - z2", "(q1 + z3)*p1_2 - z3*q1", "(q1 + z3)*p1_3 - 1"}},
        {"k3-shear", 2, 3, {"p2_1*q1 - 1", "p2_2*q1 + z1*q2", "p2_3*q1 - z3"}},
    };
    return c;
}

HamKFunction corpus_function(const CanonicalModel &m, const HamCorpusEntry &e) {
    if (m.n != e.n || m.k != e.k) throw Error(Errc::PreconditionViolated, "corpus entry needs another chart");
    std::vector<Expr> v;
    for (const auto &s : e.h) v.push_back(m.chart->parse(s));
    return k_function(m.chart, std::move(v));
}

} // namespace kontakt
