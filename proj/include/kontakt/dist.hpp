#pragma once

#include "kontakt/geom.hpp"
#include "kontakt/linalg.hpp"

#include <optional>
#include <vector>

namespace kontakt {

struct Distribution {
    ChartPtr chart;
    std::vector<VectorField> gens; // possibly redundant

    Distribution() = default;
    Distribution(ChartPtr c, std::vector<VectorField> g);
    int dim() const { return chart->dim(); }
    // one row per generator
    Matrix matrix() const;
};

struct GrowthVector {
    std::vector<int> ranks;
    bool stabilized = false;
};

struct LieFlag {
    std::vector<Distribution> steps; // D, D^{1)}, D^{2)}, ...
    GrowthVector growth;
    // ranks of each step at each requested point
    std::vector<std::vector<int>> point_ranks;
};

struct SymmetryCertificate {
    VectorField field;
    bool verdict = false;
    // L_X zeta^a = sum_b multiplier[a][b] zeta^b when verdict is true
    Matrix multiplier;
};

int generic_rank(const Distribution &D);
int rank_at_point(const Distribution &D, const std::vector<Scalar> &point);
// independent generators in the deterministic null-space normal form
Form annihilator(const Distribution &D);
Distribution kernel_of_one_form(const Form &zeta);
// kernel of the stacked 2-form channels: {v : i_v a^alpha = 0 for all alpha}
Distribution kernel_of_two_form(const Form &a);
LieFlag lie_flag(const Distribution &D, int cap = 6, const std::vector<std::vector<Scalar>> &points = {});
bool is_lie_symmetry(const VectorField &X, const Distribution &D);
SymmetryCertificate conformal_symmetry_multiplier(const VectorField &X, const Form &zeta);
bool is_maximally_nonintegrable(const Distribution &D);
bool isotropy_check(const std::vector<VectorField> &F, const Form &zeta);

// helpers shared with other modules
bool spans_equal(const Distribution &a, const Distribution &b);
bool in_span(const VectorField &v, const Distribution &D);
Distribution independent_part(const Distribution &D);
Matrix covector_matrix(const Form &zeta); // one row per channel
// rows (i_v a^alpha)_j stacked over channels and j, so that a v = 0 iff v lies in every kernel
Matrix two_form_matrix(const Form &a);

} // namespace kontakt
