#pragma once

#include "kontakt/dist.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kontakt {

enum class KStatus { Pass, GenericPass, Fail };

struct KContactReport {
    // (1) ker eta nonzero of corank k, (2) ker d eta of rank k, (3) trivial intersection
    bool cond[3] = {false, false, false};
    int kernel_rank = 0; // generic rank of ker eta
    int reeb_rank = 0;   // generic rank of ker d eta
    int union_rank = 0;  // generic rank of ker eta + ker d eta
    KStatus status = KStatus::Fail;
    int failed = 0; // first failing condition, 0 if none
    // point at which a condition failed although it holds generically
    std::optional<std::vector<Scalar>> failed_at;
    std::optional<std::vector<VectorField>> reeb;

    bool ok() const { return status != KStatus::Fail; }
    // "pass", "generic-pass" or "fail(2)"
    std::string status_str() const;
};

struct KContactStructure {
    ChartPtr chart;
    Form eta;
    Form deta;
    std::vector<VectorField> reeb;
    std::optional<Distribution> polarisation;

    static KContactStructure from(const Form &eta);
};

// Without points the verdict is at best generic-pass; every condition is re-checked at each point.
KContactReport validate_k_contact(const Form &eta, const std::vector<std::vector<Scalar>> &points = {});
// Throws NotKContact when the stacked system is singular.
std::vector<VectorField> reeb_frame(const Form &eta);
Form construct_from_symmetries(const Distribution &D, const KVectorField &S);
bool check_polarisation(const Form &eta, const Distribution &V);

// coordinate names: x^i, y^alpha, and y_i^alpha as yi[alpha][i]
struct DarbouxPartition {
    std::vector<std::string> x;
    std::vector<std::string> y;
    std::vector<std::vector<std::string>> yi;
};
// PartitionError on unknown or repeated names or inconsistent sizes; a partition that leaves
// coordinates out is well-formed but never Darboux
bool verify_darboux_form(const Form &eta, const DarbouxPartition &part, const std::optional<Distribution> &V = {});

struct CompatibilityReport {
    bool compatible = false;
    // Omega_2 = factor * Omega_1, Omega = zeta^1 ^ ... ^ zeta^k
    std::optional<Expr> factor;
    KContactReport first, second;
};
CompatibilityReport compatibility_check(const Form &z1, const Form &z2);

bool k_symplectic_validate(const Form &omega);

// channel-wise rank of the coefficient matrix of a 2-form, i.e. dim - rank of the common kernel
int two_form_rank(const Form &omega);

struct SymplecticCover {
    ChartPtr chart; // original coordinates followed by s
    int s = 0;
    Form eta; // pulled back
    Form omega, theta;
    VectorField delta;
    // residuals, each zero when the construction is consistent
    Form d_theta_minus_omega;
    Form iota_delta_theta;
    Form lie_delta_omega_minus_omega;
    bool checks_pass = false;
};
SymplecticCover build_symplectic_cover(const Form &eta);

struct PresymplecticCover {
    ChartPtr chart; // original coordinates followed by z_1..z_k
    std::vector<int> z;
    Form eta;
    Form omega;
    Form d_omega;
    bool closed = false;
    int rank = 0;
};
PresymplecticCover build_presymplectic_cover(const Form &eta);

struct Symplectization {
    ChartPtr chart;
    std::vector<int> z;
    Form eta;
    Form omega;
    bool k_symplectic = false;
};
// z^alpha are invertible symbols in the validation
Symplectization build_symplectization(const Form &zeta);

// extends a chart by fresh coordinates named base1..basek (or base alone when k = 1 and
// `single` is set); a trailing underscore is added to the base until every name is free
ChartPtr extend_chart(const ChartPtr &c, const std::string &base, int k, bool single, std::vector<int> &added);
// re-expresses a form on a chart that extends its own (same leading coordinates)
Form lift_form(const ChartPtr &ext, const Form &a);
VectorField lift_field(const ChartPtr &ext, const VectorField &v);

// (+) T*Q x R^k with coordinates q1..qn, p<i>_<a> (a outer), z1..zk and
// eta_Q = sum_a (dz_a - sum_i p_i^a dq^i) e_a
struct CanonicalModel {
    ChartPtr chart;
    int n = 0, k = 0;
    Form eta;
    Distribution vertical; // <d/dp_i^a>
    DarbouxPartition partition;
};
CanonicalModel canonical_k_contact(int n, int k);

} // namespace kontakt
