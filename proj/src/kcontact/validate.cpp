#include "kontakt/error.hpp"
#include "kontakt/kcontact.hpp"

namespace kontakt {

std::string KContactReport::status_str() const {
    switch (status) {
    case KStatus::Pass:
        return "pass";
    case KStatus::GenericPass:
        return "generic-pass";
    case KStatus::Fail:
        break;
    }
    return "fail(" + std::to_string(failed) + ")";
}

namespace {

void require_one_form(const Form &eta) {
    if (eta.degree() != 1) throw Error(Errc::DegreeError, "expected a one-form, got degree " + std::to_string(eta.degree()));
}

// conditions re-checked on the point values of the defining systems
int first_failure_at(const Form &eta, const Matrix &cov, const Matrix &two, const std::vector<Scalar> &p) {
    int n = eta.dim(), k = eta.channels();
    try {
        if (rank_at(cov, n, p) != k) return 1;
    } catch (const Error &e) {
        if (e.code() == Errc::PoleAtPoint) return 1;
        throw;
    }
    try {
        if (n - rank_at(two, n, p) != k) return 2;
        Matrix both = cov;
        both.insert(both.end(), two.begin(), two.end());
        if (rank_at(both, n, p) != n) return 3;
    } catch (const Error &e) {
        if (e.code() == Errc::PoleAtPoint) return 2;
        throw;
    }
    return 0;
}

} // namespace

KContactReport validate_k_contact(const Form &eta, const std::vector<std::vector<Scalar>> &points) {
    require_one_form(eta);
    KContactReport r;
    int n = eta.dim(), k = eta.channels();
    Matrix cov = covector_matrix(eta);
    int crank = rank(cov, n);
    r.kernel_rank = n - crank;
    r.cond[0] = k > 0 && crank == k && r.kernel_rank > 0;

    Form deta = ext_d(eta);
    Distribution R = kernel_of_two_form(deta);
    r.reeb_rank = static_cast<int>(R.gens.size());
    r.cond[1] = r.reeb_rank == k;

    Distribution K = kernel_of_one_form(eta);
    Matrix u = K.matrix();
    for (const auto &g : R.gens) u.push_back(g.comps());
    r.union_rank = rank(u, n);
    r.cond[2] = r.union_rank == n;

    for (int i = 0; i < 3; ++i)
        if (!r.cond[i]) {
            r.failed = i + 1;
            r.status = KStatus::Fail;
            return r;
        }

    Matrix two = two_form_matrix(deta);
    for (const auto &p : points) {
        if (static_cast<int>(p.size()) != n)
            throw Error(Errc::UnknownCoordinate, "sample point has " + std::to_string(p.size()) + " coordinates");
        int f = first_failure_at(eta, cov, two, p);
        if (f) {
            r.cond[f - 1] = false;
            r.failed = f;
            r.failed_at = p;
            r.status = KStatus::Fail;
            return r;
        }
    }
    r.status = points.empty() ? KStatus::GenericPass : KStatus::Pass;
    r.reeb = reeb_frame(eta);
    return r;
}

std::vector<VectorField> reeb_frame(const Form &eta) {
    require_one_form(eta);
    int n = eta.dim(), k = eta.channels();
    Matrix m = covector_matrix(eta);
    Matrix two = two_form_matrix(ext_d(eta));
    m.insert(m.end(), two.begin(), two.end());
    std::vector<VectorField> frame;
    for (int a = 0; a < k; ++a) {
        Row b(m.size());
        b[a] = Expr(1);
        LinearSolution s = solve(m, n, b);
        if (!s.unique())
            throw Error(Errc::NotKContact, s.consistent ? "Reeb system is underdetermined" : "Reeb system is inconsistent");
        frame.emplace_back(eta.chart(), std::move(s.particular));
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (!lie_bracket(frame[a], frame[b]).is_zero())
                throw Error(Errc::Internal, "Reeb fields do not commute");
    return frame;
}

KContactStructure KContactStructure::from(const Form &eta) {
    KContactReport r = validate_k_contact(eta);
    if (!r.ok()) throw Error(Errc::NotKContact, "condition " + std::to_string(r.failed) + " fails");
    KContactStructure s;
    s.chart = eta.chart();
    s.eta = eta;
    s.deta = ext_d(eta);
    s.reeb = *r.reeb;
    return s;
}

namespace {

Form volume(const Form &z) {
    Form w = z.channel(0);
    for (int a = 1; a < z.channels(); ++a) w = wedge(w, z.channel(a));
    return w;
}

} // namespace

CompatibilityReport compatibility_check(const Form &z1, const Form &z2) {
    require_one_form(z1);
    require_one_form(z2);
    require_same_chart(z1.chart(), z2.chart());
    if (z1.channels() != z2.channels() || z1.channels() == 0)
        throw Error(Errc::ChannelMismatch, "forms have " + std::to_string(z1.channels()) + " and " +
                                               std::to_string(z2.channels()) + " channels");
    CompatibilityReport r;
    r.first = validate_k_contact(z1);
    r.second = validate_k_contact(z2);
    Form w1 = volume(z1), w2 = volume(z2);
    if (w1.is_zero() || w2.is_zero()) return r;
    const auto &[I, c] = *w1.channel_terms(0).begin();
    Expr f = w2.get(0, I) / c;
    if (f.is_zero() || f * w1 != w2) return r;
    r.compatible = true;
    r.factor = f;
    return r;
}

int two_form_rank(const Form &omega) {
    if (omega.degree() != 2) throw Error(Errc::DegreeError, "expected a two-form");
    return omega.dim() - static_cast<int>(kernel_of_two_form(omega).gens.size());
}

bool k_symplectic_validate(const Form &omega) {
    if (omega.degree() != 2) throw Error(Errc::DegreeError, "expected a two-form");
    if (!ext_d(omega).is_zero()) return false;
    return kernel_of_two_form(omega).gens.empty();
}

} // namespace kontakt
