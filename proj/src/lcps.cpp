#include "lcs/lcps.hpp"

#include <algorithm>

namespace lcs {

ScalarMatrix coefficient_matrix(const DifferentialForm& omega)
{
    const RosterPtr& r = omega.roster();
    int n = r->size();
    ScalarMatrix w(n, std::vector<FourierScalar>(n, FourierScalar(r)));
    for (const auto& [m, f] : omega.terms()) {
        auto idx = mask_indices(m);
        w[idx[0]][idx[1]] = f;
        w[idx[1]][idx[0]] = -f;
    }
    return w;
}

static std::string witness(const DifferentialForm& a)
{
    std::string s = a.to_string();
    return s.size() > 200 ? s.substr(0, 200) + "..." : s;
}

StructureReport validate_structure(const Model& m)
{
    StructureReport rep;
    auto fail = [&](const std::string& check, const std::string& w) { rep.failures.emplace_back(check, w); };
    const RosterPtr& r = m.roster;

    DifferentialForm db = exterior_derivative(m.b);
    bool closed_b = db.is_zero();
    if (!closed_b)
        fail("lee_form_closed", witness(db));

    DifferentialForm dbw = exterior_derivative(m.omega) + wedge(m.b, m.omega);
    bool twisted_closed = dbw.is_zero();
    if (!twisted_closed)
        fail("twisted_closed", witness(dbw));

    DifferentialForm top = form_power(m.omega, m.rank_k + 1);
    bool rank_upper = top.is_zero();
    if (!rank_upper)
        fail("rank_upper_bound", witness(top));

    bool rank_lower = !form_power(m.omega, m.rank_k).is_zero();
    if (!rank_lower)
        fail("rank_lower_bound", "omega^k = 0");

    // on a fiberless model the leaf coordinate fields span the kernel of omega
    bool invariance = true;
    for (int beta = 0; r->n_fiber() == 0 && beta < r->n_leaf(); ++beta) {
        int q = r->leaf_index(beta);
        VectorField xi = VectorField::coordinate(r, q);
        FourierScalar b_xi = m.b.coefficient(CovectorMask(1) << q);
        DifferentialForm res = lie_derivative(xi, m.omega) + m.omega.times(b_xi);
        if (!res.is_zero()) {
            invariance = false;
            fail("transverse_invariance[" + r->name(q) + "]", witness(res));
        }
    }

    bool inverse_ok = true;
    if (m.omega_inv) {
        auto w = m.transverse_matrix();
        int n = r->n_transverse();
        for (int i = 0; i < n && inverse_ok; ++i) {
            for (int l = 0; l < n; ++l) {
                FourierScalar s(r);
                for (int j = 0; j < n; ++j)
                    s += w[i][j] * (*m.omega_inv)[j][l];
                if (s != FourierScalar(r, Coef(i == l ? 1 : 0))) {
                    inverse_ok = false;
                    fail("omega_inverse", "row " + std::to_string(i) + ", column " + std::to_string(l) + ": " + s.to_string());
                    break;
                }
            }
        }
    }

    bool nondegenerate = false;
    if (r->size() % 2 == 0) {
        DifferentialForm vol = form_power(m.omega, r->size() / 2);
        // fiber directions only carry a neighbourhood of the zero section, where p = 0
        FourierScalar full = vol.coefficient((CovectorMask(1) << r->size()) - 1);
        FourierScalar c(r);
        for (const auto& [key, v] : full.terms())
            if (std::all_of(key.begin() + r->n_torus(), key.end(), [](int a) { return a == 0; }))
                c.add_term(key, v);
        nondegenerate = !c.is_zero() && c.is_constant();
    }
    if (!nondegenerate)
        fail("lcs_nondegenerate", "top power of omega on the zero section is not a nonzero constant multiple of the volume form");

    rep.transverse_invariance_ok = invariance;
    rep.is_lcs = closed_b && twisted_closed && nondegenerate;
    rep.is_lcps_rank_2k = closed_b && twisted_closed && rank_upper && rank_lower && invariance && inverse_ok;
    return rep;
}

std::optional<LcpsFieldResult> lcps_vector_field_test(const VectorField& xi, const Model& m)
{
    DifferentialForm eta = twisted_derivative(interior_product(xi, m.omega), m.b);
    FourierScalar b_xi(m.roster);
    for (const auto& [c, v] : xi.components())
        b_xi += v * m.b.coefficient(CovectorMask(1) << c);

    Coef c;
    if (!eta.is_zero()) {
        if (m.omega.is_zero())
            return std::nullopt;
        const auto& [mask, w] = *m.omega.terms().begin();
        const auto& [key, wc] = *w.terms().begin();
        FourierScalar e = eta.coefficient(mask);
        auto it = e.terms().find(key);
        if (it == e.terms().end())
            return std::nullopt;
        c = it->second / wc;
        if (!c.is_real())
            return std::nullopt;
        if (!(eta - m.omega.scaled(c)).is_zero())
            return std::nullopt;
    }
    return LcpsFieldResult{c, b_xi - FourierScalar(m.roster, c)};
}

VectorField hamiltonian_vector_field(const FourierScalar& f, const Model& m)
{
    const RosterPtr& r = m.roster;
    auto inv = inverse_if_unimodular(coefficient_matrix(m.omega), r);
    if (!inv)
        throw MathError("omega has no constant-determinant coefficient matrix; Hamiltonian field not computed");
    DifferentialForm v = twisted_derivative(DifferentialForm::scalar(f.roster() ? f : FourierScalar(r)), m.b);
    int n = r->size();
    VectorField xi(r);
    for (int a = 0; a < n; ++a) {
        FourierScalar s(r);
        for (int b = 0; b < n; ++b)
            s -= (*inv)[a][b] * v.coefficient(CovectorMask(1) << b);
        xi.set(a, s);
    }
    if (interior_product(xi, m.omega) != v)
        throw MathError("Hamiltonian equation has no solution in the function ring");
    return xi;
}

}  // namespace lcs
