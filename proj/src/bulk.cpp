#include "lcs/bulk.hpp"

#include "lcs/catalog.hpp"
#include "lcs/lcps.hpp"
#include "lcs/syntax.hpp"
#include "lcs/thickening.hpp"

#include <algorithm>

namespace lcs {

namespace {

bool constant_coefficients(const DifferentialForm& a)
{
    return std::all_of(a.terms().begin(), a.terms().end(), [](const auto& t) { return t.second.is_constant(); });
}

/* constant coefficient of each mask in basis */
std::vector<Coef> constant_vector(const DifferentialForm& a, const std::vector<CovectorMask>& basis)
{
    std::vector<Coef> v;
    for (CovectorMask m : basis)
        v.push_back(a.coefficient(m).constant_term());
    return v;
}

bool in_image(const CoefMatrix& a, const std::vector<Coef>& b, size_t cols)
{
    if (std::all_of(b.begin(), b.end(), [](const Coef& c) { return c.is_zero(); }))
        return true;
    if (cols == 0)
        return false;
    return solve_linear(a, b).has_value();
}

/* (wedge with constant omega) from basis(1) to basis(3) */
CoefMatrix omega_wedge_matrix(const DifferentialForm& omega, const std::vector<CovectorMask>& cols,
                              const std::vector<CovectorMask>& rows)
{
    CoefMatrix w(rows.size(), std::vector<Coef>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [om, f] : omega.terms()) {
            int s = wedge_sign(om, cols[j]);
            if (s == 0)
                continue;
            auto it = std::find(rows.begin(), rows.end(), om | cols[j]);
            if (it == rows.end())
                continue;
            Coef c = f.constant_term();
            w[it - rows.begin()][j] += s > 0 ? c : -c;
        }
    return w;
}

int nullity(const CoefMatrix& a, size_t cols) { return static_cast<int>(cols) - (a.empty() ? 0 : rank(a)); }

bool class_nonzero(const TwistedModeComplex& c, const DifferentialForm& omega)
{
    ScalarKey zero(c.roster->size(), 0);
    auto rows = c.basis(2);
    return !in_image(c.matrix(zero, 1), constant_vector(omega, rows), c.basis(1).size());
}

void require_fiberless(const Model& m)
{
    if (m.roster->n_fiber() != 0)
        throw MathError("expected a model without fiber coordinates");
}

// ---------- t-series helpers

DifferentialForm at(const std::vector<DifferentialForm>& xs, int i, const RosterPtr& r, int degree)
{
    return i >= 0 && i < static_cast<int>(xs.size()) ? xs[i] : DifferentialForm(r, degree);
}

std::vector<DifferentialForm> sections_as_forms(const BulkSeries& B, const Model& m)
{
    const Splitting& s = m.splitting_or_flat();
    std::vector<DifferentialForm> out{DifferentialForm(m.roster, 1)};
    for (const auto& g : B.sections.terms)
        out.push_back(section_one_form(g, s));
    return out;
}

/* coefficients 0..N of a^{p} for a polynomial a given by its coefficients */
std::vector<DifferentialForm> series_power(const std::vector<DifferentialForm>& a, int p, int N, const RosterPtr& r,
                                           int degree)
{
    std::vector<DifferentialForm> acc(N + 1, DifferentialForm(r, 0));
    acc[0] = DifferentialForm::scalar(r, Coef(1));
    for (int step = 0; step < p; ++step) {
        std::vector<DifferentialForm> next(N + 1, DifferentialForm(r, (step + 1) * degree));
        for (int l = 0; l <= N; ++l)
            for (int i = 0; i <= l; ++i) {
                DifferentialForm ai = at(a, l - i, r, degree);
                if (!acc[i].is_zero() && !ai.is_zero())
                    next[l] += wedge(acc[i], ai);
            }
        acc = std::move(next);
    }
    return acc;
}

DifferentialForm evaluate(const std::vector<DifferentialForm>& a, const Rational& t, const RosterPtr& r, int degree)
{
    DifferentialForm out(r, degree);
    Rational power = 1;
    for (const auto& x : a) {
        if (!x.is_zero())
            out += x.scaled(Coef(power));
        power *= t;
    }
    return out;
}

/* coefficients of the Lagrange basis polynomials on nodes 0..D */
std::vector<std::vector<Rational>> lagrange_coefficients(int D)
{
    std::vector<std::vector<Rational>> out;
    for (int s = 0; s <= D; ++s) {
        std::vector<Rational> poly{1};
        for (int q = 0; q <= D; ++q) {
            if (q == s)
                continue;
            Rational scale = Rational(1) / Rational(s - q);
            std::vector<Rational> next(poly.size() + 1, 0);
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i] * scale;
                next[i] -= poly[i] * Rational(q) * scale;
            }
            poly = std::move(next);
        }
        out.push_back(poly);
    }
    return out;
}

/* t^0..t^N coefficients of a polynomial family of t-degree at most D, given by its values at 0..D */
template <class F>
std::vector<DifferentialForm> interpolate(F value_at, int D, int N, const RosterPtr& r, int degree)
{
    std::vector<DifferentialForm> values;
    for (int s = 0; s <= D; ++s)
        values.push_back(value_at(Rational(s)));
    auto L = lagrange_coefficients(D);
    std::vector<DifferentialForm> out(N + 1, DifferentialForm(r, degree));
    for (int l = 0; l <= N && l <= D; ++l)
        for (int s = 0; s <= D; ++s)
            if (L[s][l] != 0 && !values[s].is_zero())
                out[l] += values[s].scaled(Coef(L[s][l]));
    return out;
}

}  // namespace

// ---------- infinitesimal deformations

InfinitesimalDeformation::InfinitesimalDeformation(DifferentialForm kappa_, DifferentialForm c_)
    : kappa(std::move(kappa_)), c(std::move(c_))
{
    if ((!kappa.is_zero() && kappa.degree() != 2) || (!c.is_zero() && c.degree() != 1))
        throw MathError("an infinitesimal deformation is a 2-form and a 1-form");
    if (!exterior_derivative(c).is_zero())
        throw MathError("c is not closed");
}

bool InfinitesimalReport::ok() const
{
    return structure_residual.is_zero() && power_restriction.is_zero() && leaf_restriction.is_zero();
}

InfinitesimalReport infinitesimal_check(const InfinitesimalDeformation& d, const Model& m, DeformationMode mode)
{
    InfinitesimalReport rep;
    rep.structure_residual = twisted_derivative(d.kappa, m.b) + wedge(d.c, m.omega);
    rep.power_restriction = DifferentialForm(m.roster, 2 * m.rank_k + 2);
    rep.leaf_restriction = DifferentialForm(m.roster, 2);
    if (mode == DeformationMode::Lcps) {
        rep.power_restriction = wedge(form_power(m.omega, m.rank_k), d.kappa);
        rep.leaf_restriction = leafwise_restrict(d.kappa);
        rep.routes_agree = rep.power_restriction.is_zero() == rep.leaf_restriction.is_zero();
    }
    return rep;
}

DifferentialForm s_map(const VectorField& xi, const Coef& c, const Model& m)
{
    DifferentialForm out = twisted_derivative(interior_product(xi, m.omega), m.b);
    if (!c.is_zero())
        out -= m.omega.scaled(c);
    return out;
}

std::pair<DifferentialForm, DifferentialForm> equivalence_residual(const InfinitesimalDeformation& d,
                                                                   const InfinitesimalDeformation& d2,
                                                                   const VectorField& xi, const FourierScalar& f,
                                                                   const Model& m)
{
    DifferentialForm k = d2.kappa + m.omega.times(f) - d.kappa - lie_derivative(xi, m.omega);
    DifferentialForm c = d2.c - d.c - lie_derivative(xi, m.b) - exterior_derivative(DifferentialForm::scalar(f));
    return {k, c};
}

DeformationDims deformation_space_dims(const Model& m, int truncation)
{
    require_fiberless(m);
    if (!constant_coefficients(m.omega))
        throw MathError("unsupported model: omega with non-constant coefficients");
    const RosterPtr& r = m.roster;
    TwistedModeComplex tw = full_complex(r, m.b);
    TwistedModeComplex un = full_complex(r, DifferentialForm(r, 1));

    DeformationDims out;
    out.truncation = truncation;
    out.twisted = cohomology_dims(tw, truncation);
    out.untwisted = cohomology_dims(un, truncation);
    int n = tw.top_degree();
    auto h = [](const std::vector<int>& v, int j) { return j < static_cast<int>(v.size()) ? v[j] : 0; };

    out.omega_class_nonzero = n >= 2 && class_nonzero(tw, m.omega);
    out.h2_mod_omega = h(out.twisted, 2) - (out.omega_class_nonzero ? 1 : 0);

    // per mode: closed 1-forms z with omega ^ z = d^b w, minus exact ones
    auto b1 = un.basis(1), b2 = tw.basis(2), b3 = tw.basis(3);
    CoefMatrix W = omega_wedge_matrix(m.omega, b1, b3);
    for (const auto& key : truncated_modes(un, truncation)) {
        CoefMatrix D1 = un.matrix(key, 1), D2 = tw.matrix(key, 2);
        CoefMatrix block;
        for (size_t i = 0; i < b2.size(); ++i) {
            std::vector<Coef> row = D1[i];
            row.resize(b1.size() + b2.size());
            block.push_back(row);
        }
        for (size_t i = 0; i < b3.size(); ++i) {
            std::vector<Coef> row = W[i];
            for (size_t j = 0; j < b2.size(); ++j)
                row.push_back(-D2[i][j]);
            block.push_back(row);
        }
        int pairs = nullity(block, b1.size() + b2.size());
        int closed_with_exact_image = pairs - nullity(D2, b2.size());
        int exact = b1.empty() ? 0 : rank(un.matrix(key, 0));
        out.ker_L += closed_with_exact_image - exact;
    }
    out.def_dim = out.ker_L + out.h2_mod_omega;

    CovectorMask ideal = transverse_mask(*r);
    if (ideal == 0) {
        out.restricted.assign(n + 1, 0);
    } else {
        TwistedModeComplex res = tw;
        res.ideal = ideal;
        out.restricted = cohomology_dims(res, truncation);
        bool omega_in_ideal = std::all_of(m.omega.terms().begin(), m.omega.terms().end(),
                                          [&](const auto& t) { return (t.first & ideal) != 0; });
        out.restricted_omega_class_nonzero = omega_in_ideal && n >= 2 && class_nonzero(res, m.omega);
    }
    out.restricted_h2_mod_omega = h(out.restricted, 2) - (out.restricted_omega_class_nonzero ? 1 : 0);
    out.restricted_def_dim = out.restricted_h2_mod_omega + out.ker_L;
    return out;
}

// ---------- bulk series

BulkSeries BulkSeries::trivial(const Model& m)
{
    return BulkSeries{{m.omega}, {m.b}, {}};
}

void BulkSeries::validate(const Model& m) const
{
    if (omegas.empty() || lee_forms.empty())
        throw MathError("bulk series needs the order-0 structure");
    if (omegas[0] != m.omega || lee_forms[0] != m.b)
        throw MathError("bulk series does not start at the model structure");
    for (const auto& w : omegas)
        if (!w.is_zero() && w.degree() != 2)
            throw MathError("bulk omegas must be 2-forms");
    for (const auto& b : lee_forms)
        if (!b.is_zero() && b.degree() != 1)
            throw MathError("bulk Lee forms must be 1-forms");
    for (const auto& g : sections.terms)
        if (!g.is_zero() && (g.degree() != 1 || !is_leafwise(g)))
            throw MathError("bulk sections must be leafwise 1-forms");
}

bool BulkOrderReport::passes() const
{
    return power.is_zero() && lee.is_zero() && lcps.is_zero() && section.is_zero();
}

std::vector<BulkOrderReport> bulk_order_residuals(const BulkSeries& B, const Model& m, int up_to)
{
    require_fiberless(m);
    B.validate(m);
    const RosterPtr& r = m.roster;
    int p = m.rank_k + 1;
    auto gam = sections_as_forms(B, m);

    // G_l = omega_l - d Gamma_l - sum_{i+j=l} b_i ^ Gamma_j
    std::vector<DifferentialForm> G;
    for (int l = 0; l <= up_to; ++l) {
        DifferentialForm g = at(B.omegas, l, r, 2) - exterior_derivative(at(gam, l, r, 1));
        for (int i = 0; i <= l; ++i) {
            DifferentialForm bi = at(B.lee_forms, i, r, 1), gj = at(gam, l - i, r, 1);
            if (!bi.is_zero() && !gj.is_zero())
                g -= wedge(bi, gj);
        }
        G.push_back(g);
    }
    auto power = series_power(B.omegas, p, up_to, r, 2);
    auto section = series_power(G, p, up_to, r, 2);

    std::vector<BulkOrderReport> out;
    for (int l = 0; l <= up_to; ++l) {
        BulkOrderReport rep;
        rep.order = l;
        rep.power = power[l];
        rep.lee = exterior_derivative(at(B.lee_forms, l, r, 1));
        rep.lcps = exterior_derivative(at(B.omegas, l, r, 2));
        for (int j = 0; j <= l; ++j) {
            DifferentialForm bj = at(B.lee_forms, j, r, 1), wj = at(B.omegas, l - j, r, 2);
            if (!bj.is_zero() && !wj.is_zero())
                rep.lcps += wedge(bj, wj);
        }
        rep.section = section[l];
        out.push_back(rep);
    }
    return out;
}

std::vector<BulkOrderReport> bulk_residuals_by_evaluation(const BulkSeries& B, const Model& m, int up_to)
{
    require_fiberless(m);
    B.validate(m);
    const RosterPtr& r = m.roster;
    int p = m.rank_k + 1;
    auto gam = sections_as_forms(B, m);
    int dw = static_cast<int>(B.omegas.size()) - 1;
    int db = static_cast<int>(B.lee_forms.size()) - 1;
    int dg = static_cast<int>(gam.size()) - 1;

    auto omega_t = [&](const Rational& t) { return evaluate(B.omegas, t, r, 2); };
    auto lee_t = [&](const Rational& t) { return evaluate(B.lee_forms, t, r, 1); };
    auto gamma_t = [&](const Rational& t) { return evaluate(gam, t, r, 1); };

    auto power = interpolate([&](const Rational& t) { return form_power(omega_t(t), p); }, p * dw, up_to, r, 2 * p);
    auto lee = interpolate([&](const Rational& t) { return exterior_derivative(lee_t(t)); }, db, up_to, r, 2);
    auto lcps = interpolate(
        [&](const Rational& t) {
            DifferentialForm w = omega_t(t);
            return exterior_derivative(w) + wedge(lee_t(t), w);
        },
        dw + db, up_to, r, 3);
    auto section = interpolate(
        [&](const Rational& t) {
            DifferentialForm g = gamma_t(t);
            DifferentialForm x = omega_t(t) - exterior_derivative(g) - wedge(lee_t(t), g);
            return form_power(x, p);
        },
        p * std::max(dw, db + dg), up_to, r, 2 * p);

    std::vector<BulkOrderReport> out;
    for (int l = 0; l <= up_to; ++l)
        out.push_back(BulkOrderReport{l, power[l], lee[l], lcps[l], section[l]});
    return out;
}

// ---------- the order-t^2 bulk equation

BulkOrder2Result bulk_order2_obstruction(const LeafForm& gamma1, const Model& m, const FirstOrderBulk& first)
{
    require_fiberless(m);
    const RosterPtr& r = m.roster;
    int k = m.rank_k;
    if (!m.b.is_zero() || !m.splitting_or_flat().is_flat() || !constant_coefficients(m.omega) ||
        r->n_transverse() != 2 * k || k < 1)
        throw MathError("unsupported model: need b = 0, flat splitting and constant transverse omega");
    if (!gamma1.is_zero() && (gamma1.degree() != 1 || !is_leafwise(gamma1)))
        throw MathError("Gamma_1 must be a leafwise 1-form");
    if (!leafwise_derivative(gamma1).is_zero())
        throw MathError("Gamma_1 is not d_F-closed");

    DifferentialForm omega_k = form_power(m.omega, k);
    DifferentialForm omega_k1 = form_power(m.omega, k - 1);
    LeafForm vol = top_transverse_part(omega_k);
    FourierScalar pf = vol.coefficient(0);
    if (!pf.is_constant() || pf.is_zero())
        throw MathError("unsupported model: omega^k has no constant transverse volume part");
    Coef denom = (Coef(k + 1) * pf.constant_term()).inverse();

    DifferentialForm omega1 = first.omega1.value_or(DifferentialForm(r, 2));
    DifferentialForm b1 = first.b1.value_or(DifferentialForm(r, 1));
    if (!exterior_derivative(b1).is_zero())
        throw MathError("b_1 is not closed");
    if (!wedge(omega_k, omega1).is_zero())
        throw MathError("omega_1 violates the first-order rank condition");
    if (!(exterior_derivative(omega1) + wedge(b1, m.omega)).is_zero())
        throw MathError("(omega_1, b_1) violates the first-order l.c.p-s. equation");
    for (const auto& [mask, f] : b1.terms())
        if ((mask & leaf_mask(*r)) && !f.constant_term().is_zero())
            throw MathError("b_1 must be a constant transverse form plus an exact form");

    DifferentialForm dG = exterior_derivative(gamma1);
    Coef binom = Coef(Rational((k + 1) * k, 2));
    DifferentialForm known = wedge(omega_k1, wedge(dG, dG)).scaled(binom);
    if (!omega1.is_zero())
        known -= wedge(omega_k1, wedge(omega1, dG)).scaled(Coef((k + 1) * k));

    BulkOrder2Result out;
    out.rhs = top_transverse_part(known).scaled(denom);
    out.lee_term = top_transverse_part(wedge(omega_k, wedge(b1, gamma1)).scaled(Coef(-(k + 1)))).scaled(denom);
    for (int i = 0; i < r->n_transverse(); ++i) {
        DifferentialForm dyi = DifferentialForm::covector(r, i);
        LeafForm t = top_transverse_part(wedge(omega_k, wedge(dyi, gamma1)).scaled(Coef(-(k + 1)))).scaled(denom);
        if (!t.is_zero())
            throw MathError("unsupported model: constant Lee directions enter the order-2 equation");
        out.constant_lee_terms.push_back(t);
    }
    DifferentialForm zero_lee(r, 1);
    if (!out.lee_term.is_zero() && !leafwise_solve(out.lee_term, zero_lee).solved())
        throw MathError("b_1 contribution is not exact");
    if (out.rhs.is_zero()) {
        out.solve.solution = LeafForm(r, 1);
        return out;
    }
    out.solve = leafwise_solve(out.rhs, zero_lee);
    if (out.solve.certificate)
        out.solve.certificate->order = 2;
    return out;
}

// ---------- Zambon pipeline

bool ZambonReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.ok || c.informational; });
}

ZambonReport zambon_scenario()
{
    ZambonReport rep;
    auto add = [&](std::string name, bool ok, std::string detail, bool info = false) {
        rep.checks.push_back(ScenarioCheck{std::move(name), ok, std::move(detail), info});
    };

    Model z = catalog::zambon_base();
    LeafForm g = catalog::zambon_gamma1(z);
    const Splitting& flat = z.splitting_or_flat();

    StructureReport s = validate_structure(z);
    add("structure", s.is_lcps_rank_2k, s.is_lcps_rank_2k ? "l.c.p-s. of rank 2" : "invalid base structure");

    Model u = thicken(z, flat);
    DifferentialForm expect_u = parse_form("dy1^dy2 + dq1^dp1 + dq2^dp2", u.roster);
    DifferentialForm diff_u = u.omega - expect_u;
    add("thickening", diff_u.is_zero(), "omega_U = " + u.omega.to_string());

    auto ctx = make_context(z);
    LeafForm lin = linearized_operator(g, ctx);
    add("linearized", lin.is_zero(), "d_F Gamma_1 = " + lin.to_string());

    KuranishiResult kr = kuranishi(g, ctx);
    LeafForm expect_k = parse_form("-4*pi**2*cos(2*pi*y1)*cos(2*pi*y2)*dq1^dq2", z.roster);
    rep.kuranishi_value = kr.half.to_string();
    add("kuranishi value", kr.half == expect_k, "1/2 m2(Gamma_1, Gamma_1) = " + rep.kuranishi_value);
    add("kuranishi class", !kr.class_zero(), kr.class_zero() ? "class vanishes" : "class nonzero");

    McSolveResult mc = mc_solve(g, 2, ctx);
    bool mc_ok = mc.certificate && mc.certificate->order == 2;
    add("mc obstruction", mc_ok, mc.certificate ? describe(*mc.certificate) : "no obstruction");

    BulkOrder2Result bulk = bulk_order2_obstruction(g, z);
    add("bulk obstruction", bulk.obstructed(),
        bulk.solve.certificate ? describe(*bulk.solve.certificate) : "solvable, rhs " + bulk.rhs.to_string());

    FirstOrderBulk cross{parse_form("2*pi*cos(2*pi*y1)*dy1^dq1", z.roster), std::nullopt};
    BulkOrder2Result with_cross = bulk_order2_obstruction(g, z, cross);
    add("order-2 equation with omega_1 = d(sin(2*pi*y1)*dq1)", !with_cross.obstructed(),
        "rhs " + (with_cross.rhs.is_zero() ? std::string("0") : with_cross.rhs.to_string()), true);
    return rep;
}

}  // namespace lcs
