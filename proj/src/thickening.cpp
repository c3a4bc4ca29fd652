#include "lcs/thickening.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace lcs {

// ---------- NormalValuedForm

FourierScalar NormalValuedForm::component(CovectorMask m, int beta) const
{
    auto it = terms_.find({m, beta});
    return it == terms_.end() ? FourierScalar(base_) : it->second;
}

FourierScalar NormalValuedForm::evaluate(const std::vector<int>& idx, int beta) const
{
    CovectorMask m = 0;
    int sign = 1;
    for (int c : idx) {
        CovectorMask bit = CovectorMask(1) << c;
        if (m & bit)
            return FourierScalar(base_);
        if (std::popcount(m & ~((bit << 1) - 1)) % 2)
            sign = -sign;
        m |= bit;
    }
    FourierScalar f = component(m, beta);
    return sign > 0 ? f : -f;
}

void NormalValuedForm::add(CovectorMask m, int beta, const FourierScalar& f)
{
    if (f.is_zero())
        return;
    if (std::popcount(m) != degree_)
        throw MathError("normal-valued term of the wrong degree");
    auto [it, inserted] = terms_.emplace(Key{m, beta}, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

NormalValuedForm& NormalValuedForm::operator+=(const NormalValuedForm& o)
{
    if (!base_)
        base_ = o.base_;
    if (!o.is_zero() && is_zero())
        degree_ = o.degree_;
    for (const auto& [k, f] : o.terms_)
        add(k.first, k.second, f);
    return *this;
}

NormalValuedForm& NormalValuedForm::operator-=(const NormalValuedForm& o)
{
    if (!base_)
        base_ = o.base_;
    if (!o.is_zero() && is_zero())
        degree_ = o.degree_;
    for (const auto& [k, f] : o.terms_)
        add(k.first, k.second, -f);
    return *this;
}

bool operator==(const NormalValuedForm& a, const NormalValuedForm& b)
{
    if (a.terms_.empty() || b.terms_.empty())
        return a.terms_.empty() && b.terms_.empty();
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::string NormalValuedForm::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [k, f] : terms_) {
        if (!out.empty())
            out += " + ";
        std::string cov;
        for (int i : mask_indices(k.first))
            cov += (cov.empty() ? "d" : "^d") + base_->name(i);
        out += "(" + f.to_string() + ")*d/d" + base_->leaf()[k.second] + (cov.empty() ? "" : " (x) " + cov);
    }
    return out;
}

LeafVector leaf_lie_bracket(const LeafVector& v, const LeafVector& w)
{
    int m = static_cast<int>(v.size());
    RosterPtr r = v.empty() ? nullptr : v[0].roster();
    LeafVector out(m, FourierScalar(r));
    if (m == 0)
        return out;
    int nt = r->n_transverse();
    for (int beta = 0; beta < m; ++beta)
        for (int a = 0; a < m; ++a)
            out[beta] += v[a] * w[beta].partial(nt + a) - w[a] * v[beta].partial(nt + a);
    return out;
}

// ---------- thickening

RosterPtr thickened_roster(const RosterPtr& base)
{
    std::vector<std::string> names;
    for (const auto& q : base->leaf())
        names.push_back(q.size() > 1 && q[0] == 'q' ? "p" + q.substr(1) : "p_" + q);
    for (const auto& n : names)
        if (base->index(n) >= 0)
            return with_fiber(base);
    return with_fiber(base, names);
}

namespace {

struct Lifted {
    RosterPtr total;
    std::vector<std::vector<FourierScalar>> R;  // lifted R[i][alpha]
    DifferentialForm b;                          // pi*b
    std::vector<DifferentialForm> f;             // f^nu = dq^nu - R_i^nu dy^i
};

FourierScalar lift(const FourierScalar& s, const RosterPtr& total)
{
    return lift_to_fiber(DifferentialForm::scalar(s.roster() ? s : FourierScalar(fiberless(total))), total).coefficient(0);
}

Lifted lifted(const Model& m, const Splitting& s)
{
    if (m.roster->n_fiber() != 0)
        throw MathError("thickening needs a fiberless base model");
    Lifted L;
    L.total = thickened_roster(m.roster);
    int nk = m.roster->n_transverse(), nl = m.roster->n_leaf();
    L.R.assign(nk, std::vector<FourierScalar>(nl, FourierScalar(L.total)));
    for (int i = 0; i < nk; ++i)
        for (int a = 0; a < nl; ++a)
            L.R[i][a] = lift(s.at(i, a), L.total);
    L.b = lift_to_fiber(m.b, L.total);
    for (int nu = 0; nu < nl; ++nu) {
        DifferentialForm f = DifferentialForm::covector(L.total, L.total->leaf_index(nu));
        for (int i = 0; i < nk; ++i)
            f -= DifferentialForm::covector(L.total, i).times(L.R[i][nu]);
        L.f.push_back(f);
    }
    return L;
}

}  // namespace

DifferentialForm build_theta_g(const Model& m, const Splitting& s)
{
    Lifted L = lifted(m, s);
    DifferentialForm theta(L.total, 1);
    for (int beta = 0; beta < L.total->n_fiber(); ++beta)
        theta += L.f[beta].times(FourierScalar::fiber_var(L.total, beta));
    return theta;
}

DifferentialForm build_omega_u(const Model& m, const Splitting& s)
{
    RosterPtr total = thickened_roster(m.roster);
    DifferentialForm theta = build_theta_g(m, s);
    DifferentialForm b = lift_to_fiber(m.b, total);
    return lift_to_fiber(m.omega, total) - exterior_derivative(theta) - wedge(b, theta);
}

DifferentialForm omega_u_coordinate(const Model& m, const Splitting& s, int curvature_sign)
{
    Lifted L = lifted(m, s);
    const RosterPtr& T = L.total;
    int nk = T->n_transverse(), nl = T->n_leaf();
    auto F = curvature_components(s);
    DifferentialForm out(T, 2);
    for (int i = 0; i < nk; ++i) {
        for (int j = 0; j < nk; ++j) {
            if (i == j)
                continue;
            FourierScalar c = lift(m.omega.component({i, j}), T);
            for (int beta = 0; beta < nl; ++beta) {
                FourierScalar pf = FourierScalar::fiber_var(T, beta) * lift(F[i][j][beta], T);
                c += curvature_sign > 0 ? pf : -pf;
            }
            out += wedge(DifferentialForm::covector(T, i), DifferentialForm::covector(T, j)).times(c).scaled(Coef(Rational(1, 2)));
        }
    }
    for (int nu = 0; nu < nl; ++nu) {
        FourierScalar p_nu = FourierScalar::fiber_var(T, nu);
        DifferentialForm eta = DifferentialForm::covector(T, T->fiber_index(nu));
        for (int g = 0; g < nl; ++g)
            eta += DifferentialForm::covector(T, T->leaf_index(g)).times(p_nu * L.b.coefficient(CovectorMask(1) << T->leaf_index(g)));
        for (int i = 0; i < nk; ++i) {
            FourierScalar c = p_nu * L.b.coefficient(CovectorMask(1) << i);
            for (int beta = 0; beta < nl; ++beta)
                c += FourierScalar::fiber_var(T, beta) * L.R[i][beta].partial(T->leaf_index(nu));
            eta += DifferentialForm::covector(T, i).times(c);
        }
        out -= wedge(eta, L.f[nu]);
    }
    return out;
}

DifferentialForm omega_u_coordinate_difference(const Model& m, const Splitting& s, int curvature_sign)
{
    return omega_u_coordinate(m, s, curvature_sign) - build_omega_u(m, s);
}

Model thicken(const Model& m, const Splitting& s)
{
    Model t;
    t.name = m.name + " (thickened)";
    t.roster = thickened_roster(m.roster);
    t.omega = build_omega_u(m, s);
    t.b = lift_to_fiber(m.b, t.roster);
    t.rank_k = t.roster->size() / 2;
    return t;
}

std::vector<VectorField> g_sharp_basis(const Model& m, const Splitting& s)
{
    Lifted L = lifted(m, s);
    const RosterPtr& T = L.total;
    int nk = T->n_transverse(), nl = T->n_leaf();
    std::vector<VectorField> basis;
    for (int j = 0; j < nk; ++j) {
        VectorField e = VectorField::coordinate(T, j);
        for (int a = 0; a < nl; ++a)
            e.set(T->leaf_index(a), L.R[j][a]);
        FourierScalar bhat = L.b.coefficient(CovectorMask(1) << j);
        for (int g = 0; g < nl; ++g)
            bhat += L.b.coefficient(CovectorMask(1) << T->leaf_index(g)) * L.R[j][g];
        for (int nu = 0; nu < nl; ++nu) {
            FourierScalar c = FourierScalar::fiber_var(T, nu) * bhat;
            for (int beta = 0; beta < nl; ++beta)
                c += FourierScalar::fiber_var(T, beta) * L.R[j][beta].partial(T->leaf_index(nu));
            e.set(T->fiber_index(nu), -c);
        }
        basis.push_back(e);
    }
    return basis;
}

// ---------- leaf-space connection calculus

std::vector<std::vector<LeafVector>> curvature_components(const Splitting& s)
{
    const RosterPtr& r = s.base;
    int nk = r->n_transverse(), nl = r->n_leaf();
    std::vector<VectorField> Y;
    for (int i = 0; i < nk; ++i)
        Y.push_back(s.basic_field(i));
    std::vector<std::vector<LeafVector>> F(nk, std::vector<LeafVector>(nk, LeafVector(nl, FourierScalar(r))));
    for (int i = 0; i < nk; ++i)
        for (int j = i + 1; j < nk; ++j)
            for (int beta = 0; beta < nl; ++beta) {
                FourierScalar v = Y[i].apply(s.at(j, beta)) - Y[j].apply(s.at(i, beta));
                F[i][j][beta] = v;
                F[j][i][beta] = -v;
            }
    return F;
}

TransverseCurvature transverse_curvature(const Splitting& s)
{
    auto F = curvature_components(s);
    int nk = s.base->n_transverse(), nl = s.base->n_leaf();
    TransverseCurvature out(s.base, 2);
    for (int i = 0; i < nk; ++i)
        for (int j = i + 1; j < nk; ++j)
            for (int beta = 0; beta < nl; ++beta)
                out.add((CovectorMask(1) << i) | (CovectorMask(1) << j), beta, F[i][j][beta]);
    return out;
}

NormalValuedForm pi_lie_derivative(const NormalValuedForm& b, int j, const Splitting& s)
{
    const RosterPtr& r = s.base;
    int nl = r->n_leaf();
    VectorField Y = s.basic_field(j);
    NormalValuedForm out(r, b.degree());
    for (const auto& [k, f] : b.terms()) {
        out.add(k.first, k.second, Y.apply(f));
        for (int beta = 0; beta < nl; ++beta)
            out.add(k.first, beta, -(f * s.at(j, beta).partial(r->leaf_index(k.second))));
    }
    return out;
}

NormalValuedForm pi_differential(const NormalValuedForm& b, const Splitting& s)
{
    const RosterPtr& r = s.base;
    NormalValuedForm out(r, b.degree() + 1);
    for (int j = 0; j < r->n_transverse(); ++j) {
        NormalValuedForm lj = pi_lie_derivative(b, j, s);
        CovectorMask bit = CovectorMask(1) << j;
        for (const auto& [k, f] : lj.terms()) {
            if (k.first & bit)
                continue;
            bool neg = std::popcount(k.first & (bit - 1)) % 2;
            out.add(k.first | bit, k.second, neg ? -f : f);
        }
    }
    return out;
}

NormalValuedForm pi_bracket(const NormalValuedForm& b, const NormalValuedForm& c, BracketNormalization norm)
{
    RosterPtr r = b.base() ? b.base() : c.base();
    int l1 = b.degree(), l2 = c.degree(), n = l1 + l2;
    int nk = r->n_transverse(), nl = r->n_leaf();
    NormalValuedForm out(r, n);
    // every shuffle class has l1! l2! members of equal contribution
    Rational inv_fact = 1;
    for (int i = 2; i <= n; ++i)
        inv_fact /= i;
    if (norm == BracketNormalization::shuffle) {
        inv_fact = 1;
        for (int i = 2; i <= l1; ++i)
            inv_fact /= i * i;
        for (int i = 2; i <= l2; ++i)
            inv_fact /= i * i;
    }
    for (CovectorMask m = 0; m < (CovectorMask(1) << nk); ++m) {
        if (std::popcount(m) != n)
            continue;
        std::vector<int> idx = mask_indices(m);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        LeafVector acc(nl, FourierScalar(r));
        do {
            int inversions = 0;
            for (int a = 0; a < n; ++a)
                for (int bb = a + 1; bb < n; ++bb)
                    inversions += perm[a] > perm[bb];
            std::vector<int> first, second;
            for (int a = 0; a < n; ++a)
                (a < l1 ? first : second).push_back(idx[perm[a]]);
            LeafVector V(nl, FourierScalar(r)), W(nl, FourierScalar(r));
            for (int beta = 0; beta < nl; ++beta) {
                V[beta] = b.evaluate(first, beta);
                W[beta] = c.evaluate(second, beta);
            }
            LeafVector br = leaf_lie_bracket(V, W);
            for (int beta = 0; beta < nl; ++beta)
                acc[beta] += inversions % 2 ? -br[beta] : br[beta];
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (int beta = 0; beta < nl; ++beta)
            out.add(m, beta, acc[beta].scaled(Coef(inv_fact)));
    }
    return out;
}

NormalValuedForm pi_bracket_coordinate(const NormalValuedForm& b, const NormalValuedForm& c)
{
    if (b.degree() != 1 || c.degree() != 1)
        throw MathError("coordinate bracket formula is for degree-1 inputs");
    RosterPtr r = b.base() ? b.base() : c.base();
    int nk = r->n_transverse(), nl = r->n_leaf(), nt = r->n_transverse();
    auto T = [&](int i, int j, int beta) {
        FourierScalar t(r);
        for (int a = 0; a < nl; ++a) {
            t += b.evaluate({i}, a) * c.evaluate({j}, beta).partial(nt + a);
            t -= c.evaluate({j}, a) * b.evaluate({i}, beta).partial(nt + a);
        }
        return t;
    };
    NormalValuedForm out(r, 2);
    for (int i = 0; i < nk; ++i)
        for (int j = i + 1; j < nk; ++j)
            for (int beta = 0; beta < nl; ++beta)
                out.add((CovectorMask(1) << i) | (CovectorMask(1) << j), beta,
                        (T(i, j, beta) - T(j, i, beta)).scaled(Coef(Rational(1, 2))));
    return out;
}

NormalValuedForm splitting_difference(const Splitting& s0, const Splitting& s)
{
    NormalValuedForm out(s0.base, 1);
    for (int i = 0; i < s0.base->n_transverse(); ++i)
        for (int a = 0; a < s0.base->n_leaf(); ++a)
            out.add(CovectorMask(1) << i, a, s.at(i, a) - s0.at(i, a));
    return out;
}

TransverseCurvature curvature_transformation_coordinate(const Splitting& s0, const NormalValuedForm& b)
{
    const RosterPtr& r = s0.base;
    int nk = r->n_transverse(), nl = r->n_leaf();
    auto F0 = curvature_components(s0);
    auto B = [&](int i, int beta) { return b.evaluate({i}, beta); };
    auto dq = [&](const FourierScalar& f, int a) { return f.partial(r->leaf_index(a)); };
    TransverseCurvature out(r, 2);
    for (int i = 0; i < nk; ++i) {
        for (int j = i + 1; j < nk; ++j) {
            for (int beta = 0; beta < nl; ++beta) {
                FourierScalar v = F0[i][j][beta] + B(j, beta).partial(i) - B(i, beta).partial(j);
                for (int a = 0; a < nl; ++a) {
                    v += s0.at(i, a) * dq(B(j, beta), a) - s0.at(j, a) * dq(B(i, beta), a);
                    v += B(i, a) * dq(s0.at(j, beta), a) - B(j, a) * dq(s0.at(i, beta), a);
                    v += B(i, a) * dq(B(j, beta), a) - B(j, a) * dq(B(i, beta), a);
                }
                out.add((CovectorMask(1) << i) | (CovectorMask(1) << j), beta, v);
            }
        }
    }
    return out;
}

TransverseCurvature curvature_transformation_invariant(const Splitting& s0, const NormalValuedForm& b)
{
    return transverse_curvature(s0) + pi_differential(b, s0) + pi_bracket(b, b);
}

DifferentialForm splitting_change_residual(const Model& m, const Splitting& s0, const Splitting& s)
{
    RosterPtr total = thickened_roster(m.roster);
    DifferentialForm b = lift_to_fiber(m.b, total);
    DifferentialForm dtheta = build_theta_g(m, s0) - build_theta_g(m, s);
    return omega_u_coordinate(m, s, 1) - omega_u_coordinate(m, s0, 1) - (exterior_derivative(dtheta) + wedge(b, dtheta));
}

}  // namespace lcs
