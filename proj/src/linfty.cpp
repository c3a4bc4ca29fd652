#include "lcs/linfty.hpp"

#include "lcs/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace lcs {

namespace {

void require_leafwise(const LeafForm& xi)
{
    if (!is_leafwise(xi))
        throw MathError("expected a leafwise form");
}

std::vector<std::vector<FourierScalar>> checked_inverse(const Model& m)
{
    const RosterPtr& r = m.roster;
    int n = r->n_transverse();
    auto w = m.transverse_matrix();
    std::vector<std::vector<FourierScalar>> inv;
    if (m.omega_inv) {
        inv = *m.omega_inv;
    } else {
        auto d = inverse_if_unimodular(w, r);
        if (!d)
            throw MathError("transverse omega^{ij} is not derivable; supply it");
        inv = *d;
    }
    if (static_cast<int>(inv.size()) != n)
        throw MathError("omega^{ij} has the wrong size");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            FourierScalar s(r);
            for (int k = 0; k < n; ++k)
                s += w[i][k] * inv.at(k).at(j);
            if (s != FourierScalar(r, Coef(i == j ? 1 : 0)))
                throw MathError("supplied omega^{ij} is not the inverse of omega_ij");
        }
    return inv;
}

}  // namespace

AlgebroidContext make_context(const Model& m) { return make_context(m, m.splitting_or_flat()); }

AlgebroidContext make_context(const Model& m, const Splitting& s)
{
    if (m.roster->n_fiber() != 0)
        throw MathError("algebroid context needs a base model");
    AlgebroidContext c;
    c.model = m;
    c.splitting = s;
    c.F = curvature_components(s);
    c.omega_inv = checked_inverse(m);
    c.bbar = leaf_lee_form(m);
    const RosterPtr& r = m.roster;
    int nk = r->n_transverse(), nl = r->n_leaf();
    for (int i = 0; i < nk; ++i) {
        c.basic.push_back(s.basic_field(i));
        c.b_transverse.push_back(interior_product(c.basic.back(), m.b).coefficient(0));
    }
    c.F_field.assign(nk, std::vector<VectorField>(nk, VectorField(r)));
    for (int a = 0; a < nk; ++a)
        for (int b = 0; b < nk; ++b)
            for (int beta = 0; beta < nl; ++beta)
                c.F_field[a][b].set(r->leaf_index(beta), c.F[a][b][beta]);
    return c;
}

LeafForm transverse_covariant(const LeafForm& xi, int i, const AlgebroidContext& ctx)
{
    return leafwise_restrict(lie_derivative(ctx.basic.at(i), xi)) + xi.times(ctx.b_transverse[i]);
}

CovariantDerivativeResult covariant_derivative(const LeafForm& xi, const AlgebroidContext& ctx)
{
    require_leafwise(xi);
    const RosterPtr& r = ctx.roster();
    CovariantDerivativeResult out;
    for (int i = 0; i < r->n_transverse(); ++i)
        out.transverse.push_back(transverse_covariant(xi, i, ctx));
    for (int beta = 0; beta < r->n_leaf(); ++beta) {
        int c = r->leaf_index(beta);
        LeafForm d(r, xi.degree());
        for (const auto& [mask, f] : xi.terms())
            d.add_term(mask, f.partial(c));
        out.leaf.push_back(d + xi.times(ctx.bbar.coefficient(CovectorMask(1) << c)));
    }
    return out;
}

LeafForm m1(const LeafForm& xi, const AlgebroidContext& ctx)
{
    require_leafwise(xi);
    LeafForm d = leafwise_twisted_derivative(xi, ctx.bbar);
    return xi.degree() % 2 ? -d : d;
}

LeafForm m1_from_covariant(const LeafForm& xi, const AlgebroidContext& ctx)
{
    const RosterPtr& r = ctx.roster();
    auto nabla = covariant_derivative(xi, ctx);
    LeafForm out(r, xi.degree() + 1);
    for (int beta = 0; beta < r->n_leaf(); ++beta)
        out += wedge(DifferentialForm::covector(r, r->leaf_index(beta)), nabla.leaf[beta]);
    return xi.degree() % 2 ? -out : out;
}

LeafForm m2(const LeafForm& x1, const LeafForm& x2, const AlgebroidContext& ctx)
{
    require_leafwise(x1);
    require_leafwise(x2);
    int n = ctx.n_transverse();
    std::vector<LeafForm> n1, n2;
    for (int i = 0; i < n; ++i) {
        n1.push_back(transverse_covariant(x1, i, ctx));
        n2.push_back(transverse_covariant(x2, i, ctx));
    }
    LeafForm out(ctx.roster(), x1.degree() + x2.degree());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!ctx.omega_inv[i][j].is_zero())
                out += wedge(n1[i], n2[j]).times(ctx.omega_inv[i][j]);
    return (x1.degree() * (x2.degree() + 1)) % 2 ? -out : out;
}

int koszul_sign(const std::vector<int>& shifted_degrees, const std::vector<int>& perm)
{
    int sign = 1;
    for (size_t r = 0; r < perm.size(); ++r)
        for (size_t s = r + 1; s < perm.size(); ++s)
            if (perm[r] > perm[s] && (shifted_degrees[perm[r]] * shifted_degrees[perm[s]]) % 2)
                sign = -sign;
    return sign;
}

LeafForm m_ell(const std::vector<LeafForm>& xs, const AlgebroidContext& ctx)
{
    int l = static_cast<int>(xs.size());
    if (l < 2)
        throw MathError("m_ell needs at least two inputs");
    const RosterPtr& r = ctx.roster();
    int n = ctx.n_transverse();
    int total = 2 - l;
    for (const auto& x : xs) {
        require_leafwise(x);
        total += x.degree();
    }
    LeafForm out(r, total);
    if (total < 0 || total > r->n_leaf() || n == 0)
        return out;

    // nabla[x][i] and contraction[x][a][b] for every input
    std::vector<std::vector<LeafForm>> nabla(l);
    std::vector<std::vector<std::vector<LeafForm>>> contr(l);
    std::vector<int> shifted(l);
    for (int x = 0; x < l; ++x) {
        shifted[x] = xs[x].degree() - 1;
        for (int i = 0; i < n; ++i)
            nabla[x].push_back(transverse_covariant(xs[x], i, ctx));
        if (l > 2) {
            contr[x].assign(n, std::vector<LeafForm>(n));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    contr[x][a][b] = interior_product(ctx.F_field[a][b], xs[x]);
        }
    }

    // The permutation sum is accumulated over subsets: A[S][c] is the signed sum, over the
    // orderings of S placed first, of the partial chain U_c. Each sign factor depends only on
    // the element added and the set already placed.
    const int full = (1 << l) - 1;
    std::vector<std::vector<LeafForm>> A(full + 1);
    auto shifted_sum = [&](int S) {
        int t = 0;
        for (int y = 0; y < l; ++y)
            if (S >> y & 1)
                t += shifted[y];
        return t;
    };
    auto step_sign = [&](int S, int x, int position) {
        int sign = 1;
        for (int y = x + 1; y < l; ++y)
            if ((S >> y & 1) && (shifted[y] * shifted[x]) % 2)
                sign = -sign;
        if (position > 0 && position < l - 1 && shifted[x] % 2)
            sign = -sign;
        int left_degree = position == 0 ? 0 : 1 + shifted_sum(S);
        if ((shifted[x] * left_degree) % 2)
            sign = -sign;
        return sign;
    };
    for (int x = 0; x < l; ++x) {
        auto& U = A[1 << x];
        U.assign(n, LeafForm(r, xs[x].degree()));
        for (int c = 0; c < n; ++c)
            for (int i = 0; i < n; ++i)
                if (!ctx.omega_inv[i][c].is_zero())
                    U[c] += nabla[x][i].times(ctx.omega_inv[i][c]);
    }
    for (int S = 1; S < full; ++S) {
        int size = __builtin_popcount(static_cast<unsigned>(S));
        if (size > l - 2 || A[S].empty())
            continue;
        for (int x = 0; x < l; ++x) {
            if (S >> x & 1)
                continue;
            int sign = step_sign(S, x, size);
            const auto& C = contr[x];
            const auto& U = A[S];
            auto& V = A[S | 1 << x];
            if (V.empty())
                V.assign(n, LeafForm(r, 1 + shifted_sum(S | 1 << x)));
            for (int a = 0; a < n; ++a) {
                if (U[a].is_zero())
                    continue;
                for (int b = 0; b < n; ++b) {
                    if (C[a][b].is_zero())
                        continue;
                    LeafForm w = wedge(U[a], C[a][b]);
                    if (sign < 0)
                        w.negate();
                    for (int c = 0; c < n; ++c)
                        if (!ctx.omega_inv[b][c].is_zero())
                            V[c] += w.times(ctx.omega_inv[b][c]);
                }
            }
        }
    }
    for (int x = 0; x < l; ++x) {
        int S = full ^ (1 << x);
        if (A[S].empty())
            continue;
        int sign = step_sign(S, x, l - 1);
        LeafForm term(r, total);
        for (int c = 0; c < n; ++c)
            if (!A[S][c].is_zero())
                term += wedge(A[S][c], nabla[x][c]);
        if (sign < 0)
            term.negate();
        out += std::move(term);
    }

    Rational half(1, 2);
    return out.scaled(Coef(l % 2 ? -half : half));
}

LeafForm m_op(const std::vector<LeafForm>& xs, const AlgebroidContext& ctx)
{
    if (xs.size() == 1)
        return m1(xs[0], ctx);
    return m_ell(xs, ctx);
}

LeafForm linfty_relation_residual(const std::vector<LeafForm>& xs, const AlgebroidContext& ctx)
{
    int N = static_cast<int>(xs.size());
    if (N < 1)
        throw MathError("relation residual needs at least one input");
    const RosterPtr& r = ctx.roster();
    std::vector<int> shifted(N);
    int total = 3 - N;
    for (int x = 0; x < N; ++x) {
        shifted[x] = xs[x].degree() - 1;
        total += xs[x].degree();
    }
    LeafForm out(r, std::max(total, 0));
    for (int l = 1; l <= N; ++l) {
        // unshuffles: choose the first l inputs as a subset in increasing order
        std::vector<bool> pick(N, false);
        std::fill(pick.begin(), pick.begin() + l, true);
        do {
            std::vector<int> perm;
            for (int x = 0; x < N; ++x)
                if (pick[x])
                    perm.push_back(x);
            for (int x = 0; x < N; ++x)
                if (!pick[x])
                    perm.push_back(x);
            std::vector<LeafForm> inner, outer;
            for (int s = 0; s < l; ++s)
                inner.push_back(xs[perm[s]]);
            LeafForm v = m_op(inner, ctx);
            if (v.is_zero() && v.degree() < 0)
                continue;
            outer.push_back(v);
            for (int s = l; s < N; ++s)
                outer.push_back(xs[perm[s]]);
            LeafForm term = m_op(outer, ctx);
            if (term.is_zero())
                continue;
            if (koszul_sign(shifted, perm) < 0)
                term.negate();
            out += std::move(term);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

}  // namespace lcs
