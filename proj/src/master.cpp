#include "lcs/master.hpp"

#include "lcs/linalg.hpp"

#include <functional>
#include <random>

namespace lcs {

// ---------- linear coisotropy

void CoisotropicChart::validate() const
{
    if (n < 0 || k < 0 || k > n)
        throw MathError("chart needs 0 <= k <= n");
    int m = n - k;
    if (static_cast<int>(A_H.size()) != m || static_cast<int>(A_I.size()) != m)
        throw MathError("chart blocks need n - k rows");
    for (const auto& row : A_H)
        if (static_cast<int>(row.size()) != 2 * k)
            throw MathError("A_H rows need 2k entries");
    for (const auto& row : A_I)
        if (static_cast<int>(row.size()) != m)
            throw MathError("A_I must be square");
}

QMatrix standard_omega_h(int k)
{
    QMatrix w(2 * k, std::vector<Rational>(2 * k, 0));
    for (int a = 0; a < k; ++a) {
        w[2 * a][2 * a + 1] = 1;
        w[2 * a + 1][2 * a] = -1;
    }
    return w;
}

QMatrix standard_pi_h(int k)
{
    // the block [[0, 1], [-1, 0]] inverts to its negative
    QMatrix w = standard_omega_h(k);
    for (auto& row : w)
        for (auto& v : row)
            v = -v;
    return w;
}

QMatrix restricted_form(const CoisotropicChart& c)
{
    c.validate();
    int h = 2 * c.k, m = c.n - c.k;
    QMatrix M(h + m, std::vector<Rational>(h + m, 0));
    QMatrix w = standard_omega_h(c.k);
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b)
            M[a][b] = w[a][b];
    // omega((h, x, A_H h + A_I x), (h', x', ...)) = omega_0(h, h') + x.y' - x'.y
    for (int a = 0; a < h; ++a)
        for (int j = 0; j < m; ++j) {
            M[a][h + j] = -c.A_H[j][a];
            M[h + j][a] = c.A_H[j][a];
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            M[h + i][h + j] = c.A_I[i][j] - c.A_I[j][i];
    return M;
}

int restricted_rank(const CoisotropicChart& c) { return rational_rank(restricted_form(c)); }

QMatrix coisotropy_defect(const CoisotropicChart& c)
{
    c.validate();
    int h = 2 * c.k, m = c.n - c.k;
    QMatrix pi = standard_pi_h(c.k);
    QMatrix S(m, std::vector<Rational>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Rational v = c.A_I[i][j] - c.A_I[j][i];
            for (int a = 0; a < h; ++a)
                for (int b = 0; b < h; ++b)
                    v += c.A_H[i][a] * pi[a][b] * c.A_H[j][b];
            v.canonicalize();
            S[i][j] = v;
        }
    return S;
}

bool coisotropic_algebraic(const CoisotropicChart& c)
{
    for (const auto& row : coisotropy_defect(c))
        for (const auto& v : row)
            if (sgn(v) != 0)
                return false;
    return true;
}

bool coisotropic_power(const CoisotropicChart& c)
{
    QMatrix M = restricted_form(c);
    int dim = static_cast<int>(M.size()), order = 2 * c.k + 2;
    if (order > dim)
        return true;
    std::vector<int> subset;
    bool all_zero = true;
    std::function<void(int)> rec = [&](int start) {
        if (!all_zero)
            return;
        if (static_cast<int>(subset.size()) == order) {
            QMatrix sub(order, std::vector<Rational>(order));
            for (int a = 0; a < order; ++a)
                for (int b = 0; b < order; ++b)
                    sub[a][b] = M[subset[a]][subset[b]];
            if (sgn(pfaffian(sub)) != 0)
                all_zero = false;
            return;
        }
        for (int i = start; i < dim; ++i) {
            subset.push_back(i);
            rec(i + 1);
            subset.pop_back();
        }
    };
    rec(0);
    return all_zero;
}

namespace {

Rational draw(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

CoisotropicChart random_chart(std::mt19937_64& rng, int n, int k)
{
    int m = n - k, h = 2 * k;
    CoisotropicChart c{n, k, QMatrix(m, std::vector<Rational>(h)), QMatrix(m, std::vector<Rational>(m))};
    for (auto& row : c.A_H)
        for (auto& v : row)
            v = draw(rng);
    if (rng() % 2) {
        for (auto& row : c.A_I)
            for (auto& v : row)
                v = draw(rng);
        return c;
    }
    // A_I = sym - G/2 with G = A_H pi_H A_H^T skew, so the defect vanishes
    CoisotropicChart zero = c;
    for (auto& row : zero.A_I)
        for (auto& v : row)
            v = 0;
    QMatrix G = coisotropy_defect(zero);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            Rational s = draw(rng);
            c.A_I[i][j] = s - G[i][j] / 2;
            c.A_I[j][i] = s - G[j][i] / 2;
        }
    if (m > 0 && rng() % 3 == 0) {
        int i = static_cast<int>(rng() % m), j = static_cast<int>(rng() % m);
        c.A_I[i][j] += draw(rng);
    }
    for (auto& row : c.A_I)
        for (auto& v : row)
            v.canonicalize();
    return c;
}

void record(GrassmannFuzzReport& r, const CoisotropicChart& c)
{
    bool a = coisotropic_algebraic(c), p = coisotropic_power(c);
    ++r.trials;
    if (a == p)
        ++r.agreements;
    else
        r.disagreements.push_back(c);
    if (a)
        ++r.coisotropic;
}

}  // namespace

GrassmannFuzzReport grassmann_fuzz(int n, int k, int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    GrassmannFuzzReport r;
    for (int t = 0; t < trials; ++t)
        record(r, random_chart(rng, n, k));
    return r;
}

GrassmannFuzzReport grassmann_grid(int n, int k, const std::vector<Rational>& values)
{
    int m = n - k, h = 2 * k;
    int slots = m * h + m * m;
    GrassmannFuzzReport r;
    std::vector<int> idx(slots, 0);
    while (true) {
        CoisotropicChart c{n, k, QMatrix(m, std::vector<Rational>(h)), QMatrix(m, std::vector<Rational>(m))};
        int s = 0;
        for (auto& row : c.A_H)
            for (auto& v : row)
                v = values[idx[s++]];
        for (auto& row : c.A_I)
            for (auto& v : row)
                v = values[idx[s++]];
        record(r, c);
        int pos = 0;
        while (pos < slots && ++idx[pos] == static_cast<int>(values.size()))
            idx[pos++] = 0;
        if (pos == slots)
            break;
    }
    return r;
}

// ---------- series

LeafForm FormalSeries::order(int j, const RosterPtr& r) const
{
    if (j < 1 || j > max_order())
        return LeafForm(r, 1);
    return terms[j - 1];
}

FormSeries wedge_series(const FormSeries& a, const FormSeries& b, int N)
{
    FormSeries out(N + 1);
    for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j) {
            if (b[j].is_zero())
                continue;
            DifferentialForm w = wedge(a[i], b[j]);
            if (out[i + j].roster())
                out[i + j] += w;
            else
                out[i + j] = w;
        }
    }
    return out;
}

FormSeries power_series(const FormSeries& a, int m, int N)
{
    RosterPtr r;
    for (const auto& f : a)
        if (f.roster())
            r = f.roster();
    FormSeries out(N + 1);
    out[0] = DifferentialForm::scalar(r, Coef(1));
    for (int t = 0; t < m; ++t)
        out = wedge_series(out, a, N);
    for (auto& f : out)
        if (!f.roster())
            f = DifferentialForm(r, 0);
    return out;
}

// ---------- sections

namespace {

FourierScalar leaf_coefficient(const LeafForm& g, int alpha)
{
    return g.coefficient(CovectorMask(1) << g.roster()->leaf_index(alpha));
}

void require_section(const LeafForm& g)
{
    if (g.degree() != 1 || !is_leafwise(g))
        throw MathError("a section is a leafwise 1-form");
}

}  // namespace

DifferentialForm section_one_form(const LeafForm& gamma, const Splitting& s)
{
    require_section(gamma);
    const RosterPtr& r = gamma.roster();
    DifferentialForm out(r, 1);
    for (int alpha = 0; alpha < r->n_leaf(); ++alpha) {
        FourierScalar c = leaf_coefficient(gamma, alpha);
        if (c.is_zero())
            continue;
        DifferentialForm f = DifferentialForm::covector(r, r->leaf_index(alpha));
        for (int i = 0; i < r->n_transverse(); ++i)
            f -= DifferentialForm::covector(r, i).times(s.at(i, alpha));
        out += f.times(c);
    }
    return out;
}

DifferentialForm graph_form(const Model& m, const Splitting& s, const LeafForm& gamma)
{
    return m.omega - twisted_derivative(section_one_form(gamma, s), m.b);
}

DifferentialForm graph_form_by_pullback(const Model& m, const Splitting& s, const LeafForm& gamma)
{
    require_section(gamma);
    std::vector<FourierScalar> sec;
    for (int alpha = 0; alpha < m.roster->n_leaf(); ++alpha)
        sec.push_back(leaf_coefficient(gamma, alpha));
    return pullback_by_section(build_omega_u(m, s), sec, m.roster);
}

DifferentialForm graph_coisotropy_residual(const Model& m, const Splitting& s, const LeafForm& gamma)
{
    return form_power(graph_form(m, s, gamma), m.rank_k + 1);
}

FormSeries graph_residual_series(const Model& m, const Splitting& s, const FormalSeries& g, int N)
{
    FormSeries x(N + 1, DifferentialForm(m.roster, 2));
    x[0] = m.omega;
    for (int j = 1; j <= N && j <= g.max_order(); ++j)
        x[j] = -twisted_derivative(section_one_form(g.terms[j - 1], s), m.b);
    return power_series(x, m.rank_k + 1, N);
}

LeafForm top_transverse_part(const DifferentialForm& e)
{
    const RosterPtr& r = e.roster();
    CovectorMask tr = transverse_mask(*r);
    int nk = r->n_transverse();
    LeafForm out(r, std::max(e.degree() - nk, 0));
    for (const auto& [mask, f] : e.terms())
        if ((mask & tr) == tr)
            out.add_term(mask & ~tr, f);
    return out;
}

namespace {

ScalarSeries mul(const ScalarSeries& a, const ScalarSeries& b, int N, const RosterPtr& r)
{
    ScalarSeries out(N + 1, FourierScalar(r));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j)
            if (!a[i].is_zero() && !b[j].is_zero())
                out[i + j] += a[i] * b[j];
    return out;
}

ScalarSeries pfaffian_rec(const std::vector<std::vector<ScalarSeries>>& M, std::vector<int> idx, int N,
                          const RosterPtr& r)
{
    if (idx.empty()) {
        ScalarSeries one(N + 1, FourierScalar(r));
        one[0] = FourierScalar(r, Coef(1));
        return one;
    }
    ScalarSeries out(N + 1, FourierScalar(r));
    int first = idx[0];
    for (size_t t = 1; t < idx.size(); ++t) {
        std::vector<int> rest;
        for (size_t u = 1; u < idx.size(); ++u)
            if (u != t)
                rest.push_back(idx[u]);
        ScalarSeries term = mul(M[first][idx[t]], pfaffian_rec(M, rest, N, r), N, r);
        for (int o = 0; o <= N; ++o)
            out[o] += t % 2 ? term[o] : -term[o];
    }
    return out;
}

/* A_ab as an eps-series: sum_beta Gamma_j,beta F^beta_ab at order j */
std::vector<std::vector<ScalarSeries>> curvature_pairing(const AlgebroidContext& ctx, const FormalSeries& g, int N)
{
    const RosterPtr& r = ctx.roster();
    int n = ctx.n_transverse();
    std::vector<std::vector<ScalarSeries>> A(n, std::vector<ScalarSeries>(n, ScalarSeries(N + 1, FourierScalar(r))));
    for (int j = 1; j <= N && j <= g.max_order(); ++j)
        for (int beta = 0; beta < r->n_leaf(); ++beta) {
            FourierScalar c = leaf_coefficient(g.terms[j - 1], beta);
            if (c.is_zero())
                continue;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (!ctx.F[a][b][beta].is_zero())
                        A[a][b][j] += c * ctx.F[a][b][beta];
        }
    return A;
}

}  // namespace

ScalarSeries pfaffian_series(const AlgebroidContext& ctx, const FormalSeries& g, int N)
{
    const RosterPtr& r = ctx.roster();
    int n = ctx.n_transverse();
    auto M = curvature_pairing(ctx, g, N);
    auto w = ctx.model.transverse_matrix();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            M[a][b][0] += w[a][b];
    std::vector<int> idx(n);
    for (int a = 0; a < n; ++a)
        idx[a] = a;
    return pfaffian_rec(M, idx, N, r);
}

std::vector<LeafForm> coordinate_master_series(const AlgebroidContext& ctx, const FormalSeries& g, int N)
{
    if (N < 1)
        throw MathError("master residual needs order >= 1");
    const RosterPtr& r = ctx.roster();
    int n = ctx.n_transverse();
    for (const auto& t : g.terms)
        require_section(t);
    std::vector<LeafForm> S(N + 1, LeafForm(r, 2));
    for (int j = 1; j <= N && j <= g.max_order(); ++j)
        S[j] -= leafwise_twisted_derivative(g.terms[j - 1], ctx.bbar);

    // D[i] = nabla_i Gamma; W_c = sum over Neumann chains ending in the free index c
    std::vector<FormSeries> D(n, FormSeries(N + 1, LeafForm(r, 1)));
    for (int j = 1; j <= N && j <= g.max_order(); ++j)
        for (int i = 0; i < n; ++i)
            D[i][j] = transverse_covariant(g.terms[j - 1], i, ctx);
    auto A = curvature_pairing(ctx, g, N);

    std::vector<FormSeries> term(n, FormSeries(N + 1, LeafForm(r, 1)));
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i)
            if (!ctx.omega_inv[i][c].is_zero())
                for (int o = 1; o <= N; ++o)
                    term[c][o] += D[i][o].times(ctx.omega_inv[i][c]);
    std::vector<FormSeries> W = term;
    for (int depth = 1; depth <= N - 2; ++depth) {
        std::vector<FormSeries> next(n, FormSeries(N + 1, LeafForm(r, 1)));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (ctx.omega_inv[b][c].is_zero())
                        continue;
                    for (int o1 = 1; o1 <= N; ++o1) {
                        if (term[a][o1].is_zero())
                            continue;
                        for (int o2 = 1; o1 + o2 <= N; ++o2)
                            if (!A[a][b][o2].is_zero())
                                next[c][o1 + o2] -= term[a][o1].times(A[a][b][o2] * ctx.omega_inv[b][c]);
                    }
                }
        term = next;
        for (int c = 0; c < n; ++c)
            for (int o = 0; o <= N; ++o)
                W[c][o] += term[c][o];
    }
    for (int c = 0; c < n; ++c) {
        FormSeries q = wedge_series(W[c], D[c], N);
        for (int o = 0; o <= N; ++o)
            if (q[o].roster() && !q[o].is_zero())
                S[o] += q[o].scaled(Coef(Rational(1, 2)));
    }
    return S;
}

LeafForm linearized_operator(const LeafForm& alpha, const AlgebroidContext& ctx)
{
    return leafwise_twisted_derivative(alpha, ctx.bbar);
}

DifferentialForm linearized_operator_unreduced(const LeafForm& alpha, const Model& m)
{
    return wedge(form_power(m.omega, m.rank_k), twisted_derivative(alpha, m.b));
}

}  // namespace lcs
