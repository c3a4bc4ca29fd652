#include "lcs/mc.hpp"

#include <functional>
#include <sstream>

namespace lcs {

namespace {

void require_closed(const LeafForm& gamma1, const AlgebroidContext& ctx)
{
    if (!leafwise_twisted_derivative(gamma1, ctx.bbar).is_zero())
        throw MathError("Gamma_1 is not d_F^bbar-closed");
}

FormalSeries truncated(const FormalSeries& g, int last)
{
    FormalSeries out;
    for (int j = 1; j <= last && j <= g.max_order(); ++j)
        out.terms.push_back(g.terms[j - 1]);
    return out;
}

Coef factorial(int n) { return n <= 1 ? Coef(1) : Coef(n) * factorial(n - 1); }

}  // namespace

CohomologySolveResult leafwise_solve(const LeafForm& rhs, const DifferentialForm& bbar)
{
    if (!is_leafwise(rhs))
        throw MathError("leafwise solve needs a leafwise right-hand side");
    if (!leafwise_twisted_derivative(rhs, bbar).is_zero())
        throw MathError("right-hand side is not d_F^bbar-closed");
    TwistedModeComplex c = leafwise_complex(rhs.roster(), bbar);
    ModeSolve s = solve_by_modes(c, rhs);
    CohomologySolveResult out;
    if (s.solution) {
        out.solution = *s.solution;
        if (out.solution->is_zero())
            out.solution = LeafForm(rhs.roster(), std::max(rhs.degree() - 1, 0));
        return out;
    }
    ObstructionCertificate cert;
    cert.residual = rhs;
    cert.harmonic_witness = s.unsolved_part;
    cert.mode = s.failed_modes.front();
    int p = rhs.degree();
    cert.system = c.matrix(cert.mode, p - 1);
    auto rows = c.basis(p);
    for (auto m : rows) {
        Coef v;
        FourierScalar f = rhs.coefficient(m);
        for (const auto& [key, coef] : f.terms())
            if (key == cert.mode)
                v = coef;
        cert.rhs_vector.push_back(v);
    }
    out.certificate = cert;
    return out;
}

LeafForm mc_rhs(int N, const FormalSeries& lower, const AlgebroidContext& ctx)
{
    if (N < 1)
        throw MathError("order must be at least 1");
    const RosterPtr& r = ctx.roster();
    if (lower.max_order() >= 1)
        require_closed(lower.terms[0], ctx);
    if (N == 1)
        return LeafForm(r, 2);
    FormalSeries known = truncated(lower, N - 1);
    FormSeries E = graph_residual_series(ctx.model, ctx.splitting, known, N);
    ScalarSeries pf = pfaffian_series(ctx, FormalSeries{}, 0);
    if (!pf[0].is_constant() || pf[0].is_zero())
        throw MathError("unsupported model: Pf(omega) is not a nonzero constant");
    Coef scale = (factorial(ctx.model.rank_k + 1) * pf[0].constant_term()).inverse();
    LeafForm c = top_transverse_part(E[N]);
    return c.is_zero() ? LeafForm(r, 2) : c.scaled(scale);
}

LeafForm mc_rhs_coordinate(int N, const FormalSeries& lower, const AlgebroidContext& ctx)
{
    if (N < 1)
        throw MathError("order must be at least 1");
    return coordinate_master_series(ctx, truncated(lower, N - 1), N)[N];
}

std::vector<LeafForm> mc_residual_series(const FormalSeries& g, int N, const AlgebroidContext& ctx)
{
    const RosterPtr& r = ctx.roster();
    std::vector<LeafForm> out(N + 1, LeafForm(r, 2));
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int order, int remaining) {
        if (remaining == 0) {
            std::vector<LeafForm> xs;
            for (int j : parts) {
                if (j > g.max_order())
                    return;
                xs.push_back(g.terms[j - 1]);
            }
            LeafForm v = m_op(xs, ctx);
            if (!v.is_zero())
                out[order] += v.scaled(factorial(static_cast<int>(xs.size())).inverse());
            return;
        }
        for (int j = 1; j <= remaining; ++j) {
            parts.push_back(j);
            rec(order, remaining - j);
            parts.pop_back();
        }
    };
    for (int o = 1; o <= N; ++o)
        rec(o, o);
    return out;
}

KuranishiResult kuranishi(const LeafForm& gamma1, const AlgebroidContext& ctx)
{
    require_closed(gamma1, ctx);
    KuranishiResult k;
    k.bracket = m2(gamma1, gamma1, ctx);
    k.half = k.bracket.scaled(Coef(Rational(1, 2)));
    k.klass = leafwise_solve(k.half, ctx.bbar);
    return k;
}

McSolveResult mc_solve(const LeafForm& gamma1, int max_order, const AlgebroidContext& ctx)
{
    require_closed(gamma1, ctx);
    const RosterPtr& r = ctx.roster();
    McSolveResult out;
    out.series.terms.push_back(gamma1);
    int reached = 1;
    for (int N = 2; N <= max_order; ++N) {
        LeafForm rhs = mc_rhs(N, out.series, ctx);
        CohomologySolveResult s = leafwise_solve(rhs, ctx.bbar);
        if (!s.solved()) {
            out.certificate = *s.certificate;
            out.certificate->order = N;
            break;
        }
        LeafForm next = s.solution->is_zero() ? LeafForm(r, 1) : *s.solution;
        out.series.terms.push_back(next);
        reached = N;
    }
    out.residual = mc_residual_series(out.series, reached, ctx);
    out.coordinate_residual = coordinate_master_series(ctx, out.series, std::max(reached, 1));
    return out;
}

LeafForm gauge_shift(const LeafForm& gamma1, const FourierScalar& f, const AlgebroidContext& ctx)
{
    return gamma1 + leafwise_twisted_derivative(DifferentialForm::scalar(f), ctx.bbar);
}

std::vector<int> leaf_torus_cohomology_dims(int m, const std::vector<Rational>& lee, int truncation)
{
    std::vector<std::string> names;
    for (int a = 1; a <= m; ++a)
        names.push_back("q" + std::to_string(a));
    RosterPtr r = std::make_shared<CoordinateRoster>(std::vector<std::string>{}, names);
    DifferentialForm b(r, 1);
    for (int a = 0; a < m && a < static_cast<int>(lee.size()); ++a)
        b += DifferentialForm::covector(r, r->leaf_index(a)).scaled(Coef(lee[a]));
    return cohomology_dims(leafwise_complex(r, b), truncation);
}

std::string describe(const ObstructionCertificate& c)
{
    std::ostringstream os;
    os << "obstructed at order " << c.order << "; residual " << c.residual.to_string() << "; witness "
       << c.harmonic_witness.to_string() << "; mode (";
    for (size_t i = 0; i < c.mode.size(); ++i)
        os << (i ? "," : "") << c.mode[i];
    os << ")";
    return os.str();
}

}  // namespace lcs
