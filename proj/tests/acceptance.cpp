#include "lcs/bulk.hpp"
#include "lcs/catalog.hpp"
#include "lcs/generators.hpp"
#include "lcs/mc.hpp"
#include "lcs/syntax.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace lcs;

namespace {

// every identity below is an exact zero test; only wall-clock limits are tolerances
constexpr double kLimit1 = 5.0;
constexpr double kLimit2 = 10.0;
constexpr double kLimit3 = 60.0;
constexpr double kLimit4 = 300.0;
constexpr double kLimit5 = 60.0;
constexpr double kLimit6 = 60.0;
constexpr double kLimit7 = 120.0;
constexpr double kLimit8 = 120.0;
constexpr double kLimit9 = 60.0;
constexpr double kLimit10 = 120.0;

constexpr int kFuzzTrials = 1000;
constexpr int kLinftyTuplesPerModel = 52;
constexpr int kThickeningTriples = 24;
constexpr int kSplittingPairs = 20;
constexpr int kBracketInputs = 20;
constexpr int kMasterSections = 24;
constexpr int kNovikovSections = 12;
constexpr int kGaugePairs = 24;

const char* kZambonValue = "-4*pi**2*cos(2*pi*y1)*cos(2*pi*y2)*dq1^dq2";

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double limit, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < limit;
    bool pass = o.ok && in_time;
    failures += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, limit);
    std::cout << (pass ? "PASS " : "FAIL ") << id << " " << name << " (" << timing << (in_time ? "" : ", too slow")
              << "): " << o.detail << std::endl;
}

RosterPtr roster(std::vector<std::string> y, std::vector<std::string> q)
{
    return std::make_shared<CoordinateRoster>(std::move(y), std::move(q));
}

int binom(int n, int j) { return j < 0 || j > n ? 0 : j == 0 ? 1 : binom(n - 1, j - 1) * n / j; }
int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/* h_alpha(y) dq^alpha + d_F g: leafwise closed on a flat model with vanishing leafwise Lee form */
LeafForm closed_section(gen::Rng& rng, const AlgebroidContext& ctx)
{
    const RosterPtr& r = ctx.roster();
    LeafForm g(r, 1);
    for (int a = 0; a < r->n_leaf(); ++a) {
        FourierScalar h = gen::scalar(rng, r, 2, 1).leaf_harmonic_projection();
        if (!h.is_zero())
            g += DifferentialForm::monomial(h, CovectorMask(1) << r->leaf_index(a));
    }
    return gauge_shift(g, gen::scalar(rng, r, 2, 1), ctx);
}

// ---------- criteria

Outcome zambon_value()
{
    ZambonReport z = zambon_scenario();
    Model m = catalog::zambon_base();
    KuranishiResult k = kuranishi(catalog::zambon_gamma1(m), make_context(m));
    LeafForm expect = parse_form(kZambonValue, m.roster);
    LeafForm diff = k.half - expect;
    bool ok = diff.is_zero() && z.kuranishi_value == k.half.to_string();
    return {ok, "1/2 m2(Gamma_1, Gamma_1) = " + z.kuranishi_value + "; difference from expected " +
                    (diff.is_zero() ? std::string("0") : diff.to_string())};
}

Outcome zambon_verdicts()
{
    Model m = catalog::zambon_base();
    LeafForm g = catalog::zambon_gamma1(m);
    McSolveResult r = mc_solve(g, 3, make_context(m));
    BulkOrder2Result b = bulk_order2_obstruction(g, m);
    bool mc_ok = r.certificate && r.certificate->order == 2;
    bool bulk_ok = b.obstructed() && b.solve.certificate.has_value();
    std::ostringstream s;
    s << "mc_solve: " << (r.certificate ? describe(*r.certificate) : "no certificate")
      << "; bulk_order2_obstruction: " << (b.solve.certificate ? describe(*b.solve.certificate) : "no certificate");
    return {mc_ok && bulk_ok, s.str()};
}

Outcome grassmann()
{
    int trials = 0, agreements = 0, charts = 0;
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n; ++k) {
            GrassmannFuzzReport f = grassmann_fuzz(n, k, kFuzzTrials, 1000 + 10 * n + k);
            trials += f.trials;
            agreements += f.agreements;
            if (f.trials < kFuzzTrials)
                return {false, "too few trials for n=" + std::to_string(n)};
        }
    const std::vector<Rational> values{-1, Rational(-1, 2), 0, 1, 2};
    for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= n; ++k) {
            GrassmannFuzzReport g = grassmann_grid(n, k, values);
            charts += g.trials;
            trials += g.trials;
            agreements += g.agreements;
        }
    return {agreements == trials, std::to_string(agreements) + "/" + std::to_string(trials) + " agree (" +
                                      std::to_string(charts) + " exhaustive grid charts)"};
}

Outcome linfty()
{
    gen::Rng rng(404);
    Model tl = catalog::transverse_lee(Rational(3, 2));
    std::vector<AlgebroidContext> ctxs{make_context(catalog::zambon_base()), make_context(catalog::curved_t4()),
                                       make_context(catalog::novikov_leaf_torus({Rational(1), Rational(-1, 3)}))};
    std::vector<std::string> names{"zambon", "curved-t4", "novikov (constant bbar)"};
    std::ostringstream s;
    bool ok = true;
    for (size_t c = 0; c < ctxs.size(); ++c) {
        const RosterPtr& r = ctxs[c].roster();
        int bad = 0, nonzero_ops = 0;
        for (int t = 0; t < kLinftyTuplesPerModel; ++t) {
            int N = 1 + t % 4;
            std::vector<LeafForm> xs;
            for (int x = 0; x < N; ++x)
                xs.push_back(gen::form(rng, r, gen::uniform(rng, 0, std::min(r->n_leaf(), 2)), leaf_mask(*r), 2, 1));
            bad += !linfty_relation_residual(xs, ctxs[c]).is_zero();
            nonzero_ops += N >= 2 && !m_op(xs, ctxs[c]).is_zero();
        }
        ok = ok && bad == 0;
        s << names[c] << " " << kLinftyTuplesPerModel - bad << "/" << kLinftyTuplesPerModel << " (nonzero m_l>=2 on "
          << nonzero_ops << "); ";
    }
    return {ok, s.str() + "arities 1-4"};
}

Outcome thickening()
{
    gen::Rng rng(505);
    std::vector<Model> models{catalog::zambon_base(), catalog::transverse_lee(Rational(-1, 2)), catalog::curved_t3(),
                              catalog::curved_t4()};
    int closed = 0, change = 0, curved = 0;
    for (int t = 0; t < kThickeningTriples; ++t) {
        const Model& m = models[t % models.size()];
        Splitting s0 = gen::splitting(rng, m.roster), s = gen::splitting(rng, m.roster);
        Model u = thicken(m, s);
        closed += twisted_derivative(u.omega, u.b).is_zero();
        change += splitting_change_residual(m, s0, s).is_zero();
        curved += !transverse_curvature(s).is_zero();
    }
    return {closed == kThickeningTriples && change == kThickeningTriples,
            "d^{pi*b} omega_U = 0 on " + std::to_string(closed) + "/" + std::to_string(kThickeningTriples) +
                ", splitting change exact on " + std::to_string(change) + "/" + std::to_string(kThickeningTriples) +
                " (" + std::to_string(curved) + " curved)"};
}

Outcome appendix()
{
    gen::Rng rng(606);
    int bianchi = 0, square = 0, law = 0, bracket = 0, curved = 0;
    for (int t = 0; t < kSplittingPairs; ++t) {
        RosterPtr r = t % 2 ? roster({"y1", "y2", "y3"}, {"q1", "q2"}) : roster({"y1", "y2"}, {"q1"});
        Splitting s0 = gen::splitting(rng, r), s = gen::splitting(rng, r);
        TransverseCurvature F = transverse_curvature(s);
        curved += !F.is_zero();
        bianchi += pi_differential(F, s).is_zero() && pi_differential(transverse_curvature(s0), s0).is_zero();
        NormalValuedForm B = gen::normal_form(rng, r, 1);
        NormalValuedForm dd = pi_differential(pi_differential(B, s), s);
        square += dd == pi_bracket(F + F, B, BracketNormalization::shuffle);
        NormalValuedForm D = splitting_difference(s0, s);
        law += curvature_transformation_coordinate(s0, D) == F && curvature_transformation_invariant(s0, D) == F;
    }
    RosterPtr r = roster({"y1", "y2", "y3"}, {"q1", "q2"});
    for (int t = 0; t < kBracketInputs; ++t) {
        NormalValuedForm b = gen::normal_form(rng, r, 1), c = gen::normal_form(rng, r, 1);
        bracket += pi_bracket_coordinate(b, c) == pi_bracket(b, c);
    }
    std::ostringstream s;
    s << "Bianchi " << bianchi << "/" << kSplittingPairs << ", (d^Pi)^2 B = [F+F, B]_shuffle " << square << "/"
      << kSplittingPairs << ", transformation law " << law << "/" << kSplittingPairs << " (" << curved
      << " curved), coordinate bracket " << bracket << "/" << kBracketInputs;
    return {bianchi == kSplittingPairs && square == kSplittingPairs && law == kSplittingPairs &&
                bracket == kBracketInputs,
            s.str()};
}

Outcome master_routes()
{
    gen::Rng rng(707);
    const int N = 3;
    std::vector<Model> models{catalog::zambon_base(), catalog::curved_t3(), catalog::curved_t4(),
                              catalog::transverse_lee(Rational(3, 2))};
    int agree = 0, identity = 0, total = 0, partial_vanish = 0;
    auto first_nonzero = [](const auto& xs) {
        for (size_t o = 0; o < xs.size(); ++o)
            if (!xs[o].is_zero())
                return static_cast<int>(o);
        return -1;
    };
    for (int t = 0; t < kMasterSections; ++t) {
        const Model& m = models[t % models.size()];
        Splitting s = t % 2 ? gen::splitting(rng, m.roster) : m.splitting_or_flat();
        auto ctx = make_context(m, s);
        FormalSeries g;
        if (t % 3 == 2) {
            // solved through some order, so that the residuals vanish at low orders
            McSolveResult r = mc_solve(closed_section(rng, ctx), N, ctx);
            g = r.series;
            for (int j = g.max_order(); j < N; ++j)
                g.terms.push_back(gen::form(rng, m.roster, 1, leaf_mask(*m.roster), 1, 1));
            g.terms.resize(N);
            g.terms[N - 1] += gen::form(rng, m.roster, 1, leaf_mask(*m.roster), 1, 1);
        }
        else {
            for (int j = 1; j <= N; ++j)
                g.terms.push_back(gen::form(rng, m.roster, 1, leaf_mask(*m.roster), 1, 1));
        }
        FormSeries E = graph_residual_series(m, s, g, N);
        auto S = coordinate_master_series(ctx, g, N);
        ScalarSeries pf = pfaffian_series(ctx, g, N);
        bool same = true, exact = true;
        for (int o = 0; o <= N; ++o) {
            same = same && E[o].is_zero() == S[o].is_zero();
            LeafForm expect(m.roster, 2);
            for (int j = 0; j <= o; ++j)
                if (!pf[o - j].is_zero())
                    expect += S[j].times(pf[o - j]).scaled(Coef(factorial(m.rank_k + 1)));
            exact = exact && top_transverse_part(E[o]) == expect;
        }
        int fe = first_nonzero(E), fs = first_nonzero(S);
        same = same && fe == fs;
        partial_vanish += fe != 1;
        agree += same;
        identity += exact;
        ++total;
    }
    std::ostringstream s;
    s << "co-vanishing through eps^3 on " << agree << "/" << total << " sections (" << partial_vanish
      << " with vanishing first-order residual), graded identity on " << identity << "/" << total;
    return {agree == total && identity == total && total >= 20, s.str()};
}

Outcome novikov()
{
    gen::Rng rng(808);
    int solved = 0, clean = 0, nontrivial = 0;
    for (int t = 0; t < kNovikovSections; ++t) {
        std::vector<Rational> lee = t % 2 ? std::vector<Rational>{1, Rational(-1, 2)}
                                          : std::vector<Rational>{Rational(2, 3), 0, 1};
        Model m = catalog::novikov_leaf_torus(lee);
        auto ctx = make_context(m);
        FourierScalar f = gen::scalar(rng, m.roster, 3, 2);
        LeafForm g = leafwise_twisted_derivative(DifferentialForm::scalar(f), ctx.bbar);
        McSolveResult r = mc_solve(g, 4, ctx);
        if (!r.ok() || r.series.max_order() < 4)
            continue;
        ++solved;
        nontrivial += !g.is_zero();
        auto res = mc_residual_series(r.series, 4, ctx);
        bool zero = res.size() == 5;
        for (const LeafForm& x : res)
            zero = zero && x.is_zero();
        for (const LeafForm& x : r.coordinate_residual)
            zero = zero && x.is_zero();
        clean += zero;
    }
    std::ostringstream s;
    s << "solved to order 4: " << solved << "/" << kNovikovSections << " (" << nontrivial
      << " nonzero Gamma_1), MC and coordinate residuals zero through order 4: " << clean << "/" << kNovikovSections;
    return {solved == kNovikovSections && clean == kNovikovSections, s.str()};
}

Outcome cohomology()
{
    int cases = 0, good = 0;
    for (int m = 1; m <= 3; ++m)
        for (int T = 1; T <= 3; ++T) {
            auto d = leaf_torus_cohomology_dims(m, std::vector<Rational>(m, 0), T);
            bool ok = static_cast<int>(d.size()) == m + 1;
            for (int j = 0; ok && j <= m; ++j)
                ok = d[j] == binom(m, j);
            good += ok;
            ++cases;
            for (int v = 0; v < m; ++v) {
                std::vector<Rational> lee(m, 0);
                lee[v] = Rational(v + 1, 3);
                if (v > 0)
                    lee[0] = -1;
                bool zero = true;
                for (int x : leaf_torus_cohomology_dims(m, lee, T))
                    zero = zero && x == 0;
                good += zero;
                ++cases;
            }
        }
    return {good == cases,
            std::to_string(good) + "/" + std::to_string(cases) + " (m, Lee form, truncation) cases, truncations 1-3"};
}

Outcome gauge()
{
    gen::Rng rng(909);
    std::vector<Model> models{catalog::zambon_base(), catalog::zambon_base(), catalog::curved_t4(),
                              catalog::transverse_lee(Rational(1, 2))};
    int same = 0, obstructed = 0;
    for (int t = 0; t < kGaugePairs; ++t) {
        const Model& m = models[t % models.size()];
        auto ctx = make_context(m);
        LeafForm g = t % 4 == 0 ? catalog::zambon_gamma1(m) : closed_section(rng, ctx);
        FourierScalar f = gen::scalar(rng, m.roster, 3, 2);
        bool before = kuranishi(g, ctx).class_zero();
        bool after = kuranishi(gauge_shift(g, f, ctx), ctx).class_zero();
        same += before == after;
        obstructed += !before;
    }
    return {same == kGaugePairs && obstructed > 0 && obstructed < kGaugePairs,
            "verdict unchanged on " + std::to_string(same) + "/" + std::to_string(kGaugePairs) + " pairs (" +
                std::to_string(obstructed) + " obstructed)"};
}

}  // namespace

int main()
{
    run(1, "Zambon Kuranishi value", kLimit1, zambon_value);
    run(2, "Zambon obstruction certificates", kLimit2, zambon_verdicts);
    run(3, "algebraic and power coisotropy criteria agree", kLimit3, grassmann);
    run(4, "L-infinity relations", kLimit4, linfty);
    run(5, "thickening identities", kLimit5, thickening);
    run(6, "splitting calculus", kLimit6, appendix);
    run(7, "graph and coordinate master routes", kLimit7, master_routes);
    run(8, "unobstructed leaf torus", kLimit8, novikov);
    run(9, "leaf torus cohomology", kLimit9, cohomology);
    run(10, "gauge invariance of the Kuranishi verdict", kLimit10, gauge);
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << 10 - failures << "/10" << std::endl;
    return failures ? 1 : 0;
}
