#include "doctest.h"
#include "lcs/generators.hpp"
#include "lcs/catalog.hpp"
#include "lcs/linfty.hpp"
#include "lcs/syntax.hpp"

#include <numeric>

using namespace lcs;

namespace {

LeafForm leaf_form(gen::Rng& rng, const RosterPtr& r, int degree, int terms = 2)
{
    return gen::form(rng, r, degree, leaf_mask(*r), terms, 1);
}

/* m_3 written out with explicit index loops and signs */
LeafForm m3_longhand(const LeafForm& x1, const LeafForm& x2, const LeafForm& x3, const AlgebroidContext& ctx)
{
    const std::vector<LeafForm> xs{x1, x2, x3};
    const RosterPtr& r = ctx.roster();
    int n = ctx.n_transverse();
    std::vector<int> p{0, 1, 2};
    LeafForm out(r, x1.degree() + x2.degree() + x3.degree() - 1);
    do {
        int d0 = xs[p[0]].degree(), d1 = xs[p[1]].degree(), d2 = xs[p[2]].degree();
        int e0 = d0 - 1, e1 = d1 - 1, e2 = d2 - 1;
        int koszul = 0;
        for (int s = 0; s < 3; ++s)
            for (int t = s + 1; t < 3; ++t)
                if (p[s] > p[t])
                    koszul += (xs[p[s]].degree() - 1) * (xs[p[t]].degree() - 1);
        int exponent = koszul + e1 + e1 * d0 + e2 * (d0 + e1);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int j = 0; j < n; ++j) {
                        FourierScalar w = ctx.omega_inv[i][a] * ctx.omega_inv[b][j];
                        if (w.is_zero())
                            continue;
                        LeafForm t = wedge(wedge(transverse_covariant(xs[p[0]], i, ctx),
                                                 interior_product(ctx.F_field[a][b], xs[p[1]])),
                                           transverse_covariant(xs[p[2]], j, ctx))
                                         .times(w);
                        out += exponent % 2 ? -t : t;
                    }
    } while (std::next_permutation(p.begin(), p.end()));
    return out.scaled(Coef(Rational(-1, 2)));
}

void check_relations(const AlgebroidContext& ctx, gen::Rng& rng, int max_arity, int rounds)
{
    const RosterPtr& r = ctx.roster();
    int nl = r->n_leaf();
    for (int N = 1; N <= max_arity; ++N)
        for (int t = 0; t < rounds; ++t) {
            std::vector<LeafForm> xs;
            for (int x = 0; x < N; ++x)
                xs.push_back(leaf_form(rng, r, gen::uniform(rng, 0, std::min(nl, 2))));
            LeafForm res = linfty_relation_residual(xs, ctx);
            CHECK_MESSAGE(res.is_zero(), ctx.model.name << " N=" << N << " residual " << res.to_string());
        }
}

}  // namespace

TEST_CASE("covariant derivative examples")
{
    Model z = catalog::zambon_base();
    auto ctx = make_context(z);
    const RosterPtr& r = z.roster;
    auto nabla = covariant_derivative(catalog::zambon_gamma1(z), ctx);
    CHECK(nabla.transverse[0] == parse_form("2*pi*cos(2*pi*y1)*dq1", r));
    CHECK(nabla.transverse[1] == parse_form("2*pi*cos(2*pi*y2)*dq2", r));
    CHECK(nabla.leaf[0].is_zero());

    Model nov = catalog::novikov_leaf_torus({Rational(3), Rational(0)});
    auto nctx = make_context(nov);
    auto one = covariant_derivative(DifferentialForm::scalar(nov.roster, Coef(1)), nctx);
    CHECK(one.leaf[0] == DifferentialForm::scalar(nov.roster, Coef(3)));
    CHECK(one.leaf[1].is_zero());

    // Lie derivative along Y_i picks up d R_i / dq on the dq slot
    Model c = catalog::curved_t3();
    auto cctx = make_context(c);
    LeafForm dq = parse_form("dq1", c.roster);
    CHECK(transverse_covariant(dq, 0, cctx) == parse_form("2*pi*cos(2*pi*q1)*dq1", c.roster));

    Model tl = catalog::transverse_lee(Rational(2));
    auto tctx = make_context(tl);
    CHECK(transverse_covariant(parse_form("dq1", tl.roster), 0, tctx) == parse_form("2*dq1", tl.roster));
}

TEST_CASE("m1: routes agree, squares to zero")
{
    gen::Rng rng(61);
    Model z = catalog::zambon_base();
    auto zctx = make_context(z);
    CHECK(m1(catalog::zambon_gamma1(z), zctx).is_zero());
    CHECK(m1(DifferentialForm::scalar(z.roster, Coef(1)), zctx).is_zero());
    for (const Model& m : {catalog::novikov_leaf_torus({Rational(1), Rational(-2)}), catalog::curved_t4(), z}) {
        auto ctx = make_context(m, gen::splitting(rng, m.roster));
        for (int t = 0; t < 8; ++t) {
            LeafForm x = leaf_form(rng, m.roster, gen::uniform(rng, 0, 2), 3);
            CHECK(m1(x, ctx) == m1_from_covariant(x, ctx));
            CHECK(m1(m1(x, ctx), ctx).is_zero());
        }
    }
}

TEST_CASE("m2: Zambon value and symmetry")
{
    Model z = catalog::zambon_base();
    auto ctx = make_context(z);
    LeafForm g = catalog::zambon_gamma1(z);
    LeafForm half = m2(g, g, ctx).scaled(Coef(Rational(1, 2)));
    CHECK(half == parse_form("-4*pi**2*cos(2*pi*y1)*cos(2*pi*y2)*dq1^dq2", z.roster));
    CHECK(m_ell({g, g}, ctx) == m2(g, g, ctx));

    LeafForm closed = parse_form("3*dq1 - dq2", z.roster);
    CHECK(m2(g, closed, ctx).is_zero());

    gen::Rng rng(62);
    for (const Model& m : {catalog::curved_t4(), catalog::transverse_lee(Rational(1, 2))}) {
        auto mctx = make_context(m, gen::splitting(rng, m.roster));
        for (int t = 0; t < 5; ++t) {
            LeafForm a = leaf_form(rng, m.roster, 1), b = leaf_form(rng, m.roster, 1);
            CHECK(m2(a, b, mctx) == m2(b, a, mctx));
            LeafForm c = leaf_form(rng, m.roster, gen::uniform(rng, 0, 2));
            CHECK(m_ell({a, c}, mctx) == m2(a, c, mctx));
            CHECK(m_ell({c, a}, mctx) == m2(c, a, mctx));
        }
    }
}

TEST_CASE("higher operations")
{
    gen::Rng rng(63);
    Model z = catalog::zambon_base();
    auto flat = make_context(z);
    for (int t = 0; t < 3; ++t) {
        std::vector<LeafForm> xs;
        for (int x = 0; x < 3; ++x)
            xs.push_back(leaf_form(rng, z.roster, 1));
        CHECK(m_ell(xs, flat).is_zero());
    }

    Model c = catalog::curved_t4();
    auto ctx = make_context(c);
    bool nonzero = false;
    for (int t = 0; t < 4; ++t) {
        LeafForm x = leaf_form(rng, c.roster, 1, 3);
        LeafForm v = m_ell({x, x, x}, ctx);
        nonzero = nonzero || !v.is_zero();
        CHECK(v == m3_longhand(x, x, x, ctx));
        CHECK(v.degree() == 2);
        LeafForm a = leaf_form(rng, c.roster, 0), b = leaf_form(rng, c.roster, 2);
        CHECK(m_ell({a, x, b}, ctx) == m3_longhand(a, x, b, ctx));
        CHECK(m_ell({b, a, x}, ctx) == m3_longhand(b, a, x, ctx));
    }
    CHECK(nonzero);
    // three functions land in degree -1
    LeafForm f = leaf_form(rng, c.roster, 0);
    CHECK(m_ell({f, f, f}, ctx).is_zero());
}

TEST_CASE("L-infinity relations up to arity 4")
{
    gen::Rng rng(64);
    check_relations(make_context(catalog::zambon_base()), rng, 4, 3);
    check_relations(make_context(catalog::curved_t4()), rng, 4, 3);
    check_relations(make_context(catalog::curved_t3()), rng, 3, 3);
    Model tl = catalog::transverse_lee(Rational(3, 2));
    check_relations(make_context(tl, gen::splitting(rng, tl.roster)), rng, 4, 3);
    check_relations(make_context(catalog::novikov_leaf_torus({Rational(1), Rational(1, 3)})), rng, 4, 3);
}
