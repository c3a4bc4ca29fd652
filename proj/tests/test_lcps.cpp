#include "doctest.h"
#include "lcs/generators.hpp"
#include "lcs/catalog.hpp"
#include "lcs/lcps.hpp"
#include "lcs/syntax.hpp"
#include "lcs/thickening.hpp"

using namespace lcs;

namespace {

bool has_failure(const StructureReport& r, const std::string& prefix)
{
    for (const auto& f : r.failures)
        if (f.first.rfind(prefix, 0) == 0)
            return true;
    return false;
}

}  // namespace

TEST_CASE("structure validation examples")
{
    Model z = catalog::zambon_base();
    auto rep = validate_structure(z);
    CHECK(rep.is_lcps_rank_2k);
    CHECK(rep.transverse_invariance_ok);
    CHECK_FALSE(rep.is_lcs);
    CHECK(rep.failures.size() == 1);
    CHECK(has_failure(rep, "lcs_nondegenerate"));

    Model t = z;
    t.b = parse_form("dy1", z.roster);
    rep = validate_structure(t);
    CHECK(rep.is_lcps_rank_2k);
    CHECK(rep.transverse_invariance_ok);

    Model bad = z;
    bad.b = parse_form("dq1", z.roster);
    rep = validate_structure(bad);
    CHECK_FALSE(rep.transverse_invariance_ok);
    CHECK_FALSE(rep.is_lcps_rank_2k);
    CHECK(has_failure(rep, "transverse_invariance[q1]"));

    Model notclosed = z;
    notclosed.b = parse_form("cos(2*pi*q1)*dy1", z.roster);
    rep = validate_structure(notclosed);
    CHECK(has_failure(rep, "lee_form_closed"));

    Model wrong_rank = z;
    wrong_rank.rank_k = 2;
    CHECK(has_failure(validate_structure(wrong_rank), "rank_lower_bound"));
    wrong_rank.rank_k = 0;
    CHECK(has_failure(validate_structure(wrong_rank), "rank_upper_bound"));

    for (const Model& m : {catalog::curved_t3(), catalog::curved_t4(), catalog::transverse_lee(Rational(3, 2)),
                           catalog::novikov_leaf_torus({Rational(1), Rational(-2, 3)})})
        CHECK_MESSAGE(validate_structure(m).is_lcps_rank_2k, m.name);
    auto surf = validate_structure(catalog::lcs_surface(1, 2));
    CHECK(surf.is_lcs);
    CHECK(surf.failures.empty());
}

TEST_CASE("thickened models are l.c.s.")
{
    for (const Model& m : {catalog::zambon_base(), catalog::transverse_lee(Rational(2)), catalog::curved_t3(),
                           catalog::curved_t4()}) {
        Model t = thicken(m, m.splitting_or_flat());
        auto rep = validate_structure(t);
        CHECK(rep.is_lcs);
        CHECK(rep.is_lcps_rank_2k);
    }
}

TEST_CASE("leaf-tangent fields are pre-Hamiltonian; Cartan identity")
{
    gen::Rng rng(31);
    for (const Model& m : {catalog::zambon_base(), catalog::transverse_lee(Rational(1, 2)), catalog::curved_t4()}) {
        CHECK(lcps_vector_field_test(VectorField(m.roster), m)->c == Coef(0));
        for (int t = 0; t < 10; ++t) {
            VectorField xi(m.roster);
            for (int a = 0; a < m.roster->n_leaf(); ++a)
                xi.set(m.roster->leaf_index(a), gen::scalar(rng, m.roster, 2, 1));
            auto res = lcps_vector_field_test(xi, m);
            REQUIRE(res);
            CHECK(res->c == Coef(0));
            FourierScalar b_xi(m.roster);
            for (const auto& [c, v] : xi.components())
                b_xi += v * m.b.coefficient(CovectorMask(1) << c);
            CHECK(exterior_derivative(interior_product(xi, m.omega)) + interior_product(xi, exterior_derivative(m.omega))
                  == -m.omega.times(b_xi));
        }
    }
    Model surf = catalog::lcs_surface(0, 0);
    auto res = lcps_vector_field_test(VectorField::coordinate(surf.roster, 0), surf);
    REQUIRE(res);
    CHECK(res->c == Coef(0));
}

TEST_CASE("accepted l.c.p-s. fields satisfy the Lie-derivative identities")
{
    gen::Rng rng(32);
    Model m = catalog::lcs_surface(Rational(1), Rational(0));
    for (int t = 0; t < 10; ++t) {
        VectorField xi(m.roster);
        xi.set(0, FourierScalar(m.roster, Coef(gen::small_rational(rng))));
        xi.set(1, FourierScalar(m.roster, Coef(gen::small_rational(rng))));
        auto res = lcps_vector_field_test(xi, m);
        REQUIRE(res);
        FourierScalar u = res->u;
        CHECK((lie_derivative(xi, m.omega) + m.omega.times(u)).is_zero());
        CHECK((lie_derivative(xi, m.b) - exterior_derivative(DifferentialForm::scalar(u))).is_zero());
    }
    VectorField nonconst(m.roster);
    nonconst.set(0, parse_scalar("cos(2*pi*y2)", m.roster));
    CHECK_FALSE(lcps_vector_field_test(nonconst, m).has_value());
}

TEST_CASE("Hamiltonian vector fields on the Zambon thickening")
{
    Model z = catalog::zambon_base();
    Model t = thicken(z, z.splitting_or_flat());
    const RosterPtr& T = t.roster;
    CHECK(hamiltonian_vector_field(FourierScalar(T, Coef(3)), t).is_zero());
    auto xi = hamiltonian_vector_field(parse_scalar("p1", T), t);
    CHECK(xi == VectorField::coordinate(T, T->index("q1")));
    gen::Rng rng(5);
    for (int k = 0; k < 10; ++k) {
        auto f = gen::scalar(rng, T, 3, 1, 2);
        auto v = hamiltonian_vector_field(f, t);
        CHECK(interior_product(v, t.omega) == twisted_derivative(DifferentialForm::scalar(f), t.b));
    }
    Model c = catalog::curved_t3();
    Model tc = thicken(c, *c.splitting);
    CHECK_THROWS_AS(hamiltonian_vector_field(parse_scalar("p1", tc.roster), tc), MathError);
}
