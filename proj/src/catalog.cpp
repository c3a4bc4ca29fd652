#include "lcs/catalog.hpp"

#include "lcs/syntax.hpp"

namespace lcs::catalog {

namespace {

RosterPtr roster(std::vector<std::string> y, std::vector<std::string> q)
{
    return std::make_shared<CoordinateRoster>(std::move(y), std::move(q));
}

std::vector<std::vector<FourierScalar>> standard_inverse(const RosterPtr& r)
{
    // omega_12 = 1 gives omega^{12} = -1
    std::vector<std::vector<FourierScalar>> inv(2, std::vector<FourierScalar>(2, FourierScalar(r)));
    inv[0][1] = FourierScalar(r, Coef(-1));
    inv[1][0] = FourierScalar(r, Coef(1));
    return inv;
}

Model presymplectic(const std::string& name, const RosterPtr& r)
{
    Model m;
    m.name = name;
    m.roster = r;
    m.omega = parse_form("dy1^dy2", r);
    m.b = DifferentialForm::zero(r, 1);
    m.rank_k = 1;
    m.splitting = Splitting::flat(r);
    m.omega_inv = standard_inverse(r);
    return m;
}

}  // namespace

Model zambon_base() { return presymplectic("zambon", roster({"y1", "y2"}, {"q1", "q2"})); }

DifferentialForm zambon_gamma1(const Model& m) { return parse_form("sin(2*pi*y1)*dq1 + sin(2*pi*y2)*dq2", m.roster); }

Model curved_t3()
{
    Model m = presymplectic("curved-t3", roster({"y1", "y2"}, {"q1"}));
    m.splitting->R[0][0] = parse_scalar("sin(2*pi*q1)", m.roster);
    m.splitting->R[1][0] = parse_scalar("sin(2*pi*y1)", m.roster);
    return m;
}

Model curved_t4()
{
    Model m = presymplectic("curved-t4", roster({"y1", "y2"}, {"q1", "q2"}));
    m.splitting->R[0][0] = parse_scalar("sin(2*pi*q2)", m.roster);
    m.splitting->R[1][1] = parse_scalar("cos(2*pi*y1)", m.roster);
    return m;
}

Model transverse_lee(const Rational& c)
{
    Model m = presymplectic("transverse-lee", roster({"y1", "y2"}, {"q1", "q2"}));
    m.b = DifferentialForm::covector(m.roster, 0).scaled(Coef(c));
    return m;
}

Model novikov_leaf_torus(const std::vector<Rational>& c)
{
    std::vector<std::string> q;
    for (size_t i = 0; i < c.size(); ++i)
        q.push_back("q" + std::to_string(i + 1));
    Model m;
    m.name = "novikov-leaf";
    m.roster = roster({}, q);
    m.omega = DifferentialForm::zero(m.roster, 2);
    m.b = DifferentialForm::zero(m.roster, 1);
    for (size_t i = 0; i < c.size(); ++i)
        m.b += DifferentialForm::covector(m.roster, static_cast<int>(i)).scaled(Coef(c[i]));
    m.rank_k = 0;
    m.splitting = Splitting::flat(m.roster);
    m.omega_inv = std::vector<std::vector<FourierScalar>>{};
    return m;
}

Model lcs_surface(const Rational& c1, const Rational& c2)
{
    Model m;
    m.name = "lcs-surface";
    m.roster = roster({"y1", "y2"}, {});
    m.omega = parse_form("dy1^dy2", m.roster);
    m.b = DifferentialForm::covector(m.roster, 0).scaled(Coef(c1)) + DifferentialForm::covector(m.roster, 1).scaled(Coef(c2));
    m.rank_k = 1;
    m.splitting = Splitting::flat(m.roster);
    m.omega_inv = standard_inverse(m.roster);
    return m;
}

}  // namespace lcs::catalog
