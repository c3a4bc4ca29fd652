#include "lcs/model.hpp"

namespace lcs {

Splitting Splitting::flat(const RosterPtr& base)
{
    Splitting s;
    s.base = base;
    s.R.assign(base->n_transverse(), std::vector<FourierScalar>(base->n_leaf(), FourierScalar(base)));
    return s;
}

VectorField Splitting::basic_field(int i) const
{
    VectorField y = VectorField::coordinate(base, i);
    for (int a = 0; a < base->n_leaf(); ++a)
        y.set(base->leaf_index(a), at(i, a));
    return y;
}

bool Splitting::is_flat() const
{
    for (const auto& row : R)
        for (const auto& f : row)
            if (!f.is_zero())
                return false;
    return true;
}

const Splitting& Model::splitting_or_flat() const
{
    if (!splitting) {
        static thread_local Splitting cache;
        cache = Splitting::flat(fiberless(roster));
        return cache;
    }
    return *splitting;
}

std::vector<std::vector<FourierScalar>> Model::transverse_matrix() const
{
    int n = roster->n_transverse();
    std::vector<std::vector<FourierScalar>> w(n, std::vector<FourierScalar>(n, FourierScalar(roster)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                w[i][j] = omega.component({i, j});
    return w;
}

RosterPtr fiberless(const RosterPtr& r)
{
    if (r->n_fiber() == 0)
        return r;
    return std::make_shared<CoordinateRoster>(r->transverse(), r->leaf());
}

RosterPtr with_fiber(const RosterPtr& base, std::vector<std::string> fiber_names)
{
    if (base->n_fiber() != 0)
        throw MathError("roster already has fiber coordinates");
    if (fiber_names.empty())
        for (const auto& q : base->leaf())
            fiber_names.push_back("p_" + q);
    return std::make_shared<CoordinateRoster>(base->transverse(), base->leaf(), fiber_names);
}

DifferentialForm leaf_lee_form(const Model& m) { return leafwise_restrict(m.b); }

}  // namespace lcs
