#include "lcs/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace lcs {

namespace {

Coef two_pi_i(int k) { return Coef(PiPoly::monomial(1, GaussQ(0, 2 * k))); }

std::vector<Coef> constant_coefficients(const DifferentialForm& b, const std::vector<int>& coords)
{
    if (b.degree() != 1 && !b.is_zero())
        throw MathError("Lee form must be a 1-form");
    std::vector<Coef> out;
    for (int c : coords) {
        FourierScalar f = b.coefficient(CovectorMask(1) << c);
        if (!f.is_constant())
            throw MathError("unsupported model: Lee form with non-constant coefficients");
        out.push_back(f.constant_term());
    }
    for (const auto& [mask, f] : b.terms())
        if (std::none_of(coords.begin(), coords.end(), [&](int c) { return mask == (CovectorMask(1) << c); }))
            throw MathError("Lee form has components outside the complex");
    return out;
}

}  // namespace

std::vector<CovectorMask> TwistedModeComplex::basis(int degree) const
{
    std::vector<CovectorMask> out;
    if (degree < 0 || degree > top_degree())
        return out;
    int n = top_degree();
    for (unsigned sub = 0; sub < (1u << n); ++sub) {
        if (std::popcount(sub) != degree)
            continue;
        CovectorMask m = 0;
        for (int t = 0; t < n; ++t)
            if (sub & (1u << t))
                m |= CovectorMask(1) << coords[t];
        if (ideal == 0 || (m & ideal))
            out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CoefMatrix TwistedModeComplex::matrix(const ScalarKey& freq, int degree) const
{
    auto cols = basis(degree), rows = basis(degree + 1);
    std::map<CovectorMask, int> row_of;
    for (size_t i = 0; i < rows.size(); ++i)
        row_of[rows[i]] = static_cast<int>(i);
    std::vector<Coef> v;
    for (size_t t = 0; t < coords.size(); ++t)
        v.push_back(two_pi_i(freq.at(coords[t])) + lee[t]);
    CoefMatrix m(rows.size(), std::vector<Coef>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t t = 0; t < coords.size(); ++t) {
            CovectorMask bit = CovectorMask(1) << coords[t];
            if ((cols[j] & bit) || v[t].is_zero())
                continue;
            auto it = row_of.find(cols[j] | bit);
            if (it == row_of.end())
                continue;
            int s = wedge_sign(bit, cols[j]);
            m[it->second][j] += s > 0 ? v[t] : -v[t];
        }
    return m;
}

TwistedModeComplex leafwise_complex(const RosterPtr& r, const DifferentialForm& bbar)
{
    TwistedModeComplex c;
    c.roster = r;
    for (int a = 0; a < r->n_leaf(); ++a)
        c.coords.push_back(r->leaf_index(a));
    c.lee = constant_coefficients(bbar, c.coords);
    return c;
}

TwistedModeComplex full_complex(const RosterPtr& r, const DifferentialForm& b)
{
    TwistedModeComplex c;
    c.roster = r;
    for (int a = 0; a < r->n_torus(); ++a)
        c.coords.push_back(a);
    c.lee = constant_coefficients(b, c.coords);
    return c;
}

ModeSolve solve_by_modes(const TwistedModeComplex& c, const DifferentialForm& rhs)
{
    const RosterPtr& r = c.roster;
    int p = rhs.degree();
    CovectorMask span = 0;
    for (int x : c.coords)
        span |= CovectorMask(1) << x;
    // group coefficients by frequency
    std::map<ScalarKey, std::map<CovectorMask, Coef>> modes;
    for (const auto& [mask, f] : rhs.terms()) {
        if (mask & ~span)
            throw MathError("right-hand side has covectors outside the complex");
        if (!f.fiber_free())
            throw MathError("right-hand side must be fiber-free");
        for (const auto& [key, coef] : f.terms())
            modes[key][mask] += coef;
    }
    auto rows = c.basis(p), cols = c.basis(p - 1);
    ModeSolve out;
    out.unsolved_part = DifferentialForm(r, p);
    DifferentialForm sol(r, std::max(p - 1, 0));
    for (const auto& [key, entries] : modes) {
        std::vector<Coef> b(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            auto it = entries.find(rows[i]);
            if (it != entries.end())
                b[i] = it->second;
        }
        for (const auto& [mask, coef] : entries)
            if (!coef.is_zero() && std::find(rows.begin(), rows.end(), mask) == rows.end())
                throw MathError("right-hand side leaves the subcomplex");
        std::optional<std::vector<Coef>> x;
        if (cols.empty())
            x = std::all_of(b.begin(), b.end(), [](const Coef& v) { return v.is_zero(); })
                    ? std::optional<std::vector<Coef>>(std::vector<Coef>())
                    : std::nullopt;
        else
            x = solve_linear(c.matrix(key, p - 1), b);
        if (!x) {
            out.failed_modes.push_back(key);
            for (const auto& [mask, coef] : entries)
                out.unsolved_part.add_term(mask, FourierScalar::raw_term(r, key, coef));
            continue;
        }
        for (size_t j = 0; j < cols.size(); ++j)
            if (!(*x)[j].is_zero())
                sol.add_term(cols[j], FourierScalar::raw_term(r, key, (*x)[j]));
    }
    if (out.failed_modes.empty())
        out.solution = sol;
    return out;
}

std::vector<ScalarKey> truncated_modes(const TwistedModeComplex& c, int truncation)
{
    std::vector<ScalarKey> out;
    ScalarKey k(c.roster->size(), 0);
    for (int x : c.coords)
        k[x] = -truncation;
    while (true) {
        out.push_back(k);
        size_t t = 0;
        while (t < c.coords.size() && ++k[c.coords[t]] > truncation)
            k[c.coords[t++]] = -truncation;
        if (t == c.coords.size())
            break;
    }
    return out;
}

std::vector<int> cohomology_dims(const TwistedModeComplex& c, int truncation)
{
    int n = c.top_degree();
    std::vector<int> dims(n + 1, 0);
    for (const auto& key : truncated_modes(c, truncation)) {
        std::vector<int> rk(n + 1, 0);
        for (int j = 0; j < n; ++j)
            rk[j] = rank(c.matrix(key, j));
        for (int j = 0; j <= n; ++j)
            dims[j] += static_cast<int>(c.basis(j).size()) - rk[j] - (j > 0 ? rk[j - 1] : 0);
    }
    return dims;
}

}  // namespace lcs
