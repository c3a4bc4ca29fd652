#pragma once

#include "lcs/forms.hpp"
#include "lcs/thickening.hpp"

#include <random>

namespace lcs::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng, int bound = 3)
{
    Rational q(uniform(rng, -bound, bound), uniform(rng, 1, bound));
    q.canonicalize();
    return q;
}

inline Coef small_coef(Rng& rng, bool with_pi = true)
{
    GaussQ g(small_rational(rng), small_rational(rng));
    return Coef(PiPoly::monomial(with_pi ? uniform(rng, 0, 2) : 0, g));
}

/* real trigonometric polynomial, optionally polynomial in the fiber */
inline FourierScalar scalar(Rng& rng, const RosterPtr& r, int terms = 3, int max_freq = 2, int max_fiber = 0,
                            bool with_pi = true)
{
    FourierScalar f(r);
    int nt = r->n_torus();
    for (int t = 0; t < terms; ++t) {
        ScalarKey k(r->size(), 0);
        for (int i = 0; i < nt; ++i)
            k[i] = uniform(rng, -max_freq, max_freq);
        for (int i = nt; i < r->size(); ++i)
            k[i] = uniform(rng, 0, max_fiber);
        Coef c = small_coef(rng, with_pi);
        ScalarKey nk = k;
        for (int i = 0; i < nt; ++i)
            nk[i] = -k[i];
        if (nk == k) {
            f.add_term(k, c.real_part());
        }
        else {
            f.add_term(k, c);
            f.add_term(nk, c.conj());
        }
    }
    return f;
}

/* restricted to the covectors in `allowed` */
inline DifferentialForm form(Rng& rng, const RosterPtr& r, int degree, CovectorMask allowed, int terms = 3,
                             int max_freq = 1, int max_fiber = 0)
{
    std::vector<CovectorMask> masks;
    for (CovectorMask m = 0; m < (CovectorMask(1) << r->size()); ++m)
        if ((m & ~allowed) == 0 && mask_degree(m) == degree)
            masks.push_back(m);
    DifferentialForm a(r, degree);
    if (masks.empty())
        return a;
    for (int t = 0; t < terms; ++t) {
        CovectorMask m = masks[uniform(rng, 0, static_cast<int>(masks.size()) - 1)];
        a.add_term(m, scalar(rng, r, 2, max_freq, max_fiber, false));
    }
    return a;
}

inline DifferentialForm form(Rng& rng, const RosterPtr& r, int degree, int terms = 3, int max_freq = 1,
                             int max_fiber = 0)
{
    return form(rng, r, degree, (CovectorMask(1) << r->size()) - 1, terms, max_freq, max_fiber);
}

inline VectorField vector_field(Rng& rng, const RosterPtr& r, int max_freq = 1, int max_fiber = 0)
{
    VectorField v(r);
    for (int i = 0; i < r->size(); ++i)
        if (uniform(rng, 0, 2) > 0)
            v.set(i, scalar(rng, r, 2, max_freq, max_fiber, false));
    return v;
}

inline Splitting splitting(Rng& rng, const RosterPtr& base, int terms = 2, int max_freq = 1)
{
    Splitting s = Splitting::flat(base);
    for (auto& row : s.R)
        for (auto& f : row)
            if (uniform(rng, 0, 1))
                f = scalar(rng, base, terms, max_freq, 0, false);
    return s;
}

inline NormalValuedForm normal_form(Rng& rng, const RosterPtr& base, int degree, int terms = 3, int max_freq = 1)
{
    NormalValuedForm b(base, degree);
    int nk = base->n_transverse();
    std::vector<CovectorMask> masks;
    for (CovectorMask m = 0; m < (CovectorMask(1) << nk); ++m)
        if (mask_degree(m) == degree)
            masks.push_back(m);
    if (masks.empty() || base->n_leaf() == 0)
        return b;
    for (int t = 0; t < terms; ++t)
        b.add(masks[uniform(rng, 0, static_cast<int>(masks.size()) - 1)], uniform(rng, 0, base->n_leaf() - 1),
              scalar(rng, base, 2, max_freq, 0, false));
    return b;
}

}  // namespace lcs::gen
