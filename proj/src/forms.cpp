#include "lcs/forms.hpp"

#include <algorithm>
#include <bit>

namespace lcs {

int mask_degree(CovectorMask m) { return std::popcount(m); }

std::vector<int> mask_indices(CovectorMask m)
{
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1u)
            out.push_back(i);
    return out;
}

static CovectorMask bits_below(int j) { return (CovectorMask(1) << j) - 1; }

int wedge_sign(CovectorMask a, CovectorMask b)
{
    if (a & b)
        return 0;
    int swaps = 0;
    for (int j : mask_indices(b))
        swaps += std::popcount(a & ~bits_below(j + 1));
    return swaps % 2 ? -1 : 1;
}

CovectorMask transverse_mask(const CoordinateRoster& r) { return bits_below(r.n_transverse()); }

CovectorMask leaf_mask(const CoordinateRoster& r) { return bits_below(r.n_torus()) & ~bits_below(r.n_transverse()); }

CovectorMask fiber_mask(const CoordinateRoster& r) { return bits_below(r.size()) & ~bits_below(r.n_torus()); }

// ---------- DifferentialForm

DifferentialForm DifferentialForm::scalar(const FourierScalar& f)
{
    DifferentialForm a(f.roster(), 0);
    a.add_term(0, f);
    return a;
}

DifferentialForm DifferentialForm::scalar(RosterPtr r, const Coef& c)
{
    FourierScalar f(r, c);
    return scalar(f);
}

DifferentialForm DifferentialForm::covector(RosterPtr r, int coord)
{
    if (coord < 0 || coord >= r->size())
        throw MathError("covector index out of range");
    DifferentialForm a(r, 1);
    a.add_term(CovectorMask(1) << coord, FourierScalar(r, Coef(1)));
    return a;
}

DifferentialForm DifferentialForm::monomial(const FourierScalar& f, CovectorMask m)
{
    DifferentialForm a(f.roster(), mask_degree(m));
    a.add_term(m, f);
    return a;
}

FourierScalar DifferentialForm::coefficient(CovectorMask m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? FourierScalar(roster_) : it->second;
}

FourierScalar DifferentialForm::component(const std::vector<int>& coords) const
{
    CovectorMask m = 0;
    int sign = 1;
    for (int c : coords) {
        CovectorMask bit = CovectorMask(1) << c;
        if (m & bit)
            return FourierScalar(roster_);
        if (std::popcount(m & ~bits_below(c + 1)) % 2)
            sign = -sign;
        m |= bit;
    }
    FourierScalar f = coefficient(m);
    return sign > 0 ? f : -f;
}

bool DifferentialForm::is_real() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

void DifferentialForm::add_term(CovectorMask m, const FourierScalar& f)
{
    if (f.is_zero())
        return;
    if (mask_degree(m) != degree_)
        throw MathError("term degree does not match form degree");
    if (!roster_)
        roster_ = f.roster();
    auto [it, inserted] = terms_.emplace(m, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void DifferentialForm::check_roster(const DifferentialForm& o) const
{
    if (roster_ && o.roster_ && !roster_->same_as(*o.roster_))
        throw MathError("forms live on different models");
}

void DifferentialForm::add_term(CovectorMask m, FourierScalar&& f)
{
    if (f.is_zero())
        return;
    if (mask_degree(m) != degree_)
        throw MathError("term degree does not match form degree");
    if (!roster_)
        roster_ = f.roster();
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, std::move(f));
        return;
    }
    it->second += std::move(f);
    if (it->second.is_zero())
        terms_.erase(it);
}

DifferentialForm& DifferentialForm::operator+=(DifferentialForm&& o)
{
    check_roster(o);
    if (o.is_zero())
        return *this;
    if (is_zero()) {
        degree_ = o.degree_;
        if (!roster_)
            roster_ = o.roster_;
        terms_ = std::move(o.terms_);
        return *this;
    }
    if (degree_ != o.degree_)
        throw MathError("adding forms of different degree");
    for (auto& [m, f] : o.terms_)
        add_term(m, std::move(f));
    return *this;
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& o)
{
    check_roster(o);
    if (o.is_zero())
        return *this;
    if (is_zero())
        degree_ = o.degree_;
    if (degree_ != o.degree_)
        throw MathError("adding forms of different degree");
    if (!roster_)
        roster_ = o.roster_;
    for (const auto& [m, f] : o.terms_)
        add_term(m, f);
    return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& o) { return *this += -o; }

DifferentialForm DifferentialForm::operator-() const
{
    DifferentialForm r = *this;
    r.negate();
    return r;
}

DifferentialForm DifferentialForm::scaled(const Coef& c) const
{
    DifferentialForm r(roster_, degree_);
    if (c.is_zero())
        return r;
    for (const auto& [m, f] : terms_)
        r.terms_.emplace(m, f.scaled(c));
    return r;
}

DifferentialForm DifferentialForm::times(const FourierScalar& g) const
{
    DifferentialForm r(roster_, degree_);
    for (const auto& [m, f] : terms_)
        r.add_term(m, f * g);
    return r;
}

bool operator==(const DifferentialForm& a, const DifferentialForm& b)
{
    if (a.terms_.empty() || b.terms_.empty())
        return a.terms_.empty() && b.terms_.empty();
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

DifferentialForm DifferentialForm::filtered(CovectorMask allowed) const
{
    DifferentialForm r(roster_, degree_);
    for (const auto& [m, f] : terms_)
        if ((m & ~allowed) == 0)
            r.terms_.emplace(m, f);
    return r;
}

DifferentialForm DifferentialForm::conj() const
{
    DifferentialForm r(roster_, degree_);
    for (const auto& [m, f] : terms_)
        r.terms_.emplace(m, f.conj());
    return r;
}

static bool lex_less(CovectorMask a, CovectorMask b)
{
    auto ia = mask_indices(a), ib = mask_indices(b);
    return ia < ib;
}

static bool needs_parens(const std::string& s)
{
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (depth == 0 && i > 0 && (c == '+' || c == '-') && s[i - 1] == ' ')
            return true;
    }
    return false;
}

std::string DifferentialForm::to_string() const
{
    if (terms_.empty())
        return "0";
    std::vector<CovectorMask> order;
    for (const auto& t : terms_)
        order.push_back(t.first);
    std::sort(order.begin(), order.end(), lex_less);
    std::string out;
    bool first = true;
    for (CovectorMask m : order) {
        std::string s = terms_.at(m).to_string();
        std::string term;
        if (m == 0) {
            term = s;
        }
        else {
            std::string cov;
            for (int i : mask_indices(m))
                cov += (cov.empty() ? "d" : "^d") + roster_->name(i);
            if (s == "1")
                term = cov;
            else if (s == "-1")
                term = "-" + cov;
            else if (needs_parens(s))
                term = "(" + s + ")*" + cov;
            else
                term = s + "*" + cov;
        }
        if (first)
            out = term;
        else if (term[0] == '-' && m != 0 && !needs_parens(term))
            out += " - " + term.substr(1);
        else if (term[0] == '-' && m == 0)
            out += " + (" + term + ")";
        else
            out += " + " + term;
        first = false;
    }
    return out;
}

// ---------- VectorField

VectorField VectorField::coordinate(RosterPtr r, int coord)
{
    VectorField v(r);
    v.set(coord, FourierScalar(r, Coef(1)));
    return v;
}

FourierScalar VectorField::component(int coord) const
{
    auto it = comps_.find(coord);
    return it == comps_.end() ? FourierScalar(roster_) : it->second;
}

void VectorField::set(int coord, const FourierScalar& f)
{
    if (!roster_ || coord < 0 || coord >= roster_->size())
        throw MathError("vector field component out of range");
    if (f.is_zero())
        comps_.erase(coord);
    else
        comps_[coord] = f;
}

FourierScalar VectorField::apply(const FourierScalar& f) const
{
    FourierScalar r(roster_);
    for (const auto& [c, v] : comps_)
        r += v * f.partial(c);
    return r;
}

VectorField& VectorField::operator+=(const VectorField& o)
{
    if (!roster_)
        roster_ = o.roster_;
    for (const auto& [c, v] : o.comps_)
        set(c, component(c) + v);
    return *this;
}

VectorField VectorField::scaled(const FourierScalar& f) const
{
    VectorField r(roster_);
    for (const auto& [c, v] : comps_)
        r.set(c, v * f);
    return r;
}

std::string VectorField::to_string() const
{
    if (comps_.empty())
        return "0";
    std::string out;
    for (const auto& [c, v] : comps_) {
        if (!out.empty())
            out += " + ";
        out += "(" + v.to_string() + ")*d/d" + roster_->name(c);
    }
    return out;
}

// ---------- operations

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b)
{
    RosterPtr r = a.roster() ? a.roster() : b.roster();
    if (a.roster() && b.roster() && !a.roster()->same_as(*b.roster()))
        throw MathError("wedge of forms on different models");
    DifferentialForm out(r, a.degree() + b.degree());
    for (const auto& [ma, fa] : a.terms()) {
        for (const auto& [mb, fb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s == 0)
                continue;
            FourierScalar p = fa * fb;
            if (s < 0)
                p.negate();
            out.add_term(ma | mb, std::move(p));
        }
    }
    return out;
}

static DifferentialForm derivative_along(const DifferentialForm& a, int lo, int hi)
{
    DifferentialForm out(a.roster(), a.degree() + 1);
    for (const auto& [m, f] : a.terms()) {
        for (int j = lo; j < hi; ++j) {
            CovectorMask bit = CovectorMask(1) << j;
            if (m & bit)
                continue;
            FourierScalar df = f.partial(j);
            if (df.is_zero())
                continue;
            out.add_term(m | bit, std::popcount(m & bits_below(j)) % 2 ? -df : df);
        }
    }
    return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a)
{
    if (!a.roster())
        return DifferentialForm(nullptr, a.degree() + 1);
    return derivative_along(a, 0, a.roster()->size());
}

DifferentialForm twisted_derivative(const DifferentialForm& a, const DifferentialForm& b)
{
    if (!b.is_zero() && b.degree() != 1)
        throw MathError("twisting form must have degree 1");
    if (!exterior_derivative(b).is_zero())
        throw MathError("twisting form is not closed");
    return exterior_derivative(a) + wedge(b, a);
}

DifferentialForm interior_product(const VectorField& xi, const DifferentialForm& a)
{
    if (xi.roster() && a.roster() && !xi.roster()->same_as(*a.roster()))
        throw MathError("interior product across different models");
    if (a.degree() == 0)
        return DifferentialForm(a.roster(), 0);
    DifferentialForm out(a.roster(), a.degree() - 1);
    for (const auto& [m, f] : a.terms()) {
        for (const auto& [j, v] : xi.components()) {
            CovectorMask bit = CovectorMask(1) << j;
            if (!(m & bit))
                continue;
            FourierScalar p = v * f;
            out.add_term(m & ~bit, std::popcount(m & bits_below(j)) % 2 ? -p : p);
        }
    }
    return out;
}

DifferentialForm bivector_contraction(const VectorField& x, const VectorField& y, const DifferentialForm& a)
{
    return interior_product(y, interior_product(x, a));
}

DifferentialForm lie_derivative(const VectorField& xi, const DifferentialForm& a)
{
    DifferentialForm r = exterior_derivative(interior_product(xi, a));
    r += interior_product(xi, exterior_derivative(a));
    return r;
}

DifferentialForm pullback_by_section(const DifferentialForm& a, const std::vector<FourierScalar>& s,
                                     const RosterPtr& base)
{
    const RosterPtr& total = a.roster();
    if (!total)
        return DifferentialForm(base, a.degree());
    int nf = total->n_fiber();
    int nt = total->n_torus();
    if (nf == 0)
        throw MathError("pullback by a section needs a fiber");
    if (static_cast<int>(s.size()) != nf)
        throw MathError("section has the wrong number of components");
    if (base->n_fiber() != 0 || base->n_torus() != nt)
        throw MathError("base roster must be the fiberless torus");
    for (const auto& sa : s)
        if (sa.roster() && !sa.roster()->same_as(*base))
            throw MathError("section values must live on the base");

    std::vector<std::vector<FourierScalar>> powers(nf);
    auto power = [&](int alpha, int e) -> const FourierScalar& {
        auto& v = powers[alpha];
        if (v.empty())
            v.push_back(FourierScalar(base, Coef(1)));
        while (static_cast<int>(v.size()) <= e)
            v.push_back(v.back() * s[alpha]);
        return v[e];
    };
    std::vector<DifferentialForm> ds(nf);
    for (int alpha = 0; alpha < nf; ++alpha)
        ds[alpha] = exterior_derivative(DifferentialForm::scalar(s[alpha].roster() ? s[alpha] : FourierScalar(base)));

    DifferentialForm out(base, a.degree());
    for (const auto& [m, f] : a.terms()) {
        FourierScalar g(base);
        for (const auto& [k, c] : f.terms()) {
            ScalarKey bk(k.begin(), k.begin() + nt);
            FourierScalar t = FourierScalar::raw_term(base, bk, c);
            for (int alpha = 0; alpha < nf; ++alpha)
                if (k[nt + alpha])
                    t = t * power(alpha, k[nt + alpha]);
            g += t;
        }
        if (g.is_zero())
            continue;
        DifferentialForm piece = DifferentialForm::monomial(g, m & bits_below(nt));
        for (int alpha = 0; alpha < nf; ++alpha)
            if (m & (CovectorMask(1) << (nt + alpha)))
                piece = wedge(piece, ds[alpha]);
        out += piece;
    }
    return out;
}

DifferentialForm lift_to_fiber(const DifferentialForm& a, const RosterPtr& total)
{
    DifferentialForm out(total, a.degree());
    for (const auto& [m, f] : a.terms()) {
        FourierScalar g(total);
        for (const auto& [k, c] : f.terms()) {
            ScalarKey nk(total->size(), 0);
            std::copy(k.begin(), k.begin() + total->n_torus(), nk.begin());
            g.add_term(nk, c);
        }
        out.add_term(m, g);
    }
    return out;
}

DifferentialForm leafwise_restrict(const DifferentialForm& a)
{
    if (!a.roster())
        return a;
    return a.filtered(leaf_mask(*a.roster()));
}

bool is_leafwise(const DifferentialForm& a) { return !a.roster() || a == leafwise_restrict(a); }

DifferentialForm leafwise_derivative(const DifferentialForm& a)
{
    if (!a.roster())
        return DifferentialForm(nullptr, a.degree() + 1);
    const auto& r = *a.roster();
    return derivative_along(a, r.n_transverse(), r.n_torus());
}

DifferentialForm leafwise_twisted_derivative(const DifferentialForm& a, const DifferentialForm& bbar)
{
    if (!bbar.is_zero()) {
        if (bbar.degree() != 1 || !is_leafwise(bbar))
            throw MathError("leafwise twisting form must be a leafwise 1-form");
        if (!leafwise_derivative(bbar).is_zero())
            throw MathError("leafwise twisting form is not leafwise closed");
    }
    return leafwise_derivative(a) + wedge(bbar, a);
}

DifferentialForm form_power(const DifferentialForm& a, int m)
{
    if (m < 0)
        throw MathError("negative form power");
    if (a.degree() % 2 != 0)
        throw MathError("form power of an odd-degree form");
    if (!a.roster())
        return m == 0 ? a : DifferentialForm(nullptr, a.degree() * m);
    DifferentialForm out = DifferentialForm::scalar(a.roster(), Coef(1));
    for (int i = 0; i < m; ++i)
        out = wedge(out, a);
    return out;
}

}  // namespace lcs
