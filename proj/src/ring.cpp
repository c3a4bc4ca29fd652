#include "lcs/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lcs {

// ---------- GaussQ

GaussQ GaussQ::inverse() const
{
    if (is_zero())
        throw MathError("division by zero Gaussian rational");
    Rational n = re * re + im * im;
    return {re / n, -im / n};
}

GaussQ& GaussQ::operator+=(const GaussQ& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o)
{
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

void GaussQ::add_product(const GaussQ& a, const GaussQ& b)
{
    thread_local Rational t;
    if (sgn(a.im) == 0 && sgn(b.im) == 0) {
        mpq_mul(t.get_mpq_t(), a.re.get_mpq_t(), b.re.get_mpq_t());
        re += t;
        return;
    }
    mpq_mul(t.get_mpq_t(), a.re.get_mpq_t(), b.re.get_mpq_t());
    re += t;
    mpq_mul(t.get_mpq_t(), a.im.get_mpq_t(), b.im.get_mpq_t());
    re -= t;
    mpq_mul(t.get_mpq_t(), a.re.get_mpq_t(), b.im.get_mpq_t());
    im += t;
    mpq_mul(t.get_mpq_t(), a.im.get_mpq_t(), b.re.get_mpq_t());
    im += t;
}

// ---------- PiPoly

PiPoly::PiPoly(GaussQ c)
{
    if (!c.is_zero())
        terms_.emplace_back(0, std::move(c));
}

PiPoly PiPoly::monomial(int exp, GaussQ c)
{
    PiPoly p;
    if (!c.is_zero())
        p.terms_.emplace_back(exp, std::move(c));
    return p;
}

GaussQ PiPoly::constant_term() const { return coeff(0); }

GaussQ PiPoly::coeff(int exp) const
{
    for (const auto& [e, c] : terms_)
        if (e == exp)
            return c;
    return GaussQ();
}

bool PiPoly::is_real() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

PiPoly PiPoly::conj() const
{
    PiPoly r = *this;
    for (auto& t : r.terms_)
        t.second.im = -t.second.im;
    return r;
}

PiPoly PiPoly::scaled(const GaussQ& c) const
{
    if (c.is_zero())
        return {};
    PiPoly r = *this;
    for (auto& t : r.terms_)
        t.second *= c;
    return r;
}

static void merge_into(std::vector<PiPoly::Term>& out, const std::vector<PiPoly::Term>& a,
                       const std::vector<PiPoly::Term>& b, bool subtract)
{
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        }
        else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
            if (subtract)
                out.back().second = -out.back().second;
        }
        else {
            GaussQ s = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
            if (!s.is_zero())
                out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
}

PiPoly& PiPoly::operator+=(const PiPoly& o)
{
    if (o.terms_.size() == 1) {
        const auto& [e, c] = o.terms_[0];
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, int x) { return t.first < x; });
        if (it == terms_.end() || it->first != e) {
            terms_.insert(it, o.terms_[0]);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
        return *this;
    }
    std::vector<Term> out;
    merge_into(out, terms_, o.terms_, false);
    terms_ = std::move(out);
    return *this;
}

void PiPoly::add_product(const PiPoly& a, const PiPoly& b)
{
    bool cancelled = false;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            int e = ea + eb;
            auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                       [](const Term& t, int x) { return t.first < x; });
            if (it == terms_.end() || it->first != e) {
                terms_.emplace(it, e, ca * cb);
            } else {
                it->second.add_product(ca, cb);
                cancelled = cancelled || it->second.is_zero();
            }
        }
    if (cancelled)
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_zero(); }),
                     terms_.end());
}

PiPoly& PiPoly::operator-=(const PiPoly& o)
{
    std::vector<Term> out;
    merge_into(out, terms_, o.terms_, true);
    terms_ = std::move(out);
    return *this;
}

PiPoly operator*(const PiPoly& a, const PiPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::map<int, GaussQ> acc;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            acc[ea + eb] += ca * cb;
    PiPoly r;
    for (auto& [e, c] : acc)
        if (!c.is_zero())
            r.terms_.emplace_back(e, std::move(c));
    return r;
}

PiPoly PiPoly::operator-() const
{
    PiPoly r = *this;
    r.negate();
    return r;
}

bool operator==(const PiPoly& a, const PiPoly& b)
{
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
            return false;
    return true;
}

std::pair<PiPoly, PiPoly> PiPoly::divmod(const PiPoly& a, const PiPoly& b)
{
    if (b.is_zero())
        throw MathError("polynomial division by zero");
    PiPoly q, r = a;
    GaussQ lead_inv = b.leading().inverse();
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        PiPoly t = monomial(r.degree() - db, r.leading() * lead_inv);
        q += t;
        r -= t * b;
    }
    return {q, r};
}

PiPoly PiPoly::gcd(PiPoly a, PiPoly b)
{
    while (!b.is_zero()) {
        PiPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero())
        return a;
    return a.scaled(a.leading().inverse());
}

std::complex<double> PiPoly::approx() const
{
    std::complex<double> s = 0;
    for (const auto& [e, c] : terms_)
        s += std::complex<double>(c.re.get_d(), c.im.get_d()) * std::pow(std::numbers::pi, e);
    return s;
}

// ---------- Coef

Coef::Coef(PiPoly num, PiPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero())
        throw MathError("zero denominator");
    normalize();
}

Coef Coef::pi_power(int e)
{
    if (e >= 0)
        return Coef(PiPoly::monomial(e, GaussQ(1)));
    return Coef(PiPoly(GaussQ(1)), PiPoly::monomial(-e, GaussQ(1)));
}

void Coef::normalize()
{
    if (num_.is_zero()) {
        den_ = PiPoly(GaussQ(1));
        return;
    }
    if (den_.is_constant()) {
        GaussQ c = den_.constant_term();
        if (c != GaussQ(1)) {
            num_ = num_.scaled(c.inverse());
            den_ = PiPoly(GaussQ(1));
        }
        return;
    }
    // pure pi-power factors cancel without a full gcd
    int shift = std::min(num_.terms().front().first, den_.terms().front().first);
    if (shift > 0) {
        PiPoly n, d;
        for (const auto& [e, c] : num_.terms())
            n += PiPoly::monomial(e - shift, c);
        for (const auto& [e, c] : den_.terms())
            d += PiPoly::monomial(e - shift, c);
        num_ = std::move(n);
        den_ = std::move(d);
    }
    if (!den_.is_constant()) {
        PiPoly g = PiPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = PiPoly::divmod(num_, g).first;
            den_ = PiPoly::divmod(den_, g).first;
        }
    }
    GaussQ lead = den_.leading();
    if (lead != GaussQ(1)) {
        GaussQ li = lead.inverse();
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
}

Coef Coef::conj() const
{
    Coef r;
    r.num_ = num_.conj();
    r.den_ = den_.conj();
    return r;
}

Coef Coef::inverse() const
{
    if (is_zero())
        throw MathError("division by zero coefficient");
    return Coef(den_, num_);
}

Coef Coef::real_part() const { return (*this + conj()) * Coef(Rational(1, 2)); }

Coef Coef::imag_part() const { return (*this - conj()) * Coef(GaussQ(0, Rational(-1, 2))); }

Coef& Coef::operator+=(const Coef& o)
{
    if (o.is_zero())
        return *this;
    if (is_polynomial() && o.is_polynomial()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

Coef& Coef::operator-=(const Coef& o) { return *this += -o; }

void Coef::add_product(const Coef& a, const Coef& b)
{
    if (a.is_zero() || b.is_zero())
        return;
    if (den_.is_constant() && a.den_.is_constant() && b.den_.is_constant()) {
        num_.add_product(a.num_, b.num_);
        if (num_.is_zero())
            den_ = PiPoly(GaussQ(1));
        return;
    }
    *this += a * b;
}

Coef& Coef::operator*=(const Coef& o)
{
    if (is_zero())
        return *this;
    if (o.is_zero()) {
        *this = Coef();
        return *this;
    }
    if (is_polynomial() && o.is_polynomial()) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

Coef Coef::operator-() const
{
    Coef r = *this;
    r.negate();
    return r;
}

std::complex<double> Coef::approx() const { return num_.approx() / den_.approx(); }

// ---------- printing of coefficients

static std::string format_rational(const Rational& q) { return q.get_str(); }

static std::string format_gauss(const GaussQ& g)
{
    if (g.is_real())
        return format_rational(g.re);
    std::string s = "(";
    if (sgn(g.re) != 0)
        s += format_rational(g.re) + (sgn(g.im) > 0 ? " + " : " - ");
    else if (sgn(g.im) < 0)
        s += "-";
    s += format_rational(abs(g.im)) + "*I)";
    return s;
}

static std::string pi_power_str(int e)
{
    if (e == 0)
        return "";
    return e == 1 ? "pi" : "pi**" + std::to_string(e);
}

/* one monomial c*pi**e, c != 0 */
static std::string format_monomial(const GaussQ& c, int e)
{
    std::string pp = pi_power_str(e);
    if (pp.empty())
        return format_gauss(c);
    if (c == GaussQ(1))
        return pp;
    if (c == GaussQ(-1))
        return "-" + pp;
    return format_gauss(c) + "*" + pp;
}

static std::string format_poly(const PiPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        std::string m = format_monomial(c, e);
        if (first)
            s = m;
        else if (m[0] == '-')
            s += " - " + m.substr(1);
        else
            s += " + " + m;
        first = false;
    }
    return s;
}

std::string format_coef(const Coef& c)
{
    std::string n = format_poly(c.num());
    if (c.den().is_constant())
        return n;
    if (c.num().terms().size() > 1)
        n = "(" + n + ")";
    std::string d = format_poly(c.den());
    if (c.den().terms().size() > 1 || d.find('*') != std::string::npos)
        d = "(" + d + ")";
    return n + "/" + d;
}

std::string format_real_coef(const Coef& c)
{
    if (c == Coef(1))
        return "";
    return format_coef(c);
}

// ---------- CoordinateRoster

CoordinateRoster::CoordinateRoster(std::vector<std::string> transverse, std::vector<std::string> leaf,
                                   std::vector<std::string> fiber)
    : transverse_(std::move(transverse)), leaf_(std::move(leaf)), fiber_(std::move(fiber))
{
    if (!fiber_.empty() && fiber_.size() != leaf_.size())
        throw MathError("fiber count must be 0 or equal to the leaf count");
    names_ = transverse_;
    names_.insert(names_.end(), leaf_.begin(), leaf_.end());
    names_.insert(names_.end(), fiber_.begin(), fiber_.end());
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty())
            throw MathError("empty coordinate name");
        for (size_t j = 0; j < i; ++j)
            if (names_[i] == names_[j])
                throw MathError("duplicate coordinate name: " + names_[i]);
    }
}

CoordKind CoordinateRoster::kind(int idx) const
{
    if (idx < n_transverse())
        return CoordKind::Transverse;
    if (idx < n_torus())
        return CoordKind::Leaf;
    return CoordKind::Fiber;
}

int CoordinateRoster::index(const std::string& name) const
{
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return static_cast<int>(i);
    return -1;
}

bool CoordinateRoster::same_as(const CoordinateRoster& o) const
{
    return this == &o || (transverse_ == o.transverse_ && leaf_ == o.leaf_ && fiber_ == o.fiber_);
}

// ---------- FourierScalar

FourierScalar::FourierScalar(RosterPtr r, const Coef& c) : roster_(std::move(r))
{
    if (!c.is_zero())
        terms_.emplace(ScalarKey(roster_->size(), 0), c);
}

FourierScalar FourierScalar::raw_term(RosterPtr r, ScalarKey key, Coef c)
{
    FourierScalar f(std::move(r));
    if (static_cast<int>(key.size()) != f.roster_->size())
        throw MathError("scalar key length mismatch");
    if (!c.is_zero())
        f.terms_.emplace(std::move(key), std::move(c));
    return f;
}

static ScalarKey freq_key(const RosterPtr& r, const std::vector<int>& freq)
{
    if (static_cast<int>(freq.size()) != r->n_torus())
        throw MathError("frequency vector length must equal the number of torus coordinates");
    ScalarKey k(r->size(), 0);
    std::copy(freq.begin(), freq.end(), k.begin());
    return k;
}

static ScalarKey negated(ScalarKey k, int n_torus)
{
    for (int i = 0; i < n_torus; ++i)
        k[i] = -k[i];
    return k;
}

FourierScalar FourierScalar::cos_mode(RosterPtr r, const std::vector<int>& freq)
{
    ScalarKey k = freq_key(r, freq);
    FourierScalar f(r);
    f.add_term(k, Coef(Rational(1, 2)));
    f.add_term(negated(k, r->n_torus()), Coef(Rational(1, 2)));
    return f;
}

FourierScalar FourierScalar::sin_mode(RosterPtr r, const std::vector<int>& freq)
{
    // sin t = (e^{it} - e^{-it}) / 2i
    ScalarKey k = freq_key(r, freq);
    FourierScalar f(r);
    f.add_term(k, Coef(GaussQ(0, Rational(-1, 2))));
    f.add_term(negated(k, r->n_torus()), Coef(GaussQ(0, Rational(1, 2))));
    return f;
}

FourierScalar FourierScalar::fiber_var(RosterPtr r, int beta)
{
    if (beta < 0 || beta >= r->n_fiber())
        throw MathError("fiber index out of range");
    ScalarKey k(r->size(), 0);
    k[r->fiber_index(beta)] = 1;
    return raw_term(r, k, Coef(1));
}

void FourierScalar::add_term(const ScalarKey& key, const Coef& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void FourierScalar::check_roster(const FourierScalar& o) const
{
    if (roster_ && o.roster_ && !roster_->same_as(*o.roster_))
        throw MathError("roster mismatch");
}

bool FourierScalar::is_constant() const
{
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const auto& k = terms_.begin()->first;
    return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
}

Coef FourierScalar::constant_term() const
{
    if (!roster_)
        return Coef();
    auto it = terms_.find(ScalarKey(roster_->size(), 0));
    return it == terms_.end() ? Coef() : it->second;
}

bool FourierScalar::is_real() const
{
    int nt = roster_ ? roster_->n_torus() : 0;
    for (const auto& [k, c] : terms_) {
        auto it = terms_.find(negated(k, nt));
        if (it == terms_.end() || it->second != c.conj())
            return false;
    }
    return true;
}

bool FourierScalar::fiber_free() const { return max_fiber_degree() == 0; }

int FourierScalar::max_fiber_degree() const
{
    int best = 0;
    if (!roster_)
        return 0;
    for (const auto& [k, c] : terms_) {
        int d = 0;
        for (int i = roster_->n_torus(); i < roster_->size(); ++i)
            d += k[i];
        best = std::max(best, d);
    }
    return best;
}

FourierScalar& FourierScalar::operator+=(const FourierScalar& o)
{
    check_roster(o);
    if (!roster_)
        roster_ = o.roster_;
    for (const auto& [k, c] : o.terms_)
        add_term(k, c);
    return *this;
}

FourierScalar& FourierScalar::operator+=(FourierScalar&& o)
{
    check_roster(o);
    if (!roster_)
        roster_ = o.roster_;
    if (terms_.empty()) {
        terms_ = std::move(o.terms_);
        return *this;
    }
    for (auto& [k, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(k, std::move(c));
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }
    return *this;
}

FourierScalar& FourierScalar::operator-=(const FourierScalar& o)
{
    check_roster(o);
    if (!roster_)
        roster_ = o.roster_;
    for (const auto& [k, c] : o.terms_)
        add_term(k, -c);
    return *this;
}

FourierScalar operator*(const FourierScalar& a, const FourierScalar& b)
{
    a.check_roster(b);
    FourierScalar r(a.roster_ ? a.roster_ : b.roster_);
    if (a.is_zero() || b.is_zero())
        return r;
    ScalarKey k;
    bool cancelled = false;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            k.resize(ka.size());
            for (size_t i = 0; i < ka.size(); ++i)
                k[i] = ka[i] + kb[i];
            auto [it, inserted] = r.terms_.try_emplace(k, Coef(0L));
            it->second.add_product(ca, cb);
            cancelled = cancelled || it->second.is_zero();
        }
    }
    if (cancelled)
        std::erase_if(r.terms_, [](const auto& t) { return t.second.is_zero(); });
    return r;
}

FourierScalar FourierScalar::operator-() const
{
    FourierScalar r = *this;
    r.negate();
    return r;
}

FourierScalar FourierScalar::scaled(const Coef& c) const
{
    FourierScalar r(roster_);
    if (c.is_zero())
        return r;
    r.terms_ = terms_;
    for (auto& [k, v] : r.terms_)
        v *= c;
    return r;
}

bool operator==(const FourierScalar& a, const FourierScalar& b) { return a.terms_ == b.terms_; }

FourierScalar FourierScalar::conj() const
{
    FourierScalar r(roster_);
    int nt = roster_ ? roster_->n_torus() : 0;
    for (const auto& [k, c] : terms_)
        r.terms_.emplace(negated(k, nt), c.conj());
    return r;
}

FourierScalar FourierScalar::partial(int coord) const
{
    if (!roster_ || coord < 0 || coord >= roster_->size())
        throw MathError("unknown coordinate index");
    FourierScalar r(roster_);
    if (coord < roster_->n_torus()) {
        const Coef two_pi_i = Coef(PiPoly::monomial(1, GaussQ(0, 2)));
        for (const auto& [k, c] : terms_)
            if (k[coord] != 0)
                r.terms_.emplace(k, c * two_pi_i * Coef(k[coord]));
    }
    else {
        for (const auto& [k, c] : terms_) {
            if (k[coord] == 0)
                continue;
            ScalarKey nk = k;
            --nk[coord];
            r.add_term(nk, c * Coef(k[coord]));
        }
    }
    return r;
}

FourierScalar FourierScalar::partial(const std::string& coord) const
{
    int idx = roster_ ? roster_->index(coord) : -1;
    if (idx < 0)
        throw MathError("unknown coordinate: " + coord);
    return partial(idx);
}

FourierScalar FourierScalar::leaf_harmonic_projection() const
{
    if (!fiber_free())
        throw MathError("leaf harmonic projection needs a fiber-free scalar");
    FourierScalar r(roster_);
    if (!roster_)
        return r;
    for (const auto& [k, c] : terms_) {
        bool keep = true;
        for (int i = roster_->n_transverse(); i < roster_->n_torus(); ++i)
            keep = keep && k[i] == 0;
        if (keep)
            r.terms_.emplace(k, c);
    }
    return r;
}

FourierScalar FourierScalar::rebased(RosterPtr target) const
{
    if (!roster_)
        return FourierScalar(std::move(target));
    if (target->transverse() != roster_->transverse() || target->leaf() != roster_->leaf())
        throw MathError("rebase requires identical torus coordinates");
    FourierScalar r(target);
    for (const auto& [k, c] : terms_) {
        ScalarKey nk(target->size(), 0);
        for (int i = 0; i < roster_->size(); ++i) {
            if (i < roster_->n_torus())
                nk[i] = k[i];
            else if (k[i] != 0)
                throw MathError("rebase of a fiber-dependent scalar");
        }
        r.terms_.emplace(std::move(nk), c);
    }
    return r;
}

std::complex<double> FourierScalar::evaluate(const std::vector<double>& point) const
{
    std::complex<double> s = 0;
    for (const auto& [k, c] : terms_) {
        double phase = 0;
        std::complex<double> mono = 1;
        for (int i = 0; i < roster_->size(); ++i) {
            if (i < roster_->n_torus())
                phase += 2 * std::numbers::pi * k[i] * point.at(i);
            else
                mono *= std::pow(point.at(i), k[i]);
        }
        s += c.approx() * mono * std::polar(1.0, phase);
    }
    return s;
}

/*
 * Printing goes through the real product basis: each torus variable contributes 1, cos(2 pi n x)
 * or sin(2 pi n x) with n > 0. Label entry +n is cos, -n is sin, 0 is absent.
 */
std::string FourierScalar::to_string() const
{
    if (terms_.empty())
        return "0";
    int nt = roster_->n_torus();
    std::map<ScalarKey, Coef> basis;
    for (const auto& [k, c] : terms_) {
        std::vector<int> active;
        for (int i = 0; i < nt; ++i)
            if (k[i] != 0)
                active.push_back(i);
        for (unsigned mask = 0; mask < (1u << active.size()); ++mask) {
            ScalarKey label = k;
            Coef v = c;
            for (size_t a = 0; a < active.size(); ++a) {
                int i = active[a];
                int n = std::abs(k[i]);
                if (mask & (1u << a)) {
                    label[i] = -n;
                    v *= Coef(GaussQ(0, k[i] > 0 ? 1 : -1));
                }
                else {
                    label[i] = n;
                }
            }
            auto [it, ins] = basis.emplace(label, v);
            if (!ins) {
                it->second += v;
                if (it->second.is_zero())
                    basis.erase(it);
            }
        }
    }
    if (basis.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [label, c] : basis) {
        std::vector<std::string> factors;
        for (int i = roster_->n_torus(); i < roster_->size(); ++i) {
            if (label[i] == 1)
                factors.push_back(roster_->name(i));
            else if (label[i] > 1)
                factors.push_back(roster_->name(i) + "**" + std::to_string(label[i]));
        }
        for (int i = 0; i < nt; ++i) {
            if (label[i] == 0)
                continue;
            int n = std::abs(label[i]);
            std::string arg = (n == 1 ? "2" : std::to_string(2 * n)) + "*pi*" + roster_->name(i);
            factors.push_back(std::string(label[i] > 0 ? "cos(" : "sin(") + arg + ")");
        }
        std::string cs = format_coef(c);
        bool compound = !c.is_constant() || cs.find('/') != std::string::npos;
        bool simple_poly = c.is_polynomial() && c.num().terms().size() == 1;
        if (!simple_poly && compound && !factors.empty())
            cs = "(" + cs + ")";
        std::string term;
        if (factors.empty()) {
            term = cs;
        }
        else {
            if (cs == "1")
                cs = "";
            else if (cs == "-1")
                cs = "-";
            else
                cs += "*";
            term = cs;
            for (size_t f = 0; f < factors.size(); ++f)
                term += (f ? "*" : "") + factors[f];
        }
        if (first)
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
        first = false;
    }
    return out;
}

FourierScalar scalar_arith(const FourierScalar& a, const FourierScalar& b, ArithOp op)
{
    switch (op) {
    case ArithOp::Add:
        return a + b;
    case ArithOp::Mul:
        return a * b;
    case ArithOp::Neg:
        return -a;
    }
    throw MathError("unknown arithmetic op");
}

}  // namespace lcs
