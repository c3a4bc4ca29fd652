#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcs {

using Rational = mpq_class;

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* a + b i with a, b exact rationals */
struct GaussQ {
    Rational re, im;

    GaussQ() = default;
    GaussQ(long v) : re(v), im(0) {}
    GaussQ(Rational r) : re(std::move(r)), im(0) {}
    GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussQ conj() const { return {re, -im}; }
    GaussQ inverse() const;

    GaussQ& operator+=(const GaussQ& o);
    GaussQ& operator-=(const GaussQ& o);
    GaussQ& operator*=(const GaussQ& o);
    /* this += a * b without temporaries */
    void add_product(const GaussQ& a, const GaussQ& b);
    void negate()
    {
        mpq_neg(re.get_mpq_t(), re.get_mpq_t());
        mpq_neg(im.get_mpq_t(), im.get_mpq_t());
    }

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
    friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) { return a * b.inverse(); }
    GaussQ operator-() const { return {-re, -im}; }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
};

/* Polynomial in the formal symbol pi; terms sorted by exponent, no zero coefficients. */
class PiPoly {
public:
    using Term = std::pair<int, GaussQ>;

    PiPoly() = default;
    PiPoly(GaussQ c);
    static PiPoly monomial(int exp, GaussQ c);
    static PiPoly pi() { return monomial(1, GaussQ(1)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    int degree() const { return terms_.empty() ? -1 : terms_.back().first; }
    const GaussQ& leading() const { return terms_.back().second; }
    GaussQ constant_term() const;
    GaussQ coeff(int exp) const;
    const std::vector<Term>& terms() const { return terms_; }

    bool is_real() const;
    PiPoly conj() const;
    PiPoly scaled(const GaussQ& c) const;

    PiPoly& operator+=(const PiPoly& o);
    PiPoly& operator-=(const PiPoly& o);
    /* this += a * b in place */
    void add_product(const PiPoly& a, const PiPoly& b);
    void negate()
    {
        for (auto& t : terms_)
            t.second.negate();
    }
    friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
    friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
    friend PiPoly operator*(const PiPoly& a, const PiPoly& b);
    PiPoly operator-() const;
    friend bool operator==(const PiPoly& a, const PiPoly& b);
    friend bool operator!=(const PiPoly& a, const PiPoly& b) { return !(a == b); }

    /* Euclidean division over Q(i); divisor nonzero */
    static std::pair<PiPoly, PiPoly> divmod(const PiPoly& a, const PiPoly& b);
    /* monic gcd; gcd(0, 0) = 0 */
    static PiPoly gcd(PiPoly a, PiPoly b);

    std::complex<double> approx() const;

private:
    std::vector<Term> terms_;
};

/* Element of Q(i)(pi): num/den reduced, den monic. */
class Coef {
public:
    Coef() : den_(GaussQ(1)) {}
    Coef(long v) : num_(GaussQ(v)), den_(GaussQ(1)) {}
    Coef(Rational r) : num_(GaussQ(std::move(r))), den_(GaussQ(1)) {}
    Coef(GaussQ g) : num_(std::move(g)), den_(GaussQ(1)) {}
    Coef(PiPoly p) : num_(std::move(p)), den_(GaussQ(1)) {}
    Coef(PiPoly num, PiPoly den);

    static Coef pi() { return Coef(PiPoly::pi()); }
    static Coef i() { return Coef(GaussQ(0, 1)); }
    static Coef pi_power(int e);

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_real() const { return num_.is_real() && den_.is_real(); }
    const PiPoly& num() const { return num_; }
    const PiPoly& den() const { return den_; }
    /* value when is_constant() */
    GaussQ constant() const { return num_.constant_term(); }

    Coef conj() const;
    Coef inverse() const;
    Coef real_part() const;
    Coef imag_part() const;

    Coef& operator+=(const Coef& o);
    Coef& operator-=(const Coef& o);
    Coef& operator*=(const Coef& o);
    /* this += a * b; in place when all three are polynomials */
    void add_product(const Coef& a, const Coef& b);
    void negate() { num_.negate(); }
    Coef& operator/=(const Coef& o) { return *this *= o.inverse(); }
    friend Coef operator+(Coef a, const Coef& b) { return a += b; }
    friend Coef operator-(Coef a, const Coef& b) { return a -= b; }
    friend Coef operator*(Coef a, const Coef& b) { return a *= b; }
    friend Coef operator/(Coef a, const Coef& b) { return a /= b; }
    Coef operator-() const;
    friend bool operator==(const Coef& a, const Coef& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Coef& a, const Coef& b) { return !(a == b); }

    std::complex<double> approx() const;

private:
    PiPoly num_, den_;
    void normalize();
};

/* Real-valued coefficient printed as e.g. -4*pi**2, 3/2, (1 + 2*pi)/(pi**2 - 3). Empty string for 1. */
std::string format_real_coef(const Coef& c);
std::string format_coef(const Coef& c);

enum class CoordKind { Transverse, Leaf, Fiber };

/* Variable order: transverse y, leaf q, fiber p. Torus coordinates are y and q. */
class CoordinateRoster {
public:
    CoordinateRoster(std::vector<std::string> transverse, std::vector<std::string> leaf,
                     std::vector<std::string> fiber = {});

    const std::vector<std::string>& transverse() const { return transverse_; }
    const std::vector<std::string>& leaf() const { return leaf_; }
    const std::vector<std::string>& fiber() const { return fiber_; }

    int n_transverse() const { return static_cast<int>(transverse_.size()); }
    int n_leaf() const { return static_cast<int>(leaf_.size()); }
    int n_fiber() const { return static_cast<int>(fiber_.size()); }
    int n_torus() const { return n_transverse() + n_leaf(); }
    int size() const { return n_torus() + n_fiber(); }

    const std::string& name(int idx) const { return names_.at(idx); }
    CoordKind kind(int idx) const;
    int index(const std::string& name) const;  // -1 if absent
    int leaf_index(int beta) const { return n_transverse() + beta; }
    int fiber_index(int beta) const { return n_torus() + beta; }

    bool same_as(const CoordinateRoster& o) const;

private:
    std::vector<std::string> transverse_, leaf_, fiber_, names_;
};

using RosterPtr = std::shared_ptr<const CoordinateRoster>;

/* key: torus frequencies (y then q) followed by fiber degrees */
using ScalarKey = std::vector<int>;

/*
 * Finite sum of c_k p^a exp(2 pi i k.x). Reality (c_{-k,a} = conj c_{k,a}) is an invariant
 * of every value built through the public interface from real inputs.
 */
class FourierScalar {
public:
    using Terms = std::map<ScalarKey, Coef>;

    FourierScalar() = default;
    explicit FourierScalar(RosterPtr r) : roster_(std::move(r)) {}
    FourierScalar(RosterPtr r, const Coef& c);

    static FourierScalar constant(RosterPtr r, const Coef& c) { return FourierScalar(std::move(r), c); }
    static FourierScalar cos_mode(RosterPtr r, const std::vector<int>& freq);
    static FourierScalar sin_mode(RosterPtr r, const std::vector<int>& freq);
    static FourierScalar fiber_var(RosterPtr r, int beta);
    /* single raw term; callers are responsible for reality */
    static FourierScalar raw_term(RosterPtr r, ScalarKey key, Coef c);

    const RosterPtr& roster() const { return roster_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Coef constant_term() const;
    bool is_real() const;
    bool fiber_free() const;
    int max_fiber_degree() const;

    FourierScalar& operator+=(const FourierScalar& o);
    FourierScalar& operator-=(const FourierScalar& o);
    FourierScalar& operator+=(FourierScalar&& o);
    void negate()
    {
        for (auto& t : terms_)
            t.second.negate();
    }
    friend FourierScalar operator+(FourierScalar a, const FourierScalar& b) { return a += b; }
    friend FourierScalar operator-(FourierScalar a, const FourierScalar& b) { return a -= b; }
    friend FourierScalar operator*(const FourierScalar& a, const FourierScalar& b);
    FourierScalar operator-() const;
    FourierScalar scaled(const Coef& c) const;
    friend bool operator==(const FourierScalar& a, const FourierScalar& b);
    friend bool operator!=(const FourierScalar& a, const FourierScalar& b) { return !(a == b); }

    FourierScalar conj() const;
    FourierScalar partial(int coord) const;
    FourierScalar partial(const std::string& coord) const;
    /* keeps terms with zero leaf frequencies; fiber-free input only */
    FourierScalar leaf_harmonic_projection() const;
    /* same function viewed on another roster sharing the torus coordinates; fiber terms must be absent */
    FourierScalar rebased(RosterPtr target) const;

    std::string to_string() const;
    std::complex<double> evaluate(const std::vector<double>& point) const;

    void add_term(const ScalarKey& key, const Coef& c);

private:
    RosterPtr roster_;
    Terms terms_;
    void check_roster(const FourierScalar& o) const;
};

enum class ArithOp { Add, Mul, Neg };
FourierScalar scalar_arith(const FourierScalar& a, const FourierScalar& b, ArithOp op);

}  // namespace lcs
