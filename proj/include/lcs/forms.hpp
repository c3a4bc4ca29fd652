#pragma once

#include "lcs/ring.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lcs {

/* bit i of a mask is the covector d(coordinate i); coordinates ordered y, q, p */
using CovectorMask = std::uint32_t;

int mask_degree(CovectorMask m);
std::vector<int> mask_indices(CovectorMask m);
/* sign of dx^a ^ dx^b relative to the sorted monomial; 0 when they share a covector */
int wedge_sign(CovectorMask a, CovectorMask b);

class DifferentialForm {
public:
    using Terms = std::map<CovectorMask, FourierScalar>;

    DifferentialForm() = default;
    DifferentialForm(RosterPtr r, int degree) : roster_(std::move(r)), degree_(degree) {}

    static DifferentialForm zero(RosterPtr r, int degree) { return DifferentialForm(std::move(r), degree); }
    static DifferentialForm scalar(const FourierScalar& f);
    static DifferentialForm scalar(RosterPtr r, const Coef& c);
    static DifferentialForm covector(RosterPtr r, int coord);
    static DifferentialForm monomial(const FourierScalar& f, CovectorMask m);

    const RosterPtr& roster() const { return roster_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FourierScalar coefficient(CovectorMask m) const;
    /* coefficient on the covectors given in any order, with the reordering sign */
    FourierScalar component(const std::vector<int>& coords) const;
    bool is_real() const;

    void add_term(CovectorMask m, const FourierScalar& f);
    void add_term(CovectorMask m, FourierScalar&& f);

    DifferentialForm& operator+=(const DifferentialForm& o);
    DifferentialForm& operator+=(DifferentialForm&& o);
    void negate()
    {
        for (auto& t : terms_)
            t.second.negate();
    }
    DifferentialForm& operator-=(const DifferentialForm& o);
    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
    DifferentialForm operator-() const;
    DifferentialForm scaled(const Coef& c) const;
    DifferentialForm times(const FourierScalar& f) const;
    friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);
    friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) { return !(a == b); }

    /* terms whose covectors all lie in the given mask */
    DifferentialForm filtered(CovectorMask allowed) const;
    DifferentialForm conj() const;

    std::string to_string() const;

private:
    RosterPtr roster_;
    int degree_ = 0;
    Terms terms_;
    void check_roster(const DifferentialForm& o) const;
};

CovectorMask transverse_mask(const CoordinateRoster& r);
CovectorMask leaf_mask(const CoordinateRoster& r);
CovectorMask fiber_mask(const CoordinateRoster& r);

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(RosterPtr r) : roster_(std::move(r)) {}

    static VectorField coordinate(RosterPtr r, int coord);

    const RosterPtr& roster() const { return roster_; }
    const std::map<int, FourierScalar>& components() const { return comps_; }
    FourierScalar component(int coord) const;
    void set(int coord, const FourierScalar& f);
    bool is_zero() const { return comps_.empty(); }
    /* vector field applied to a function */
    FourierScalar apply(const FourierScalar& f) const;

    VectorField& operator+=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    VectorField scaled(const FourierScalar& f) const;
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.comps_ == b.comps_; }

    std::string to_string() const;

private:
    RosterPtr roster_;
    std::map<int, FourierScalar> comps_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);
/* d a + b ^ a; b must be a closed 1-form */
DifferentialForm twisted_derivative(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm interior_product(const VectorField& xi, const DifferentialForm& a);
/* contraction by X ^ Y, defined as i_Y i_X */
DifferentialForm bivector_contraction(const VectorField& x, const VectorField& y, const DifferentialForm& a);
DifferentialForm lie_derivative(const VectorField& xi, const DifferentialForm& a);
/* p_a -> s_a, dp_a -> d s_a; result lives on the fiberless base roster */
DifferentialForm pullback_by_section(const DifferentialForm& a, const std::vector<FourierScalar>& s,
                                     const RosterPtr& base);
/* pullback along the projection forgetting the fiber */
DifferentialForm lift_to_fiber(const DifferentialForm& a, const RosterPtr& total);
DifferentialForm leafwise_restrict(const DifferentialForm& a);
/* sum_beta dq^beta ^ d/dq^beta + bbar ^ ; bbar a closed leafwise 1-form */
DifferentialForm leafwise_derivative(const DifferentialForm& a);
DifferentialForm leafwise_twisted_derivative(const DifferentialForm& a, const DifferentialForm& bbar);
DifferentialForm form_power(const DifferentialForm& a, int m);

bool is_leafwise(const DifferentialForm& a);

}  // namespace lcs
