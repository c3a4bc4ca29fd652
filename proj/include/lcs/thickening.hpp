#pragma once

#include "lcs/model.hpp"

#include <map>
#include <utility>
#include <vector>

namespace lcs {

/*
 * Element of Omega^l(N*F; TF): components B_I^beta for increasing transverse index sets I,
 * evaluated on basic fields by B(Y_{i1}, ..., Y_{il}) = B_I when i1 < ... < il.
 */
class NormalValuedForm {
public:
    using Key = std::pair<CovectorMask, int>;  // (transverse mask, leaf index)

    NormalValuedForm() = default;
    NormalValuedForm(RosterPtr base, int degree) : base_(std::move(base)), degree_(degree) {}

    const RosterPtr& base() const { return base_; }
    int degree() const { return degree_; }
    const std::map<Key, FourierScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    FourierScalar component(CovectorMask m, int beta) const;
    /* value on Y_{idx[0]}, ..., Y_{idx[l-1]} in the given order */
    FourierScalar evaluate(const std::vector<int>& idx, int beta) const;
    void add(CovectorMask m, int beta, const FourierScalar& f);

    NormalValuedForm& operator+=(const NormalValuedForm& o);
    NormalValuedForm& operator-=(const NormalValuedForm& o);
    friend NormalValuedForm operator+(NormalValuedForm a, const NormalValuedForm& b) { return a += b; }
    friend NormalValuedForm operator-(NormalValuedForm a, const NormalValuedForm& b) { return a -= b; }
    friend bool operator==(const NormalValuedForm& a, const NormalValuedForm& b);

    std::string to_string() const;

private:
    RosterPtr base_;
    int degree_ = 0;
    std::map<Key, FourierScalar> terms_;
};

using TransverseCurvature = NormalValuedForm;

/* leaf-valued function V^beta as a vector of scalars */
using LeafVector = std::vector<FourierScalar>;
LeafVector leaf_lie_bracket(const LeafVector& v, const LeafVector& w);

/* fiber names p<suffix> when leaf names are q<suffix> */
RosterPtr thickened_roster(const RosterPtr& base);

DifferentialForm build_theta_g(const Model& m, const Splitting& s);
/* pi*omega - d^{pi*b} theta_G */
DifferentialForm build_omega_u(const Model& m, const Splitting& s);
/*
 * Coordinate expression with the transverse block 1/2 (omega_ij + sign * p_beta F_ij^beta) dy^i dy^j.
 * sign = -1 transcribes the printed formula literally; sign = +1 agrees with build_omega_u.
 */
DifferentialForm omega_u_coordinate(const Model& m, const Splitting& s, int curvature_sign);
DifferentialForm omega_u_coordinate_difference(const Model& m, const Splitting& s, int curvature_sign);
/* the thickened l.c.s. model (pi*omega - d^{pi*b} theta_G, pi*b) */
Model thicken(const Model& m, const Splitting& s);
/* basis e_j of the omega_U-orthogonal of the vertical-plus-leaf distribution */
std::vector<VectorField> g_sharp_basis(const Model& m, const Splitting& s);

TransverseCurvature transverse_curvature(const Splitting& s);
/* F[i][j][beta] for all i, j, antisymmetric */
std::vector<std::vector<LeafVector>> curvature_components(const Splitting& s);

NormalValuedForm pi_lie_derivative(const NormalValuedForm& b, int j, const Splitting& s);
NormalValuedForm pi_differential(const NormalValuedForm& b, const Splitting& s);
/*
 * permutation: sum over S_n with weight 1/n!; the transformation law of curvature holds in this one.
 * shuffle: sum over shuffles with weight 1/(l1! l2!).
 */
enum class BracketNormalization { permutation, shuffle };
NormalValuedForm pi_bracket(const NormalValuedForm& b, const NormalValuedForm& c,
                            BracketNormalization norm = BracketNormalization::permutation);
/* two-slot coordinate expression for degree-1 inputs, read as 1/2 sum over all i, j */
NormalValuedForm pi_bracket_coordinate(const NormalValuedForm& b, const NormalValuedForm& c);

/* B with R = R0 + B */
NormalValuedForm splitting_difference(const Splitting& s0, const Splitting& s);
/* curvature of s0 shifted by B, by the coordinate transformation law */
TransverseCurvature curvature_transformation_coordinate(const Splitting& s0, const NormalValuedForm& b);
/* F_{s0} + d^{s0} B + [B, B] */
TransverseCurvature curvature_transformation_invariant(const Splitting& s0, const NormalValuedForm& b);

DifferentialForm splitting_change_residual(const Model& m, const Splitting& s0, const Splitting& s);

}  // namespace lcs
