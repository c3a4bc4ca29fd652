#pragma once

#include "lcs/model.hpp"
#include "lcs/thickening.hpp"

#include <vector>

namespace lcs {

/* Leafwise forms (dq covectors only) are plain DifferentialForms on the base roster. */
using LeafForm = DifferentialForm;

struct CovariantDerivativeResult {
    std::vector<LeafForm> transverse;  // nabla^b_i xi
    std::vector<LeafForm> leaf;        // nabla^b_beta xi
};

struct AlgebroidContext {
    Model model;
    Splitting splitting;
    std::vector<std::vector<LeafVector>> F;           // F[i][j][beta] = Pi [Y_i, Y_j]
    std::vector<std::vector<FourierScalar>> omega_inv;  // omega^{ij}
    DifferentialForm bbar;                            // leafwise part of b
    std::vector<FourierScalar> b_transverse;          // b(Y_i)
    std::vector<VectorField> basic;                   // Y_i
    std::vector<std::vector<VectorField>> F_field;    // F_ij as a leaf-tangent vector field

    const RosterPtr& roster() const { return model.roster; }
    int n_transverse() const { return model.roster->n_transverse(); }
};

/* Uses the model splitting (flat if absent) unless one is given. Throws MathError when
 * omega^{ij} is neither supplied nor derivable, or when a supplied inverse is wrong. */
AlgebroidContext make_context(const Model& m);
AlgebroidContext make_context(const Model& m, const Splitting& s);

CovariantDerivativeResult covariant_derivative(const LeafForm& xi, const AlgebroidContext& ctx);
/* Lie derivative along Y_i restricted to the leaves, plus b(Y_i) xi */
LeafForm transverse_covariant(const LeafForm& xi, int i, const AlgebroidContext& ctx);

/* (-1)^|xi| d_F^{bbar} xi */
LeafForm m1(const LeafForm& xi, const AlgebroidContext& ctx);
/* the same operation assembled as sum_beta dq^beta ^ nabla^b_beta xi */
LeafForm m1_from_covariant(const LeafForm& xi, const AlgebroidContext& ctx);

/* (-1)^{|x1|(|x2|+1)} sum_{i,j} omega^{ij} nabla^b_i x1 ^ nabla^b_j x2 */
LeafForm m2(const LeafForm& x1, const LeafForm& x2, const AlgebroidContext& ctx);

/*
 * Arity l >= 2 operation:
 *   1/2 (-1)^l sum_sigma e(sigma) s(sigma) omega^{i a1} omega^{b1 a2} ... omega^{b_{l-2} j}
 *     nabla_i x_s1 ^ i_{F_{a1 b1}} x_s2 ^ ... ^ i_{F_{a_{l-2} b_{l-2}}} x_s(l-1) ^ nabla_j x_sl
 * e is the Koszul sign for shifted degrees |x|-1, s collects the sign of moving each shifted
 * factor past the unshifted factors to its left and of the inner contractions.
 * Agrees with m2 at l = 2.
 */
LeafForm m_ell(const std::vector<LeafForm>& xs, const AlgebroidContext& ctx);
/* dispatch: l = 1 -> m1, otherwise m_ell */
LeafForm m_op(const std::vector<LeafForm>& xs, const AlgebroidContext& ctx);

/* arity-N component of delta^2: sum over unshuffles of m_k(m_l(...), ...) with Koszul signs */
LeafForm linfty_relation_residual(const std::vector<LeafForm>& xs, const AlgebroidContext& ctx);

/* Koszul sign for reordering elements of the given shifted degrees into order perm */
int koszul_sign(const std::vector<int>& shifted_degrees, const std::vector<int>& perm);

}  // namespace lcs
