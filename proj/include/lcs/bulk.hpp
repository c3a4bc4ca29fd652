#pragma once

#include "lcs/mc.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcs {

// ---------- infinitesimal deformations of the ambient structure

struct InfinitesimalDeformation {
    DifferentialForm kappa;  // 2-form
    DifferentialForm c;      // closed 1-form

    InfinitesimalDeformation(DifferentialForm kappa, DifferentialForm c);
};

enum class DeformationMode { Lcs, Lcps };

struct InfinitesimalReport {
    DifferentialForm structure_residual;  // d^b kappa + c ^ omega
    DifferentialForm power_restriction;   // omega^k ^ kappa (lcps mode)
    DifferentialForm leaf_restriction;    // kappa restricted to the leaves (lcps mode)
    bool routes_agree = true;             // power_restriction = 0 <=> leaf_restriction = 0

    bool ok() const;
};

InfinitesimalReport infinitesimal_check(const InfinitesimalDeformation& d, const Model& m, DeformationMode mode);

/* d^b(xi _| omega) - c omega */
DifferentialForm s_map(const VectorField& xi, const Coef& c, const Model& m);

/* (kappa' - (-f omega + kappa + L_xi omega), c' - (c + L_xi b + df)) */
std::pair<DifferentialForm, DifferentialForm> equivalence_residual(const InfinitesimalDeformation& d,
                                                                   const InfinitesimalDeformation& d2,
                                                                   const VectorField& xi, const FourierScalar& f,
                                                                   const Model& m);

/* all dimensions are over frequencies with |K_c| <= truncation */
struct DeformationDims {
    int truncation = 0;
    std::vector<int> twisted;     // dim H^j_b, j = 0..dim
    std::vector<int> untwisted;   // dim H^j
    bool omega_class_nonzero = false;
    int h2_mod_omega = 0;
    int ker_L = 0;                // L : H^1 -> H^3_b, [c] -> [c ^ omega]
    int def_dim = 0;              // ker_L + h2_mod_omega

    // the subcomplex of forms vanishing on the leaves
    std::vector<int> restricted;
    bool restricted_omega_class_nonzero = false;
    int restricted_h2_mod_omega = 0;
    int restricted_def_dim = 0;
};

/* needs constant-coefficient omega and b on a fiberless model */
DeformationDims deformation_space_dims(const Model& m, int truncation);

// ---------- bulk coisotropic deformations

/* omegas[i], lee_forms[i] are the t^i coefficients; sections.terms[j - 1] is Gamma_j */
struct BulkSeries {
    std::vector<DifferentialForm> omegas;
    std::vector<DifferentialForm> lee_forms;
    FormalSeries sections;

    static BulkSeries trivial(const Model& m);
    void validate(const Model& m) const;
};

struct BulkOrderReport {
    int order = 0;
    DifferentialForm power;    // t^l coefficient of omega_t^{k+1}
    DifferentialForm lee;      // d b_l
    DifferentialForm lcps;     // d^{b_0} omega_l + sum_{1 <= j <= l} b_j ^ omega_{l-j}
    DifferentialForm section;  // t^l coefficient of (omega_t - d^{b_t} Gamma_t)^{k+1}

    bool passes() const;
};

/* expanded order-by-order sums, orders 0..up_to */
std::vector<BulkOrderReport> bulk_order_residuals(const BulkSeries& B, const Model& m, int up_to);
/* the same quantities from the closed-form families evaluated at rational t and interpolated */
std::vector<BulkOrderReport> bulk_residuals_by_evaluation(const BulkSeries& B, const Model& m, int up_to);

/* first-order bulk data entering the t^2 equation; both default to zero */
struct FirstOrderBulk {
    std::optional<DifferentialForm> omega1;
    std::optional<DifferentialForm> b1;
};

/*
 * The t^2 equation for Gamma_2 after eliminating omega_2:
 *   d_F Gamma_2 = C(E_2) / ((k+1)! Pf omega)  with Gamma_2 = 0 inside E_2, where
 *   E_2 = -(k+1)[omega^k (b_1 ^ Gamma_1) + k omega^{k-1} omega_1 dGamma_1] + C(k+1, 2) omega^{k-1} (dGamma_1)^2.
 * The df part of b_1 contributes the exact term -d_F(f Gamma_1) and the constant dy part contributes
 * nothing; both are recorded.
 */
struct BulkOrder2Result {
    LeafForm rhs;                            // with b_1 = 0
    LeafForm lee_term;                       // contribution of the given b_1
    std::vector<LeafForm> constant_lee_terms;  // contribution of each dy^i, all zero
    CohomologySolveResult solve;             // d_F X = rhs, X = Gamma_2 + f Gamma_1

    bool obstructed() const { return !solve.solved(); }
};

/* model: flat splitting, b = 0, constant omega; Gamma_1 leafwise closed */
BulkOrder2Result bulk_order2_obstruction(const LeafForm& gamma1, const Model& m, const FirstOrderBulk& first = {});

struct ScenarioCheck {
    std::string name;
    bool ok = false;
    std::string detail;
    bool informational = false;  // reported, never fails the scenario
};

struct ZambonReport {
    std::vector<ScenarioCheck> checks;
    std::string kuranishi_value;

    bool ok() const;
};

ZambonReport zambon_scenario();

}  // namespace lcs
