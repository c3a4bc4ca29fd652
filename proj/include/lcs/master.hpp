#pragma once

#include "lcs/linfty.hpp"

#include <cstdint>
#include <vector>

namespace lcs {

// ---------- linear coisotropy

using QMatrix = std::vector<std::vector<Rational>>;

/*
 * Graph chart C_A = {(x, Ax)} over C = C^k + R^{n-k} inside R^{2n}, with
 * omega = omega_{0,k} + sum dx_i ^ dy^i and C^perp = i R^{n-k}.
 * C^k carries real coordinates (u_1, v_1, ..., u_k, v_k) with omega_{0,k} = sum du_a ^ dv_a.
 * A_H is the real-linear part C^k -> C^perp ((n-k) x 2k), A_I : R^{n-k} -> C^perp.
 */
struct CoisotropicChart {
    int n = 0;
    int k = 0;
    QMatrix A_H;
    QMatrix A_I;

    void validate() const;
};

QMatrix standard_omega_h(int k);
/* pi_H, the inverse of the matrix of omega_{0,k} */
QMatrix standard_pi_h(int k);
/* restriction of omega to C_A in the basis (C^k basis, R^{n-k} basis) */
QMatrix restricted_form(const CoisotropicChart& c);
int restricted_rank(const CoisotropicChart& c);
/* A_I - A_I^T + A_H pi_H A_H^T */
QMatrix coisotropy_defect(const CoisotropicChart& c);
bool coisotropic_algebraic(const CoisotropicChart& c);
/* omega^{k+1} restricted to C_A vanishes: every principal Pfaffian of order 2k+2 is zero */
bool coisotropic_power(const CoisotropicChart& c);

struct GrassmannFuzzReport {
    int trials = 0;
    int agreements = 0;
    int coisotropic = 0;
    std::vector<CoisotropicChart> disagreements;
};

/* half of the charts are built coisotropic, then possibly perturbed in one entry */
GrassmannFuzzReport grassmann_fuzz(int n, int k, int trials, std::uint64_t seed);
/* every chart with entries drawn from the given values */
GrassmannFuzzReport grassmann_grid(int n, int k, const std::vector<Rational>& values);

// ---------- sections and master equations

/* terms[j - 1] is the eps^j coefficient Gamma_j, a leafwise 1-form */
struct FormalSeries {
    std::vector<LeafForm> terms;

    int max_order() const { return static_cast<int>(terms.size()); }
    /* Gamma_j, zero when j is out of range */
    LeafForm order(int j, const RosterPtr& r) const;
};

/* eps-graded values, index = order */
using FormSeries = std::vector<DifferentialForm>;
using ScalarSeries = std::vector<FourierScalar>;

FormSeries wedge_series(const FormSeries& a, const FormSeries& b, int N);
FormSeries power_series(const FormSeries& a, int m, int N);

/* p_G^* Gamma = Gamma_alpha f^alpha with f^alpha = dq^alpha - R_i^alpha dy^i */
DifferentialForm section_one_form(const LeafForm& gamma, const Splitting& s);
/* omega - d^b(p_G^* Gamma) */
DifferentialForm graph_form(const Model& m, const Splitting& s, const LeafForm& gamma);
/* the same form as the pullback of omega_U by the section */
DifferentialForm graph_form_by_pullback(const Model& m, const Splitting& s, const LeafForm& gamma);
/* graph_form^{k+1}; zero iff the graph is coisotropic */
DifferentialForm graph_coisotropy_residual(const Model& m, const Splitting& s, const LeafForm& gamma);
/* eps-expansion of graph_form^{k+1} for the series, orders 0..N */
FormSeries graph_residual_series(const Model& m, const Splitting& s, const FormalSeries& g, int N);

/* coefficient of dy^1 ^ ... ^ dy^{2k}, as a leafwise form */
LeafForm top_transverse_part(const DifferentialForm& e);

/* Pf(omega_ij + Gamma_beta F^beta_ij) expanded in eps */
ScalarSeries pfaffian_series(const AlgebroidContext& ctx, const FormalSeries& g, int N);
/*
 * -d_F^{bbar} Gamma + 1/2 sum_{i,j} nabla_i Gamma ^ (omega~^{-1})^{ij} nabla_j Gamma, with
 * omega~_ij = omega_ij + Gamma_beta F^beta_ij inverted as a Neumann series; orders 0..N.
 */
std::vector<LeafForm> coordinate_master_series(const AlgebroidContext& ctx, const FormalSeries& g, int N);

/* d_F^{bbar} alpha */
LeafForm linearized_operator(const LeafForm& alpha, const AlgebroidContext& ctx);
/* omega^k ^ d^b alpha */
DifferentialForm linearized_operator_unreduced(const LeafForm& alpha, const Model& m);

}  // namespace lcs
