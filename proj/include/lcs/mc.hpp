#pragma once

#include "lcs/cohomology.hpp"
#include "lcs/master.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcs {

struct ObstructionCertificate {
    int order = 0;
    LeafForm residual;          // rhs with no d_F^{bbar}-preimage
    LeafForm harmonic_witness;  // rhs restricted to the unsolvable frequencies
    ScalarKey mode;             // first unsolvable frequency
    CoefMatrix system;          // its linear system: system * x = rhs_vector has no solution
    std::vector<Coef> rhs_vector;
};

struct CohomologySolveResult {
    std::optional<LeafForm> solution;
    std::optional<ObstructionCertificate> certificate;

    bool solved() const { return solution.has_value(); }
};

/* solves d_F^{bbar} x = rhs; rhs must be d_F^{bbar}-closed and bbar constant */
CohomologySolveResult leafwise_solve(const LeafForm& rhs, const DifferentialForm& bbar);

/*
 * Known part of the order-N equation d_F^{bbar} Gamma_N = rhs, taken from the eps^N
 * coefficient of graph_form^{k+1} with Gamma_N = 0, divided by (k+1)! Pf(omega).
 * Gamma_1 must be closed; lower holds Gamma_1 .. Gamma_{N-1} (extra terms are ignored).
 */
LeafForm mc_rhs(int N, const FormalSeries& lower, const AlgebroidContext& ctx);
/* the same quantity from the coordinate master residual */
LeafForm mc_rhs_coordinate(int N, const FormalSeries& lower, const AlgebroidContext& ctx);

/* sum_l 1/l! m_l(Gamma, ..., Gamma) expanded in eps, orders 0..N */
std::vector<LeafForm> mc_residual_series(const FormalSeries& g, int N, const AlgebroidContext& ctx);

struct KuranishiResult {
    LeafForm bracket;  // m2(Gamma_1, Gamma_1)
    LeafForm half;     // 1/2 m2(Gamma_1, Gamma_1), the order-2 rhs
    CohomologySolveResult klass;

    bool class_zero() const { return klass.solved(); }
};

KuranishiResult kuranishi(const LeafForm& gamma1, const AlgebroidContext& ctx);

struct McSolveResult {
    FormalSeries series;
    std::optional<ObstructionCertificate> certificate;
    std::vector<LeafForm> residual;             // linfty residual through the reached order
    std::vector<LeafForm> coordinate_residual;  // coordinate master residual, same orders

    bool ok() const { return !certificate.has_value(); }
};

McSolveResult mc_solve(const LeafForm& gamma1, int max_order, const AlgebroidContext& ctx);

/* Gamma_1 + d_F^{bbar} f */
LeafForm gauge_shift(const LeafForm& gamma1, const FourierScalar& f, const AlgebroidContext& ctx);

/* dims of the twisted cohomology of the leaf torus T^m with constant Lee form, truncated */
std::vector<int> leaf_torus_cohomology_dims(int m, const std::vector<Rational>& lee, int truncation);

std::string describe(const ObstructionCertificate& c);

}  // namespace lcs
