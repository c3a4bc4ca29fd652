#pragma once

#include "lcs/linalg.hpp"
#include "lcs/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcs {

struct StructureReport {
    bool is_lcs = false;
    bool is_lcps_rank_2k = false;
    bool transverse_invariance_ok = false;
    std::vector<std::pair<std::string, std::string>> failures;  // (check, witness)
};

StructureReport validate_structure(const Model& m);

struct LcpsFieldResult {
    Coef c;
    FourierScalar u;  // b(xi) - c
};

/* d^b(xi _| omega) = c omega with c constant */
std::optional<LcpsFieldResult> lcps_vector_field_test(const VectorField& xi, const Model& m);

/* xi with xi _| omega = d^b f; throws when omega has no unimodular coefficient matrix */
VectorField hamiltonian_vector_field(const FourierScalar& f, const Model& m);

/* omega(d_a, d_b) over all coordinates */
ScalarMatrix coefficient_matrix(const DifferentialForm& omega);

}  // namespace lcs
