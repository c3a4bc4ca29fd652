#pragma once

#include "lcs/ring.hpp"

#include <optional>
#include <vector>

namespace lcs {

using CoefMatrix = std::vector<std::vector<Coef>>;
using ScalarMatrix = std::vector<std::vector<FourierScalar>>;

struct Elimination {
    CoefMatrix reduced;             // reduced row echelon form
    std::vector<int> pivot_cols;    // pivot column of each nonzero row
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

/* Gauss-Jordan with the first nonzero entry of each column as pivot */
Elimination row_reduce(CoefMatrix a);
int rank(const CoefMatrix& a);
/* particular solution with free variables set to 0, or nothing if inconsistent */
std::optional<std::vector<Coef>> solve_linear(const CoefMatrix& a, const std::vector<Coef>& rhs);

/* determinant over the function ring by cofactor expansion */
FourierScalar determinant(const ScalarMatrix& a, const RosterPtr& r);
/* inverse when the determinant is a nonzero constant, else nothing */
std::optional<ScalarMatrix> inverse_if_unimodular(const ScalarMatrix& a, const RosterPtr& r);

Rational rational_determinant(std::vector<std::vector<Rational>> a);
int rational_rank(std::vector<std::vector<Rational>> a);
/* Pfaffian of a skew-symmetric matrix of even size */
Rational pfaffian(const std::vector<std::vector<Rational>>& a);

}  // namespace lcs
