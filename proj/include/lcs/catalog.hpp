#pragma once

#include "lcs/model.hpp"

#include <vector>

namespace lcs::catalog {

/* T^4 (y1, y2, q1, q2), omega = dy1^dy2, b = 0, flat splitting */
Model zambon_base();
/* sin(2 pi y1) dq1 + sin(2 pi y2) dq2 on the Zambon base */
DifferentialForm zambon_gamma1(const Model& m);

/* T^3 (y1, y2, q1), omega = dy1^dy2, R_1^1 = sin(2 pi q1), R_2^1 = sin(2 pi y1) */
Model curved_t3();
/* T^4, omega = dy1^dy2, R_1^1 = sin(2 pi q2), R_2^2 = cos(2 pi y1) */
Model curved_t4();

/* Zambon base with Lee form c dy1 (transverse twisting, zero leafwise part) */
Model transverse_lee(const Rational& c);

/* rank-0 model on T^m: omega = 0, one leaf, constant Lee form sum c_beta dq^beta */
Model novikov_leaf_torus(const std::vector<Rational>& c);

/* T^2 with omega = dy1^dy2 and constant Lee form c1 dy1 + c2 dy2 */
Model lcs_surface(const Rational& c1, const Rational& c2);

}  // namespace lcs::catalog
