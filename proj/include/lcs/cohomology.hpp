#pragma once

#include "lcs/forms.hpp"
#include "lcs/linalg.hpp"

#include <optional>
#include <vector>

namespace lcs {

/*
 * d + v ^ on constant-coefficient forms spanned by the covectors of `coords`, one torus
 * frequency at a time: at frequency K the operator is wedging by sum_c (2 pi i K_c + lee_c) dx^c.
 * Frequencies are full torus keys; entries outside `coords` are spectators.
 */
struct TwistedModeComplex {
    RosterPtr roster;
    std::vector<int> coords;
    std::vector<Coef> lee;     // constant Lee coefficient per entry of coords
    CovectorMask ideal = 0;    // nonzero: only masks meeting this set (a subcomplex)

    std::vector<CovectorMask> basis(int degree) const;
    /* rows: basis(degree + 1), columns: basis(degree) */
    CoefMatrix matrix(const ScalarKey& freq, int degree) const;
    int top_degree() const { return static_cast<int>(coords.size()); }
};

/* d_F + bbar ^ along the leaves; bbar must have constant coefficients */
TwistedModeComplex leafwise_complex(const RosterPtr& r, const DifferentialForm& bbar);
/* d + b ^ over every torus coordinate; b must have constant coefficients */
TwistedModeComplex full_complex(const RosterPtr& r, const DifferentialForm& b);

struct ModeSolve {
    std::optional<DifferentialForm> solution;
    std::vector<ScalarKey> failed_modes;
    DifferentialForm unsolved_part;  // rhs restricted to the failed modes
};

/* solves (d + v^) x = rhs mode by mode; free variables are set to zero */
ModeSolve solve_by_modes(const TwistedModeComplex& c, const DifferentialForm& rhs);

/* all frequencies with |K_c| <= truncation on coords, zero elsewhere */
std::vector<ScalarKey> truncated_modes(const TwistedModeComplex& c, int truncation);
/* dim H^j summed over truncated modes, j = 0..top_degree */
std::vector<int> cohomology_dims(const TwistedModeComplex& c, int truncation);

}  // namespace lcs
