#pragma once

#include "lcs/forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcs {

/* G spanned by Y_i = d/dy^i + R_i^alpha d/dq^alpha; R lives on the fiberless base */
struct Splitting {
    RosterPtr base;
    std::vector<std::vector<FourierScalar>> R;  // R[i][alpha]

    static Splitting flat(const RosterPtr& base);
    const FourierScalar& at(int i, int alpha) const { return R.at(i).at(alpha); }
    /* basic lift Y_i as a vector field on the base */
    VectorField basic_field(int i) const;
    bool is_flat() const;
};

struct Model {
    std::string name;
    RosterPtr roster;
    DifferentialForm omega;
    DifferentialForm b;
    int rank_k = 0;
    std::optional<Splitting> splitting;
    std::optional<std::vector<std::vector<FourierScalar>>> omega_inv;  // transverse inverse omega^{ij}

    const Splitting& splitting_or_flat() const;
    std::vector<std::vector<FourierScalar>> transverse_matrix() const;
};

RosterPtr fiberless(const RosterPtr& r);
/* appends fiber coordinates p_<leaf name> unless names are given */
RosterPtr with_fiber(const RosterPtr& base, std::vector<std::string> fiber_names = {});

/* leafwise component of b, i.e. the restriction of b to the leaves */
DifferentialForm leaf_lee_form(const Model& m);

}  // namespace lcs
