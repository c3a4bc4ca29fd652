#pragma once

#include "lcs/forms.hpp"

#include <string>

namespace lcs {

/*
 * Expression syntax shared by scalars and forms:
 *   numbers 3, 3/4; symbol pi; fiber coordinates as polynomial variables;
 *   sin(...) / cos(...) whose argument is 2*pi times an integer combination of torus coordinates;
 *   covectors d<name>; '*' and '^' both mean wedge; '**' is an integer power; '/' divides by a constant.
 */
DifferentialForm parse_form(const std::string& text, const RosterPtr& roster);
FourierScalar parse_scalar(const std::string& text, const RosterPtr& roster);
Coef parse_constant(const std::string& text);

}  // namespace lcs
