#pragma once

#include "bellforge/inequality.hpp"

#include <map>

namespace bellforge {

// Substitutes the chosen setting's variable by +1 for each listed party
// (party -> setting, 0-based) and renumbers the remaining settings. Terms
// whose parties are all substituted away feed the constant. A party fixed
// down to zero settings is dropped from the scenario. The bound is
// unchanged: substituting an admissible value cannot increase the LR max.
GeneralInequality dehomogenize(const FullCorrelationInequality& ineq,
                               const std::map<int, int>& fixed_settings);

// Adds one auxiliary setting (index m_p) to every party that is missing
// from some term or is needed by a nonzero constant; every term lacking a
// party is multiplied by that party's auxiliary variable, and the constant
// by all of them. Law: dehomogenize(homogenize(g), auxiliary settings) = g.
FullCorrelationInequality homogenize(const GeneralInequality& ineq);

// The auxiliary settings homogenize() introduced for `g` (party -> setting),
// i.e. the fix map that undoes it.
std::map<int, int> homogenization_fix_map(const GeneralInequality& ineq);

} // namespace bellforge
